"""Command-line entry point: ``cgc <command> [options]``.

Every run prints one JSON document (or a plain table) that echoes its full
configuration.  Exit codes: 0 pass, 1 a checked identity failed, 2 bad
input, 3 a work budget was exceeded.

Types given to ``--lambda/--mu/--eta`` are *modified* types, either as the
JSON emitted by the library or as a comma list of parts at ``t - 1`` (for
``--kind sym``, a modified cycle type).  The empty string is the trivial
type.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import acceptance, mat
from .center import (CheckFailure, Context, growth_check_gl, growth_check_sp, mass_check,
                     product_expand, structure_constant)
from .classify import ClassifyError, classify, fixed_dim, refl_length
from .combin import TypeError_, partition, t_minus_one, type_from_json, type_sort_key, weight
from .fh_symmetric import PermError, expand_symmetric, sc_symmetric, stability_check
from .gf import FieldError, parse_field
from .grp import DEFAULT_FILTER_BUDGET, DEFAULT_ORBIT_BUDGET, BudgetError
from .mat import MatrixError
from .poly import PolyError

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class InputError(ValueError):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


# parsing -----------------------------------------------------------------------


def parse_type(text: str | None, F, kind: str):
    if text is None:
        raise InputError("missing", "a type argument is required")
    text = text.strip()
    if kind == "sym":
        try:
            return partition(int(x) for x in text.split(",") if x.strip())
        except ValueError as exc:
            raise InputError("parse", f"bad cycle type {text!r}") from exc
    if text.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError("parse", f"bad type JSON: {exc}") from exc
        data["modified"] = True
        return type_from_json(F, data, kind)
    try:
        parts = partition(int(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise InputError("parse", f"bad part list {text!r}") from exc
    entry = {"poly": list(t_minus_one(F).coeffs), "parts": list(parts)}
    return type_from_json(F, {"factors": [entry] if parts else [], "modified": True}, kind)


def type_json(x):
    if isinstance(x, tuple):
        return list(x)
    return x.to_json()


def type_text(x) -> str:
    return repr(x) if not isinstance(x, tuple) else str(x)


def parse_input_matrix(text: str | None, F, kind: str) -> np.ndarray:
    if not text:
        raise InputError("missing", "--matrix is required")
    try:
        U = mat.parse_matrix(text, F)
    except MatrixError as exc:
        raise InputError("parse", str(exc)) from exc
    d = U.shape[0]
    if U.shape != (d, d):
        raise InputError("shape", f"matrix is {U.shape[0]}x{U.shape[1]}, not square")
    if mat.rank(U, F) < d:
        raise InputError("singular", "matrix is singular")
    if kind == "sp":
        if d % 2:
            raise InputError("not_symplectic", "odd dimension")
        if not mat.is_symplectic(U, mat.gram_standard(d // 2, F), F):
            raise InputError("not_symplectic", "matrix does not preserve the standard form")
    return U


def config_of(args) -> dict:
    skip = {"func"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _budgets(args) -> dict:
    return {"orbit_budget": args.budget_orbit, "filter_budget": args.budget_filter}


# commands ----------------------------------------------------------------------


def cmd_classify(args) -> tuple[dict, int]:
    if args.kind == "sym":
        raise InputError("kind", "classify supports gl and sp")
    F = parse_field(args.q)
    U = parse_input_matrix(args.matrix, F, args.kind)
    x = classify(U, F, args.kind)
    return {"type": type_json(x), "text": repr(x), "fixed_dim": fixed_dim(U, F),
            "refl_length": refl_length(U, F)}, EXIT_OK


def cmd_sc(args) -> tuple[dict, int]:
    F = parse_field(args.q) if args.kind != "sym" else None
    lam, mu, eta = (parse_type(t, F, args.kind) for t in (args.lam, args.mu, args.eta))
    if args.kind == "sym":
        c = sc_symmetric(lam, mu, eta, args.n)
    else:
        c = structure_constant(args.kind, F, args.n, lam, mu, eta, **_budgets(args))
    return {"lambda": type_json(lam), "mu": type_json(mu), "eta": type_json(eta), "c": c}, EXIT_OK


def cmd_expand(args) -> tuple[dict, int]:
    F = parse_field(args.q) if args.kind != "sym" else None
    lam, mu = parse_type(args.lam, F, args.kind), parse_type(args.mu, F, args.kind)
    if args.kind == "sym":
        exp = expand_symmetric(lam, mu, args.n)
        terms = [{"eta": list(k), "c": v} for k, v in sorted(exp.items())]
        return {"lambda": list(lam), "mu": list(mu), "terms": terms}, EXIT_OK
    exp = product_expand(args.kind, F, args.n, lam, mu, check_mass=False, **_budgets(args))
    lhs, rhs = mass_check(args.kind, F, args.n, lam, mu, exp)
    terms = [{"eta": type_json(k), "text": repr(k), "c": v}
             for k, v in sorted(exp.items(), key=lambda kv: type_sort_key(kv[0]))]
    out = {"lambda": type_json(lam), "mu": type_json(mu), "terms": terms,
           "mass": {"lhs": lhs, "rhs": rhs, "holds": lhs == rhs}}
    return out, EXIT_OK if lhs == rhs else EXIT_FAIL


def cmd_stability(args) -> tuple[dict, int]:
    n1, n2 = args.n, args.n2 if args.n2 is not None else args.n + 1
    if n2 <= n1:
        raise InputError("range", "--n2 must exceed --n")
    if args.kind == "sym":
        rep = stability_check(n1, n2)
        rows = [{"lambda": list(r["lambda"]), "mu": list(r["mu"]), "eta": list(r["eta"]),
                 "values": r["values"], "holds": r["constant"]} for r in rep["triples"]]
    else:
        F = parse_field(args.q)
        cl = Context.get(args.kind, n1, F, **_budgets(args)).classes()
        rows = []
        for i, lam in enumerate(cl):
            for mu in cl[i:] if args.kind == "gl" else cl:
                e1 = product_expand(args.kind, F, n1, lam, mu, **_budgets(args))
                e2 = product_expand(args.kind, F, n2, lam, mu, **_budgets(args))
                for eta in cl:
                    if weight(eta) == weight(lam) + weight(mu):
                        v = [e1.get(eta, 0), e2.get(eta, 0)]
                        rows.append({"lambda": type_text(lam), "mu": type_text(mu),
                                     "eta": type_text(eta), "values": v, "holds": v[0] == v[1]})
    ok = all(r["holds"] for r in rows)
    return {"n": [n1, n2], "triples": rows, "count": len(rows), "holds": ok}, \
        EXIT_OK if ok else EXIT_FAIL


def cmd_growth(args) -> tuple[dict, int]:
    if args.kind == "sym":
        raise InputError("kind", "growth supports gl and sp")
    F = parse_field(args.q)
    U = parse_input_matrix(args.matrix, F, args.kind)
    m = U.shape[0] // 2 if args.kind == "sp" else U.shape[0]
    n = args.n2 if args.n2 is not None else args.n
    if n is None or n <= m:
        raise InputError("range", f"target rank must exceed the source rank {m}")
    check = growth_check_sp if args.kind == "sp" else growth_check_gl
    rep = check(U, m, n, F, args.budget_filter)
    return rep, EXIT_OK if rep["holds"] or not rep["in_hypothesis"] else EXIT_FAIL


def cmd_selftest(args) -> tuple[dict, int]:
    only = {int(x) for x in args.only.split(",")} if args.only else None
    echo = (lambda s: print(s, file=sys.stderr)) if args.format == "json" else None
    results = acceptance.run(only=only, echo=echo)
    rows = [{"criterion": r.number, "title": r.title, "ok": r.ok, "detail": r.detail}
            for r in results]
    ok = all(r.ok for r in results)
    return {"criteria": rows, "holds": ok}, EXIT_OK if ok else EXIT_FAIL


# driver ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", default="3", help='field spec "p" or "p^k"')
    common.add_argument("--kind", choices=("gl", "sp", "sym"), default="sp")
    common.add_argument("--n", type=int, default=None, help="rank (sp) or size (gl, sym)")
    common.add_argument("--n2", type=int, default=None, help="second rank for comparisons")
    common.add_argument("--matrix", default=None, help='rows separated by ";", e.g. "1,0;1,1"')
    common.add_argument("--lambda", dest="lam", default=None)
    common.add_argument("--mu", default=None)
    common.add_argument("--eta", default=None)
    common.add_argument("--budget-orbit", type=int, default=DEFAULT_ORBIT_BUDGET)
    common.add_argument("--budget-filter", type=int, default=DEFAULT_FILTER_BUDGET)
    common.add_argument("--cache", default=None, help="cache directory (overrides CGC_CACHE)")
    common.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                        help="accepted for compatibility; computation is sequential")
    common.add_argument("--format", choices=("json", "table"), default="json")

    p = argparse.ArgumentParser(prog="cgc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name, func, help_ in (
            ("classify", cmd_classify, "conjugacy type of a matrix"),
            ("sc", cmd_sc, "one structure constant"),
            ("expand", cmd_expand, "full product of two class sums"),
            ("stability", cmd_stability, "top-degree constants at n and n2"),
            ("growth", cmd_growth, "centralizer growth under embedding"),
            ("selftest", cmd_selftest, "run the acceptance suite")):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        if name == "selftest":
            sp.add_argument("--only", default=None, help="comma list of criterion numbers")
    return p


def _table(d: dict, indent: str = "") -> str:
    lines = []
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_table(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            lines.extend(f"{indent}  " + json.dumps(r, sort_keys=True) for r in v)
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cache:
        os.environ["CGC_CACHE"] = args.cache
    if args.n is None:
        args.n = 1 if args.kind == "sp" else (2 if args.kind == "gl" else 4)
    out = {"command": args.command, "config": config_of(args)}
    try:
        result, code = args.func(args)
        out.update(result=result, status="pass" if code == EXIT_OK else "fail")
    except InputError as exc:
        out.update(status="input_error", error={"kind": exc.kind, "message": str(exc)})
        code = EXIT_INPUT
    except (TypeError_, FieldError, PolyError, MatrixError, PermError, ClassifyError,
            ValueError) as exc:
        out.update(status="input_error", error={"kind": type(exc).__name__, "message": str(exc)})
        code = EXIT_INPUT
    except BudgetError as exc:
        out.update(status="budget_exceeded", error={"kind": "budget", "message": str(exc)})
        code = EXIT_BUDGET
    except CheckFailure as exc:
        out.update(status="fail", error={"kind": "check", "message": str(exc)})
        code = EXIT_FAIL
    if args.format == "json":
        print(json.dumps(out, sort_keys=True))
    else:
        print(_table(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
