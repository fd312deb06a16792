"""The acceptance suite, shared by ``cgc selftest`` and the test-suite.

Each ``criterion_k`` returns a :class:`Result`; nothing here raises on a
failed identity, so a run always reports every criterion.
"""

from __future__ import annotations

import functools
import itertools
import time
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import batch, mat
from .center import (Context, block_specs, growth_check_sp, intersection_growth_check,
                     mass_check, product_expand, shape_check, u_blocks, in_unitriangular_class)
from .classify import classify, refl_length, sp_type, wall_forms
from .combin import enumerate_types, weight
from .fh_symmetric import all_perms, polynomiality_check, sc_symmetric, stability_check
from .gf import field, sign_class
from .grp import BudgetError, group_table, order_formula

# class counts pinned after the first verified enumeration
PINNED_CLASS_COUNTS = {("sp", 1, 3): 7, ("sp", 2, 3): 34, ("gl", 2, 3): 8, ("gl", 3, 3): 24}


@dataclass
class Result:
    number: int
    title: str
    ok: bool
    detail: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"[{status}] criterion {self.number:2d}: {self.title} ({self.seconds:.1f}s) {self.detail}"


def _timed(number, title):
    def deco(fn):
        @functools.wraps(fn)
        def run(*a, **kw):
            t0 = time.perf_counter()
            ok, detail = fn(*a, **kw)
            return Result(number, title, bool(ok), detail, time.perf_counter() - t0)
        return run
    return deco


@_timed(1, "group orders from BFS closure")
def criterion_1(use_cache: bool = False):
    cases = [("sp", 1, 3, 24), ("gl", 2, 3, 48), ("gl", 3, 3, 11232),
             ("sp", 2, 3, 51840), ("gl", 4, 2, 20160)]
    sizes = {}
    ok = True
    for kind, n, q, expected in cases:
        T = group_table(kind, n, field(q), use_cache=use_cache)
        sizes[f"{kind}{n}({q})"] = len(T)
        ok &= len(T) == expected == order_formula(kind, n, q)
    return ok, sizes


def _sampled_conjugates(T, reps, k, rng):
    F = T.field
    g = T.matrices(rng.integers(0, len(T), k))
    gi = batch.inverse(g, F)
    return [F.matmul(F.matmul(g, r), gi) for r in reps]


@_timed(2, "class parametrization")
def criterion_2(samples: int = 10, seed: int = 0):
    rng = np.random.default_rng(seed)
    detail, ok = {}, True
    for kind, n, q in PINNED_CLASS_COUNTS:
        F = field(q)
        T = group_table(kind, n, F)
        reps = T.class_reps()
        types = [classify(r, F, kind) for r in reps]
        enum = enumerate_types(2 * n if kind == "sp" else n, F, kind)
        distinct = len(set(types)) == len(types)
        same = set(types) == set(enum)
        stable = all(classify(c, F, kind) == t
                     for t, conj in zip(types, _sampled_conjugates(T, reps, samples, rng))
                     for c in conj)
        count_ok = len(reps) == len(enum) == PINNED_CLASS_COUNTS[(kind, n, q)]
        detail[f"{kind}{n}({q})"] = len(reps)
        ok &= distinct and same and stable and count_ok
    return ok, detail


@_timed(3, "Wall signs of orthogonal and symplectic blocks")
def criterion_3():
    checked, ok = 0, True
    for q in (3, 5, 7):
        F = field(q)
        for k in (1, 2):
            for eps in (1, F.nonsquare()):
                rep = wall_forms(mat.j_block_eps(2 * k, eps, F), 1, mat.gram_standard(k, F), F)
                expected = sign_class((F, F.reduce((-1) ** (k - 1) * 2 ** (2 * k - 1) * eps)))
                ok &= [r.as_tuple() for r in rep] == [(2 * k, 1, expected)]
                checked += 1
            for k in (1, 2):
                size = 4 * k + 2
                rep = wall_forms(mat.j_block(size, F), 1, mat.gram_standard(size // 2, F), F)
                ok &= [r.as_tuple() for r in rep] == [(2 * k + 1, 2, -1)]
                checked += 1
    return ok, {"blocks": checked}


@_timed(4, "reflection length equals codim of the fixed space")
def criterion_4(samples: int = 1000, seed: int = 0):
    F = field(3)
    T = group_table("sp", 2, F)
    reps = T.class_reps()
    rng = np.random.default_rng(seed)
    ok = True
    I = mat.eye(4)
    for r, conj in zip(reps, _sampled_conjugates(T, reps, samples, rng)):
        rl = refl_length(r, F)
        ok &= rl == 4 - len(mat.kernel_basis(mat.sub(r, I, F), F))
        ok &= bool((batch.ranks(F.add_t[conj, F.neg_t[I]], F) == rl).all())
    return ok, {"classes": len(reps), "conjugates_per_class": samples}


def _non_identity_reps_sp1():
    F = field(3)
    T = group_table("sp", 1, F)
    return [r for r in T.class_reps() if not np.array_equal(r, mat.eye(2))]


@_timed(5, "centralizer growth under embedding")
def criterion_5(budget: int = 10 ** 8):
    F = field(3)
    reps = _non_identity_reps_sp1()
    done, ok, rows = 0, True, []
    for U in reps:
        covered = True
        for n in (2, 3):
            try:
                r = growth_check_sp(U, 1, n, F, budget)
            except BudgetError:
                covered = False
                rows.append((str(sp_type(U, F)), n, "budget"))
                continue
            ok &= r["holds"]
            rows.append((str(sp_type(U, F)), n, r["left"], r["right"]))
        done += covered
    coverage = done / len(reps)
    return ok and coverage >= 0.8, {"coverage": f"{done}/{len(reps)}", "rows": len(rows)}


@_timed(6, "joint centralizer growth for rl-additive pairs")
def criterion_6():
    F = field(3)
    T = group_table("sp", 1, F)
    reps, allm = T.class_reps(), T.matrices()
    tested, skipped, ok = 0, 0, True
    for U1 in reps:
        for U2 in allm:
            r = intersection_growth_check(U1, U2, 1, 2, F)
            if r["in_hypothesis"]:
                tested += 1
                ok &= r["holds"]
            else:
                skipped += 1
    return ok and tested > 0, {"additive_pairs": tested, "out_of_hypothesis": skipped}


@functools.lru_cache(maxsize=None)
def _expansions(kind, q, n1, n2):
    """Full expansions at ``n1`` and ``n2`` for all type pairs fitting ``n1``."""
    F = field(q)
    cl = Context.get(kind, n1, F).classes()
    out = {}
    for lam, mu in itertools.product(cl, repeat=2):
        if kind == "gl" and (mu, lam) in out:
            continue
        out[(lam, mu)] = (product_expand(kind, F, n1, lam, mu, check_mass=False),
                          product_expand(kind, F, n2, lam, mu, check_mass=False))
    return cl, out


def _stability(kind, q, n1, n2):
    cl, exp = _expansions(kind, q, n1, n2)
    triples, ok = 0, True
    for (lam, mu), (e1, e2) in exp.items():
        top = weight(lam) + weight(mu)
        for eta in cl:
            if weight(eta) == top:
                triples += 1
                ok &= e1.get(eta, 0) == e2.get(eta, 0)
    return ok, triples


@_timed(7, "stability, symplectic, n=1 vs n=2")
def criterion_7():
    ok, triples = _stability("sp", 3, 1, 2)
    return ok, {"triples": triples}


@_timed(8, "stability, GL")
def criterion_8():
    ok3, t3 = _stability("gl", 3, 2, 3)
    ok2, t2 = _stability("gl", 2, 3, 4)
    return ok3 and ok2, {"q3_triples": t3, "q2_triples": t2}


@_timed(9, "symmetric group baseline")
def criterion_9():
    vals = [sc_symmetric((1,), (1,), (2,), n) for n in range(3, 9)]
    stab = stability_check(5, 8)
    polys, ok_poly = 0, True
    S = all_perms(4)
    for g, h in itertools.product(S[::5], S[::7]):
        r = polynomiality_check(g, h, 4)
        polys += 1
        ok_poly &= r["holds"]
    ok = vals == [3] * 6 and stab["holds"] and ok_poly
    return ok, {"c_(1)(1)^(2)": vals[0], "triples": len(stab["triples"]), "windows": polys}


@_timed(10, "shape of unipotent commutants")
def criterion_10(max_size: int = 10):
    ok, count = True, 0
    for q in (3, 5):
        F = field(q)
        for spec in block_specs(max_size, F):
            pieces = u_blocks(spec, F)
            r = shape_check(pieces, F)
            ok &= all(in_unitriangular_class(p) for p in pieces)
            ok &= r["free_ok"] and r["leading_row_ok"]
            count += 1
    return ok, {"combinations": count}


@_timed(11, "mass conservation of expansions")
def criterion_11():
    checked, ok = 0, True
    for kind, q, n1, n2 in (("sp", 3, 1, 2), ("gl", 3, 2, 3), ("gl", 2, 3, 4)):
        _, exp = _expansions(kind, q, n1, n2)
        F = field(q)
        for (lam, mu), (e1, e2) in exp.items():
            for n, e in ((n1, e1), (n2, e2)):
                lhs, rhs = mass_check(kind, F, n, lam, mu, e)
                ok &= lhs == rhs
                checked += 1
    return ok, {"expansions": checked}


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


def run(only=None, echo=print) -> list[Result]:
    results = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        res = fn()
        if echo:
            echo(res.line())
        results.append(res)
    return results
