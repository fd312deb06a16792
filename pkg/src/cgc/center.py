"""Structure constants of class algebras and the growth/stability checks.

Conjugacy classes are addressed by *modified* types (see
:func:`cgc.combin.modify`); ``ncomplete(x, n)`` realizes a type inside the
group of rank ``n``.  A structure constant is a fiber count: fix ``z`` in
the class of ``eta``, run ``x`` over the class of ``lambda`` and count those
with ``x^{-1} z`` of type ``mu``.  Class membership is always decided by
invariants (GL or symplectic type), never by searching for conjugators.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import batch, mat
from .classify import build_rep, classify, fixed_dim, refl_length
from .combin import (enumerate_types, level, modify, ncomplete, t_minus_one, type_sort_key,
                     weight)
from .gf import GF
from .grp import (DEFAULT_FILTER_BUDGET, DEFAULT_ORBIT_BUDGET, Codec,
                  centralizer_elements, centralizer_order_filtered, commutant_basis,
                  conj_orbit, generators, order_formula)


class CheckFailure(AssertionError):
    """A verified identity did not hold."""


# per-group context -------------------------------------------------------------


class Context:
    """Caches generators, types and class sizes for one group ``G_n(q)``."""

    _cache: dict = {}

    def __init__(self, kind: str, n: int, F: GF, orbit_budget: int = DEFAULT_ORBIT_BUDGET,
                 filter_budget: int = DEFAULT_FILTER_BUDGET):
        if kind not in ("gl", "sp"):
            raise ValueError(f"unknown kind {kind!r}")
        self.kind, self.n, self.F = kind, n, F
        self.d = 2 * n if kind == "sp" else n
        self.codec = Codec(F.q, self.d)
        self.gram = mat.gram_standard(n, F) if kind == "sp" else None
        self.gens = generators(kind, n, F)
        self.orbit_budget = orbit_budget
        self.filter_budget = filter_budget
        self._types: dict = {}
        self._orbits: dict = {}

    @classmethod
    def get(cls, kind, n, F, **kw) -> "Context":
        key = (kind, n, F.p, F.k)
        ctx = cls._cache.get(key)
        if ctx is None:
            ctx = cls._cache[key] = cls(kind, n, F, **kw)
        else:
            for k, v in kw.items():
                setattr(ctx, k, v)
        return ctx

    @property
    def order(self) -> int:
        return order_formula(self.kind, self.n, self.F.q)

    def complete(self, x):
        return ncomplete(x, self.n)

    def rep(self, x) -> np.ndarray:
        """Representative of the class with modified type ``x``."""
        return build_rep(self.complete(x), self.kind)

    def types_of(self, mats) -> list:
        """Types of a stack of matrices, memoized by packed code."""
        codes = self.codec.pack(mats)
        uniq, first, inv = np.unique(codes, return_index=True, return_inverse=True)
        out = []
        for c, i in zip(uniq.tolist() if not self.codec.wide else uniq, first):
            key = c if not self.codec.wide else bytes(c)
            t = self._types.get(key)
            if t is None:
                t = self._types[key] = classify(mats[i], self.F, self.kind)
            out.append(t)
        return [out[i] for i in inv.reshape(-1)]

    def orbit(self, x) -> np.ndarray:
        """Codes of the class of modified type ``x``."""
        if x not in self._orbits:
            self._orbits[x] = conj_orbit(self.rep(x), self.gens, self.F, self.orbit_budget)
        return self._orbits[x]

    def class_size(self, x) -> int:
        return len(self.orbit(x))

    def classes(self) -> list:
        """All modified types realized in ``G_n``."""
        w = self.d
        return sorted((modify(t) for t in enumerate_types(w, self.F, self.kind)),
                      key=type_sort_key)

    def fits(self, x) -> bool:
        return level(x) <= self.n


# fiber counting ----------------------------------------------------------------


def _check_fits(ctx: Context, *xs):
    for x in xs:
        if not ctx.fits(x):
            raise ValueError(f"type {x!r} does not fit at n={ctx.n}")


def fiber_tally(ctx: Context, lam, z) -> Counter:
    """Counter of complete types of ``x^{-1} z`` for ``x`` in the class of ``lam``."""
    codes = ctx.orbit(lam)
    tally = Counter()
    F = ctx.F
    for s in range(0, len(codes), 1 << 14):
        X = ctx.codec.unpack(codes[s:s + (1 << 14)])
        Y = F.matmul(batch.inverse(X, F), z)
        tally.update(ctx.types_of(Y))
    return tally


def structure_constant(kind: str, F: GF, n: int, lam, mu, eta, **budgets) -> int:
    """``c_{lam, mu}^{eta}(n)`` by fiber counting."""
    ctx = Context.get(kind, n, F, **budgets)
    _check_fits(ctx, lam, mu, eta)
    z = ctx.rep(eta)
    return fiber_tally(ctx, lam, z)[ctx.complete(mu)]


def product_expand(kind: str, F: GF, n: int, lam, mu, check_mass: bool = True, **budgets) -> dict:
    """All nonzero ``c_{lam, mu}^{eta}(n)``, keyed by modified ``eta``."""
    ctx = Context.get(kind, n, F, **budgets)
    _check_fits(ctx, lam, mu)
    target = ctx.complete(mu)
    out = {}
    for eta in ctx.classes():
        c = fiber_tally(ctx, lam, ctx.rep(eta))[target]
        if c:
            out[eta] = c
    if check_mass:
        lhs = sum(c * ctx.class_size(eta) for eta, c in out.items())
        rhs = ctx.class_size(lam) * ctx.class_size(mu)
        if lhs != rhs:
            raise CheckFailure(f"mass check failed: {lhs} != {rhs}")
    return out


def mass_check(kind: str, F: GF, n: int, lam, mu, expansion: dict) -> tuple:
    ctx = Context.get(kind, n, F)
    lhs = sum(c * ctx.class_size(eta) for eta, c in expansion.items())
    rhs = ctx.class_size(lam) * ctx.class_size(mu)
    return lhs, rhs


def filtered_product(kind: str, F: GF, n: int, lam, mu, **budgets) -> dict:
    """Top-degree part of the expansion: ``||eta|| = ||lam|| + ||mu||``."""
    full = product_expand(kind, F, n, lam, mu, **budgets)
    top = weight(lam) + weight(mu)
    return {eta: c for eta, c in full.items() if weight(eta) == top}


# orbit sums --------------------------------------------------------------------


@dataclass
class StructureReport:
    kind: str
    q: int
    n: int
    lam: object
    mu: object
    eta: object
    c: int
    method: str
    orbits: int = 0
    orbit_sum: int | None = None
    seconds: float = 0.0
    extra: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind, "q": self.q, "n": self.n,
            "lambda": self.lam.to_json(), "mu": self.mu.to_json(), "eta": self.eta.to_json(),
            "c": self.c, "method": self.method, "orbits": self.orbits,
            "orbit_sum": self.orbit_sum, **self.extra,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def orbit_sum_check(kind: str, F: GF, n: int, lam, mu, eta, **budgets) -> StructureReport:
    """Split the fiber over ``z`` into ``C(z)``-orbits and compare
    ``sum |C(z)| / |C(x_i) cap C(y_i)|`` with the fiber count."""
    t0 = time.perf_counter()
    ctx = Context.get(kind, n, F, **budgets)
    _check_fits(ctx, lam, mu, eta)
    z = ctx.rep(eta)
    target = ctx.complete(mu)
    codes = ctx.orbit(lam)
    X = ctx.codec.unpack(codes)
    Y = F.matmul(batch.inverse(X, F), z) if len(X) else X
    keep = np.array([t == target for t in ctx.types_of(Y)], dtype=bool) if len(X) else np.zeros(0, bool)
    fx, fy = X[keep], Y[keep]
    fcodes = codes[keep]
    c = len(fcodes)
    report = StructureReport(kind, F.q, n, lam, mu, eta, c, "orbit-sum")
    if c == 0:
        report.orbit_sum = 0
        report.seconds = time.perf_counter() - t0
        return report
    Cz = centralizer_elements([z], ctx.gram, F, ctx.filter_budget)
    Czi = batch.inverse(Cz, F)
    # x -> g x g^{-1} permutes the fiber; orbits are connected components
    rows, cols = [], []
    for g, gi in zip(Cz, Czi):
        img = ctx.codec.pack(F.matmul(F.matmul(g, fx), gi))
        pos = np.searchsorted(fcodes, img)
        if not (fcodes[np.minimum(pos, c - 1)] == img).all():
            raise CheckFailure("fiber not stable under C(z)")
        rows.append(np.arange(c))
        cols.append(pos)
    graph = coo_matrix((np.ones(c * len(Cz), dtype=np.int8),
                        (np.concatenate(rows), np.concatenate(cols))), shape=(c, c))
    k, labels = connected_components(graph, directed=True, connection="weak")
    total = 0
    sizes = np.bincount(labels)
    for lab in range(k):
        i = int(np.flatnonzero(labels == lab)[0])
        stab = centralizer_order_filtered([fx[i], fy[i]], ctx.gram, F, ctx.filter_budget)
        if len(Cz) % stab or len(Cz) // stab != sizes[lab]:
            raise CheckFailure(f"orbit size {sizes[lab]} != |C(z)|/|C(x) cap C(y)| = {len(Cz)}/{stab}")
        total += len(Cz) // stab
    report.orbits = k
    report.orbit_sum = total
    report.seconds = time.perf_counter() - t0
    if total != c:
        raise CheckFailure(f"orbit sum {total} != fiber count {c}")
    return report


# centralizer growth --------------------------------------------------------------


def has_identity_block(U, F: GF) -> bool:
    """True iff ``U`` has a 1x1 Jordan block for eigenvalue 1."""
    from .classify import gl_type
    return 1 in gl_type(U, F)[t_minus_one(F)]


def growth_check_sp(U, m: int, n: int, F: GF, budget: int = DEFAULT_FILTER_BUDGET) -> dict:
    U = np.asarray(U, dtype=np.int64)
    Gm, Gn = mat.gram_standard(m, F), mat.gram_standard(n, F)
    d = fixed_dim(U, F)
    left = centralizer_order_filtered([mat.embed_upup(U, n)], Gn, F, budget)
    cm = centralizer_order_filtered([U], Gm, F, budget)
    right = cm * order_formula("sp", n - m, F.q) * F.q ** (2 * (n - m) * d)
    return {"check": "growth-sp", "q": F.q, "m": m, "n": n, "d": d, "left": left,
            "right": right, "C_m": cm, "holds": left == right,
            "in_hypothesis": not has_identity_block(U, F)}


def growth_check_gl(U, m: int, n: int, F: GF, budget: int = DEFAULT_FILTER_BUDGET) -> dict:
    U = np.asarray(U, dtype=np.int64)
    d = fixed_dim(U, F)
    left = centralizer_order_filtered([mat.embed_up(U, n)], None, F, budget)
    cm = centralizer_order_filtered([U], None, F, budget)
    right = cm * order_formula("gl", n - m, F.q) * F.q ** (2 * d * (n - m))
    return {"check": "growth-gl", "q": F.q, "m": m, "n": n, "d": d, "left": left,
            "right": right, "C_m": cm, "holds": left == right,
            "in_hypothesis": not has_identity_block(U, F)}


def rl_additive(U1, U2, F: GF) -> bool:
    return refl_length(U1, F) + refl_length(U2, F) == refl_length(F.matmul(U1, U2), F)


def intersection_growth_check(U1, U2, m: int, n: int, F: GF,
                              budget: int = DEFAULT_FILTER_BUDGET) -> dict:
    U1 = np.asarray(U1, dtype=np.int64)
    U2 = np.asarray(U2, dtype=np.int64)
    U = F.matmul(U1, U2)
    d = fixed_dim(U, F)
    additive = rl_additive(U1, U2, F)
    out = {"check": "intersection-growth", "q": F.q, "m": m, "n": n, "d": d,
           "rl": [refl_length(U1, F), refl_length(U2, F), refl_length(U, F)],
           "additive": additive, "identity_block": has_identity_block(U, F)}
    out["in_hypothesis"] = additive and not out["identity_block"]
    Gm, Gn = mat.gram_standard(m, F), mat.gram_standard(n, F)
    left = centralizer_order_filtered([mat.embed_upup(U1, n), mat.embed_upup(U2, n)], Gn, F, budget)
    cm = centralizer_order_filtered([U1, U2], Gm, F, budget)
    right = cm * order_formula("sp", n - m, F.q) * F.q ** (2 * (n - m) * d)
    out.update(left=left, right=right, C_m=cm, holds=left == right)
    return out


def normal_form_fixedspace_check(U1, U2, F: GF) -> dict:
    """Subadditivity of reflection length, and for additive pairs the
    fixed-space identities ``V^U1 cap V^U2 = V^(U1 U2)`` and
    ``V^U1 + V^U2 = V``."""
    U1 = np.asarray(U1, dtype=np.int64)
    U2 = np.asarray(U2, dtype=np.int64)
    U = F.matmul(U1, U2)
    r1, r2, r = refl_length(U1, F), refl_length(U2, F), refl_length(U, F)
    out = {"rl": [r1, r2, r], "subadditive": r <= r1 + r2, "additive": r == r1 + r2}
    if out["additive"]:
        K1, K2, K = (mat.fixed_space(A, F) for A in (U1, U2, U))
        dim = len(U)
        both = np.vstack([K1, K2])
        s = mat.rank(both, F)
        # intersection dimension from the rank of the sum
        inter = len(K1) + len(K2) - s
        contains = all(mat.rank(np.vstack([K1, v[None]]), F) == len(K1)
                       and mat.rank(np.vstack([K2, v[None]]), F) == len(K2) for v in K)
        out["intersection_ok"] = contains and inter == len(K)
        out["sum_ok"] = s == dim
    out["holds"] = out["subadditive"] and out.get("intersection_ok", True) and out.get("sum_ok", True)
    return out


# shape properties of unipotent commutants -------------------------------------------


def u_blocks(spec, F: GF) -> list[np.ndarray]:
    """Split symplectic and orthogonal blocks into lower unitriangular pieces.

    ``spec`` lists ``("J", 2m)`` or ``("Je", 2m, eps)``.  A symplectic block
    contributes ``S_m`` and ``S_m^{-1}``; an orthogonal block is one piece.
    """
    out = []
    for item in spec:
        if item[0] == "J":
            m = item[1] // 2
            out += [mat.s_matrix(m), mat.s_inverse(m, F)]
        else:
            out.append(mat.j_block_eps(item[1], item[2], F))
    return out


def in_unitriangular_class(A) -> bool:
    A = np.asarray(A)
    k = len(A)
    return (np.array_equal(np.triu(A, 1), np.zeros_like(A)) and (A.diagonal() == 1).all()
            and all(A[i, i - 1] != 0 for i in range(1, k)))


def shape_check(pieces, F: GF) -> dict:
    """Free indices and leading rows of the commutant of ``diag(pieces)``.

    A free index is a position whose variable is absent from every equation
    of ``U X - X U = 0``.  Each block pair ``(i, j)`` should contribute exactly
    the position (last row of block ``i``, first column of block ``j``), and
    in every solution the first row of each block ``X_ij`` vanishes beyond its
    first entry.
    """
    U = mat.block_diag(*pieces)
    d = len(U)
    I = mat.eye(d)
    from .grp import _kron
    A = F.add_t[_kron(U, I, F), F.neg_t[_kron(I, U.T.copy(), F)]]
    free = {divmod(k, d) for k in range(d * d) if not A[:, k].any()}
    starts = np.cumsum([0] + [len(p) for p in pieces])
    expected = {(int(starts[i + 1] - 1), int(starts[j]))
                for i in range(len(pieces)) for j in range(len(pieces))}
    basis = commutant_basis([U], F)
    lead_ok = True
    for X in basis:
        for i in range(len(pieces)):
            for j in range(len(pieces)):
                row = X[starts[i], starts[j] + 1:starts[j + 1]]
                if row.any():
                    lead_ok = False
    return {"free": sorted(free), "expected": sorted(expected),
            "free_ok": free == expected, "leading_row_ok": lead_ok,
            "dim": len(basis)}


def block_specs(max_size: int, F: GF):
    """All multisets of symplectic/orthogonal unipotent blocks of total size
    ``<= max_size`` (orthogonal blocks with eps in {1, nonsquare})."""
    kinds = []
    for size in range(2, max_size + 1, 2):
        kinds.append(("J", size))
        kinds.append(("Je", size, 1))
        kinds.append(("Je", size, F.nonsquare()))

    def rec(start, room):
        yield ()
        for i in range(start, len(kinds)):
            size = kinds[i][1]
            if size <= room:
                for rest in rec(i, room - size):
                    yield (kinds[i],) + rest

    return [s for s in rec(0, max_size) if s]
