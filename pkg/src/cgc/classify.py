"""Conjugacy invariants: GL types, Wall forms, symplectic types, representatives.

Wall signs use the form ``h_s(v, w) = Q(v, D^(s-1) w)`` with
``D = U' - U'^{-1}`` and ``U' = zeta * U``, evaluated on lifts ``v`` of a basis
of the top layer of the free ``(t - 1)^s`` part.  The ``t + 1`` sign is the
``t - 1`` sign of ``-U``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from . import mat
from .batch import combine
from .combin import PartitionFn, SymplecticFn, TypeError_, t_minus_one, t_plus_one
from .gf import GF, sign_class
from .poly import Poly, dual, factor, is_irreducible, is_self_dual

log = logging.getLogger(__name__)

SIGN_CONVENTION = "h_s(v,w)=Q(v,D^(s-1)w), D=U'-U'^-1, U'=zeta*U; t+1 via -U"


class ClassifyError(ValueError):
    """Input outside the domain of a classifier (singular, not symplectic)."""


class InconsistencyError(RuntimeError):
    """An identity guaranteed by theory failed; indicates a bug."""


# GL types --------------------------------------------------------------------


def _partition_from_counts(counts) -> tuple:
    """Partition whose number of parts ``>= j`` is ``counts[j-1]``."""
    parts = []
    for j, c in enumerate(counts, start=1):
        nxt = counts[j] if j < len(counts) else 0
        parts += [j] * (c - nxt)
    return tuple(sorted(parts, reverse=True))


def _primary_partition(U, f: Poly, e: int, F: GF) -> tuple:
    d = f.degree
    fU = mat.poly_eval(f, U, F)
    ranks = [len(U)]
    P = mat.eye(len(U))
    for _ in range(e):
        P = mat.mul(P, fU, F)
        ranks.append(mat.rank(P, F))
        if ranks[-1] == ranks[-2]:
            break
    counts = [(ranks[j - 1] - ranks[j]) // d for j in range(1, len(ranks))]
    counts = [c for c in counts if c]
    return _partition_from_counts(counts)


def gl_type(U, F: GF) -> PartitionFn:
    U = np.asarray(U, dtype=np.int64)
    if mat.det(U, F) == 0:
        raise ClassifyError("singular matrix has no GL type")
    cp = mat.charpoly(U, F)
    items = tuple((f, _primary_partition(U, f, e, F)) for f, e in factor(cp))
    return PartitionFn(F, items)


def fixed_dim(U, F: GF) -> int:
    U = np.asarray(U, dtype=np.int64)
    return len(U) - mat.rank(mat.sub(U, mat.eye(len(U)), F), F)


def refl_length(U, F: GF) -> int:
    return len(U) - fixed_dim(U, F)


# Wall forms ------------------------------------------------------------------


@dataclass(frozen=True)
class WallBlockReport:
    size: int
    mult: int
    sign: int
    basis: np.ndarray
    gram: np.ndarray

    def as_tuple(self):
        return (self.size, self.mult, self.sign)


def _independent_subset(rows, F: GF) -> list[int]:
    """Indices of a maximal independent subset of ``rows``, chosen greedily."""
    chosen, span = [], np.zeros((0, rows.shape[1]), dtype=np.int64)
    r = 0
    for i, v in enumerate(rows):
        cand = np.vstack([span, v[None]])
        rk = mat.rank(cand, F)
        if rk > r:
            chosen.append(i)
            span, r = cand, rk
    return chosen


def wall_forms(U, zeta: int, G, F: GF) -> list[WallBlockReport]:
    """Wall forms on the generalized ``zeta``-eigenspace of symplectic ``U``."""
    U = np.asarray(U, dtype=np.int64)
    d = len(U)
    Up = U if zeta == 1 else mat.neg(U, F)
    I = mat.eye(d)
    N = mat.sub(Up, I, F)
    Delta = mat.sub(Up, mat.inverse(Up, F), F)
    W = mat.kernel_basis(mat.matpow(N, d, F), F)  # rows
    NT = N.T
    reports = []
    while len(W):
        # nilpotency index of N on W
        layers = [W]
        while layers[-1].any():
            layers.append(mat.mul(layers[-1], NT, F))
        s = len(layers) - 1
        top = layers[s - 1]
        pick = _independent_subset(top, F)
        V = W[pick]
        k = len(V)
        DV = mat.mul(V, mat.matpow(Delta, s - 1, F).T, F)
        h = mat.mul(mat.mul(V, G, F), DV.T, F)  # h[a, b] = Q(v_a, D^(s-1) v_b)
        dh = mat.det(h, F)
        if dh == 0:
            raise InconsistencyError(f"degenerate Wall form at size {s}")
        if s % 2:
            if k % 2:
                raise InconsistencyError(f"odd multiplicity {k} at odd size {s}")
            sign = -1
        else:
            sign = sign_class((F, dh))
        reports.append(WallBlockReport(s, k, sign, V, h))
        piece = np.vstack([layers[j][pick] for j in range(s)])
        # W <- W cap piece^perp, expressed through coordinates on W
        coords = mat.kernel_basis(mat.mul(mat.mul(piece, G, F), W.T, F), F)
        W = mat.mul(coords, W, F) if len(coords) else np.zeros((0, d), dtype=np.int64)
        if len(W):
            W = mat.row_space(W, F)
    return sorted(reports, key=lambda r: r.size)


def _signed(reports) -> tuple:
    return tuple(r.as_tuple() for r in reports)


def sp_type(U, F: GF, G=None) -> SymplecticFn:
    U = np.asarray(U, dtype=np.int64)
    if len(U) % 2:
        raise ClassifyError("symplectic matrices have even size")
    if G is None:
        G = mat.gram_standard(len(U) // 2, F)
    if not mat.is_symplectic(U, G, F):
        raise ClassifyError("matrix is not symplectic")
    gl = gl_type(U, F)
    base = {}
    for f, ps in gl.items:
        if is_self_dual(f):
            base[f] = ps
        else:
            g = dual(f)
            key = f * g
            if key not in base:
                base[key] = ps
    tm, tp = t_minus_one(F), t_plus_one(F)
    hm = _signed(wall_forms(U, 1, G, F)) if tm in base else ()
    hp = _signed(wall_forms(U, -1, G, F)) if tp in base else ()
    return SymplecticFn(PartitionFn.from_dict(F, base), hm, hp)


def classify(U, F: GF, kind: str):
    return sp_type(U, F) if kind == "sp" else gl_type(U, F)


# representatives -------------------------------------------------------------


def eps_block_sign(size: int, eps: int, F: GF) -> int:
    """Wall sign of ``j_block_eps(size, eps)``."""
    reps = wall_forms(mat.j_block_eps(size, eps, F), 1, mat.gram_standard(size // 2, F), F)
    return reps[0].sign


def _unipotent_blocks(signed, F: GF) -> list[np.ndarray]:
    blocks = []
    nu = F.nonsquare()
    for s, m, e in signed:
        if s % 2:
            if m % 2:
                raise TypeError_(f"odd part {s} needs even multiplicity")
            blocks += [mat.j_block(2 * s, F)] * (m // 2)
        else:
            base = eps_block_sign(s, 1, F)
            blocks += [mat.j_block_eps(s, 1, F)] * (m - 1)
            last = 1 if base ** m == e else nu
            blocks.append(mat.j_block_eps(s, last, F))
    return blocks


def _hyperbolic_double(A, F: GF) -> np.ndarray:
    """``diag(A, K A^{-T} K)``, symplectic for the standard form."""
    k = len(A)
    K = np.fliplr(mat.eye(k))
    B = mat.mul(mat.mul(K, mat.inverse(A, F).T.copy(), F), K, F)
    return mat.block_diag(A, B)


def _invariant_alternating(C, F: GF, rng) -> np.ndarray:
    """A nondegenerate alternating form ``B`` with ``C^T B C = B``."""
    k = len(C)
    idx = [(i, j) for i in range(k) for j in range(i + 1, k)]
    basis = []
    for i, j in idx:
        E = mat.zeros(k)
        E[i, j] = 1
        E[j, i] = F.neg_l[1]
        basis.append(E)
    basis = np.stack(basis)
    # linear map B -> C^T B C - B on the alternating basis
    img = mat.sub(F.matmul(F.matmul(C.T.copy()[None], basis), C[None]), basis, F)
    A = img.reshape(len(basis), -1).T
    forms = combine(mat.kernel_basis(A, F), basis, F)
    for _ in range(200):
        B = combine(rng.integers(0, F.q, len(forms)), forms, F)
        if mat.det(B, F):
            return B
    raise InconsistencyError("no nondegenerate invariant alternating form found")


def _symplectic_basis(B, F: GF) -> np.ndarray:
    """Columns ``e_1..e_k, f_k..f_1`` with ``P^T B P`` standard."""
    d = len(B)
    V = mat.eye(d)
    es, fs = [], []

    def Bf(u, w):
        return int(mat.mul(mat.mul(u[None], B, F), w[:, None], F)[0, 0])

    while len(V):
        u = V[0]
        w = next((v for v in V[1:] if Bf(u, v)), None)
        if w is None:
            raise InconsistencyError("degenerate form in symplectic basis")
        w = F.mul_t[F.inv_t[Bf(u, w)], w]
        es.append(u)
        fs.append(w)
        rest = []
        for v in V:
            a, b = Bf(v, w), Bf(v, u)
            v2 = F.add_t[F.add_t[v, F.mul_t[F.neg_l[a], u]], F.mul_t[b, w]]
            rest.append(v2)
        R = np.array(rest)
        V = mat.row_space(R, F) if R.any() else np.zeros((0, d), dtype=np.int64)
    return np.array(es + fs[::-1]).T.copy()


def _self_dual_block(f: Poly, s: int, F: GF, rng) -> np.ndarray:
    C = mat.companion(f, s)
    G = mat.gram_standard(len(C) // 2, F)
    if mat.is_symplectic(C, G, F):
        return C
    B = _invariant_alternating(C, F, rng)
    P = _symplectic_basis(B, F)
    M = mat.mul(mat.mul(mat.inverse(P, F), C, F), P, F)
    if not mat.is_symplectic(M, G, F):
        raise InconsistencyError("basis change did not produce a symplectic block")
    return M


def build_rep(x, kind: str | None = None, F: GF | None = None, seed: int = 0) -> np.ndarray:
    """A matrix whose type is ``x``."""
    if kind is None:
        kind = "sp" if isinstance(x, SymplecticFn) else "gl"
    F = x.field
    if kind == "gl":
        if isinstance(x, SymplecticFn):
            raise TypeError_("gl representative requested for a symplectic type")
        blocks = [mat.companion(f, s) for f, ps in x.items for s in ps]
        return mat.block_diag(*blocks) if blocks else np.zeros((0, 0), dtype=np.int64)
    if not isinstance(x, SymplecticFn) or x.modified:
        raise TypeError_("sp representative needs a complete symplectic type")
    rng = np.random.default_rng(seed)
    tm, tp = t_minus_one(F), t_plus_one(F)
    blocks = []
    for f, ps in x.base.items:
        if f == tm:
            blocks += _unipotent_blocks(x.hminus, F)
        elif f == tp:
            blocks += [mat.neg(b, F) for b in _unipotent_blocks(x.hplus, F)]
        elif is_irreducible(f):
            blocks += [_self_dual_block(f, s, F, rng) for s in ps]
        else:
            g = factor(f)[0][0]
            for s in ps:
                blocks.append(_hyperbolic_double(mat.companion(g, s), F))
    M = mat.orthogonal_sum(blocks) if blocks else np.zeros((0, 0), dtype=np.int64)
    if len(M) and sp_type(M, F) != x:
        M = _fallback_search(x, F)
    return M


def _fallback_search(x: SymplecticFn, F: GF) -> np.ndarray:
    from .grp import BudgetError, group_table
    n = x.weight // 2
    log.info("searching Sp_%d(%d) for a representative of %r", n, F.q, x)
    try:
        T = group_table("sp", n, F)
    except BudgetError as exc:
        raise TypeError_(f"no construction for {x!r} and group too large") from exc
    for rep in T.class_reps():
        if sp_type(rep, F) == x:
            return rep
    raise InconsistencyError(f"type {x!r} not realized in Sp_{n}({F.q})")
