"""Vectorized linear algebra over F_q on stacks of small matrices.

Every routine works on arrays shaped ``(S, r, c)`` and performs Gaussian
elimination for all ``S`` systems at once, choosing pivots per system.
"""

from __future__ import annotations

import numpy as np

from .gf import GF


def _mul(a, b, F: GF):
    if F.k == 1:
        return (a * b) % F.p
    return F.mul_t[a, b]


def _axpy(y, a, x, F: GF):
    """``y + a * x`` elementwise over F."""
    if F.k == 1:
        return (y + a * x) % F.p
    return F.add_t[y, F.mul_t[a, x]]


def _eliminate(M, ncols: int, F: GF):
    """Row-reduce ``M[s]`` in place over its first ``ncols`` columns.

    Returns ``(M, rank, pivcol)`` where ``pivcol[s, i]`` is the pivot column
    of row ``i`` (``-1`` past the rank).
    """
    S, r, _ = M.shape
    rank = np.zeros(S, dtype=np.int64)
    pivcol = np.full((S, r), -1, dtype=np.int64)
    rows = np.arange(r)
    sidx = np.arange(S)
    for c in range(ncols):
        if S == 0:
            break
        cand = (M[:, :, c] != 0) & (rows[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        s = sidx if has.all() else sidx[has]
        pr = cand[s].argmax(axis=1)
        rk = rank[s]
        a = M[s, pr].copy()
        M[s, pr] = M[s, rk]
        M[s, rk] = _mul(F.inv_t[a[:, c]][:, None], a, F)
        prow = M[s, rk]
        fac = F.neg_t[M[s, :, c]]
        fac[np.arange(len(s)), rk] = 0
        M[s] = _axpy(M[s], fac[:, :, None], prow[:, None, :], F)
        pivcol[s, rk] = c
        rank[s] += 1
    return M, rank, pivcol


def ranks(A, F: GF) -> np.ndarray:
    A = np.array(A, dtype=np.int64)
    _, rank, _ = _eliminate(A, A.shape[2], F)
    return rank


def invertible(A, F: GF) -> np.ndarray:
    A = np.asarray(A)
    return ranks(A, F) == A.shape[-1]


def solve_affine(A, b, F: GF):
    """Solve ``A[s] c = b[s]`` for every ``s``.

    Returns ``(ok, groups)``: ``ok`` flags consistent systems and ``groups``
    is a list of ``(indices, particular, kernel)`` where systems sharing a
    pivot pattern share the shape of the kernel basis ``(len, f, k)``.
    """
    A = np.asarray(A, dtype=np.int64)
    S, r, k = A.shape
    M = np.concatenate([A, np.asarray(b, dtype=np.int64)[:, :, None]], axis=2)
    M, rank, pivcol = _eliminate(M, k, F)
    rows = np.arange(r)
    ok = ~((M[:, :, k] != 0) & (rows[None, :] >= rank[:, None])).any(axis=1)
    groups = []
    good = np.flatnonzero(ok)
    if good.size == 0:
        return ok, groups
    # encode each pivot pattern as one integer to group systems cheaply
    weights = (k + 2) ** np.arange(r, dtype=np.int64)
    keys = (pivcol[good] + 1) @ weights
    pats, first, inv = np.unique(keys, return_index=True, return_inverse=True)
    for g in range(len(pats)):
        idx = good[inv == g]
        piv = [int(c) for c in pivcol[good[first[g]]] if c >= 0]
        free = [c for c in range(k) if c not in piv]
        Mg = M[idx]
        part = np.zeros((len(idx), k), dtype=np.int64)
        for i, c in enumerate(piv):
            part[:, c] = Mg[:, i, k]
        ker = np.zeros((len(idx), len(free), k), dtype=np.int64)
        for j, fc in enumerate(free):
            ker[:, j, fc] = 1
            for i, c in enumerate(piv):
                ker[:, j, c] = F.neg_t[Mg[:, i, fc]]
        groups.append((idx, part, ker))
    return ok, groups


def span_all(part, ker, F: GF) -> np.ndarray:
    """All points ``part + sum t_j ker_j`` as an array ``(S, q**f, k)``."""
    S, f, k = ker.shape
    q = F.q
    if f == 0:
        return part[:, None, :]
    coeffs = np.indices((q,) * f).reshape(f, -1).T  # (q^f, f)
    out = np.broadcast_to(part[:, None, :], (S, len(coeffs), k)).copy()
    for j in range(f):
        out = _axpy(out, coeffs[None, :, j, None], ker[:, None, j, :], F)
    return out


def combine(coeffs, basis, F: GF) -> np.ndarray:
    """``sum_k coeffs[..., k] * basis[k]`` over F."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    basis = np.asarray(basis, dtype=np.int64)
    if F.k == 1:
        return np.tensordot(coeffs, basis, axes=([-1], [0])) % F.p
    out = np.zeros(coeffs.shape[:-1] + basis.shape[1:], dtype=np.int64)
    for j in range(basis.shape[0]):
        out = F.add_t[out, F.mul_t[coeffs[..., j].reshape(coeffs.shape[:-1] + (1,) * (basis.ndim - 1)), basis[j]]]
    return out


def inverse(A, F: GF) -> np.ndarray:
    """Inverses of a stack of invertible matrices."""
    A = np.asarray(A, dtype=np.int64)
    S, d, _ = A.shape
    I = np.broadcast_to(np.eye(d, dtype=np.int64), (S, d, d))
    M, rank, _ = _eliminate(np.concatenate([A, I], axis=2), d, F)
    if (rank != d).any():
        raise ZeroDivisionError("singular matrix in batch")
    return M[:, :, d:]
