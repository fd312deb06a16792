"""Enumeration of small GL_n(q) and Sp_n(q), conjugacy classes and centralizers.

Group elements are packed into integer codes (base ``q`` digits of the
row-major entries) so that whole groups live in one sorted ``int64`` array.
Sizes whose codes would overflow 62 bits fall back to fixed-width byte
strings, which sort and search the same way.
"""

from __future__ import annotations

import itertools
import logging
import os
import struct
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import batch
from .gf import GF
from .mat import eye, gram_standard, inverse, kernel_basis, transvection

log = logging.getLogger(__name__)

DEFAULT_ORBIT_BUDGET = 10 ** 7
DEFAULT_FILTER_BUDGET = 10 ** 8
CHUNK = 1 << 16


class BudgetError(RuntimeError):
    """A computation would exceed its configured budget."""


class GeneratorError(RuntimeError):
    """Generators do not produce the expected group."""


# closed forms ----------------------------------------------------------------


def order_formula(kind: str, n: int, q: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    if kind == "gl":
        out = 1
        for i in range(n):
            out *= q ** n - q ** i
        return out
    if kind == "sp":
        out = q ** (n * n)
        for i in range(1, n + 1):
            out *= q ** (2 * i) - 1
        return out
    raise ValueError(f"unknown kind {kind!r}")


# packing ---------------------------------------------------------------------


class Codec:
    """Packs ``d x d`` matrices over ``F_q`` into sortable codes."""

    def __init__(self, q: int, d: int):
        self.q, self.d = q, d
        self.wide = q ** (d * d) >= 2 ** 62
        if not self.wide:
            self.powers = np.array([q ** i for i in range(d * d)], dtype=np.int64)

    def pack(self, M) -> np.ndarray:
        M = np.asarray(M, dtype=np.int64)
        flat = M.reshape(-1, self.d * self.d)
        if self.wide:
            b = np.ascontiguousarray(flat.astype(np.uint8))
            return b.view(np.dtype((np.void, self.d * self.d))).reshape(-1)
        return flat @ self.powers

    def unpack(self, codes) -> np.ndarray:
        codes = np.asarray(codes)
        if self.wide:
            b = codes.view(np.uint8).reshape(-1, self.d * self.d)
            return b.astype(np.int64).reshape(-1, self.d, self.d)
        out = np.empty((len(codes), self.d * self.d), dtype=np.int64)
        c = codes.astype(np.int64).copy()
        for i in range(self.d * self.d):
            out[:, i] = c % self.q
            c //= self.q
        return out.reshape(-1, self.d, self.d)


def _member(sorted_codes, codes):
    if len(sorted_codes) == 0:
        return np.zeros(len(codes), dtype=bool), np.zeros(len(codes), dtype=np.int64)
    pos = np.searchsorted(sorted_codes, codes)
    pos = np.minimum(pos, len(sorted_codes) - 1)
    return sorted_codes[pos] == codes, pos


def _union_sorted(a, b):
    return np.unique(np.concatenate([a, b]))


# generators ------------------------------------------------------------------


def gl_generators(n: int, F: GF) -> list[np.ndarray]:
    gens = []
    for i, j in itertools.permutations(range(n), 2):
        E = eye(n)
        E[i, j] = 1
        gens.append(E)
    D = eye(n)
    D[0, 0] = F.primitive()
    gens.append(D)
    return gens


def _sp_directions(n: int, full: bool):
    d = 2 * n
    if full:
        for v in itertools.product(range(2), repeat=d):
            if any(v):
                yield np.array(v, dtype=np.int64)
        return
    e = lambda i: i - 1
    f = lambda i: d - i
    for i in range(1, n + 1):
        for k in (e(i), f(i)):
            v = np.zeros(d, dtype=np.int64)
            v[k] = 1
            yield v
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            v = np.zeros(d, dtype=np.int64)
            v[e(i)] = 1
            v[f(j)] += 1
            yield v
    for i, j in itertools.combinations(range(1, n + 1), 2):
        v = np.zeros(d, dtype=np.int64)
        v[e(i)] = v[e(j)] = 1
        yield v


def sp_generators(n: int, F: GF, full: bool = False) -> list[np.ndarray]:
    """Transvections along a spanning set of directions and all scalars."""
    G = gram_standard(n, F)
    gens = []
    for v in _sp_directions(n, full):
        for c in range(1, F.q):
            gens.append(transvection(v, c, G, F))
    return gens


def generators(kind: str, n: int, F: GF, full: bool = False):
    return gl_generators(n, F) if kind == "gl" else sp_generators(n, F, full)


# group tables ----------------------------------------------------------------


@dataclass
class GroupTable:
    """An enumerated matrix group as a sorted array of packed codes."""

    field: GF
    d: int
    codes: np.ndarray
    kind: str = "gl"
    n: int = 0
    gens: list = dc_field(default_factory=list, repr=False)
    _class_id: np.ndarray | None = dc_field(default=None, repr=False)

    @property
    def codec(self) -> Codec:
        return Codec(self.field.q, self.d)

    @property
    def order(self) -> int:
        return len(self.codes)

    def __len__(self):
        return len(self.codes)

    def matrices(self, idx=None) -> np.ndarray:
        c = self.codes if idx is None else self.codes[idx]
        return self.codec.unpack(c)

    def index(self, mats) -> np.ndarray:
        codes = self.codec.pack(mats)
        found, pos = _member(self.codes, codes)
        if not found.all():
            raise KeyError("matrix not in group")
        return pos

    def contains(self, mats) -> np.ndarray:
        return _member(self.codes, self.codec.pack(mats))[0]

    # conjugacy classes

    def conj_perm(self, g) -> np.ndarray:
        """Index permutation ``x -> g x g^{-1}``."""
        F = self.field
        gi = inverse(g, F)
        out = np.empty(len(self.codes), dtype=np.int64)
        for s in range(0, len(self.codes), CHUNK):
            X = self.matrices(slice(s, s + CHUNK))
            out[s:s + CHUNK] = self.index(F.matmul(F.matmul(g, X), gi))
        return out

    @property
    def class_id(self) -> np.ndarray:
        if self._class_id is None:
            N = len(self.codes)
            rows, cols = [], []
            for g in self.gens:
                rows.append(np.arange(N))
                cols.append(self.conj_perm(g))
            r = np.concatenate(rows) if rows else np.arange(N)
            c = np.concatenate(cols) if cols else np.arange(N)
            graph = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(N, N))
            _, labels = connected_components(graph, directed=True, connection="weak")
            # renumber classes by their first element so ids are deterministic
            first = {}
            ids = np.empty(N, dtype=np.int64)
            for i, lab in enumerate(labels):
                ids[i] = first.setdefault(lab, len(first))
            self._class_id = ids
        return self._class_id

    def classes(self) -> list[np.ndarray]:
        cid = self.class_id
        order = np.argsort(cid, kind="stable")
        bounds = np.flatnonzero(np.diff(cid[order])) + 1
        return np.split(order, bounds)

    def class_reps(self) -> np.ndarray:
        return self.matrices(np.array([c[0] for c in self.classes()]))

    def centralizer_order(self, x) -> int:
        """Direct scan for elements commuting with ``x``."""
        F = self.field
        total = 0
        for s in range(0, len(self.codes), CHUNK):
            X = self.matrices(slice(s, s + CHUNK))
            total += int((F.matmul(X, x) == F.matmul(x, X)).all(axis=(1, 2)).sum())
        return total


def bfs_closure(gens, F: GF, expected: int | None = None, budget: int = DEFAULT_ORBIT_BUDGET,
                kind: str = "gl", n: int = 0) -> GroupTable:
    """Closure of ``gens`` under right multiplication by generators."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    if not gens:
        raise GeneratorError("empty generator set")
    d = len(gens[0])
    codec = Codec(F.q, d)
    seen = codec.pack(eye(d)[None])
    frontier = eye(d)[None]
    G = np.stack(gens)
    while len(frontier):
        new = []
        for s in range(0, len(frontier), CHUNK):
            block = frontier[s:s + CHUNK]
            prods = F.matmul(block[:, None], G[None]).reshape(-1, d, d)
            new.append(np.unique(codec.pack(prods)))
        cand = np.unique(np.concatenate(new))
        fresh = cand[~_member(seen, cand)[0]]
        seen = _union_sorted(seen, fresh)
        if len(seen) > budget:
            raise BudgetError(f"closure exceeds {budget} elements")
        frontier = codec.unpack(fresh)
    if expected is not None and len(seen) != expected:
        raise GeneratorError(
            f"generators insufficient: closure has {len(seen)} elements, expected {expected}")
    return GroupTable(F, d, seen, kind=kind, n=n, gens=gens)


# cache -----------------------------------------------------------------------

MAGIC = b"CGC1"
_KINDS = {"gl": 0, "sp": 1}


def cache_dir(path=None) -> Path:
    if path is not None:
        return Path(path)
    env = os.environ.get("CGC_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "cgc"


def _cache_file(kind, n, F, path) -> Path:
    return cache_dir(path) / f"{kind}_{n}_{F.p}_{F.k}.cgc"


def save_table(T: GroupTable, fname) -> None:
    """Magic, kind, n, q, count, then 16-byte little-endian codes."""
    if T.codec.wide:
        raise ValueError("wide codes are not cached")
    fname = Path(fname)
    fname.parent.mkdir(parents=True, exist_ok=True)
    lo = T.codes.astype("<u8")
    body = np.zeros((len(lo), 2), dtype="<u8")
    body[:, 0] = lo
    tmp = fname.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<BIIQ", _KINDS[T.kind], T.n, T.field.q, len(lo)))
        fh.write(body.tobytes())
    tmp.replace(fname)


def load_table(fname, F: GF) -> GroupTable:
    with open(fname, "rb") as fh:
        if fh.read(4) != MAGIC:
            raise ValueError(f"{fname}: bad magic")
        kind, n, q, count = struct.unpack("<BIIQ", fh.read(17))
        body = np.frombuffer(fh.read(16 * count), dtype="<u8").reshape(count, 2)
    if q != F.q:
        raise ValueError(f"{fname}: field mismatch")
    kind = {v: k for k, v in _KINDS.items()}[kind]
    d = 2 * n if kind == "sp" else n
    return GroupTable(F, d, body[:, 0].astype(np.int64), kind=kind, n=n,
                      gens=generators(kind, n, F))


def group_table(kind: str, n: int, F: GF, cache=None, use_cache: bool = True,
                budget: int = DEFAULT_ORBIT_BUDGET) -> GroupTable:
    """Enumerate GL_n(q) or Sp_n(q), reading or writing the on-disk cache."""
    if kind == "sp" and F.p == 2:
        raise ValueError("Sp needs odd q")
    expected = order_formula(kind, n, F.q)
    if expected > budget:
        raise BudgetError(f"|{kind}_{n}({F.q})| = {expected} exceeds budget {budget}")
    fname = _cache_file(kind, n, F, cache)
    if use_cache and fname.exists():
        try:
            T = load_table(fname, F)
            if len(T) == expected:
                return T
        except (OSError, ValueError, struct.error) as exc:
            log.warning("ignoring unreadable cache %s: %s", fname, exc)
    gens = generators(kind, n, F)
    try:
        T = bfs_closure(gens, F, expected, budget, kind, n)
    except GeneratorError:
        if kind != "sp":
            raise
        log.info("enlarging transvection directions for Sp_%d(%d)", n, F.q)
        T = bfs_closure(generators(kind, n, F, full=True), F, expected, budget, kind, n)
    if use_cache and not T.codec.wide:
        try:
            save_table(T, fname)
        except OSError as exc:
            log.warning("cannot write cache %s: %s", fname, exc)
    return T


# orbits ----------------------------------------------------------------------


def conj_orbit(rep, gens, F: GF, budget: int = DEFAULT_ORBIT_BUDGET) -> np.ndarray:
    """Sorted codes of the conjugacy orbit of ``rep`` under ``<gens>``."""
    rep = np.asarray(rep, dtype=np.int64)
    d = len(rep)
    codec = Codec(F.q, d)
    G = np.stack(gens)
    Gi = np.stack([inverse(g, F) for g in gens])
    seen = codec.pack(rep[None])
    frontier = rep[None]
    while len(frontier):
        new = []
        for s in range(0, len(frontier), max(1, CHUNK // len(G))):
            X = frontier[s:s + max(1, CHUNK // len(G))]
            conj = F.matmul(F.matmul(G[None], X[:, None]), Gi[None]).reshape(-1, d, d)
            new.append(np.unique(codec.pack(conj)))
        cand = np.unique(np.concatenate(new))
        fresh = cand[~_member(seen, cand)[0]]
        seen = _union_sorted(seen, fresh)
        if len(seen) > budget:
            raise BudgetError(f"orbit exceeds {budget} elements")
        frontier = codec.unpack(fresh)
    return seen


# commutants and centralizers ---------------------------------------------------


def _kron(A, B, F: GF):
    a, b = len(A), len(B)
    return F.mul_t[A[:, None, :, None], B[None, :, None, :]].reshape(a * b, a * b)


def commutant_basis(Us, F: GF) -> np.ndarray:
    """Basis ``(D, d, d)`` of ``{X : U X = X U for all U in Us}``."""
    Us = [np.asarray(U, dtype=np.int64) for U in Us]
    d = len(Us[0])
    I = eye(d)
    rows = []
    for U in Us:
        # row-major vec: vec(U X) = (U kron I) vec X, vec(X U) = (I kron U^T) vec X
        rows.append(F.add_t[_kron(U, I, F), F.neg_t[_kron(I, U.T.copy(), F)]])
    A = np.vstack(rows)
    return kernel_basis(A, F).reshape(-1, d, d)


def _column_major_rref(basis, order, F: GF):
    """Re-express a commutant basis in RREF over column-major coordinates,
    with matrix columns visited in ``order``."""
    from .mat import rref
    D, d, _ = basis.shape
    flat = basis[:, :, order].transpose(0, 2, 1).reshape(D, d * d)
    R, piv = rref(flat, F)
    R = R[:len(piv)]
    stage = [p // d for p in piv]
    return R.reshape(-1, d, d).transpose(0, 2, 1), stage  # back to (D, rows, ordered cols)


def _pair_order(d: int) -> list[int]:
    n = d // 2
    out = []
    for i in range(n):
        out += [i, d - 1 - i]
    return out


class _Search:
    """Staged enumeration of symplectic elements inside a commutant.

    Columns of ``X`` are fixed one at a time (in hyperbolic-pair order); the
    coefficients whose pivot lies in the current column enter linearly in
    ``Q(x_a, x_j) = G_aj`` for earlier columns ``a``.
    """

    def __init__(self, basis, G, F: GF, budget: int, collect: bool):
        self.F = F
        self.G = G
        d = len(G)
        self.d = d
        self.order = _pair_order(d)
        self.B, stage = _column_major_rref(basis, self.order, F)
        self.groups = [[k for k, s in enumerate(stage) if s == j] for j in range(d)]
        self.Gp = G[np.ix_(self.order, self.order)]
        self.budget = budget
        self.work = 0
        self.collect = collect
        self.found = []
        self.count = 0

    def run(self):
        D = len(self.B)
        self._expand(0, np.zeros((1, D), dtype=np.int64))
        return self.count

    def _expand(self, j, coeffs):
        F, d = self.F, self.d
        self.work += len(coeffs)
        if self.work > self.budget:
            raise BudgetError(f"centralizer search exceeds {self.budget} states")
        grp = self.groups[j]
        # column j of X for the coefficients chosen so far
        base = batch.combine(coeffs, self.B[:, :, j], F)  # (S, d)
        if j == 0:
            A = np.zeros((len(coeffs), 0, len(grp)), dtype=np.int64)
            rhs = np.zeros((len(coeffs), 0), dtype=np.int64)
        else:
            prev = batch.combine(coeffs, self.B[:, :, :j], F)  # (S, d, j)
            QX = F.matmul(prev.transpose(0, 2, 1), self.G[None])  # rows x_a^T G
            P = self.B[grp][:, :, j].T  # (d, k)
            A = F.matmul(QX, np.broadcast_to(P, (len(coeffs),) + P.shape))
            rhs = F.add_t[self.Gp[:j, j][None, :], F.neg_t[F.matmul(QX, base[:, :, None])[..., 0]]]
        if not grp:
            ok = ~(rhs != 0).any(axis=1) if j else np.ones(len(coeffs), dtype=bool)
            survivors = coeffs[ok]
            if not self._nonzero_column(survivors, j):
                return
            self._next(j, survivors)
            return
        ok, groups = batch.solve_affine(A, rhs, F)
        for idx, part, ker in groups:
            if j == d - 1 and not self.collect:
                self.count += len(idx) * F.q ** ker.shape[1]
                continue
            sols = batch.span_all(part, ker, F)  # (S', q^f, k)
            new = np.repeat(coeffs[idx], sols.shape[1], axis=0)
            new[:, grp] = sols.reshape(-1, len(grp))
            self._next(j, new)

    def _nonzero_column(self, coeffs, j):
        return len(coeffs) > 0

    def _next(self, j, coeffs):
        if len(coeffs) == 0:
            return
        if j == self.d - 1:
            if self.collect:
                X = batch.combine(coeffs, self.B, self.F)
                inv = np.argsort(self.order)
                self.found.append(X[:, :, inv])
            self.count += len(coeffs)
            return
        for s in range(0, len(coeffs), CHUNK):
            self._expand(j + 1, coeffs[s:s + CHUNK])


def _gl_filter(basis, F: GF, budget: int, collect: bool):
    D, d, _ = basis.shape
    total_space = F.q ** D
    if total_space > budget:
        raise BudgetError(f"commutant has q^{D} = {total_space} elements, budget {budget}")
    count, found = 0, []
    for s in range(0, total_space, CHUNK):
        idx = np.arange(s, min(s + CHUNK, total_space))
        coeffs = np.stack([(idx // F.q ** i) % F.q for i in range(D)], axis=1)
        X = batch.combine(coeffs, basis, F)
        good = batch.invertible(X, F)
        count += int(good.sum())
        if collect:
            found.append(X[good])
    return count, found


def centralizer_order_filtered(Us, gram=None, F: GF | None = None,
                               budget: int = DEFAULT_FILTER_BUDGET) -> int:
    """Number of invertible (and, given ``gram``, symplectic) elements of the
    joint commutant of ``Us``."""
    Us = [np.asarray(U, dtype=np.int64) for U in Us]
    basis = commutant_basis(Us, F)
    if gram is None:
        return _gl_filter(basis, F, budget, False)[0]
    return _Search(basis, np.asarray(gram, dtype=np.int64), F, budget, False).run()


def centralizer_elements(Us, gram=None, F: GF | None = None,
                         budget: int = DEFAULT_FILTER_BUDGET) -> np.ndarray:
    """All elements of the centralizer as an array ``(N, d, d)``."""
    Us = [np.asarray(U, dtype=np.int64) for U in Us]
    d = len(Us[0])
    basis = commutant_basis(Us, F)
    if gram is None:
        _, found = _gl_filter(basis, F, budget, True)
    else:
        s = _Search(basis, np.asarray(gram, dtype=np.int64), F, budget, True)
        s.run()
        found = s.found
    return np.concatenate(found) if found else np.zeros((0, d, d), dtype=np.int64)


def all_transvections(n: int, F: GF) -> list[np.ndarray]:
    """Every symplectic transvection of rank ``n``, without repeats."""
    G = gram_standard(n, F)
    codec = Codec(F.q, 2 * n)
    out, seen = [], set()
    for v in itertools.product(range(F.q), repeat=2 * n):
        if not any(v):
            continue
        for c in range(1, F.q):
            T = transvection(np.array(v), c, G, F)
            key = int(codec.pack(T[None])[0])
            if key not in seen:
                seen.add(key)
                out.append(T)
    return out


def word_lengths(T: GroupTable, gens) -> np.ndarray:
    """BFS distance from the identity in the Cayley graph of ``gens``."""
    F = T.field
    dist = np.full(len(T), -1, dtype=np.int64)
    start = T.index(eye(T.d)[None])
    dist[start] = 0
    frontier = start
    G = np.stack(gens)
    k = 0
    while len(frontier):
        k += 1
        nxt = []
        for s in range(0, len(frontier), max(1, CHUNK // len(G))):
            X = T.matrices(frontier[s:s + max(1, CHUNK // len(G))])
            prods = F.matmul(X[:, None], G[None]).reshape(-1, T.d, T.d)
            nxt.append(T.index(prods))
        cand = np.unique(np.concatenate(nxt))
        cand = cand[dist[cand] < 0]
        dist[cand] = k
        frontier = cand
    return dist
