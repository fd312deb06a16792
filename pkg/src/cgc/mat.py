"""Dense matrices over F_q, symplectic forms and the rational-form builders.

Matrices are plain ``int64`` numpy arrays of field codes; every routine takes
the field explicitly.  :class:`Matrix` attaches basis labels for display and
for the CLI text format.

Symplectic spaces of rank ``n`` use the ordered hyperbolic basis
``e_1, .., e_n, f_n, .., f_1``, so the Gram matrix is anti-diagonal with
``+1`` in the upper half and ``-1`` in the lower half.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import GF, FieldError
from .poly import Poly, factor, is_irreducible


class MatrixError(ValueError):
    """Shape mismatch, singular inverse, or a malformed matrix."""


# basics ----------------------------------------------------------------------


def asmat(A, F: GF) -> np.ndarray:
    A = np.array(A, dtype=np.int64)
    if A.ndim != 2:
        raise MatrixError("expected a 2-d matrix")
    if F.k == 1:
        return A % F.p
    if A.min(initial=0) < 0 or A.max(initial=0) >= F.q:
        raise MatrixError("entries are not field codes")
    return A


def eye(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def zeros(r: int, c: int | None = None) -> np.ndarray:
    return np.zeros((r, r if c is None else c), dtype=np.int64)


def add(A, B, F: GF):
    return F.add_t[A, B]


def sub(A, B, F: GF):
    return F.add_t[A, F.neg_t[B]]


def neg(A, F: GF):
    return F.neg_t[A]


def scale(c: int, A, F: GF):
    return F.mul_t[c, A]


def mul(A, B, F: GF):
    if np.shape(A)[-1] != np.shape(B)[-2]:
        raise MatrixError(f"shape mismatch {np.shape(A)} @ {np.shape(B)}")
    return F.matmul(A, B)


def matpow(A, e: int, F: GF):
    if e < 0:
        A, e = inverse(A, F), -e
    R = eye(len(A))
    while e:
        if e & 1:
            R = mul(R, A, F)
        A = mul(A, A, F)
        e >>= 1
    return R


def block_diag(*blocks) -> np.ndarray:
    n = sum(len(b) for b in blocks)
    out = zeros(n)
    i = 0
    for b in blocks:
        k = len(b)
        out[i:i + k, i:i + k] = b
        i += k
    return out


# elimination -----------------------------------------------------------------


def rref(A, F: GF):
    """Reduced row echelon form and pivot columns."""
    R = np.array(A, dtype=np.int64)
    rows, cols = R.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.mul_t[F.inv_t[R[r, c]], R[r]]
        f = F.neg_t[R[:, c]].copy()
        f[r] = 0
        R = F.add_t[R, F.mul_t[f[:, None], R[r][None, :]]]
        piv.append(c)
        r += 1
    return R, piv


def rank(A, F: GF) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(A, F)[1])


def kernel_basis(A, F: GF) -> np.ndarray:
    """Rows spanning ``{x : A x = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return eye(cols)
    R, piv = rref(A, F)
    free = [c for c in range(cols) if c not in piv]
    out = zeros(len(free), cols)
    for k, c in enumerate(free):
        out[k, c] = 1
        for i, pc in enumerate(piv):
            out[k, pc] = F.neg_t[R[i, c]]
    return out


def row_space(A, F: GF) -> np.ndarray:
    R, piv = rref(A, F)
    return R[:len(piv)]


def det(A, F: GF) -> int:
    R = [list(map(int, row)) for row in np.asarray(A)]
    n = len(R)
    if any(len(row) != n for row in R):
        raise MatrixError("det of a non-square matrix")
    addl, mull, negl, invl = F.add_l, F.mul_l, F.neg_l, F.inv_l
    d = 1
    for c in range(n):
        p = next((i for i in range(c, n) if R[i][c]), None)
        if p is None:
            return 0
        if p != c:
            R[p], R[c] = R[c], R[p]
            d = negl[d]
        d = mull[d][R[c][c]]
        iv = invl[R[c][c]]
        for i in range(c + 1, n):
            if R[i][c]:
                u = negl[mull[R[i][c]][iv]]
                Ri, Rc = R[i], R[c]
                for k in range(c, n):
                    Ri[k] = addl[Ri[k]][mull[u][Rc[k]]]
    return d


def inverse(A, F: GF) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = len(A)
    if A.shape != (n, n):
        raise MatrixError("inverse of a non-square matrix")
    R, piv = rref(np.hstack([A, eye(n)]), F)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise FieldError("singular matrix")
    return R[:, n:]


def transpose(A) -> np.ndarray:
    return np.ascontiguousarray(np.asarray(A).T)


def linalg(M, op: str, F: GF, other=None):
    """Dispatch for ``mul``, ``inverse``, ``rank``, ``kernel_basis``, ``det``
    and ``transpose``."""
    ops = {
        "mul": lambda: mul(M, other, F),
        "inverse": lambda: inverse(M, F),
        "rank": lambda: rank(M, F),
        "kernel_basis": lambda: kernel_basis(M, F),
        "det": lambda: det(M, F),
        "transpose": lambda: transpose(M),
    }
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op]()


# polynomials of matrices -----------------------------------------------------


def poly_eval(f: Poly, A, F: GF) -> np.ndarray:
    n = len(A)
    R = zeros(n)
    for c in reversed(f.coeffs):
        R = mul(R, A, F)
        R[np.diag_indices(n)] = F.add_t[R.diagonal(), c]
    return R


def _padd(a, b, F):
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return [F.add_l[x][y] for x, y in zip(a, b)]


def _pscale(c, a, F):
    return [F.mul_l[c][x] for x in a]


def charpoly(A, F: GF) -> Poly:
    """Characteristic polynomial via reduction to upper Hessenberg form."""
    H = [list(map(int, row)) for row in np.asarray(A)]
    n = len(H)
    addl, mull, negl, invl = F.add_l, F.mul_l, F.neg_l, F.inv_l
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if H[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            H[piv], H[j + 1] = H[j + 1], H[piv]
            for row in H:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        hinv = invl[H[j + 1][j]]
        for i in range(j + 2, n):
            if H[i][j]:
                u = mull[H[i][j]][hinv]
                nu = negl[u]
                Hi, Hj = H[i], H[j + 1]
                for k in range(n):
                    Hi[k] = addl[Hi[k]][mull[nu][Hj[k]]]
                for row in H:
                    row[j + 1] = addl[row[j + 1]][mull[u][row[i]]]
    ps = [[1]]
    for k in range(1, n + 1):
        pk = [0] + ps[k - 1]
        pk = _padd(pk, _pscale(negl[H[k - 1][k - 1]], ps[k - 1], F), F)
        prod = 1
        for i in range(k - 1, 0, -1):
            prod = mull[prod][H[i][i - 1]]
            if not prod:
                break
            c = mull[H[i - 1][k - 1]][prod]
            if c:
                pk = _padd(pk, _pscale(negl[c], ps[i - 1], F), F)
        ps.append(pk)
    return Poly(F, tuple(ps[n]))


def minpoly(A, F: GF) -> Poly:
    """Minimal polynomial, obtained by lowering exponents of the char poly."""
    exps = dict(factor(charpoly(A, F)))
    for f in list(exps):
        while exps[f] > 0:
            exps[f] -= 1
            g = Poly(F, (1,))
            for h, e in exps.items():
                g = g * h ** e
            if np.any(poly_eval(g, A, F)):
                exps[f] += 1
                break
    g = Poly(F, (1,))
    for h, e in exps.items():
        g = g * h ** e
    return g


# builders --------------------------------------------------------------------


def companion(f: Poly, m: int = 1) -> np.ndarray:
    """Companion matrix of ``f**m``: ones below the diagonal and the
    coefficients ``a_i`` of ``f**m = t**k - sum a_i t**i`` in the last column."""
    if not f.is_monic() or not is_irreducible(f):
        raise MatrixError(f"companion expects a monic irreducible, got {f!r}")
    if m < 1:
        raise MatrixError("multiplicity must be positive")
    F = f.field
    g = f ** m
    k = g.degree
    C = zeros(k)
    for i in range(1, k):
        C[i, i - 1] = 1
    C[:, k - 1] = [F.neg_l[c] for c in g.coeffs[:-1]]
    return C


def s_matrix(n: int) -> np.ndarray:
    """Lower-triangular all-ones matrix; regular unipotent of size ``n``."""
    return np.tril(np.ones((n, n), dtype=np.int64))


def s_inverse(n: int, F: GF) -> np.ndarray:
    out = eye(n)
    for i in range(1, n):
        out[i, i - 1] = F.neg_l[1]
    return out


def j_block(size: int, F: GF) -> np.ndarray:
    """Symplectic unipotent block ``diag(S_m, S_m^{-1})`` of size ``2m``."""
    if size % 2 or size < 2:
        raise MatrixError("symplectic blocks have positive even size")
    m = size // 2
    return block_diag(s_matrix(m), s_inverse(m, F))


def j_block_eps(size: int, eps: int, F: GF) -> np.ndarray:
    """Orthogonal unipotent block: ``j_block`` with ``eps`` across row ``f_m``
    in the ``e`` columns."""
    eps = F.reduce(int(eps))
    if eps == 0:
        raise MatrixError("the orthogonal block needs eps != 0")
    m = size // 2
    J = j_block(size, F)
    J[m, :m] = eps
    return J


def sp_labels(n: int) -> list[str]:
    return [f"e{i}" for i in range(1, n + 1)] + [f"f{i}" for i in range(n, 0, -1)]


def gram_standard(n: int, F: GF) -> np.ndarray:
    G = zeros(2 * n)
    for i in range(n):
        G[i, 2 * n - 1 - i] = 1
        G[2 * n - 1 - i, i] = F.neg_l[1]
    return G


def form(u, v, G, F: GF) -> int:
    """``Q(u, v) = u^T G v``."""
    u = np.asarray(u, dtype=np.int64)[None, :]
    v = np.asarray(v, dtype=np.int64)[:, None]
    return int(mul(mul(u, G, F), v, F)[0, 0])


def is_symplectic(M, G, F: GF) -> bool:
    M = np.asarray(M)
    if M.shape != G.shape:
        return False
    return bool(np.array_equal(mul(mul(transpose(M), G, F), M, F), G))


def transvection(v, c: int, G, F: GF) -> np.ndarray:
    """``x -> x + c Q(x, v) v``."""
    v = np.asarray(v, dtype=np.int64)
    if not v.any() and c:
        raise MatrixError("transvection along the zero vector")
    w = mul(G, v[:, None], F)[:, 0]
    outer = F.mul_t[v[:, None], w[None, :]]
    return add(eye(len(v)), scale(F.reduce(int(c)), outer, F), F)


def sp_embed_indices(m: int, n: int) -> list[int]:
    return list(range(m)) + list(range(2 * n - m, 2 * n))


def embed_upup(U, n: int) -> np.ndarray:
    """Extend a symplectic ``U`` of size ``2m`` by the identity to size ``2n``.

    ``U``'s hyperbolic pairs ``(e_i, f_i)`` land on the ambient pairs with
    the same index, which keeps the result symplectic.
    """
    U = np.asarray(U, dtype=np.int64)
    if len(U) % 2:
        raise MatrixError("symplectic matrices have even size")
    m = len(U) // 2
    if n < m:
        raise MatrixError(f"cannot embed rank {m} into rank {n}")
    idx = sp_embed_indices(m, n)
    M = eye(2 * n)
    M[np.ix_(idx, idx)] = U
    return M


def embed_up(U, n: int) -> np.ndarray:
    """GL embedding ``diag(U, I_{n-m})``."""
    U = np.asarray(U, dtype=np.int64)
    if n < len(U):
        raise MatrixError(f"cannot embed size {len(U)} into size {n}")
    return block_diag(U, eye(n - len(U)))


def orthogonal_sum(blocks) -> np.ndarray:
    """Orthogonal sum of symplectic blocks, each in its own hyperbolic order.

    Block ``k`` receives the hyperbolic pairs numbered after those of the
    earlier blocks, then everything is laid out in the standard order.
    """
    sizes = [len(b) // 2 for b in blocks]
    n = sum(sizes)
    M = eye(2 * n)
    off = 0
    for b, m in zip(blocks, sizes):
        idx = [off + i for i in range(m)] + [2 * n - (off + m - i) for i in range(m)]
        M[np.ix_(idx, idx)] = b
        off += m
    return M


def orth_complement(W, G, F: GF) -> np.ndarray:
    """Rows spanning ``{x : Q(w, x) = 0 for all rows w of W}``."""
    W = np.asarray(W, dtype=np.int64).reshape(-1, len(G))
    if len(W) == 0:
        return eye(len(G))
    return kernel_basis(mul(W, G, F), F)


def fixed_space(U, F: GF) -> np.ndarray:
    return kernel_basis(sub(U, eye(len(U)), F), F)


# labeled matrices and text ---------------------------------------------------


def parse_matrix(text: str, F: GF) -> np.ndarray:
    """``"1,0;1,1"`` -> 2x2 array.  Integers are reduced into ``F``."""
    try:
        rows = [[F.reduce(int(x)) for x in r.split(",")] for r in text.strip().split(";")]
    except ValueError as exc:
        raise MatrixError(f"cannot parse matrix {text!r}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise MatrixError("ragged matrix")
    return np.array(rows, dtype=np.int64)


def format_matrix(A) -> str:
    return ";".join(",".join(str(int(x)) for x in row) for row in np.asarray(A))


@dataclass(frozen=True, eq=False)
class Matrix:
    """A matrix with basis labels on rows and columns."""

    field: GF
    entries: np.ndarray
    row_labels: tuple = ()
    col_labels: tuple = ()

    def __post_init__(self):
        E = asmat(self.entries, self.field)
        E.setflags(write=False)
        object.__setattr__(self, "entries", E)
        r, c = E.shape
        if not self.row_labels:
            object.__setattr__(self, "row_labels", tuple(f"b{i + 1}" for i in range(r)))
        if not self.col_labels:
            labels = self.row_labels if r == c else tuple(f"b{i + 1}" for i in range(c))
            object.__setattr__(self, "col_labels", labels)
        if len(self.row_labels) != r or len(self.col_labels) != c:
            raise MatrixError("label count does not match shape")

    @classmethod
    def parse(cls, text: str, F: GF, labels=()) -> "Matrix":
        return cls(F, parse_matrix(text, F), tuple(labels), tuple(labels))

    @classmethod
    def symplectic(cls, A, F: GF) -> "Matrix":
        labels = tuple(sp_labels(len(A) // 2))
        return cls(F, A, labels, labels)

    @property
    def shape(self):
        return self.entries.shape

    def text(self) -> str:
        return format_matrix(self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.field, mul(self.entries, other.entries, self.field),
                      self.row_labels, other.col_labels)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.field is self.field
                and np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash(self.entries.tobytes())

    def __repr__(self):
        w = max(len(str(x)) for x in self.entries.flat) if self.entries.size else 1
        lw = max((len(s) for s in self.row_labels), default=0)
        head = " " * (lw + 1) + " ".join(s.rjust(w) for s in self.col_labels)
        body = [lab.rjust(lw) + " " + " ".join(str(int(x)).rjust(max(w, len(c)))
                                                for x, c in zip(row, self.col_labels))
                for lab, row in zip(self.row_labels, self.entries)]
        return "\n".join([head] + body)
