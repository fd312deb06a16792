"""Finite fields F_q of small order.

Elements are plain integers ``0 .. q-1``.  For a prime field the integer is
the residue itself; for ``q = p^k`` it encodes the coefficient vector of the
element in the power basis ``1, x, .., x^(k-1)`` in base ``p``.  All
arithmetic goes through precomputed tables so that the same code works on
scalars and on numpy arrays.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

# Conway polynomials, ascending coefficients, monic.
CONWAY = {
    (3, 2): (2, 2, 1),
    (5, 2): (2, 4, 1),
    (3, 3): (1, 2, 0, 1),
    (7, 2): (3, 6, 1),
}


class FieldError(ArithmeticError):
    """Illegal field operation (division by zero, bad field spec)."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _polymulmod(a, b, mod, p):
    k = len(mod) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for j in range(k + 1):
                prod[d - k + j] = (prod[d - k + j] - c * mod[j]) % p
    return prod[:k]


class GF:
    """The field with ``q = p**k`` elements.

    Use :func:`field` to obtain instances; fields are cached so that identity
    comparison works.
    """

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be positive")
        if k > 1 and (p, k) not in CONWAY:
            raise FieldError(f"no built-in modulus for q={p}^{k}")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = CONWAY[(p, k)] if k > 1 else (0, 1)
        q = self.q
        if k == 1:
            r = np.arange(p)
            self.add_t = (r[:, None] + r[None, :]) % p
            self.mul_t = (r[:, None] * r[None, :]) % p
        else:
            digits = [self._digits(v) for v in range(q)]
            self.add_t = np.array(
                [[self._undigits([(x + y) % p for x, y in zip(a, b)]) for b in digits]
                 for a in digits])
            self.mul_t = np.array(
                [[self._undigits(_polymulmod(a, b, self.modulus, p)) for b in digits]
                 for a in digits])
        self.neg_t = np.argmin(self.add_t, axis=1)  # a + neg(a) == 0
        self.inv_t = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv_t[a] = int(np.nonzero(self.mul_t[a] == 1)[0][0])
        squares = {int(self.mul_t[a, a]) for a in range(1, q)}
        self.sign_t = np.array([0] + [1 if a in squares else -1 for a in range(1, q)])
        for t in (self.add_t, self.mul_t, self.neg_t, self.inv_t):
            t.setflags(write=False)
        # nested lists are faster than numpy for scalar loops
        self.add_l = self.add_t.tolist()
        self.mul_l = self.mul_t.tolist()
        self.neg_l = self.neg_t.tolist()
        self.inv_l = self.inv_t.tolist()

    def _digits(self, v):
        out = []
        for _ in range(self.k):
            out.append(v % self.p)
            v //= self.p
        return out

    def _undigits(self, ds):
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def __repr__(self):
        return f"GF({self.q})" if self.k == 1 else f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (field, (self.p, self.k))

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    # scalar / array arithmetic -------------------------------------------

    def add(self, a, b):
        return self.add_t[a, b]

    def sub(self, a, b):
        return self.add_t[a, self.neg_t[b]]

    def mul(self, a, b):
        return self.mul_t[a, b]

    def neg(self, a):
        return self.neg_t[a]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise FieldError("division by zero")
        return self.inv_t[a]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def power(self, a: int, e: int) -> int:
        if e < 0:
            a, e = int(self.inv(a)), -e
        r = 1
        while e:
            if e & 1:
                r = int(self.mul_t[r, a])
            a = int(self.mul_t[a, a])
            e >>= 1
        return r

    def reduce(self, n: int) -> int:
        """Map an integer (possibly negative) to its canonical element.

        For prime fields this is ``n mod p``; for extension fields ``n`` must
        already be a valid code or is reduced in the prime subfield.
        """
        if self.k == 1:
            return n % self.p
        if 0 <= n < self.q:
            return n
        return n % self.p

    def elements(self) -> list["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    def __call__(self, v: int) -> "FieldElement":
        return FieldElement(self, self.reduce(int(v)))

    # matrix helpers --------------------------------------------------------

    def matmul(self, A, B):
        """Product of (stacks of) matrices over this field."""
        A = np.asarray(A)
        B = np.asarray(B)
        if self.k == 1:
            return np.matmul(A.astype(np.int64), B.astype(np.int64)) % self.p
        out = None
        for j in range(A.shape[-1]):
            term = self.mul_t[A[..., :, j, None], B[..., j, None, :]]
            out = term if out is None else self.add_t[out, term]
        return out

    def nonsquare(self) -> int:
        return int(np.nonzero(self.sign_t == -1)[0][0])

    def primitive(self) -> int:
        for g in range(2, self.q) if self.q > 2 else [1]:
            x, order = g, 1
            while x != 1:
                x = int(self.mul_t[x, g])
                order += 1
            if order == self.q - 1:
                return g
        return 1


@functools.lru_cache(maxsize=None)
def _field(p: int, k: int) -> GF:
    return GF(p, k)


def field(p: int, k: int = 1) -> GF:
    """The shared ``GF(p, k)``; one object per field, so identity checks work."""
    return _field(int(p), int(k))


def parse_field(spec: str | int) -> GF:
    """Parse ``"p"`` or ``"p^k"`` (e.g. ``"3"``, ``"9"`` is also accepted)."""
    if isinstance(spec, int):
        spec = str(spec)
    spec = spec.strip()
    if "^" in spec:
        p, k = (int(s) for s in spec.split("^"))
        return field(p, k)
    q = int(spec)
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise FieldError(f"{q} is not a prime power")
            return field(p, k)
    raise FieldError(f"bad field spec {spec!r}")


@dataclass(frozen=True)
class FieldElement:
    field: GF
    value: int

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError("mixing elements of different fields")
            return other.value
        return self.field.reduce(int(other))

    def __add__(self, other):
        return FieldElement(self.field, int(self.field.add(self.value, self._coerce(other))))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, int(self.field.sub(self.value, self._coerce(other))))

    def __rsub__(self, other):
        return FieldElement(self.field, int(self.field.sub(self._coerce(other), self.value)))

    def __mul__(self, other):
        return FieldElement(self.field, int(self.field.mul(self.value, self._coerce(other))))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b == 0:
            raise FieldError("division by zero")
        return FieldElement(self.field, int(self.field.div(self.value, b)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self._coerce(other)) / self

    def __neg__(self):
        return FieldElement(self.field, int(self.field.neg(self.value)))

    def __pow__(self, e: int):
        if e < 0 and self.value == 0:
            raise FieldError("division by zero")
        return FieldElement(self.field, self.field.power(self.value, e))

    def inverse(self):
        return FieldElement(self.field, 1) / self

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}"


def arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown op {op!r}")
    return ops[op](b)


def sign_class(a) -> int:
    """+1 if ``a`` is a nonzero square, -1 otherwise.

    Accepts a :class:`FieldElement` or a ``(field, value)`` pair.
    """
    if isinstance(a, FieldElement):
        F, v = a.field, a.value
    else:
        F, v = a
    if v == 0:
        raise FieldError("sign_class of zero")
    return int(F.sign_t[v])


def enumerate_field(F: GF) -> list[FieldElement]:
    return F.elements()
