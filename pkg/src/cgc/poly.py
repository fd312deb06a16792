"""Univariate polynomials over a small finite field.

Factorization is trial division against the table of monic irreducibles;
matrix sizes here never exceed a dozen, so nothing cleverer is needed.
"""

from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass

from .gf import GF, FieldError


class PolyError(ValueError):
    pass


def _trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Poly:
    """Polynomial with ascending coefficients ``coeffs[i]`` of ``t**i``."""

    field: GF
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(int(c) for c in self.coeffs))

    @classmethod
    def of(cls, F: GF, cs) -> "Poly":
        return cls(F, tuple(F.reduce(int(c)) for c in cs))

    @classmethod
    def parse(cls, F: GF, text: str) -> "Poly":
        """``"1,0,1"`` is ``1 + t**2``."""
        return cls.of(F, [int(s) for s in text.split(",") if s.strip()])

    def text(self) -> str:
        return ",".join(str(c) for c in self.coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def sort_key(self):
        return (self.degree, self.coeffs)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(reversed(terms))

    # ring operations --------------------------------------------------------

    def _same(self, other):
        if other.field is not self.field:
            raise PolyError("polynomials over different fields")

    def __add__(self, other):
        self._same(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        a = a + (0,) * (n - len(a))
        b = b + (0,) * (n - len(b))
        return Poly(F, tuple(int(F.add(x, y)) for x, y in zip(a, b)))

    def __neg__(self):
        return Poly(self.field, tuple(int(self.field.neg(c)) for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._same(other)
        F = self.field
        if self.is_zero or other.is_zero:
            return Poly(F, ())
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    if y:
                        out[i + j] = int(F.add(out[i + j], F.mul(x, y)))
        return Poly(F, tuple(out))

    def scale(self, c: int) -> "Poly":
        F = self.field
        return Poly(F, tuple(int(F.mul(c, x)) for x in self.coeffs))

    def __pow__(self, e: int) -> "Poly":
        r = Poly(self.field, (1,))
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __divmod__(self, other):
        self._same(other)
        if other.is_zero:
            raise PolyError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        d = other.degree
        inv_lead = int(F.inv(other.lead))
        qt = [0] * max(len(r) - d, 1)
        for i in range(len(r) - 1, d - 1, -1):
            c = r[i]
            if c == 0:
                continue
            c = int(F.mul(c, inv_lead))
            qt[i - d] = c
            for j, y in enumerate(other.coeffs):
                r[i - d + j] = int(F.sub(r[i - d + j], F.mul(c, y)))
        return Poly(F, tuple(qt)), Poly(F, tuple(r[:d]))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(int(self.field.inv(self.lead)))

    def __call__(self, x: int) -> int:
        F = self.field
        acc = 0
        for c in reversed(self.coeffs):
            acc = int(F.add(F.mul(acc, x), c))
        return acc

    def roots(self) -> list[int]:
        return [x for x in range(self.field.q) if self(x) == 0]


def one(F: GF) -> Poly:
    return Poly(F, (1,))


def linear(F: GF, root: int) -> Poly:
    """``t - root``."""
    return Poly(F, (int(F.neg(root)), 1))


def gcd(f: Poly, g: Poly) -> Poly:
    a, b = f, g
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def poly_arith(f: Poly, g: Poly, op: str):
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "divmod":
        return divmod(f, g)
    if op == "gcd":
        return gcd(f, g)
    raise ValueError(f"unknown op {op!r}")


# irreducibles ---------------------------------------------------------------


def _monics(F: GF, d: int):
    for tail in itertools.product(range(F.q), repeat=d):
        yield Poly(F, tail + (1,))


@functools.lru_cache(maxsize=None)
def _irreducibles_of_degree(F: GF, d: int) -> tuple:
    if d == 1:
        return tuple(Poly(F, (c, 1)) for c in range(F.q))
    smaller = [g for e in range(1, d // 2 + 1) for g in _irreducibles_of_degree(F, e)]
    out = []
    for f in _monics(F, d):
        if f.coeffs[0] == 0:
            continue
        if all(not (f % g).is_zero for g in smaller):
            out.append(f)
    return tuple(out)


def monic_irreducibles(F: GF, d: int, exact: bool = False) -> list[Poly]:
    """All monic irreducibles other than ``t`` of degree ``<= d`` (or ``== d``)."""
    if d < 1:
        raise PolyError("degree must be >= 1")
    degs = [d] if exact else range(1, d + 1)
    t = Poly(F, (0, 1))
    return [f for e in degs for f in _irreducibles_of_degree(F, e) if f != t]


def is_irreducible(f: Poly) -> bool:
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    g = f.monic()
    for e in range(1, f.degree // 2 + 1):
        for h in _irreducibles_of_degree(f.field, e):
            if (g % h).is_zero:
                return False
    return True


@functools.lru_cache(maxsize=65536)
def factor(f: Poly) -> tuple:
    """Factor a monic polynomial into ``((irreducible, exponent), ...)``.

    Factors are sorted by ``(degree, coeffs)``.
    """
    if not f.is_monic():
        raise PolyError("factor expects a monic polynomial")
    F = f.field
    out = Counter()
    rest = f
    t = Poly(F, (0, 1))
    while rest.degree >= 1 and rest.coeffs[0] == 0:
        out[t] += 1
        rest = rest // t
    e = 1
    while rest.degree >= 1:
        if e > rest.degree // 2:
            out[rest] += 1
            break
        for h in _irreducibles_of_degree(F, e):
            if h == t:
                continue
            while True:
                qt, r = divmod(rest, h)
                if not r.is_zero:
                    break
                out[h] += 1
                rest = qt
        e += 1
    return tuple(sorted(out.items(), key=lambda kv: kv[0].sort_key()))


# duality --------------------------------------------------------------------


def dual(f: Poly) -> Poly:
    """Monic polynomial whose roots are the inverses of the roots of ``f``."""
    if not f.is_monic():
        raise PolyError("dual expects a monic polynomial")
    F = f.field
    a0 = f.coeffs[0]
    if a0 == 0:
        raise PolyError("dual undefined when the constant term vanishes")
    inv0 = int(F.inv(a0))
    return Poly(F, tuple(int(F.mul(c, inv0)) for c in reversed(f.coeffs)))


def is_self_dual(f: Poly) -> bool:
    return f.coeffs[0] != 0 and dual(f) == f


def is_dual_irreducible(f: Poly) -> bool:
    """True iff ``f`` is self-dual and irreducible, or ``g * dual(g)`` with
    ``g`` irreducible and not self-dual."""
    if not f.is_monic() or f.coeffs[0] == 0 or dual(f) != f:
        return False
    fs = factor(f)
    if len(fs) == 1 and fs[0][1] == 1:
        return True
    if len(fs) == 2 and fs[0][1] == 1 and fs[1][1] == 1:
        g, h = fs[0][0], fs[1][0]
        return dual(g) == h and g != h
    return False


def dual_key(g: Poly) -> Poly:
    """The dual-irreducible polynomial containing the irreducible ``g``."""
    h = dual(g)
    return g if h == g else g * h


def charpoly_companion_coeffs(f: Poly, m: int):
    """Coefficients ``a_0..a_{k-1}`` with ``f**m = t**k - sum a_i t**i``."""
    g = f ** m
    F = f.field
    return [int(F.neg(c)) for c in g.coeffs[:-1]]


__all__ = [
    "Poly", "PolyError", "FieldError", "gcd", "poly_arith", "monic_irreducibles",
    "is_irreducible", "factor", "dual", "is_self_dual", "is_dual_irreducible",
    "dual_key", "one", "linear",
]
