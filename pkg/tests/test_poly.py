import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cgc.gf import field
from cgc.poly import (Poly, PolyError, dual, factor, gcd, is_dual_irreducible, is_irreducible,
                      is_self_dual, monic_irreducibles, poly_arith)


def P(F, *cs):
    return Poly.of(F, cs)


def brute_irreducible_count(q, d):
    """Monic degree-d polynomials that are not products of lower-degree monics."""
    F = field(q)
    monics = lambda k: [Poly.of(F, list(c) + [1]) for c in itertools.product(range(q), repeat=k)]
    reducible = set()
    for a in range(1, d):
        for f in monics(a):
            for g in monics(d - a):
                reducible.add(f * g)
    return len([f for f in monics(d) if f not in reducible and f.coeffs[0] != 0])


def test_basic_arithmetic():
    F = field(3)
    assert poly_arith(P(F, -1, 1), P(F, 1, 1), "mul") == P(F, -1, 0, 1)
    assert gcd(P(F, -1, 0, 1), P(F, -1, 1)) == P(F, -1, 1)
    f = P(F, 1, 2, 1)
    assert f * P(F, 1) == f
    q, r = poly_arith(P(F, -1, 0, 1), P(F, -1, 1), "divmod")
    assert q == P(F, 1, 1) and r.is_zero
    with pytest.raises(PolyError):
        poly_arith(f, Poly.of(F, []), "divmod")


@pytest.mark.parametrize("q,d,count", [(3, 1, 2), (3, 2, 3), (2, 3, 2), (5, 2, 10), (3, 3, 8)])
def test_irreducible_counts(q, d, count):
    F = field(q)
    got = monic_irreducibles(F, d, exact=True)
    assert len(got) == count == brute_irreducible_count(q, d)
    assert P(F, 0, 1) not in got


def test_factor_examples():
    F3, F5 = field(3), field(5)
    assert factor(P(F3, 1, 1) * P(F3, 1, 1)) == ((P(F3, 1, 1), 2),)
    assert is_irreducible(P(F3, 1, 0, 1))
    assert dict(factor(P(F5, -1, 0, 1))) == {P(F5, -1, 1): 1, P(F5, 1, 1): 1}
    with pytest.raises(PolyError):
        factor(P(F3, 1, 2))


def test_dual_examples():
    F3, F5 = field(3), field(5)
    assert dual(P(F3, -1, 1)) == P(F3, -1, 1)
    assert dual(P(F5, -2, 1)) == P(F5, -3, 1)
    assert dual(P(F3, 1, 0, 1)) == P(F3, 1, 0, 1)
    assert is_dual_irreducible(P(F3, 1, 0, 1))
    assert is_dual_irreducible(P(F5, -2, 1) * P(F5, -3, 1))
    assert not is_dual_irreducible(P(F3, -1, 1) * P(F3, -1, 1))
    with pytest.raises(PolyError):
        dual(P(F3, 0, 1))


def test_dual_inverts_roots():
    F = field(7)
    for f in monic_irreducibles(F, 1, exact=True):
        (r,), (s,) = f.roots(), dual(f).roots()
        assert F.mul(r, s) == 1


@pytest.mark.parametrize("q", [3, 5])
def test_dual_preserves_irreducibility(q):
    F = field(q)
    for f in monic_irreducibles(F, 3):
        g = dual(f)
        assert is_irreducible(g) and g.degree == f.degree


monic_f5 = st.lists(st.integers(0, 4), min_size=0, max_size=5).map(
    lambda cs: Poly.of(field(5), [1 + (cs[0] % 4) if cs else 1] + cs[1:] + [1]))


@settings(max_examples=60)
@given(monic_f5, monic_f5)
def test_dual_involution_and_multiplicativity(f, g):
    assert dual(dual(f)) == f
    assert dual(f * g) == dual(f) * dual(g)
    prod = P(field(5), 1)
    for h, e in factor(f):
        for _ in range(e):
            prod = prod * h
    assert prod == f


def test_self_dual_of_pair():
    F = field(5)
    g = P(F, -2, 1)
    assert not is_self_dual(g) and is_self_dual(g * dual(g))
