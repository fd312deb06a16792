import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cgc.fh_symmetric import (PermError, all_perms, centralizer_splitting_check, class_size,
                              cycle_type, expand_symmetric, joint_centralizer_brute,
                              joint_centralizer_order, perm_from_cycles, polynomiality_check,
                              refl_length_perm, rep_of_type, sc_symmetric, stability_check,
                              support, support_lemma_check)


def brute_sc_s3():
    """Pairs of transpositions in S_3 whose product is a fixed 3-cycle."""
    perms = list(itertools.permutations(range(3)))
    transp = [p for p in perms if sum(p[i] != i for i in range(3)) == 2]
    z = (1, 2, 0)
    return sum(tuple(x[y[i]] for i in range(3)) == z for x in transp for y in transp)


def test_cycle_type_examples():
    g = perm_from_cycles([(3, 4, 5), (7, 8)], 8)
    assert cycle_type(g) == (3, 2, 1, 1, 1)
    assert cycle_type(g, 10) == (3, 2, 1, 1, 1, 1, 1)
    assert cycle_type(np.arange(4)) == (1, 1, 1, 1)
    assert support(g) == {3, 4, 5, 7, 8}
    assert refl_length_perm(g) == 3 and refl_length_perm(np.arange(5)) == 0
    assert refl_length_perm(perm_from_cycles([(1, 2, 3, 4, 5)], 5)) == 4
    with pytest.raises(PermError):
        perm_from_cycles([(1, 9)], 4)


def test_transposition_constant():
    assert brute_sc_s3() == 3
    assert [sc_symmetric((1,), (1,), (2,), n) for n in range(3, 9)] == [3] * 6


def test_full_expansion_s4():
    assert expand_symmetric((1,), (1,), 4) == {(2,): 3, (1, 1): 2, (): 6}
    # degree above the sum vanishes
    assert sc_symmetric((1,), (1,), (3,), 5) == 0


@pytest.mark.parametrize("n", [4, 5])
def test_mass_of_expansions(n):
    types = [(), (1,), (2,), (1, 1)]
    for lam, mu in itertools.product(types, repeat=2):
        exp = expand_symmetric(lam, mu, n)
        full = lambda t: tuple(p + 1 for p in t)
        lhs = sum(c * class_size(full(e), n) for e, c in exp.items())
        assert lhs == class_size(full(lam), n) * class_size(full(mu), n)


def test_stability_window():
    rep = stability_check(5, 8)
    assert rep["holds"] and len(rep["triples"]) == 22


def test_centralizer_splitting_and_joint_centralizers():
    assert centralizer_splitting_check(7)
    S4 = all_perms(4)
    for g, h in itertools.product(S4[::3], S4[::5]):
        assert joint_centralizer_order([g, h], 4) == joint_centralizer_brute([g, h], 4)


def test_support_lemma():
    rep = support_lemma_check(6)
    assert rep["holds"] and rep["additive_pairs"] == 28399


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(5)), st.permutations(range(5)))
def test_polynomiality(g, h):
    assert polynomiality_check(np.array(g), np.array(h), 5)["holds"]


def test_enumeration_limit():
    with pytest.raises(PermError):
        sc_symmetric((1,), (1,), (2,), 10)


def test_rep_of_type():
    assert cycle_type(rep_of_type((3, 2), 7)) == (3, 2, 1, 1)
