import itertools

import numpy as np
import pytest

from cgc import mat
from cgc.gf import field
from cgc.grp import (BudgetError, Codec, all_transvections, bfs_closure,
                     centralizer_elements, centralizer_order_filtered, commutant_basis,
                     conj_orbit, generators, group_table, load_table, order_formula, save_table,
                     word_lengths)
from cgc.poly import Poly

F3 = field(3)


def brute_gl2(q):
    out = []
    for e in itertools.product(range(q), repeat=4):
        A = np.array(e).reshape(2, 2)
        if (A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]) % q:
            out.append(A)
    return out


def test_order_formula_against_enumeration():
    assert order_formula("gl", 2, 3) == len(brute_gl2(3)) == 48
    sl = [A for A in brute_gl2(3) if (A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]) % 3 == 1]
    assert order_formula("sp", 1, 3) == len(sl) == 24
    assert order_formula("sp", 2, 3) == 51840


def test_bfs_trivial_and_small():
    T = bfs_closure([mat.eye(2)], F3)
    assert len(T) == 1
    T = group_table("sp", 1, F3, use_cache=False)
    assert len(T) == 24


def test_table_is_closed_and_has_inverses():
    T = group_table("gl", 2, F3)
    M = T.matrices()
    rng = np.random.default_rng(0)
    i, j = rng.integers(0, len(T), (2, 2000))
    assert T.contains(F3.matmul(M[i], M[j])).all()
    assert T.contains(np.array([mat.inverse(A, F3) for A in M])).all()


@pytest.mark.parametrize("kind,n,q", [("sp", 1, 3), ("gl", 2, 3), ("gl", 2, 5), ("sp", 2, 3)])
def test_class_sizes_sum_to_order(kind, n, q):
    T = group_table(kind, n, field(q))
    sizes = [len(c) for c in T.classes()]
    assert sum(sizes) == len(T) == order_formula(kind, n, q)
    assert all(len(T) % s == 0 for s in sizes)


def test_conj_orbit_examples():
    gens = generators("sp", 1, F3)
    assert len(conj_orbit(mat.eye(2), gens, F3)) == 1
    assert len(conj_orbit(mat.j_block_eps(2, 1, F3), gens, F3)) == 4


def test_orbit_stabilizer_sp2():
    T = group_table("sp", 2, F3)
    gens = generators("sp", 2, F3)
    G = mat.gram_standard(2, F3)
    for r in T.class_reps()[::5]:
        c = centralizer_order_filtered([r], G, F3)
        assert len(conj_orbit(r, gens, F3)) * c == len(T)


def test_commutant_dimensions():
    assert commutant_basis([mat.eye(4)], F3).shape[0] == 16
    J = mat.companion(Poly.of(F3, (-1, 1)), 2)
    assert commutant_basis([J], F3).shape[0] == 2


@pytest.mark.parametrize("kind,n,q", [("sp", 1, 3), ("gl", 2, 3), ("gl", 2, 5)])
def test_filtered_centralizers_match_table_scan(kind, n, q):
    F = field(q)
    T = group_table(kind, n, F)
    G = mat.gram_standard(n, F) if kind == "sp" else None
    for r in T.class_reps():
        assert centralizer_order_filtered([r], G, F) == T.centralizer_order(r)


def test_filtered_centralizer_examples():
    G1, G2 = mat.gram_standard(1, F3), mat.gram_standard(2, F3)
    assert centralizer_order_filtered([mat.eye(2)], G1, F3) == 24
    assert centralizer_order_filtered([mat.j_block_eps(2, 1, F3)], G1, F3) == 6
    assert centralizer_order_filtered([mat.neg(mat.eye(4), F3)], G2, F3) == 51840
    T = group_table("sp", 2, F3)
    rng = np.random.default_rng(3)
    for r in T.matrices(rng.integers(0, len(T), 4)):
        assert centralizer_order_filtered([r], G2, F3) == T.centralizer_order(r)


def test_centralizer_elements_commute():
    U = mat.j_block_eps(2, 2, F3)
    C = centralizer_elements([U], mat.gram_standard(1, F3), F3)
    assert len(C) == 6
    assert all((F3.matmul(c, U) == F3.matmul(U, c)).all() for c in C)


def test_budget_is_enforced():
    with pytest.raises(BudgetError):
        centralizer_order_filtered([mat.eye(4)], mat.gram_standard(2, F3), F3, budget=100)
    with pytest.raises(BudgetError):
        bfs_closure(generators("gl", 3, F3), F3, budget=100)


def test_cache_round_trip(tmp_path):
    T = group_table("sp", 1, F3, use_cache=False)
    fname = tmp_path / "t.cgc"
    save_table(T, fname)
    assert fname.read_bytes()[:4] == b"CGC1"
    U = load_table(fname, F3)
    assert (U.codes == T.codes).all() and (U.kind, U.n) == (T.kind, T.n)


def test_codec_round_trip():
    rng = np.random.default_rng(5)
    for q, d in ((3, 4), (7, 6), (2, 8)):
        M = rng.integers(0, q, (50, d, d))
        c = Codec(q, d)
        assert (c.unpack(c.pack(M)) == M).all()


def test_transvection_length_versus_codimension():
    """Products of symplectic transvections need one more factor than the
    codimension of the fixed space exactly for the classes of -I_2 + I_2 and
    -I_4 in Sp_2(3); everywhere else the two lengths agree."""
    T = group_table("sp", 2, F3)
    L = word_lengths(T, all_transvections(2, F3))
    M = T.matrices()
    I = mat.eye(4)
    codim = np.array([mat.rank(mat.sub(U, I, F3), F3) for U in M])
    bad = np.nonzero(L != codim)[0]
    assert len(bad) == 91
    assert (L[bad] == codim[bad] + 1).all()
    neg_eigs = [mat.rank(mat.add(M[i], I, F3), F3) for i in bad]
    assert sorted(set(neg_eigs)) == [0, 2]


def test_gl_reflection_length_is_codimension():
    """In GL_3(3) every element is a product of rank(U - I) reflections."""
    T = group_table("gl", 3, F3)
    M = T.matrices()
    I = mat.eye(3)
    codim = np.array([mat.rank(mat.sub(U, I, F3), F3) for U in M])
    refl = [M[i] for i in np.nonzero(codim == 1)[0]]
    assert (word_lengths(T, refl) == codim).all()
