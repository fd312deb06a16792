import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cgc import mat
from cgc.gf import FieldError, field
from cgc.grp import commutant_basis
from cgc.poly import Poly

F3, F5 = field(3), field(5)


def brute_det2(A, q):
    return (A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]) % q


def test_linalg_examples():
    assert mat.rank(mat.sub(mat.eye(3), mat.eye(3), F3), F3) == 0
    assert mat.det(np.array([[0, 2], [1, 2]]), F3) == 1
    K = mat.kernel_basis(mat.sub(mat.s_matrix(3), mat.eye(3), F3), F3)
    assert K.shape == (1, 3) and list(K[0] * F3.inv(int(K[0][2]))) == [0, 0, 1]
    with pytest.raises(FieldError):
        mat.inverse(np.ones((2, 2), dtype=np.int64), F3)


def test_det_and_inverse_exhaustive_2x2():
    for entries in itertools.product(range(3), repeat=4):
        A = np.array(entries).reshape(2, 2)
        assert mat.det(A, F3) == brute_det2(A, 3)
        if brute_det2(A, 3):
            assert (mat.mul(A, mat.inverse(A, F3), F3) == mat.eye(2)).all()
            assert mat.rank(A, F3) == 2


def test_companion_examples():
    tm = Poly.of(F3, (-1, 1))
    assert (mat.companion(tm, 2) == np.array([[0, 2], [1, 2]])).all()
    assert (mat.companion(Poly.of(F3, (1, 0, 1)), 1) == np.array([[0, 2], [1, 0]])).all()
    assert (mat.companion(tm, 1) == np.array([[1]])).all()
    with pytest.raises(mat.MatrixError):
        mat.companion(Poly.of(F3, (-1, 0, 1)), 1)


@pytest.mark.parametrize("f,m", [((-1, 1), 3), ((1, 0, 1), 2), ((2, 1, 1), 2), ((1, 1), 4)])
def test_companion_charpoly(f, m):
    f = Poly.of(F3, f)
    C = mat.companion(f, m)
    fm = Poly.of(F3, (1,))
    for _ in range(m):
        fm = fm * f
    assert mat.charpoly(C, F3) == fm == mat.minpoly(C, F3)
    assert not mat.poly_eval(fm, C, F3).any()


def test_builders():
    S3 = mat.s_matrix(3)
    assert (S3 == np.tril(np.ones((3, 3), dtype=np.int64))).all()
    assert mat.minpoly(S3, F3) == Poly.of(F3, (-1, 1)) ** 3
    assert (mat.j_block(2, F3) == mat.eye(2)).all()
    for size in (2, 4, 6, 8):
        J = mat.j_block(size, F5)
        assert mat.is_symplectic(J, mat.gram_standard(size // 2, F5), F5)
        assert mat.minpoly(J, F5) == Poly.of(F5, (-1, 1)) ** (size // 2)
    for size in (2, 4, 6):
        for eps in (1, 2):
            J = mat.j_block_eps(size, eps, F5)
            assert mat.is_symplectic(J, mat.gram_standard(size // 2, F5), F5)
            assert mat.minpoly(J, F5) == Poly.of(F5, (-1, 1)) ** size
    with pytest.raises(mat.MatrixError):
        mat.j_block_eps(4, 0, F3)


def test_symplectic_checks():
    G = mat.gram_standard(1, F3)
    assert mat.is_symplectic(mat.eye(2), G, F3)
    assert mat.is_symplectic(mat.companion(Poly.of(F3, (1, 0, 1))), G, F3)
    assert not mat.is_symplectic(np.diag([2, 1]), G, F3)
    G2 = mat.gram_standard(2, F3)
    assert (G2 == -G2.T % 3).all() and mat.det(G2, F3) != 0
    assert mat.form(np.eye(4, dtype=np.int64)[0], np.eye(4, dtype=np.int64)[3], G2, F3) == 1


@settings(max_examples=40)
@given(st.lists(st.integers(0, 4), min_size=4, max_size=4).filter(any), st.integers(0, 4))
def test_transvections(v, c):
    G = mat.gram_standard(2, F5)
    T = mat.transvection(np.array(v), c, G, F5)
    assert mat.is_symplectic(T, G, F5) and mat.det(T, F5) == 1
    assert mat.rank(mat.sub(T, mat.eye(4), F5), F5) == (1 if c else 0)


def test_embedding_preserves_form_and_rank():
    U = mat.j_block_eps(2, 1, F3)
    for n in (2, 3):
        E = mat.embed_upup(U, n)
        assert mat.is_symplectic(E, mat.gram_standard(n, F3), F3)
        assert mat.rank(mat.sub(E, mat.eye(2 * n), F3), F3) == mat.rank(mat.sub(U, mat.eye(2), F3), F3)
    assert (mat.embed_upup(mat.eye(2), 3) == mat.eye(6)).all()
    with pytest.raises(mat.MatrixError):
        mat.embed_upup(mat.eye(4), 1)


def test_orth_complement():
    G1, G2 = mat.gram_standard(1, F3), mat.gram_standard(2, F3)
    assert mat.orth_complement(mat.eye(2), G1, F3).shape[0] == 0
    W = mat.orth_complement(np.array([[1, 0]]), G1, F3)
    assert mat.rank(np.vstack([W, [[1, 0]]]), F3) == 1
    # span(e1, f1) in the order e1, e2, f2, f1
    W = mat.orth_complement(np.array([[1, 0, 0, 0], [0, 0, 0, 1]]), G2, F3)
    assert mat.rank(np.vstack([W, [[0, 1, 0, 0], [0, 0, 1, 0]]]), F3) == 2 == len(W)


def test_block_diagonal_commutant_vanishes():
    U = mat.block_diag(mat.companion(Poly.of(F3, (-1, 1)), 2), mat.companion(Poly.of(F3, (1, 0, 1))))
    B = commutant_basis([U], F3)
    assert not B[:, :2, 2:].any() and not B[:, 2:, :2].any()


def test_text_format_round_trip():
    A = mat.parse_matrix("1,0;-1,4", F3)
    assert (A == np.array([[1, 0], [2, 1]])).all()
    assert (mat.parse_matrix(mat.format_matrix(A), F3) == A).all()
    with pytest.raises(mat.MatrixError):
        mat.parse_matrix("1,0;1", F3)
