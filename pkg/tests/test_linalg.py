from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfgalois import linalg
from hopfgalois.fields import Field
from hopfgalois.linalg import Subspace

QQ = Field.rational()
F5 = Field.finite(5)
F9 = Field.finite(3, 2)


def matrices(F, rows, cols):
    if F.is_finite:
        elem = st.integers(0, F.order - 1).map(F.from_code)
    else:
        elem = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
    return st.lists(st.lists(elem, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(F.array)


@pytest.mark.parametrize("F", [QQ, F5, F9], ids=str)
def test_inverse_and_rank(F):
    @settings(max_examples=40, deadline=None)
    @given(matrices(F, 3, 3))
    def run(A):
        inv = linalg.inverse(F, A)
        r = linalg.rank(F, A)
        if inv is None:
            assert r < 3
        else:
            assert r == 3
            assert F.equal(linalg.matmul(F, A, inv), F.eye(3))
            assert F.equal(linalg.matmul(F, inv, A), F.eye(3))

    run()


@pytest.mark.parametrize("F", [QQ, F5, F9], ids=str)
def test_nullspace_is_kernel(F):
    @settings(max_examples=40, deadline=None)
    @given(matrices(F, 2, 4))
    def run(A):
        K = linalg.nullspace(F, A)
        assert F.shape(K)[0] == 4 - linalg.rank(F, A)
        if F.shape(K)[0]:
            assert F.is_zero_array(linalg.matmul(F, A, linalg.tr(K)))

    run()


@pytest.mark.parametrize("F", [QQ, F5], ids=str)
def test_solve_system(F):
    @settings(max_examples=40, deadline=None)
    @given(matrices(F, 3, 3), matrices(F, 1, 3))
    def run(A, x0):
        b = linalg.vecmat(F, x0[0], linalg.tr(A))          # b = A x0
        x, K = linalg.solve_system(F, A, b)
        assert x is not None
        assert F.equal(linalg.vecmat(F, x, linalg.tr(A)), b)

    run()


def test_inconsistent_system():
    A = QQ.array([[1, 1], [2, 2]])
    x, K = linalg.solve_system(QQ, A, QQ.array([1, 3]))
    assert x is None
    assert QQ.shape(K) == (1, 2)


def test_subspace_canonical_form():
    # [DERIVED] two spanning sets of the same plane give identical bases
    V = Subspace.span(QQ, 3, QQ.array([[1, 2, 3], [0, 1, 1]]))
    W = Subspace.span(QQ, 3, QQ.array([[1, 3, 4], [2, 5, 7], [1, 2, 3]]))
    assert V.dim == 2
    assert QQ.equal(V.basis, W.basis)
    v = QQ.array([3, 7, 10])
    assert V.contains(v)
    assert QQ.equal(V.from_coordinates(V.coordinates(v)), v)
    assert not V.contains(QQ.array([0, 0, 1]))


def test_quotient_projection_and_section():
    R = Subspace.span(F5, 3, F5.array([[1, 1, 0]]))
    Q = linalg.quotient(F5, R)
    assert Q.dim == 2
    # projection kills the relations and section is a right inverse
    assert F5.is_zero_array(linalg.matmul(F5, R.basis, Q.proj))
    assert F5.equal(linalg.matmul(F5, Q.sect, Q.proj), F5.eye(2))


def test_scalar_wrappers():
    A = linalg.Matrix(QQ, QQ.array([[2, 0], [0, 4]]))
    inv = linalg.matrix_inverse(A)
    assert inv is not None
    assert linalg.matrix_rank(A) == 2
    sol = linalg.solve(A, QQ.array([1, 1]))
    assert sol.consistent and sol.kernel.dim == 0
