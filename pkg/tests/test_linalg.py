import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from spinvec.linalg import (
    MAX_DIM,
    ComplexMatrix,
    DimensionError,
    StateVector,
    commutator,
    expectation,
    identity,
    inner,
    kron,
    matvec,
)
from spinvec.spin_ops import build_sx, build_sz

SX = build_sx("1/2")
SZ = build_sz("1/2")
UP = StateVector([1, 0])
DOWN = StateVector([0, 1])

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


def complex_arrays(shape):
    return st.tuples(arrays(float, shape, elements=finite), arrays(float, shape, elements=finite)).map(
        lambda ri: ri[0] + 1j * ri[1]
    )


@st.composite
def hermitian_and_state(draw):
    dim = draw(st.integers(1, 16))
    a = draw(complex_arrays((dim, dim)))
    v = draw(complex_arrays(dim))
    if np.linalg.norm(v) < 1e-3:
        v = np.ones(dim)
    return ComplexMatrix(a + a.conj().T), StateVector(v)


class TestKron:
    def test_identity(self):
        assert kron(identity(2), identity(2)).allclose(np.eye(4))

    def test_diagonal_embedding(self):
        assert kron(SZ, identity(2)).allclose(np.diag([1, 1, -1, -1]) / 2)

    def test_sx_sx_corner(self):
        # [[0, 1/2], [1/2, 0]] x [[0, 1/2], [1/2, 0]]: block (0,1) times entry (0,1)
        assert kron(SX, SX)[0, 3] == pytest.approx(0.25)

    def test_block_structure(self, rng):
        a = ComplexMatrix(rng.normal(size=(2, 3)))
        b = ComplexMatrix(rng.normal(size=(3, 2)) + 1j)
        k = kron(a, b)
        assert k.shape == (6, 6)
        for r in range(2):
            for c in range(3):
                assert np.allclose(k[3 * r:3 * r + 3, 2 * c:2 * c + 2], a[r, c] * b.data)

    def test_overflow(self):
        big = ComplexMatrix(np.zeros((MAX_DIM // 2, 1)))
        with pytest.raises(DimensionError):
            kron(big, ComplexMatrix(np.zeros((4, 1))))

    @given(complex_arrays((2, 2)), complex_arrays((2, 3)), complex_arrays((3, 2)))
    def test_associative(self, a, b, c):
        a, b, c = ComplexMatrix(a), ComplexMatrix(b), ComplexMatrix(c)
        assert kron(kron(a, b), c).allclose(kron(a, kron(b, c)), atol=1e-12)


class TestMatvec:
    def test_identity(self, rng):
        v = StateVector(rng.normal(size=4) + 1j * rng.normal(size=4))
        assert matvec(identity(4), v).allclose(v)

    def test_sz_eigenvector(self):
        assert matvec(SZ, UP).allclose([0.5, 0])

    def test_sx_flips(self):
        assert matvec(SX, UP).allclose([0, 0.5])

    def test_not_normalized(self):
        assert matvec(SX, UP).norm() == pytest.approx(0.5)

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            matvec(identity(3), UP)


class TestExpectation:
    def test_sz_up(self):
        assert expectation(SZ, UP) == pytest.approx(0.5)

    def test_sx_up(self):
        assert expectation(SX, UP) == pytest.approx(0)

    def test_sx_squared_up(self):
        assert expectation(SX @ SX, UP) == pytest.approx(0.25)

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            expectation(identity(4), UP)
        with pytest.raises(DimensionError):
            expectation(ComplexMatrix(np.ones((2, 3))), UP)

    @settings(max_examples=200)
    @given(hermitian_and_state())
    def test_hermitian_expectation_is_real(self, pair):
        a, v = pair
        assert abs(expectation(a, v).imag) <= 1e-10

    @settings(max_examples=200)
    @given(st.integers(1, 16).flatmap(lambda d: st.tuples(complex_arrays((d, d)), complex_arrays(d))))
    def test_positive_semidefinite(self, pair):
        a, v = pair
        if np.linalg.norm(v) < 1e-3:
            v = np.ones(v.size)
        a, v = ComplexMatrix(a), StateVector(v)
        assert expectation(a.adjoint() @ a, v).real >= -1e-12


class TestStateVector:
    def test_normalizes(self):
        v = StateVector([3, 4j])
        assert v.is_normalized()
        assert v.allclose([0.6, 0.8j])

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            StateVector([0, 0])

    def test_immutable(self):
        with pytest.raises(ValueError):
            UP.amplitudes[0] = 2

    def test_inner(self):
        assert inner(UP, DOWN) == 0
        assert inner(StateVector([1, 1j]), StateVector([1, 0])) == pytest.approx(1 / np.sqrt(2))


def test_hermitian_flag():
    assert SX.is_hermitian()
    assert not ComplexMatrix([[0, 1], [0, 0]]).is_hermitian()


def test_commutator_pauli():
    sy = ComplexMatrix([[0, -0.5j], [0.5j, 0]])
    assert commutator(SX, sy).allclose(1j * SZ.data)


def test_matrix_immutable():
    with pytest.raises(ValueError):
        SX.data[0, 0] = 1
