"""Dense complex matrices and state vectors.

Thin immutable wrappers around numpy arrays. Angular momentum entries are
in units of hbar = 1. Basis state ``k`` of an N-site product space is the
bit pattern of ``k`` with site 1 as the most significant digit.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "ATOL",
    "ATOL_ALGEBRA",
    "MAX_DIM",
    "DimensionError",
    "ComplexMatrix",
    "StateVector",
    "identity",
    "kron",
    "matvec",
    "inner",
    "expectation",
    "commutator",
]

ATOL = 1e-10
ATOL_ALGEBRA = 1e-12
MAX_DIM = 2**14


class DimensionError(ValueError):
    """Raised on mismatched shapes or products beyond :data:`MAX_DIM`."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


class ComplexMatrix:
    """Dense complex matrix, row-major, immutable."""

    __slots__ = ("data",)

    def __init__(self, entries):
        data = _frozen(entries)
        if data.ndim != 2 or 0 in data.shape:
            raise DimensionError(f"expected a non-empty 2-d array, got shape {data.shape}")
        if data.shape[0] > MAX_DIM or data.shape[1] > MAX_DIM:
            raise DimensionError(f"matrix {data.shape} exceeds maximum dimension {MAX_DIM}")
        self.data = data

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self, atol: float = ATOL_ALGEBRA) -> bool:
        return self.is_square and bool(np.all(np.abs(self.data - self.data.conj().T) <= atol))

    def adjoint(self) -> ComplexMatrix:
        return ComplexMatrix(self.data.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.data))

    def allclose(self, other: ComplexMatrix | np.ndarray, atol: float = ATOL_ALGEBRA) -> bool:
        b = other.data if isinstance(other, ComplexMatrix) else np.asarray(other)
        return self.shape == b.shape and bool(np.all(np.abs(self.data - b) <= atol))

    def __getitem__(self, idx):
        return self.data[idx]

    def __array__(self, dtype=None, copy=None):
        return self.data if dtype is None else self.data.astype(dtype)

    def __matmul__(self, other: ComplexMatrix) -> ComplexMatrix:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        return ComplexMatrix(self.data @ other.data)

    def __add__(self, other: ComplexMatrix) -> ComplexMatrix:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return ComplexMatrix(self.data + other.data)

    def __sub__(self, other: ComplexMatrix) -> ComplexMatrix:
        if not isinstance(other, ComplexMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return ComplexMatrix(self.data - other.data)

    def __mul__(self, scalar) -> ComplexMatrix:
        if not np.isscalar(scalar):
            return NotImplemented
        return ComplexMatrix(self.data * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> ComplexMatrix:
        if not np.isscalar(scalar):
            return NotImplemented
        return ComplexMatrix(self.data / scalar)

    def __neg__(self) -> ComplexMatrix:
        return ComplexMatrix(-self.data)

    def __repr__(self) -> str:
        return f"ComplexMatrix({self.rows}x{self.cols})"


class StateVector:
    """Normalized complex amplitude vector.

    The constructor normalizes by default; pass ``normalize=False`` to keep
    the raw amplitudes (the result of applying an operator, for example).
    """

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes, normalize: bool = True):
        a = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        if a.size == 0:
            raise DimensionError("state vector must have at least one amplitude")
        if a.size > MAX_DIM:
            raise DimensionError(f"state dimension {a.size} exceeds maximum {MAX_DIM}")
        if normalize:
            norm = np.linalg.norm(a)
            if norm == 0.0:
                raise ValueError("cannot normalize the zero vector")
            a = a / norm
        a.setflags(write=False)
        self.amplitudes = a

    @classmethod
    def basis(cls, dim: int, index: int) -> StateVector:
        a = np.zeros(dim, dtype=np.complex128)
        a[index] = 1.0
        return cls(a)

    @property
    def dim(self) -> int:
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, atol: float = ATOL) -> bool:
        return abs(self.norm() ** 2 - 1.0) <= atol

    def normalized(self) -> StateVector:
        return StateVector(self.amplitudes)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def allclose(self, other: StateVector | np.ndarray, atol: float = ATOL) -> bool:
        b = other.amplitudes if isinstance(other, StateVector) else np.asarray(other)
        return self.amplitudes.shape == b.shape and bool(
            np.all(np.abs(self.amplitudes - b) <= atol)
        )

    def __getitem__(self, idx):
        return self.amplitudes[idx]

    def __array__(self, dtype=None, copy=None):
        return self.amplitudes if dtype is None else self.amplitudes.astype(dtype)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim})"


def identity(dim: int) -> ComplexMatrix:
    return ComplexMatrix(np.eye(dim))


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product; block ``(r, c)`` of the result is ``a[r, c] * b``."""
    rows, cols = a.rows * b.rows, a.cols * b.cols
    if rows > MAX_DIM or cols > MAX_DIM:
        raise DimensionError(
            f"kron of {a.shape} and {b.shape} gives {rows}x{cols}, above maximum {MAX_DIM}"
        )
    return ComplexMatrix(np.kron(a.data, b.data))


def matvec(a: ComplexMatrix, v: StateVector) -> StateVector:
    """Matrix-vector product. The result is not normalized."""
    if a.cols != v.dim:
        raise DimensionError(f"matrix {a.shape} cannot act on vector of dim {v.dim}")
    return StateVector(a.data @ v.amplitudes, normalize=False)


def inner(u: StateVector, v: StateVector) -> complex:
    """``<u|v>``, conjugate-linear in the first argument."""
    if u.dim != v.dim:
        raise DimensionError(f"inner product of dims {u.dim} and {v.dim}")
    return complex(np.vdot(u.amplitudes, v.amplitudes))


def expectation(a: ComplexMatrix, v: StateVector) -> complex:
    """Return ``<v|a|v>``."""
    if not a.is_square:
        raise DimensionError(f"expectation needs a square matrix, got {a.shape}")
    if a.rows != v.dim:
        raise DimensionError(f"matrix {a.shape} cannot act on vector of dim {v.dim}")
    return complex(np.vdot(v.amplitudes, a.data @ v.amplitudes))


def commutator(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    return a @ b - b @ a
