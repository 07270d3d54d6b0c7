"""Operators and states on a chain of spin-1/2 sites.

Sites are numbered from 1; site 1 is the most significant digit of the
basis index. A system with a single site may carry any spin j, which is how
a lone spin-j particle is represented.

Two equivalent routes act with a site operator: :func:`embed` builds the
full dense matrix (kept as a brute-force oracle for small systems) and
:func:`apply_site` contracts the local matrix against the amplitude tensor
without ever forming the big matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .linalg import (
    MAX_DIM,
    ComplexMatrix,
    DimensionError,
    StateVector,
    identity,
    kron,
)
from .spin_ops import AXES, SpinQuantumNumber, build_component, build_ladder

__all__ = [
    "MAX_SITES",
    "SpinSystem",
    "SiteOperator",
    "TotalOperator",
    "embed",
    "apply_site",
    "total_component",
    "total_ladder",
    "total_j_squared",
]

MAX_SITES = 14


@dataclass(frozen=True)
class SpinSystem:
    """``n_sites`` identical spins; only spin-1/2 sites may be combined."""

    n_sites: int
    site_twice_j: int = 1

    def __post_init__(self):
        if not 1 <= self.n_sites <= MAX_SITES:
            raise DimensionError(f"n_sites must be in 1..{MAX_SITES}, got {self.n_sites}")
        if self.site_twice_j < 1:
            raise ValueError("site spin must be positive")
        if self.site_twice_j != 1 and self.n_sites != 1:
            raise ValueError("composites are built from spin-1/2 sites only")
        if self.dim > MAX_DIM:
            raise DimensionError(f"system dimension {self.dim} exceeds maximum {MAX_DIM}")

    @classmethod
    def single(cls, twice_j: int) -> SpinSystem:
        return cls(1, twice_j)

    @classmethod
    def for_dim(cls, dim: int) -> SpinSystem:
        """Infer a spin-1/2 chain from a power-of-two dimension."""
        n = int(dim).bit_length() - 1
        if dim < 2 or 2**n != dim:
            raise DimensionError(f"dimension {dim} is not 2**N; pass the system explicitly")
        return cls(n)

    @property
    def local_dim(self) -> int:
        return self.site_twice_j + 1

    @property
    def dim(self) -> int:
        return self.local_dim**self.n_sites

    @property
    def site_spin(self) -> SpinQuantumNumber:
        return SpinQuantumNumber(self.site_twice_j)

    @property
    def max_twice_j(self) -> int:
        return self.n_sites * self.site_twice_j

    def sites(self) -> range:
        return range(1, self.n_sites + 1)

    def check_site(self, site: int) -> None:
        if not 1 <= site <= self.n_sites:
            raise IndexError(f"site {site} outside 1..{self.n_sites}")

    def twice_m_table(self) -> np.ndarray:
        """``2 m_i`` of every site for every basis index, shape ``(dim, n_sites)``."""
        digits = np.indices((self.local_dim,) * self.n_sites).reshape(self.n_sites, -1).T
        return self.site_twice_j - 2 * digits


@dataclass(frozen=True)
class SiteOperator:
    """Spin component ``axis`` acting on one site."""

    system: SpinSystem
    site: int
    axis: str

    def __post_init__(self):
        self.system.check_site(self.site)
        if self.axis not in AXES:
            raise ValueError(f"axis must be one of x, y, z; got {self.axis!r}")

    @property
    def local(self) -> ComplexMatrix:
        return build_component(self.system.site_spin, self.axis)

    def matrix(self) -> ComplexMatrix:
        return embed(self.local, self.site, self.system)

    def apply(self, state) -> StateVector:
        return apply_site(self.local, self.site, state, self.system)


def _check_local(op_single: ComplexMatrix, system: SpinSystem) -> None:
    d = system.local_dim
    if op_single.shape != (d, d):
        raise DimensionError(f"site operator must be {d}x{d}, got {op_single.shape}")


def embed(op_single: ComplexMatrix, site: int, system: SpinSystem) -> ComplexMatrix:
    """Dense ``I x ... x op x ... x I`` with ``op`` on ``site``."""
    system.check_site(site)
    _check_local(op_single, system)
    d = system.local_dim
    factors = [identity(d)] * system.n_sites
    factors[site - 1] = op_single
    return reduce(kron, factors)


def _amplitudes(state) -> np.ndarray:
    if isinstance(state, StateVector):
        return state.amplitudes
    vector = getattr(state, "vector", None)
    if isinstance(vector, StateVector):
        return vector.amplitudes
    return np.asarray(state, dtype=np.complex128).reshape(-1)


def apply_site(op_single: ComplexMatrix, site: int, state, system: SpinSystem | None = None) -> StateVector:
    """Act with a local operator on one site of ``state`` (unnormalized result).

    Same result as ``matvec(embed(op_single, site, system), state)`` but
    memory stays linear in the state dimension.
    """
    psi = _amplitudes(state)
    if system is None:
        system = getattr(state, "system", None) or SpinSystem.for_dim(psi.size)
    if psi.size != system.dim:
        raise DimensionError(f"state of dim {psi.size} does not match system dim {system.dim}")
    system.check_site(site)
    _check_local(op_single, system)
    tensor = psi.reshape((system.local_dim,) * system.n_sites)
    out = np.tensordot(op_single.data, tensor, axes=([1], [site - 1]))
    out = np.moveaxis(out, 0, site - 1)
    return StateVector(out.reshape(-1), normalize=False)


class TotalOperator:
    """Sum over all sites of one local operator, e.g. ``J_x`` or ``J_-``.

    Acts in streaming form through :meth:`apply`; :meth:`dense` builds the
    full matrix for small systems.
    """

    def __init__(self, local: ComplexMatrix, system: SpinSystem, label: str = ""):
        _check_local(local, system)
        self.local = local
        self.system = system
        self.label = label

    @property
    def is_hermitian(self) -> bool:
        return self.local.is_hermitian()

    def apply(self, state) -> StateVector:
        psi = _amplitudes(state)
        out = np.zeros_like(psi)
        for site in self.system.sites():
            out += apply_site(self.local, site, psi, self.system).amplitudes
        return StateVector(out, normalize=False)

    def dense(self) -> ComplexMatrix:
        total = embed(self.local, 1, self.system)
        for site in range(2, self.system.n_sites + 1):
            total = total + embed(self.local, site, self.system)
        return total

    def expectation(self, state) -> complex:
        psi = _amplitudes(state)
        return complex(np.vdot(psi, self.apply(psi).amplitudes))

    def __repr__(self) -> str:
        return f"TotalOperator({self.label or '?'}, n_sites={self.system.n_sites})"


def total_component(axis: str, system: SpinSystem) -> TotalOperator:
    """``J_axis = sum_i S_axis,i``."""
    return TotalOperator(build_component(system.site_spin, axis), system, label=f"J{axis}")


def total_ladder(direction: str, system: SpinSystem) -> TotalOperator:
    sign = "+" if direction == "raise" else "-"
    return TotalOperator(build_ladder(system.site_spin, direction), system, label=f"J{sign}")


def total_j_squared(system: SpinSystem, state) -> float:
    """``<J^2> = sum_a <J_a^2>``, computed as ``sum_a ||J_a psi||^2``."""
    psi = _amplitudes(state)
    if psi.size != system.dim:
        raise DimensionError(f"state of dim {psi.size} does not match system dim {system.dim}")
    total = 0.0
    for axis in AXES:
        phi = total_component(axis, system).apply(psi).amplitudes
        total += float(np.vdot(phi, phi).real)
    return total
