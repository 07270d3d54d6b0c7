"""Projections, fluctuations and correlations in the vector model.

Two ways to turn a state into a classical-looking vector:

* choice A, ``(<Jx>, <Jy>, <Jz>)``, the plain expectation values;
* choice B, ``(<Jx^2>^1/2, <Jy^2>^1/2, <Jz^2>^1/2)``, whose squared length
  is ``<J^2> = j(j+1)`` by construction.

On a ``|j, m>`` state the z entry of choice B is a projection (zero
variance) and the x, y entries are pure fluctuations (zero mean). Composing
the per-particle vectors adds projections directly and fluctuations as
noise, i.e. the site variances plus twice the pairwise covariances.
:func:`vector_sum_report` carries out that composition and checks it
against choice B of the total state.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .composite import SiteOperator, SpinSystem, TotalOperator, total_component
from .coupling import CoupledState
from .linalg import ATOL, ComplexMatrix, DimensionError, StateVector
from .spin_ops import AXES, format_half

__all__ = [
    "VerificationError",
    "NoiseBudget",
    "VectorModelReport",
    "variance",
    "site_means",
    "second_moments",
    "pair_correlation",
    "correlation_matrix",
    "noise_budget",
    "vector_choice_a",
    "vector_choice_b",
    "classify_component",
    "particle_vectors",
    "vector_sum_report",
    "effective_unit",
]

CLAMP = 1e-12

Classification = Literal["projection", "fluctuation", "mixed"]
CorrelationClass = Literal["uncorrelated", "correlated", "anti-correlated", "partial"]


class VerificationError(RuntimeError):
    """A numerical identity that must hold failed beyond tolerance."""


def _resolve(state, system: Optional[SpinSystem] = None) -> tuple[np.ndarray, SpinSystem]:
    if isinstance(state, CoupledState):
        return state.amplitudes, state.system
    psi = state.amplitudes if isinstance(state, StateVector) else np.asarray(state, dtype=complex)
    return psi.reshape(-1), system or SpinSystem.for_dim(psi.size)


def _clamp(v: float) -> float:
    if v < -CLAMP:
        raise VerificationError(f"negative variance {v:.3e} beyond rounding")
    return max(v, 0.0)


def _root(v: float) -> float:
    # sqrt amplifies rounding: a square of 1e-16 would become a 1e-8 component
    v = _clamp(v)
    return math.sqrt(v) if v > CLAMP else 0.0


def _sign(v: float) -> float:
    return -1.0 if v < -ATOL else 1.0


def _apply(op, psi: np.ndarray, system: SpinSystem) -> np.ndarray:
    if isinstance(op, ComplexMatrix):
        if op.shape != (psi.size, psi.size):
            raise DimensionError(f"operator {op.shape} cannot act on state of dim {psi.size}")
        return op.data @ psi
    if isinstance(op, (TotalOperator, SiteOperator)):
        if op.system.dim != psi.size:
            raise DimensionError(f"operator on dim {op.system.dim} cannot act on dim {psi.size}")
        return op.apply(psi).amplitudes
    raise TypeError(f"unsupported operator type {type(op).__name__}")


def variance(op, state, system: Optional[SpinSystem] = None) -> float:
    """``<A^2> - <A>^2`` for a Hermitian operator.

    ``op`` may be a dense :class:`ComplexMatrix`, a total component such as
    ``total_component("x", system)``, or a :class:`SiteOperator`. Rounding
    negatives down to -1e-12 are clamped to 0.
    """
    if isinstance(op, ComplexMatrix) and not op.is_hermitian():
        raise ValueError("variance needs a Hermitian operator")
    psi, system = _resolve(state, system)
    phi = _apply(op, psi, system)
    mean = np.vdot(psi, phi).real
    second = np.vdot(phi, phi).real
    return _clamp(second - mean**2)


def _site_images(psi: np.ndarray, system: SpinSystem, axis: str) -> np.ndarray:
    """Rows are ``S_axis,i |psi>`` for i = 1..N."""
    return np.array([SiteOperator(system, i, axis).apply(psi).amplitudes for i in system.sites()])


def site_means(state, axis: str, system: Optional[SpinSystem] = None) -> np.ndarray:
    psi, system = _resolve(state, system)
    images = _site_images(psi, system, axis)
    return (images @ psi.conj()).real


def second_moments(state, axis: str, system: Optional[SpinSystem] = None) -> np.ndarray:
    """Matrix of ``<S_axis,i S_axis,k>``; the diagonal holds ``<S_axis,i^2>``.

    Its entries sum to ``<J_axis^2>``.
    """
    psi, system = _resolve(state, system)
    images = _site_images(psi, system, axis)
    gram = images.conj() @ images.T
    if np.max(np.abs(gram.imag), initial=0.0) > ATOL:
        raise VerificationError("pair correlation has an imaginary part above tolerance")
    return gram.real


def pair_correlation(state, axis: str, i: int, k: int, system: Optional[SpinSystem] = None) -> float:
    """``<S_axis,i S_axis,k>`` for two distinct sites (1-based)."""
    psi, system = _resolve(state, system)
    system.check_site(i)
    system.check_site(k)
    if i == k:
        raise ValueError("pair correlation needs two distinct sites; use variance for i == k")
    a = SiteOperator(system, i, axis).apply(psi).amplitudes
    b = SiteOperator(system, k, axis).apply(psi).amplitudes
    value = np.vdot(a, b)
    if abs(value.imag) > ATOL:
        raise VerificationError(f"pair correlation {value} is not real")
    return float(value.real)


correlation_matrix = second_moments


@dataclass(frozen=True)
class NoiseBudget:
    """Split of ``Delta J_axis^2`` into site variances and pair covariances.

    ``covariances[i][k]`` is ``<S_i S_k> - <S_i><S_k>``; on ``|j, m>`` states
    the means along x and y vanish and it equals the raw pair correlation.
    """

    axis: str
    site_variances: tuple[float, ...]
    covariances: tuple[tuple[float, ...], ...]
    uncorrelated_part: float
    correlation_part: float
    total: float
    correlation_class: CorrelationClass

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "site_variances": list(self.site_variances),
            "covariances": [list(row) for row in self.covariances],
            "uncorrelated_part": self.uncorrelated_part,
            "correlation_part": self.correlation_part,
            "total": self.total,
            "correlation_class": self.correlation_class,
        }


def _correlation_class(pairs: np.ndarray) -> CorrelationClass:
    if pairs.size == 0 or np.all(np.abs(pairs) <= ATOL):
        return "uncorrelated"
    if np.all(pairs >= ATOL):
        return "correlated"
    if np.all(pairs <= -ATOL):
        return "anti-correlated"
    return "partial"


def noise_budget(state, axis: str, system: Optional[SpinSystem] = None) -> NoiseBudget:
    psi, system = _resolve(state, system)
    images = _site_images(psi, system, axis)
    means = (images @ psi.conj()).real
    cov = (images.conj() @ images.T).real - np.outer(means, means)
    variances = tuple(_clamp(v) for v in np.diag(cov))
    upper = cov[np.triu_indices(system.n_sites, k=1)]
    uncorrelated = float(sum(variances))
    correlation = float(2.0 * upper.sum())
    return NoiseBudget(
        axis=axis,
        site_variances=variances,
        covariances=tuple(tuple(float(v) for v in row) for row in cov),
        uncorrelated_part=uncorrelated,
        correlation_part=correlation,
        total=uncorrelated + correlation,
        correlation_class=_correlation_class(upper),
    )


def vector_choice_a(state, system: Optional[SpinSystem] = None) -> np.ndarray:
    psi, system = _resolve(state, system)
    return np.array([total_component(a, system).expectation(psi).real for a in AXES])


def vector_choice_b(state, system: Optional[SpinSystem] = None) -> np.ndarray:
    """Root-mean-square components, each signed like ``<J_axis>``.

    A component whose mean is zero within 1e-10 is taken positive, so on
    ``|j, m>`` states x and y are non-negative and z has the sign of m.
    """
    psi, system = _resolve(state, system)
    out = np.empty(3)
    for n, axis in enumerate(AXES):
        phi = total_component(axis, system).apply(psi).amplitudes
        mean = np.vdot(psi, phi).real
        out[n] = _sign(mean) * _root(np.vdot(phi, phi).real)
    return out


def classify_component(state, axis: str, system: Optional[SpinSystem] = None) -> Classification:
    """Projection if the component is sharp, fluctuation if it is zero on average.

    A component that is both zero and sharp counts as a projection of value 0.
    """
    psi, system = _resolve(state, system)
    jop = total_component(axis, system)
    mean = jop.expectation(psi).real
    var = variance(jop, psi, system)
    if var <= ATOL:
        return "projection"
    if abs(mean) <= ATOL:
        return "fluctuation"
    return "mixed"


def particle_vectors(state, system: Optional[SpinSystem] = None) -> tuple[np.ndarray, list[str]]:
    """Per-site choice-B vectors and how the sign of each z entry was fixed.

    Sites with ``<S_z,i> = 0`` but ``<S_z,i^2> > 0`` have no preferred z
    sign; those get alternating signs (+, -, +, ...) in site order.
    The returned labels are ``"expectation"``, ``"alternating"`` or ``"zero"``.
    """
    psi, system = _resolve(state, system)
    vectors = np.empty((system.n_sites, 3))
    rules = []
    flip = 1.0
    for col, axis in enumerate(AXES):
        images = _site_images(psi, system, axis)
        means = (images @ psi.conj()).real
        rms = np.sqrt(np.maximum(np.einsum("ij,ij->i", images.conj(), images).real, 0.0))
        for i in range(system.n_sites):
            if axis != "z" or abs(means[i]) > ATOL:
                vectors[i, col] = _sign(means[i]) * rms[i]
                if axis == "z":
                    rules.append("expectation")
            elif rms[i] <= ATOL:
                vectors[i, col] = 0.0
                rules.append("zero")
            else:
                vectors[i, col] = flip * rms[i]
                flip = -flip
                rules.append("alternating")
    return vectors, rules


def effective_unit(j) -> float:
    """``sqrt(1 + 1/j)``: the length ``sqrt(j(j+1))`` per unit of j."""
    j = float(j)
    if j <= 0:
        raise ValueError(f"effective unit is undefined for j = {j}; need j > 0")
    return math.sqrt(1.0 + 1.0 / j)


@dataclass(frozen=True)
class VectorModelReport:
    """Everything the vector model says about one coupled state."""

    n_sites: int
    site_twice_j: int
    twice_j: int
    twice_m: int
    provenance: str
    coupling_path: tuple[int, ...]
    choice_a: np.ndarray
    choice_b: np.ndarray
    classification: dict
    particle_vectors: np.ndarray
    z_sign_rules: tuple[str, ...]
    correlations: dict
    budgets: dict
    projection_sum: np.ndarray
    composed: np.ndarray
    naive_sum: np.ndarray
    j_squared: float
    composition_residual: float

    @property
    def magnitude_a_sq(self) -> float:
        return float(self.choice_a @ self.choice_a)

    @property
    def magnitude_b_sq(self) -> float:
        return float(self.choice_b @ self.choice_b)

    @property
    def composed_sq(self) -> float:
        return float(self.composed @ self.composed)

    @property
    def naive_sq(self) -> float:
        return float(self.naive_sum @ self.naive_sum)

    @property
    def effective_unit(self) -> Optional[float]:
        return effective_unit(self.twice_j / 2) if self.twice_j > 0 else None

    def to_dict(self) -> dict:
        return {
            "n_sites": self.n_sites,
            "site_j": format_half(self.site_twice_j),
            "j": format_half(self.twice_j),
            "m": format_half(self.twice_m),
            "twice_j": self.twice_j,
            "twice_m": self.twice_m,
            "provenance": self.provenance,
            "coupling_path": list(self.coupling_path),
            "choice_a": self.choice_a.tolist(),
            "choice_b": self.choice_b.tolist(),
            "magnitude_a_sq": self.magnitude_a_sq,
            "magnitude_b_sq": self.magnitude_b_sq,
            "classification": dict(self.classification),
            "particle_vectors": self.particle_vectors.tolist(),
            "z_sign_rules": list(self.z_sign_rules),
            "correlations": {a: m.tolist() for a, m in self.correlations.items()},
            "noise_budgets": {a: b.to_dict() for a, b in self.budgets.items()},
            "projection_sum": self.projection_sum.tolist(),
            "composed": self.composed.tolist(),
            "composed_sq": self.composed_sq,
            "naive_sum": self.naive_sum.tolist(),
            "naive_sq": self.naive_sq,
            "j_squared": self.j_squared,
            "effective_unit": self.effective_unit,
            "composition_residual": self.composition_residual,
        }


def vector_sum_report(state: CoupledState) -> VectorModelReport:
    """Compose the per-particle vectors and compare with choice B.

    Along each axis the projections ``<S_axis,i>`` are summed directly and
    the noise is the exact budget total (site variances plus twice the pair
    covariances). The composed component is
    ``sign(P) * sqrt(P^2 + noise)`` with ``P`` the projection sum, which must
    reproduce :func:`vector_choice_b`; otherwise :class:`VerificationError`
    is raised.
    """
    psi, system = state.amplitudes, state.system
    vectors, rules = particle_vectors(state)
    correlations, budgets = {}, {}
    projections = np.empty(3)
    composed = np.empty(3)
    for n, axis in enumerate(AXES):
        correlations[axis] = second_moments(state, axis)
        budgets[axis] = noise_budget(state, axis)
        projections[n] = site_means(state, axis).sum()
        noise = budgets[axis].total
        composed[n] = _sign(projections[n]) * _root(projections[n] ** 2 + noise)
    choice_b = vector_choice_b(psi, system)
    residual = float(np.max(np.abs(composed - choice_b)))
    if residual > ATOL:
        raise VerificationError(
            f"composed vector {composed} differs from choice B {choice_b} by {residual:.3e}"
        )
    return VectorModelReport(
        n_sites=system.n_sites,
        site_twice_j=system.site_twice_j,
        twice_j=state.twice_j,
        twice_m=state.twice_m,
        provenance=state.provenance,
        coupling_path=state.coupling_path,
        choice_a=vector_choice_a(psi, system),
        choice_b=choice_b,
        classification={a: classify_component(psi, a, system) for a in AXES},
        particle_vectors=vectors,
        z_sign_rules=tuple(rules),
        correlations=correlations,
        budgets=budgets,
        projection_sum=projections,
        composed=composed,
        naive_sum=vectors.sum(axis=0),
        j_squared=float(sum(correlations[a].sum() for a in AXES)),
        composition_residual=residual,
    )
