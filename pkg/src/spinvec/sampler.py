"""Monte Carlo measurement of every site's spin along one axis.

Each site is rotated so the chosen axis eigenbasis becomes the computational
basis, then joint outcomes are drawn from the Born probabilities by inverse
CDF lookup. Random numbers come from counter-based Philox streams, one per
block of 65536 samples keyed by ``(seed, block index)``, so a batch depends
only on the seed and never on how many threads drew it.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .composite import SpinSystem, apply_site
from .coupling import CoupledState
from .linalg import ComplexMatrix, StateVector
from .spin_ops import AXES, SpinQuantumNumber, build_component

__all__ = [
    "BLOCK_SIZE",
    "DEFAULT_SAMPLES",
    "SampleBatch",
    "MomentEstimates",
    "axis_unitary",
    "rotate_to_axis_basis",
    "outcome_probabilities",
    "sample",
    "estimate_moments",
    "exact_moments",
    "compare_moments",
]

BLOCK_SIZE = 1 << 16
DEFAULT_SAMPLES = 10**6
THREADS_ENV = "SPINVEC_THREADS"

_R2 = 1 / math.sqrt(2)
_SE_FLOOR = 1e-12
# rows are <+a| and <-a| for spin 1/2
_HALF_UNITARIES = {
    "x": np.array([[1, 1], [1, -1]]) * _R2,
    "y": np.array([[1, -1j], [1, 1j]]) * _R2,
    "z": np.eye(2),
}


def _resolve(state, system):
    if isinstance(state, CoupledState):
        return state.amplitudes, state.system
    psi = np.asarray(state.amplitudes if isinstance(state, StateVector) else state, dtype=complex)
    return psi.reshape(-1), system or SpinSystem.for_dim(psi.size)


def axis_unitary(axis: str, site_twice_j: int = 1) -> ComplexMatrix:
    """Unitary whose row r is the conjugated eigenvector of ``S_axis`` with m = j - r."""
    if axis not in AXES:
        raise ValueError(f"axis must be one of x, y, z; got {axis!r}")
    if site_twice_j == 1:
        return ComplexMatrix(_HALF_UNITARIES[axis])
    evals, evecs = np.linalg.eigh(build_component(SpinQuantumNumber(site_twice_j), axis).data)
    order = np.argsort(-evals)
    return ComplexMatrix(evecs[:, order].conj().T)


def rotate_to_axis_basis(state, axis: str, system: Optional[SpinSystem] = None) -> StateVector:
    psi, system = _resolve(state, system)
    u = axis_unitary(axis, system.site_twice_j)
    if axis == "z":
        return StateVector(psi)
    for site in system.sites():
        psi = apply_site(u, site, psi, system).amplitudes
    return StateVector(psi)


def outcome_probabilities(state, axis: str, system: Optional[SpinSystem] = None) -> np.ndarray:
    """Born probability of each joint outcome, indexed like the basis."""
    return rotate_to_axis_basis(state, axis, system).probabilities()


@dataclass(frozen=True)
class SampleBatch:
    """Joint outcomes, stored as ``2m`` per site (int8, shape ``(n, N)``)."""

    axis: str
    n_samples: int
    seed: int
    system: SpinSystem
    twice_outcomes: np.ndarray

    @property
    def outcomes(self) -> np.ndarray:
        return self.twice_outcomes / 2.0

    def __eq__(self, other) -> bool:
        if not isinstance(other, SampleBatch):
            return NotImplemented
        return (
            (self.axis, self.n_samples, self.seed, self.system)
            == (other.axis, other.n_samples, other.seed, other.system)
            and np.array_equal(self.twice_outcomes, other.twice_outcomes)
        )

    __hash__ = None


def _cdf(probs: np.ndarray) -> np.ndarray:
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    last = np.flatnonzero(probs > 0)[-1]
    cdf[last:] = 1.0
    return cdf


def _draw_block(seed: int, block: int, size: int, cdf: np.ndarray) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(block,))))
    return np.searchsorted(cdf, rng.random(size), side="right")


def _thread_count(threads: Optional[int]) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1") or 1)
    return max(1, threads)


def sample(
    state,
    axis: str,
    n_samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    system: Optional[SpinSystem] = None,
    threads: Optional[int] = None,
) -> SampleBatch:
    """Draw ``n_samples`` joint measurements of every site along ``axis``.

    The thread count (argument or ``SPINVEC_THREADS``) changes speed only;
    the returned batch is a function of ``(state, axis, n_samples, seed)``.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    psi, system = _resolve(state, system)
    cdf = _cdf(outcome_probabilities(psi, axis, system))
    sizes = [min(BLOCK_SIZE, n_samples - start) for start in range(0, n_samples, BLOCK_SIZE)]
    jobs = list(enumerate(sizes))
    nthreads = _thread_count(threads)
    if nthreads == 1 or len(jobs) == 1:
        chunks = [_draw_block(seed, b, size, cdf) for b, size in jobs]
    else:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            chunks = list(pool.map(lambda job: _draw_block(seed, job[0], job[1], cdf), jobs))
    index = np.concatenate(chunks)
    table = system.twice_m_table().astype(np.int8)
    return SampleBatch(axis, n_samples, seed, system, table[index])


@dataclass(frozen=True)
class MomentEstimates:
    """Moments of the per-site outcomes and of their sum ``J_axis``.

    Standard errors are for a plug-in estimate from ``n_samples`` draws.
    ``variance_se`` is the exact finite-sample spread of the plug-in variance
    ``(n-1)/n * s^2``, which stays correct where the first-order delta-method
    term vanishes (two-valued outcomes with equal weights).
    """

    axis: str
    n_samples: int
    means: np.ndarray
    mean_se: np.ndarray
    variances: np.ndarray
    variance_se: np.ndarray
    second_moments: np.ndarray
    second_moment_se: np.ndarray
    marginals: np.ndarray
    marginal_se: np.ndarray
    total_mean: float
    total_mean_se: float
    total_variance: float
    total_variance_se: float

    def to_dict(self) -> dict:
        return {
            "axis": self.axis,
            "n_samples": self.n_samples,
            "means": self.means.tolist(),
            "mean_se": self.mean_se.tolist(),
            "variances": self.variances.tolist(),
            "variance_se": self.variance_se.tolist(),
            "second_moments": self.second_moments.tolist(),
            "second_moment_se": self.second_moment_se.tolist(),
            "marginals": self.marginals.tolist(),
            "marginal_se": self.marginal_se.tolist(),
            "total_mean": self.total_mean,
            "total_mean_se": self.total_mean_se,
            "total_variance": self.total_variance,
            "total_variance_se": self.total_variance_se,
        }


def _root(v, scale):
    # v is a difference of terms of size ~scale; what is left below rounding
    # is an exact zero, so deterministic quantities keep se = 0
    v = np.asarray(v, dtype=float)
    return np.where(v > _SE_FLOOR * np.abs(scale), np.sqrt(np.maximum(v, 0.0)), 0.0)


def _variance_se(sigma2, mu4, n: int):
    if n < 2:
        return np.full_like(np.asarray(sigma2, dtype=float), np.nan)
    var_s2 = mu4 / n - sigma2**2 * (n - 3) / (n * (n - 1))
    return _root(((n - 1) / n) ** 2 * var_s2, mu4 / n)


def _moments(values: np.ndarray, weights: np.ndarray, n: int, axis: str, levels: np.ndarray) -> MomentEstimates:
    """Moments of a weighted discrete distribution of outcome rows."""
    means = weights @ values
    centred = values - means
    sigma2 = weights @ centred**2
    raw2 = weights @ values**2
    mu4 = weights @ centred**4
    weighted = values * weights[:, None]
    second = weighted.T @ values
    # (s_i s_k)^2 = s_i^2 s_k^2
    second_sq = (weighted * values).T @ values**2
    marginals = np.stack([weights @ (values == lv) for lv in levels], axis=1)

    total = values.sum(axis=1)
    t_mean = float(weights @ total)
    t_sigma2 = float(weights @ (total - t_mean) ** 2)
    t_mu4 = float(weights @ (total - t_mean) ** 4)
    return MomentEstimates(
        axis=axis,
        n_samples=n,
        means=means,
        mean_se=_root(sigma2, raw2) / math.sqrt(n),
        variances=sigma2,
        variance_se=_variance_se(sigma2, mu4, n),
        second_moments=second,
        second_moment_se=_root(second_sq - second**2, second_sq) / math.sqrt(n),
        marginals=marginals,
        marginal_se=_root(marginals * (1 - marginals), marginals) / math.sqrt(n),
        total_mean=t_mean,
        total_mean_se=float(_root(t_sigma2, weights @ total**2)) / math.sqrt(n),
        total_variance=t_sigma2,
        total_variance_se=float(_variance_se(t_sigma2, t_mu4, n)),
    )


def _levels(system: SpinSystem) -> np.ndarray:
    return np.arange(system.site_twice_j, -system.site_twice_j - 1, -2) / 2.0


def estimate_moments(batch: SampleBatch) -> MomentEstimates:
    """Plug-in estimates from a batch, with standard errors from the same sample."""
    if batch.n_samples < 2:
        raise ValueError("need at least two samples to estimate moments")
    n = batch.n_samples
    values = batch.outcomes
    weights = np.full(n, 1.0 / n)
    return _moments(values, weights, n, batch.axis, _levels(batch.system))


def exact_moments(state, axis: str, n_samples: int = DEFAULT_SAMPLES,
                  system: Optional[SpinSystem] = None) -> MomentEstimates:
    """Exact moments of the measurement distribution and the exact standard
    errors a batch of ``n_samples`` would have."""
    psi, system = _resolve(state, system)
    probs = outcome_probabilities(psi, axis, system)
    values = system.twice_m_table() / 2.0
    return _moments(values, probs, n_samples, axis, _levels(system))


def compare_moments(exact: MomentEstimates, empirical: MomentEstimates, sigmas: float = 5.0,
                    slack: float = 1e-12) -> list[dict]:
    """Per-quantity agreement within ``sigmas`` exact standard errors.

    ``slack`` absorbs rounding for quantities the distribution fixes exactly
    (standard error 0).
    """
    rows = []

    def add(name, exact_v, emp_v, se):
        delta = float(emp_v - exact_v)
        rows.append({
            "quantity": name,
            "exact": float(exact_v),
            "empirical": float(emp_v),
            "standard_error": float(se),
            "z_score": delta / se if se > 0 else (0.0 if abs(delta) <= slack else None),
            "within_tolerance": bool(abs(delta) <= sigmas * se + slack),
        })

    n_sites = exact.means.size
    a = exact.axis
    for i in range(n_sites):
        add(f"<S{a}{i + 1}>", exact.means[i], empirical.means[i], exact.mean_se[i])
        add(f"var S{a}{i + 1}", exact.variances[i], empirical.variances[i], exact.variance_se[i])
        add(f"P(S{a}{i + 1} = top)", exact.marginals[i, 0], empirical.marginals[i, 0],
            exact.marginal_se[i, 0])
    for i in range(n_sites):
        for k in range(i + 1, n_sites):
            add(f"<S{a}{i + 1} S{a}{k + 1}>", exact.second_moments[i, k],
                empirical.second_moments[i, k], exact.second_moment_se[i, k])
    add(f"var J{a}", exact.total_variance, empirical.total_variance, exact.total_variance_se)
    return rows
