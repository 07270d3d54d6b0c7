import math
from functools import reduce

import numpy as np
import pytest

from spinvec.composite import SpinSystem
from spinvec.coupling import coupled_state, single_spin_state, stretched_state, two_spin_state
from spinvec.linalg import StateVector
from spinvec.sampler import (
    BLOCK_SIZE,
    compare_moments,
    estimate_moments,
    exact_moments,
    outcome_probabilities,
    rotate_to_axis_basis,
    sample,
)
from spinvec.spin_ops import build_component

UP = single_spin_state(1, 1)
SINGLET = two_spin_state(0, 0)
TRIPLET0 = two_spin_state(1, 0)


def projector_probabilities(psi, axis, n):
    """P(outcomes) = <psi| prod_i (I + 4 s_i S_axis)/2 ... |psi>, built densely."""
    s = build_component("1/2", axis).data
    projectors = {1: (np.eye(2) + 2 * s) / 2, -1: (np.eye(2) - 2 * s) / 2}
    probs = []
    for index in range(2**n):
        bits = [(index >> (n - 1 - i)) & 1 for i in range(n)]
        p = reduce(np.kron, [projectors[1 - 2 * b] for b in bits])
        probs.append(np.vdot(psi, p @ psi).real)
    return np.array(probs)


class TestRotate:
    def test_z_identity(self):
        assert rotate_to_axis_basis(UP, "z").allclose([1, 0])

    def test_up_along_x(self):
        assert rotate_to_axis_basis(UP, "x").probabilities() == pytest.approx([0.5, 0.5])

    def test_singlet_x(self):
        probs = outcome_probabilities(SINGLET, "x")
        assert probs == pytest.approx([0, 0.5, 0.5, 0], abs=1e-12)
        assert probs == pytest.approx(projector_probabilities(SINGLET.amplitudes, "x", 2), abs=1e-12)

    @pytest.mark.parametrize("axis", "xyz")
    def test_matches_projectors(self, axis, random_state):
        psi = random_state(8)
        assert outcome_probabilities(psi, axis) == pytest.approx(
            projector_probabilities(psi, axis, 3), abs=1e-12)

    def test_spin_one_along_x(self):
        # Wigner d^1(pi/2) column m = 1: (1/2, 1/sqrt2, 1/2)
        assert outcome_probabilities(single_spin_state(2, 2), "x") == pytest.approx([0.25, 0.5, 0.25])

    def test_normalized(self, random_state):
        assert rotate_to_axis_basis(random_state(16), "y").is_normalized()


class TestSample:
    def test_eigenstate(self):
        batch = sample(UP, "z", 1000, seed=3)
        assert np.all(batch.outcomes == 0.5)

    def test_outcome_values(self):
        batch = sample(TRIPLET0, "y", 5000, seed=1)
        assert set(np.unique(batch.outcomes)) <= {-0.5, 0.5}
        assert batch.twice_outcomes.shape == (5000, 2)

    def test_deterministic(self):
        a = sample(coupled_state(SpinSystem(3), 1, 1), "x", 200_000, seed=11)
        b = sample(coupled_state(SpinSystem(3), 1, 1), "x", 200_000, seed=11)
        assert a == b

    def test_thread_count_irrelevant(self):
        state = stretched_state(SpinSystem(4))
        n = 3 * BLOCK_SIZE + 17
        assert sample(state, "x", n, seed=5, threads=1) == sample(state, "x", n, seed=5, threads=4)

    def test_thread_env(self, monkeypatch):
        monkeypatch.setenv("SPINVEC_THREADS", "3")
        n = 2 * BLOCK_SIZE + 1
        with_env = sample(UP, "x", n, seed=2)
        assert with_env == sample(UP, "x", n, seed=2, threads=1)

    def test_prefix_stable(self):
        # a longer batch extends a shorter one drawn with the same seed
        short = sample(UP, "x", 1000, seed=9)
        long = sample(UP, "x", 5000, seed=9)
        assert np.array_equal(long.twice_outcomes[:1000], short.twice_outcomes)

    def test_seed_matters(self):
        assert sample(UP, "x", 1000, seed=1) != sample(UP, "x", 1000, seed=2)

    def test_errors(self):
        with pytest.raises(ValueError):
            sample(UP, "x", 0)
        with pytest.raises(ValueError):
            sample(UP, "x", 10, seed=-1)
        with pytest.raises(ValueError):
            sample(UP, "w", 10)

    def test_zero_probability_outcomes_never_drawn(self):
        batch = sample(SINGLET, "z", 100_000, seed=4)
        assert np.all(batch.twice_outcomes.sum(axis=1) == 0)


class TestMoments:
    def test_all_up(self):
        est = estimate_moments(sample(stretched_state(SpinSystem(3)), "z", 100, seed=0))
        assert est.means == pytest.approx([0.5] * 3)
        assert est.variances == pytest.approx([0] * 3)

    def test_needs_two_samples(self):
        with pytest.raises(ValueError):
            estimate_moments(sample(UP, "x", 1))

    def test_exact_moments(self):
        ex = exact_moments(W := coupled_state(SpinSystem(3), 3, 1), "x", 1000)
        assert ex.second_moments[0, 1] == pytest.approx(1 / 6)
        assert ex.total_variance == pytest.approx(7 / 4)
        assert ex.means == pytest.approx([0, 0, 0], abs=1e-12)
        assert W.twice_m == 1

    def test_up_x_million(self):
        n = 10**6
        est = estimate_moments(sample(UP, "x", n, seed=0))
        ex = exact_moments(UP, "x", n)
        assert abs(est.means[0]) <= 5 * ex.mean_se[0]
        second = est.second_moments[0, 0]
        assert abs(second - 0.25) <= 5 * ex.second_moment_se[0, 0] + 1e-12
        assert abs(est.variances[0] - 0.25) <= 5 * ex.variance_se[0]

    def test_triplet_correlation_million(self):
        est = estimate_moments(sample(TRIPLET0, "x", 10**6, seed=0))
        ex = exact_moments(TRIPLET0, "x", 10**6)
        assert abs(est.second_moments[0, 1] - 0.25) <= 5 * ex.second_moment_se[0, 1] + 1e-12

    def test_singlet_correlation(self):
        est = estimate_moments(sample(SINGLET, "x", 100_000, seed=8))
        assert est.second_moments[0, 1] == pytest.approx(-0.25, abs=1e-12)

    def test_stretched_four_total_variance(self):
        state = stretched_state(SpinSystem(4))
        est = estimate_moments(sample(state, "x", 10**6, seed=0))
        ex = exact_moments(state, "x", 10**6)
        assert ex.total_variance == pytest.approx(1)
        assert abs(est.total_variance - 1) <= 5 * ex.total_variance_se

    def test_marginals(self):
        state = coupled_state(SpinSystem(3), 1, 1)
        n = 200_000
        est = estimate_moments(sample(state, "z", n, seed=12))
        ex = exact_moments(state, "z", n)
        # <S_zi> = p_up - 1/2
        assert ex.marginals[:, 0] == pytest.approx(ex.means + 0.5)
        assert np.all(np.abs(est.marginals - ex.marginals) <= 5 * ex.marginal_se + 1e-12)

    @pytest.mark.parametrize("theta", [math.pi / 2, 0.7])
    def test_variance_standard_error_formula(self, theta):
        # spread of the plug-in variance over many small independent batches
        psi = StateVector([math.cos(theta / 2), math.sin(theta / 2)])
        n, repeats = 12, 40_000
        ex = exact_moments(psi, "z", n, SpinSystem(1))
        batch = sample(psi, "z", n * repeats, seed=21, system=SpinSystem(1))
        values = batch.outcomes.reshape(repeats, n)
        plug_in = values.var(axis=1)
        assert plug_in.std() == pytest.approx(ex.variance_se[0], rel=0.03)

    def test_compare_rows(self):
        n = 50_000
        state = stretched_state(SpinSystem(2))
        rows = compare_moments(exact_moments(state, "x", n),
                               estimate_moments(sample(state, "x", n, seed=3)))
        names = [r["quantity"] for r in rows]
        assert "<Sx1 Sx2>" in names and "var Jx" in names
        assert all(r["within_tolerance"] for r in rows)

    def test_compare_flags_exact_mismatch(self):
        n = 1000
        ex = exact_moments(SINGLET, "x", n)
        wrong = estimate_moments(sample(TRIPLET0, "x", n, seed=0))
        rows = {r["quantity"]: r for r in compare_moments(ex, wrong)}
        assert not rows["<Sx1 Sx2>"]["within_tolerance"]
        assert rows["<Sx1 Sx2>"]["z_score"] is None
