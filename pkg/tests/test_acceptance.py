"""Acceptance gate: one marked group per criterion, summary printed at the end of the run."""
import io
import json
import math

import jsonschema
import numpy as np
import pytest

from spinvec.analysis import (
    effective_unit,
    noise_budget,
    pair_correlation,
    variance,
    vector_choice_a,
    vector_choice_b,
    vector_sum_report,
)
from spinvec.cli import main
from spinvec.composite import SpinSystem, apply_site, embed, total_component, total_j_squared
from spinvec.coupling import coupled_state, single_spin_state, stretched_state, two_spin_state
from spinvec.linalg import StateVector, commutator, expectation, identity
from spinvec.sampler import estimate_moments, exact_moments, sample
from spinvec.schema import REPORT_SCHEMA
from spinvec.spin_ops import AXES, build_component, build_sx, build_sy, build_sz

TOL = 1e-10
ALGEBRA_TOL = 1e-12
N_SAMPLES = 10**6
SEED = 0
R2 = 1 / math.sqrt(2)


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def totals(system):
    return {a: total_component(a, system) for a in AXES}


@criterion(1, "single spin-1/2")
def test_single_spin_half():
    up = single_spin_state(1, 1).vector
    sx, sy, sz = build_sx("1/2"), build_sy("1/2"), build_sz("1/2")
    assert expectation(sz, up).real == pytest.approx(0.5, abs=TOL)
    assert expectation(sx, up).real == pytest.approx(0, abs=TOL)
    assert expectation(sy, up).real == pytest.approx(0, abs=TOL)
    assert variance(sx, up) == pytest.approx(0.25, abs=TOL)
    a, b = vector_choice_a(up), vector_choice_b(up)
    assert a == pytest.approx([0, 0, 0.5], abs=TOL)
    assert a @ a == pytest.approx(0.25, abs=TOL)
    assert b == pytest.approx([0.5, 0.5, 0.5], abs=TOL)
    assert b @ b == pytest.approx(0.75, abs=TOL)


@criterion(2, "two-spin stretched |1,1>")
def test_two_spin_stretched():
    state = stretched_state(SpinSystem(2))
    t = totals(state.system)
    assert total_j_squared(state.system, state) == pytest.approx(2, abs=TOL)
    assert pair_correlation(state, "x", 1, 2) == pytest.approx(0, abs=TOL)
    budget = noise_budget(state, "x")
    assert budget.total == pytest.approx(0.25 + 0.25, abs=TOL)
    assert variance(t["x"], state) == pytest.approx(0.5, abs=TOL)
    r = vector_sum_report(state)
    assert r.composed == pytest.approx([R2, R2, 1], abs=TOL)
    assert r.composed_sq == pytest.approx(2, abs=TOL)
    assert r.naive_sq == pytest.approx(3, abs=TOL)


@criterion(3, "triplet m=0")
def test_triplet_m0():
    state = two_spin_state(1, 0)
    t = totals(state.system)
    assert pair_correlation(state, "x", 1, 2) == pytest.approx(0.25, abs=TOL)
    assert variance(t["x"], state) == pytest.approx(1, abs=TOL)
    assert variance(t["y"], state) == pytest.approx(1, abs=TOL)
    r = vector_sum_report(state)
    assert r.composed == pytest.approx([1, 1, 0], abs=TOL)
    assert r.composed_sq == pytest.approx(2, abs=TOL)


@criterion(4, "singlet")
def test_singlet():
    state = two_spin_state(0, 0)
    t = totals(state.system)
    assert pair_correlation(state, "x", 1, 2) == pytest.approx(-0.25, abs=TOL)
    assert variance(t["x"], state) == pytest.approx(0, abs=TOL)
    assert variance(t["y"], state) == pytest.approx(0, abs=TOL)
    r = vector_sum_report(state)
    assert r.composed == pytest.approx([0, 0, 0], abs=TOL)
    assert r.composed_sq == pytest.approx(0, abs=TOL)


@criterion(5, "general stretched states N=1..10")
@pytest.mark.parametrize("n", range(1, 11))
def test_general_stretched(n):
    state = stretched_state(SpinSystem(n))
    j = n / 2
    for axis in ("x", "y"):
        for i in range(1, n + 1):
            for k in range(i + 1, n + 1):
                assert pair_correlation(state, axis, i, k) == pytest.approx(0, abs=TOL)
    # along z the product <S_zi S_zk> is 1/4 but the connected part vanishes
    assert np.allclose(noise_budget(state, "z").covariances, 0, atol=TOL)
    assert variance(total_component("x", state.system), state) == pytest.approx(j / 2, abs=TOL)
    r = vector_sum_report(state)
    assert r.composed == pytest.approx([math.sqrt(j / 2), math.sqrt(j / 2), j], abs=TOL)
    assert r.composed_sq == pytest.approx(j * (j + 1), abs=TOL)


@criterion(6, "every canonical |j,m> for N<=8")
@pytest.mark.parametrize("n", range(1, 9))
def test_all_coupled_states(n):
    system = SpinSystem(n)
    t = totals(system)
    for twice_j in range(n % 2, n + 1, 2):
        for twice_m in range(twice_j, -twice_j - 1, -2):
            state = coupled_state(system, twice_j, twice_m)
            j, m = twice_j / 2, twice_m / 2
            assert total_j_squared(system, state) == pytest.approx(j * (j + 1), abs=TOL)
            means = [t[a].expectation(state).real for a in AXES]
            assert means == pytest.approx([0, 0, m], abs=TOL)
            images = [t[a].apply(state).amplitudes for a in AXES]
            assert sum(np.vdot(v, v).real for v in images) == pytest.approx(j * (j + 1), abs=TOL)
            for axis in AXES:
                b = noise_budget(state, axis)
                assert b.total == pytest.approx(b.uncorrelated_part + b.correlation_part, abs=TOL)
                assert b.total == pytest.approx(variance(t[axis], state), abs=TOL)


def _check_algebra(jx, jy, jz, j):
    dim = jx.rows
    assert commutator(jx, jy).allclose(1j * jz.data, atol=ALGEBRA_TOL)
    assert commutator(jy, jz).allclose(1j * jx.data, atol=ALGEBRA_TOL)
    assert commutator(jz, jx).allclose(1j * jy.data, atol=ALGEBRA_TOL)
    casimir = jx @ jx + jy @ jy + jz @ jz
    if j is not None:
        assert casimir.allclose(j * (j + 1) * identity(dim).data, atol=ALGEBRA_TOL)
    for op in (jx, jy, jz):
        assert commutator(casimir, op).allclose(np.zeros((dim, dim)), atol=ALGEBRA_TOL)


@criterion(7, "operator algebra")
@pytest.mark.parametrize("twice_j", range(1, 9))
def test_single_spin_algebra(twice_j):
    j = twice_j / 2
    _check_algebra(*(build_component(j, a) for a in AXES), j)


@criterion(7, "operator algebra")
@pytest.mark.parametrize("n", range(1, 7))
def test_composite_algebra(n):
    system = SpinSystem(n)
    _check_algebra(*(total_component(a, system).dense() for a in AXES), None)


@criterion(8, "streaming apply_site equals dense embed")
@pytest.mark.parametrize("n", range(2, 7))
def test_streaming_equals_dense(n):
    rng = np.random.default_rng(1000 + n)
    system = SpinSystem(n)
    locals_ = {a: build_component("1/2", a) for a in AXES}
    for _ in range(100):
        psi = rng.normal(size=system.dim) + 1j * rng.normal(size=system.dim)
        psi = StateVector(psi)
        axis = AXES[rng.integers(3)]
        site = int(rng.integers(1, n + 1))
        stream = apply_site(locals_[axis], site, psi, system).amplitudes
        dense = embed(locals_[axis], site, system).data @ psi.amplitudes
        assert np.max(np.abs(stream - dense)) <= ALGEBRA_TOL


@criterion(9, "effective unit")
def test_effective_unit():
    assert effective_unit(0.5) == pytest.approx(math.sqrt(3), abs=TOL)
    assert effective_unit(1) == pytest.approx(math.sqrt(2), abs=TOL)
    values = [effective_unit(t / 2) for t in range(1, 51)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert all(v > 1 for v in values)


def _within(empirical, exact, se):
    return abs(empirical - exact) <= 5 * se + 1e-12


@criterion(10, "sampler statistics at n=1e6")
def test_sampler_suite():
    up = single_spin_state(1, 1)
    batch = sample(up, "x", N_SAMPLES, SEED)
    est, ex = estimate_moments(batch), exact_moments(up, "x", N_SAMPLES)
    assert ex.variances[0] == pytest.approx(0.25)
    assert _within(est.variances[0], ex.variances[0], ex.variance_se[0])

    for state, expected in ((two_spin_state(1, 0), 0.25), (two_spin_state(0, 0), -0.25)):
        est = estimate_moments(sample(state, "x", N_SAMPLES, SEED))
        ex = exact_moments(state, "x", N_SAMPLES)
        assert ex.second_moments[0, 1] == pytest.approx(expected)
        assert _within(est.second_moments[0, 1], expected, ex.second_moment_se[0, 1])

    four = stretched_state(SpinSystem(4))
    est = estimate_moments(sample(four, "x", N_SAMPLES, SEED))
    ex = exact_moments(four, "x", N_SAMPLES)
    assert ex.total_variance == pytest.approx(1)
    assert _within(est.total_variance, 1, ex.total_variance_se)

    again = sample(up, "x", N_SAMPLES, SEED)
    assert again.twice_outcomes.tobytes() == batch.twice_outcomes.tobytes()


def _run(*argv):
    out = io.StringIO()
    return main(list(argv), out=out), out.getvalue()


@criterion(11, "CLI")
def test_cli_paper_table():
    code, text = _run("paper-table")
    assert code == 0
    lines = [l for l in text.splitlines() if l.startswith("[")]
    assert lines and all(l.startswith("[PASS]") for l in lines)


@criterion(11, "CLI")
@pytest.mark.parametrize("argv", [
    ("paper-table",),
    ("single", "--j", "1/2", "--m", "1/2"),
    ("single", "--j", "5/2", "--m", "-3/2"),
    ("couple", "--n", "2", "--j", "1", "--m", "1"),
    ("couple", "--n", "2", "--j", "0", "--m", "0"),
    ("couple", "--n", "6", "--j", "1", "--m", "-1", "--sample", "2000"),
    ("sample", "--n", "2", "--j", "1", "--m", "0", "--axis", "y", "--samples", "5000"),
])
def test_cli_schema(argv):
    code, text = _run("--json", *argv)
    assert code == 0
    jsonschema.validate(json.loads(text), REPORT_SCHEMA)


@criterion(11, "CLI")
@pytest.mark.parametrize("argv", [
    ("single", "--j", "1/2", "--m", "1"),
    ("single", "--j", "1", "--m", "2"),
    ("couple", "--n", "2", "--j", "3/2", "--m", "1/2"),
    ("couple", "--n", "2", "--j", "1", "--m", "-2"),
])
def test_cli_invalid_exit_2(argv):
    with pytest.raises(SystemExit) as exc:
        _run(*argv)
    assert exc.value.code == 2
