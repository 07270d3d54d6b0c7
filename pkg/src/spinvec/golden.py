"""Golden reproductions of the headline numbers of the vector model.

Each :class:`Check` compares a computed value (scalar or vector) against a
closed-form expectation. ``run_checks`` evaluates them all at one tolerance.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .analysis import (
    effective_unit,
    noise_budget,
    pair_correlation,
    variance,
    vector_choice_a,
    vector_choice_b,
    vector_sum_report,
)
from .composite import SpinSystem, total_component, total_j_squared
from .coupling import single_spin_state, stretched_state, two_spin_state
from .linalg import ATOL, expectation
from .spin_ops import build_sx

Number = Union[float, list]

__all__ = ["Check", "CheckResult", "golden_checks", "run_checks"]


@dataclass(frozen=True)
class Check:
    name: str
    expected: Number
    compute: Callable[[], Number]


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: Number
    computed: Number
    delta: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.delta <= self.tolerance)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "computed": self.computed,
            "delta": self.delta,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def _vec(v) -> list:
    return [float(x) for x in np.asarray(v, dtype=float)]


def golden_checks() -> list[Check]:
    up = single_spin_state(1, 1)
    half = up.system
    sx = build_sx("1/2")
    stretched2 = stretched_state(SpinSystem(2))
    triplet0 = two_spin_state(1, 0)
    singlet = two_spin_state(0, 0)
    r2 = 1 / math.sqrt(2)

    def jx_var(state):
        return lambda: variance(total_component("x", state.system), state)

    def jy_var(state):
        return lambda: variance(total_component("y", state.system), state)

    checks = [
        Check("spin-1 magnitude <J^2>", 2.0, lambda: total_j_squared(
            single_spin_state(2, 0).system, single_spin_state(2, 0))),
        Check("spin-1 magnitude sqrt<J^2>", math.sqrt(2.0), lambda: math.sqrt(total_j_squared(
            single_spin_state(2, 2).system, single_spin_state(2, 2)))),
        Check("spin-1/2 up: <Sx>", 0.0, lambda: total_component("x", half).expectation(up).real),
        Check("spin-1/2 up: <Sy>", 0.0, lambda: total_component("y", half).expectation(up).real),
        Check("spin-1/2 up: <Sz>", 0.5, lambda: total_component("z", half).expectation(up).real),
        Check("spin-1/2 up: var Sx equals <Sx^2>", expectation(sx @ sx, up.vector).real,
              lambda: variance(sx, up)),
        Check("spin-1/2 up: var Sx", 0.25, lambda: variance(sx, up)),
        Check("spin-1/2 up: var Sy", 0.25, jy_var(up)),
        Check("spin-1/2 up: choice A vector", [0.0, 0.0, 0.5], lambda: _vec(vector_choice_a(up))),
        Check("spin-1/2 up: choice A magnitude^2", 0.25,
              lambda: float(np.sum(vector_choice_a(up) ** 2))),
        Check("spin-1/2 up: choice B vector", [0.5, 0.5, 0.5], lambda: _vec(vector_choice_b(up))),
        Check("spin-1/2 up: choice B magnitude^2", 0.75,
              lambda: float(np.sum(vector_choice_b(up) ** 2))),
        Check("|1,1>: <J^2>", 2.0, lambda: total_j_squared(stretched2.system, stretched2)),
        Check("|1,1>: Jz as direct sum of projections", 1.0,
              lambda: float(vector_sum_report(stretched2).projection_sum[2])),
        Check("|1,1>: <Sx1 Sx2>", 0.0, lambda: pair_correlation(stretched2, "x", 1, 2)),
        Check("|1,1>: var Jx in quadrature", 0.5, jx_var(stretched2)),
        Check("|1,1>: composed vector", [r2, r2, 1.0],
              lambda: _vec(vector_sum_report(stretched2).composed)),
        Check("|1,1>: composed magnitude^2", 2.0, lambda: vector_sum_report(stretched2).composed_sq),
        Check("|1,1>: naive sum vector", [1.0, 1.0, 1.0],
              lambda: _vec(vector_sum_report(stretched2).naive_sum)),
        Check("|1,1>: naive sum magnitude^2", 3.0, lambda: vector_sum_report(stretched2).naive_sq),
        Check("|1,0>: <Sx1 Sx2>", 0.25, lambda: pair_correlation(triplet0, "x", 1, 2)),
        Check("|1,0>: var Jx", 1.0, jx_var(triplet0)),
        Check("|1,0>: var Jy", 1.0, jy_var(triplet0)),
        Check("|1,0>: <Jz>", 0.0, lambda: total_component("z", triplet0.system).expectation(
            triplet0).real),
        Check("|1,0>: composed vector", [1.0, 1.0, 0.0],
              lambda: _vec(vector_sum_report(triplet0).composed)),
        Check("|1,0>: composed magnitude^2", 2.0, lambda: vector_sum_report(triplet0).composed_sq),
        Check("|0,0>: <Sx1 Sx2>", -0.25, lambda: pair_correlation(singlet, "x", 1, 2)),
        Check("|0,0>: var Jx", 0.0, jx_var(singlet)),
        Check("|0,0>: var Jy", 0.0, jy_var(singlet)),
        Check("|0,0>: site var Sx1", 0.25, lambda: noise_budget(singlet, "x").site_variances[0]),
        Check("|0,0>: composed vector", [0.0, 0.0, 0.0],
              lambda: _vec(vector_sum_report(singlet).composed)),
        Check("|0,0>: composed magnitude^2", 0.0, lambda: vector_sum_report(singlet).composed_sq),
    ]
    for n in range(1, 11):
        state = stretched_state(SpinSystem(n))
        j = n / 2
        checks += [
            Check(f"stretched N={n}: max |pair correlation x|", 0.0,
                  lambda s=state: float(max((abs(pair_correlation(s, "x", i, k))
                                             for i in range(1, s.system.n_sites + 1)
                                             for k in range(i + 1, s.system.n_sites + 1)),
                                            default=0.0))),
            Check(f"stretched N={n}: var Jx = j/2", j / 2, jx_var(state)),
            Check(f"stretched N={n}: composed vector", [math.sqrt(j / 2), math.sqrt(j / 2), j],
                  lambda s=state: _vec(vector_sum_report(s).composed)),
            Check(f"stretched N={n}: magnitude^2 = j(j+1)", j * (j + 1),
                  lambda s=state: vector_sum_report(s).composed_sq),
        ]
    checks += [
        Check("effective unit j=1/2", math.sqrt(3.0), lambda: effective_unit(0.5)),
        Check("effective unit j=1", math.sqrt(2.0), lambda: effective_unit(1)),
    ]
    return checks


def _delta(expected: Number, computed: Number) -> float:
    return float(np.max(np.abs(np.asarray(expected, dtype=float) - np.asarray(computed, dtype=float))))


def run_checks(tolerance: float = ATOL) -> list[CheckResult]:
    results = []
    for check in golden_checks():
        computed = check.compute()
        results.append(CheckResult(check.name, check.expected, computed,
                                   _delta(check.expected, computed), tolerance))
    return results
