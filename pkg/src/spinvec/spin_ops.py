"""Spin operators for a single particle of arbitrary spin j.

Basis states are ordered by descending m, so index 0 is ``|j, j>``.
Ladder elements follow the Condon-Shortley convention (real, non-negative).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

import numpy as np

from .linalg import ComplexMatrix

__all__ = [
    "SpinQuantumNumber",
    "Axis",
    "AXES",
    "to_twice",
    "parse_quantum_number",
    "format_half",
    "build_sz",
    "build_ladder",
    "build_sx",
    "build_sy",
    "build_component",
]

Axis = Literal["x", "y", "z"]
AXES: tuple[Axis, ...] = ("x", "y", "z")

HalfInteger = Union[int, float, Fraction, str]


def to_twice(value: HalfInteger) -> int:
    """Convert an integer or half-integer to twice its value.

    >>> to_twice("3/2"), to_twice(0.5), to_twice(-1)
    (3, 1, -2)
    """
    if isinstance(value, (float, np.floating)):
        doubled = 2 * float(value)
        if not doubled.is_integer():
            raise ValueError(f"{value!r} is not an integer or half-integer")
        return int(doubled)
    doubled = 2 * Fraction(value)
    if doubled.denominator != 1:
        raise ValueError(f"{value!r} is not an integer or half-integer")
    return int(doubled)


def parse_quantum_number(text: str) -> int:
    """Parse ``"3/2"``, ``"1"``, ``"-1/2"`` or ``"1.5"`` into a twice-integer."""
    try:
        return to_twice(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot read {text!r} as an integer or half-integer") from exc


def format_half(twice: int) -> str:
    return str(twice // 2) if twice % 2 == 0 else f"{twice}/2"


@dataclass(frozen=True)
class SpinQuantumNumber:
    """Spin quantum number stored exactly as ``twice_j = 2j``."""

    twice_j: int

    def __post_init__(self):
        if int(self.twice_j) != self.twice_j or self.twice_j < 0:
            raise ValueError(f"twice_j must be a non-negative integer, got {self.twice_j!r}")
        object.__setattr__(self, "twice_j", int(self.twice_j))

    @classmethod
    def of(cls, j: HalfInteger | SpinQuantumNumber) -> SpinQuantumNumber:
        if isinstance(j, SpinQuantumNumber):
            return j
        return cls(to_twice(j))

    @property
    def j(self) -> Fraction:
        return Fraction(self.twice_j, 2)

    @property
    def dim(self) -> int:
        return self.twice_j + 1

    def twice_m_values(self) -> np.ndarray:
        """``2m`` for each basis index, descending from ``2j``."""
        return np.arange(self.twice_j, -self.twice_j - 1, -2)

    def m_values(self) -> np.ndarray:
        return self.twice_m_values() / 2.0

    def casimir(self) -> float:
        j = self.twice_j / 2
        return j * (j + 1)

    def __str__(self) -> str:
        return format_half(self.twice_j)


def build_sz(j) -> ComplexMatrix:
    return ComplexMatrix(np.diag(SpinQuantumNumber.of(j).m_values()))


def build_ladder(j, direction: Literal["raise", "lower"]) -> ComplexMatrix:
    """Raising or lowering operator.

    ``<j, m+1| S+ |j, m> = sqrt(j(j+1) - m(m+1))``; ``S-`` is its transpose.
    """
    spin = SpinQuantumNumber.of(j)
    jj = spin.twice_j / 2
    m = spin.m_values()
    # column c holds |j, m[c]>, raising moves it to row c - 1
    coeff = np.sqrt(np.maximum(jj * (jj + 1) - m[1:] * (m[1:] + 1), 0.0))
    raising = np.diag(coeff, k=1)
    if direction == "raise":
        return ComplexMatrix(raising)
    if direction == "lower":
        return ComplexMatrix(raising.T)
    raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")


def build_sx(j) -> ComplexMatrix:
    sp = build_ladder(j, "raise")
    return (sp + sp.adjoint()) / 2


def build_sy(j) -> ComplexMatrix:
    sp = build_ladder(j, "raise")
    return (sp - sp.adjoint()) / 2j


def build_component(j, axis: str) -> ComplexMatrix:
    builders = {"x": build_sx, "y": build_sy, "z": build_sz}
    try:
        return builders[axis](j)
    except KeyError:
        raise ValueError(f"axis must be one of x, y, z; got {axis!r}") from None
