"""Coupled eigenstates |j, m> of N spin-1/2 particles.

Three constructions are available:

* explicit states (the two-spin triplet and singlet, the all-up product
  state, a lone spin-j basis state),
* the lowering chain ``J- |j, m> / sqrt(j(j+1) - m(m-1))`` from the
  stretched state, which covers the maximal ``j = N/2`` multiplet,
* sequential coupling, adding one spin-1/2 at a time with Clebsch-Gordan
  coefficients along a coupling path.

A coupling path lists ``2 j_k`` after each of the first k sites are coupled,
so it has one entry per site, starts at 1 and ends at the target ``2j``.
Degenerate multiplets at equal (j, m) are told apart by their path.

Every constructed vector has its global phase fixed so that the first
nonzero amplitude (lowest basis index) is real and positive.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal, Optional, Sequence

import numpy as np

from .composite import SpinSystem, total_component, total_j_squared, total_ladder
from .linalg import ATOL, StateVector
from .spin_ops import format_half, to_twice

__all__ = [
    "CoupledState",
    "fix_phase",
    "check_admissible",
    "stretched_state",
    "lower",
    "two_spin_state",
    "single_spin_state",
    "coupled_state",
    "sequential_state",
    "canonical_path",
    "coupling_paths",
    "validate_path",
    "coupled_basis",
    "cg_coefficient",
]

Provenance = Literal["explicit", "lowering", "sequential-coupling"]


def fix_phase(amplitudes, atol: float = 1e-12) -> np.ndarray:
    """Rotate the global phase so the first nonzero amplitude is real positive."""
    a = np.asarray(amplitudes, dtype=np.complex128)
    nonzero = np.flatnonzero(np.abs(a) > atol)
    if nonzero.size == 0:
        return a.copy()
    lead = a[nonzero[0]]
    return a * (abs(lead) / lead)


def check_admissible(system: SpinSystem, twice_j: int, twice_m: int) -> None:
    """Raise ``ValueError`` unless (j, m) can occur in ``system``."""
    jtxt, mtxt = format_half(twice_j), format_half(twice_m)
    if twice_j < 0:
        raise ValueError(f"j = {jtxt} must be non-negative")
    if abs(twice_m) > twice_j:
        raise ValueError(f"|m| <= j violated: j = {jtxt}, m = {mtxt}")
    if (twice_j - twice_m) % 2:
        raise ValueError(f"j - m must be an integer: j = {jtxt}, m = {mtxt}")
    if system.n_sites == 1:
        if twice_j != system.site_twice_j:
            raise ValueError(f"a single spin-{format_half(system.site_twice_j)} site has only j = "
                             f"{format_half(system.site_twice_j)}, not {jtxt}")
        return
    if twice_j > system.n_sites:
        raise ValueError(f"j = {jtxt} exceeds N/2 = {format_half(system.n_sites)}")
    if (system.n_sites - twice_j) % 2:
        raise ValueError(f"j = {jtxt} has the wrong parity for N = {system.n_sites} spins")


@dataclass(frozen=True)
class CoupledState:
    """A normalized ``|j, m>`` eigenvector together with how it was built."""

    system: SpinSystem
    twice_j: int
    twice_m: int
    vector: StateVector
    provenance: Provenance = "explicit"
    coupling_path: tuple[int, ...] = field(default=())

    def __post_init__(self):
        check_admissible(self.system, self.twice_j, self.twice_m)
        if self.vector.dim != self.system.dim:
            raise ValueError(f"vector dim {self.vector.dim} != system dim {self.system.dim}")
        if not self.vector.is_normalized():
            raise ValueError("coupled state vector is not normalized")
        j, m = self.twice_j / 2, self.twice_m / 2
        jsq = total_j_squared(self.system, self.vector)
        jz = total_component("z", self.system).expectation(self.vector).real
        if abs(jsq - j * (j + 1)) > ATOL or abs(jz - m) > ATOL:
            raise ValueError(
                f"vector is not |{self.j}, {self.m}>: <J^2> = {jsq:.12g}, <Jz> = {jz:.12g}"
            )
        object.__setattr__(self, "coupling_path", tuple(int(v) for v in self.coupling_path))

    @property
    def j(self) -> Fraction:
        return Fraction(self.twice_j, 2)

    @property
    def m(self) -> Fraction:
        return Fraction(self.twice_m, 2)

    @property
    def amplitudes(self) -> np.ndarray:
        return self.vector.amplitudes

    @property
    def label(self) -> str:
        text = f"|{format_half(self.twice_j)}, {format_half(self.twice_m)}>"
        if self.coupling_path:
            text += " path " + ",".join(str(v) for v in self.coupling_path)
        return text

    def __repr__(self) -> str:
        return (f"CoupledState({self.label}, n_sites={self.system.n_sites}, "
                f"provenance={self.provenance!r})")


def stretched_state(system: SpinSystem) -> CoupledState:
    """All spins up: ``j = m = N/2``, amplitude 1 on basis index 0."""
    return CoupledState(
        system,
        system.max_twice_j,
        system.max_twice_j,
        StateVector.basis(system.dim, 0),
    )


def lower(state: CoupledState) -> CoupledState:
    """Apply ``J-`` and renormalize by ``sqrt(j(j+1) - m(m-1))``."""
    if state.twice_m == -state.twice_j:
        raise ValueError(f"J- annihilates {state.label}: m is already -j")
    j, m = state.twice_j / 2, state.twice_m / 2
    coeff = np.sqrt(j * (j + 1) - m * (m - 1))
    lowered = total_ladder("lower", state.system).apply(state.vector).amplitudes / coeff
    if abs(np.linalg.norm(lowered) - 1.0) > ATOL:
        raise ValueError(f"{state.label} is not a J^2 eigenstate; lowering lost normalization")
    return CoupledState(
        state.system,
        state.twice_j,
        state.twice_m - 2,
        StateVector(fix_phase(lowered)),
        "lowering",
        state.coupling_path,
    )


_TWO_SPIN = {
    (1, 1): (1, 0, 0, 0),
    (1, 0): (0, 1, 1, 0),
    (1, -1): (0, 0, 0, 1),
    (0, 0): (0, 1, -1, 0),
}


def two_spin_state(j: int, m: int) -> CoupledState:
    """The triplet ``(1, m)`` or singlet ``(0, 0)`` of two spin-1/2 particles.

    The singlet carries its positive amplitude on ``|up, down>``.
    """
    try:
        amps = _TWO_SPIN[(j, m)]
    except (KeyError, TypeError):
        raise ValueError(f"two spin-1/2 particles have no state (j, m) = ({j}, {m})") from None
    return CoupledState(SpinSystem(2), 2 * j, 2 * m, StateVector(amps))


def single_spin_state(twice_j: int, twice_m: int) -> CoupledState:
    """Basis state ``|j, m>`` of one spin-j particle."""
    if twice_j < 1:
        raise ValueError("a single particle needs j > 0")
    system = SpinSystem.single(twice_j)
    check_admissible(system, twice_j, twice_m)
    index = (twice_j - twice_m) // 2
    return CoupledState(system, twice_j, twice_m, StateVector.basis(system.dim, index))


def canonical_path(n_sites: int, twice_j: int) -> tuple[int, ...]:
    """Stay at maximal j as long as possible, then descend to the target.

    >>> canonical_path(4, 0)
    (1, 2, 1, 0)
    """
    descents = (n_sites - twice_j) // 2
    if twice_j < 0 or twice_j > n_sites or (n_sites - twice_j) % 2:
        raise ValueError(f"no coupling path reaches 2j = {twice_j} with {n_sites} spins")
    rising = n_sites - descents
    return tuple(range(1, rising + 1)) + tuple(range(rising - 1, rising - descents - 1, -1))


def validate_path(path: Sequence[int], n_sites: int, twice_j: int | None = None) -> tuple[int, ...]:
    path = tuple(int(v) for v in path)
    if len(path) != n_sites:
        raise ValueError(f"coupling path needs {n_sites} entries (one per site), got {len(path)}")
    if path[0] != 1:
        raise ValueError("coupling path must start at 2j = 1 (first spin-1/2)")
    for prev, nxt in zip(path, path[1:]):
        if nxt < 0 or abs(nxt - prev) != 1:
            raise ValueError(f"invalid coupling step 2j = {prev} -> {nxt}: adding a spin-1/2 "
                             "changes j by exactly 1/2")
    if twice_j is not None and path[-1] != twice_j:
        raise ValueError(f"coupling path ends at 2j = {path[-1]}, not {twice_j}")
    return path


def coupling_paths(n_sites: int, twice_j: int | None = None) -> Iterator[tuple[int, ...]]:
    """All sequential coupling paths for ``n_sites`` spins, optionally ending at ``twice_j``."""
    def extend(path):
        if len(path) == n_sites:
            if twice_j is None or path[-1] == twice_j:
                yield path
            return
        last = path[-1]
        for nxt in (last + 1, last - 1):
            if nxt >= 0:
                yield from extend(path + (nxt,))

    yield from extend((1,))


def _cg_half(tj1: int, tm1: int, tm2: int, tJ: int, tM: int) -> float:
    """``<j1 m1; 1/2 m2 | J M>`` on twice-integer arguments."""
    if tm2 not in (1, -1) or tm1 + tm2 != tM or abs(tm1) > tj1 or abs(tM) > tJ:
        return 0.0
    if (tj1 - tm1) % 2 or (tJ - tM) % 2:
        return 0.0
    denom = tj1 + 1  # 2 j1 + 1
    plus = (tj1 + tM + 1) / 2  # j1 + M + 1/2
    minus = (tj1 - tM + 1) / 2  # j1 - M + 1/2
    if tJ == tj1 + 1:
        return float(np.sqrt((plus if tm2 == 1 else minus) / denom))
    if tJ == tj1 - 1 and tj1 > 0:
        return float(-np.sqrt(minus / denom) if tm2 == 1 else np.sqrt(plus / denom))
    return 0.0


def cg_coefficient(j1, m1, j2, m2, J, M) -> float:
    """Clebsch-Gordan coefficient ``<j1 m1; 1/2 m2 | J M>`` (Condon-Shortley).

    Only ``j2 = 1/2`` is supported. Arguments may be ints, floats,
    fractions or strings such as ``"3/2"``. Combinations violating the
    selection rules give exactly 0.
    """
    if to_twice(j2) != 1:
        raise ValueError(f"only coupling to spin 1/2 is supported, got j2 = {j2}")
    return _cg_half(to_twice(j1), to_twice(m1), to_twice(m2), to_twice(J), to_twice(M))


@lru_cache(maxsize=4096)
def _sequential_amplitudes(path: tuple[int, ...], twice_m: int) -> np.ndarray:
    tJ = path[-1]
    if len(path) == 1:
        return np.array([1.0, 0.0]) if twice_m == 1 else np.array([0.0, 1.0])
    prefix, tj1 = path[:-1], path[-2]
    out = np.zeros(2 ** len(path))
    for tm2, spin in ((1, np.array([1.0, 0.0])), (-1, np.array([0.0, 1.0]))):
        tm1 = twice_m - tm2
        if abs(tm1) > tj1:
            continue
        c = _cg_half(tj1, tm1, tm2, tJ, twice_m)
        if c != 0.0:
            out += c * np.kron(_sequential_amplitudes(prefix, tm1), spin)
    out.setflags(write=False)
    return out


def sequential_state(system: SpinSystem, path: Sequence[int], twice_m: int) -> CoupledState:
    """Couple spins one at a time along ``path`` (always the CG route)."""
    path = validate_path(path, system.n_sites)
    check_admissible(system, path[-1], twice_m)
    amps = _sequential_amplitudes(path, twice_m)
    return CoupledState(
        system, path[-1], twice_m, StateVector(fix_phase(amps)), "sequential-coupling", path
    )


def coupled_state(
    system: SpinSystem,
    twice_j: int,
    twice_m: int,
    path: Optional[Sequence[int]] = None,
) -> CoupledState:
    """Build ``|j, m>`` for ``system``.

    For ``j = N/2`` the state comes from the lowering chain of the stretched
    state; any other ``j`` is built by sequential coupling along ``path``,
    defaulting to :func:`canonical_path`.
    """
    check_admissible(system, twice_j, twice_m)
    if system.site_twice_j != 1:
        return single_spin_state(twice_j, twice_m)
    if path is not None:
        path = validate_path(path, system.n_sites, twice_j)
    if twice_j == system.n_sites:
        state = stretched_state(system)
        while state.twice_m > twice_m:
            state = lower(state)
        return state
    return sequential_state(system, path or canonical_path(system.n_sites, twice_j), twice_m)


def coupled_basis(system: SpinSystem) -> list[CoupledState]:
    """Every state reachable by sequential coupling: one per (path, m)."""
    states = []
    for path in coupling_paths(system.n_sites):
        for twice_m in range(path[-1], -path[-1] - 1, -2):
            states.append(sequential_state(system, path, twice_m))
    return states
