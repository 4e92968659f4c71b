"""Pure states over labeled occupation bases, plus the named states used
as initial and target states.

A :class:`PureState` couples a unit-norm complex amplitude vector to an
ordered tuple of :class:`~minikitaev.model.BasisLabel`.  Overlaps are
only defined between states on the identical basis; ``embed`` moves a
sector state into a larger basis (amplitudes land at the matching
labels, everything else is exactly zero).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericInvariantError
from .model import (
    BasisLabel,
    Sector,
    THREE_SITE_FULL,
    TWO_SITE_FULL,
    sector_basis,
)

__all__ = [
    "PureState",
    "NORM_TOL",
    "PHASE_EQUALITY_TOL",
    "overlap",
    "same_up_to_phase",
    "embed",
    "basis_state",
    "initial_state",
    "bell_plus",
    "ghz_state",
    "w_even_state",
    "TargetState",
    "target_state",
    "INITIAL_LABELS",
    "TARGET_LABELS",
]

#: allowed deviation of the Euclidean norm from 1
NORM_TOL = 1e-12

#: |<a|b>| > 1 - PHASE_EQUALITY_TOL  <=>  equal up to a global phase
PHASE_EQUALITY_TOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """Unit-norm amplitudes over an ordered occupation basis."""

    amplitudes: np.ndarray
    basis: tuple[BasisLabel, ...]

    def __post_init__(self) -> None:
        amplitudes = np.array(self.amplitudes, dtype=complex)
        amplitudes.setflags(write=False)
        object.__setattr__(self, "amplitudes", amplitudes)
        if amplitudes.ndim != 1:
            raise ValueError("amplitudes must be a vector")
        if len(amplitudes) != len(self.basis):
            raise ValueError("basis length must equal amplitude length")
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > NORM_TOL:
            raise NumericInvariantError(f"state norm {norm} deviates from 1")

    @property
    def dim(self) -> int:
        return len(self.amplitudes)

    @property
    def n_sites(self) -> int:
        return len(self.basis[0].occupations)


def _require_same_basis(a: PureState, b: PureState) -> None:
    if a.basis != b.basis:
        raise ValueError("states are expressed in different bases")


def overlap(a: PureState, b: PureState) -> complex:
    """<a|b> for states on the identical basis."""
    _require_same_basis(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def same_up_to_phase(a: PureState, b: PureState, tol: float = PHASE_EQUALITY_TOL) -> bool:
    """True iff the states differ by at most a global phase."""
    return abs(overlap(a, b)) > 1.0 - tol


def embed(state: PureState, basis: tuple[BasisLabel, ...]) -> PureState:
    """Re-express a state in a larger basis containing all its labels."""
    positions = {label: k for k, label in enumerate(basis)}
    amplitudes = np.zeros(len(basis), dtype=complex)
    for label, amp in zip(state.basis, state.amplitudes):
        if label not in positions:
            raise ValueError(f"label {label} missing from target basis")
        amplitudes[positions[label]] = amp
    return PureState(amplitudes, basis)


def basis_state(label: BasisLabel, basis: tuple[BasisLabel, ...]) -> PureState:
    """The basis vector |label> within the given basis."""
    amplitudes = np.zeros(len(basis), dtype=complex)
    amplitudes[basis.index(label)] = 1.0
    return PureState(amplitudes, basis)


def bell_plus() -> PureState:
    """(|00> + |11>)/sqrt(2) on the two-site even basis."""
    basis = sector_basis(2, Sector.EVEN)
    return PureState(np.array([1.0, 1.0]) / np.sqrt(2.0), basis)


def ghz_state() -> PureState:
    """(|000> + |111>)/sqrt(2) on the full three-site basis."""
    amplitudes = np.zeros(8, dtype=complex)
    amplitudes[0] = amplitudes[7] = 1.0 / np.sqrt(2.0)
    return PureState(amplitudes, THREE_SITE_FULL)


def w_even_state() -> PureState:
    """(|011> + |101> + |110>)/sqrt(3), the even-parity W form."""
    amplitudes = np.zeros(8, dtype=complex)
    amplitudes[[3, 5, 6]] = 1.0 / np.sqrt(3.0)
    return PureState(amplitudes, THREE_SITE_FULL)


#: initial-state labels accepted per chain size
INITIAL_LABELS = {
    2: ("00", "11", "bell+"),
    3: ("000", "111", "ghz"),
}


def initial_state(label: str, n_sites: int) -> PureState:
    """Named initial state in the sector basis it evolves in.

    Two-site initials live in the even sector; ``000`` is even, ``111``
    odd, and ``ghz`` spans both parities (returned on the full basis).
    """
    if label not in INITIAL_LABELS.get(n_sites, ()):
        raise ValueError(f"unknown initial state {label!r} for {n_sites} sites")
    if label == "bell+":
        return bell_plus()
    if label == "ghz":
        return ghz_state()
    target = BasisLabel.from_string(label)
    return basis_state(target, sector_basis(n_sites, target.parity))


@dataclass(frozen=True)
class TargetState:
    """A fixed maximally entangled reference state for overlap tracking."""

    label: str
    state: PureState


def target_state(label: str) -> TargetState:
    """Published target states.

    ``bell2``  (|00> + |11>)/sqrt(2)   (two-site, full basis)
    ``phi1``   (|000> + |111>)/sqrt(2) (GHZ form, full basis)
    ``phi2``   (|000> + |101>)/sqrt(2) (outer-pair form, full basis)
    """
    if label == "bell2":
        amplitudes = np.zeros(4, dtype=complex)
        amplitudes[[0, 3]] = 1.0 / np.sqrt(2.0)
        return TargetState(label, PureState(amplitudes, TWO_SITE_FULL))
    if label == "phi1":
        return TargetState(label, ghz_state())
    if label == "phi2":
        amplitudes = np.zeros(8, dtype=complex)
        amplitudes[[0, 5]] = 1.0 / np.sqrt(2.0)
        return TargetState(label, PureState(amplitudes, THREE_SITE_FULL))
    raise ValueError(f"unknown target state {label!r}")


TARGET_LABELS = ("bell2", "phi1", "phi2")
