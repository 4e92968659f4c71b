"""Many-body Hamiltonians of two- and three-site Kitaev chains.

The chains are spinless-fermion models

    H2 = sum_i eps_i n_i + (tau c1^+ c2 + delta c1^+ c2^+ + h.c.)
    H3 = sum_i eps_i n_i + sum_{i=1,2} (tau_i c_i^+ c_{i+1}
                                        + delta_i c_i^+ c_{i+1}^+ + h.c.)

expressed in the occupation-number basis |n_1 n_2 (n_3)> with the
convention |n_1 n_2 n_3> = (c1^+)^{n_1} (c2^+)^{n_2} (c3^+)^{n_3} |0>.
Total fermion parity is conserved, so the matrix splits into an
even-occupation and an odd-occupation block; both blocks and the full
matrix are available.  All parameters are real, so every matrix is real
symmetric.

Basis orders are fixed and all downstream coefficient indexing depends
on them:

    two-site   Full  {|00>, |01>, |10>, |11>}
    two-site   Even  {|00>, |11>}          Odd  {|01>, |10>}
    three-site Even  {|000>, |011>, |101>, |110>}
    three-site Odd   {|001>, |010>, |100>, |111>}
    three-site Full  lexicographic |n_1 n_2 n_3>

Energies are measured in units of the hopping (tau, or tau_1), times in
its inverse.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "ChainSpec2",
    "ChainSpec3",
    "Sector",
    "BasisLabel",
    "SectorHamiltonian",
    "sector_basis",
    "build_two_site",
    "build_three_site",
    "TWO_SITE_FULL",
    "TWO_SITE_EVEN",
    "TWO_SITE_ODD",
    "THREE_SITE_FULL",
    "THREE_SITE_EVEN",
    "THREE_SITE_ODD",
]


class Sector(enum.Enum):
    """Fermion-parity sector of the occupation-number basis."""

    EVEN = "even"
    ODD = "odd"
    FULL = "full"


@dataclass(frozen=True)
class BasisLabel:
    """One occupation-number basis state |n_1 ... n_L>, bits in {0, 1}."""

    occupations: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.occupations) not in (2, 3):
            raise ValueError("supported chains have 2 or 3 sites")
        if any(n not in (0, 1) for n in self.occupations):
            raise ValueError(f"occupations must be 0/1 bits: {self.occupations}")

    @classmethod
    def from_string(cls, bits: str) -> "BasisLabel":
        return cls(tuple(int(b) for b in bits))

    @property
    def parity(self) -> Sector:
        return Sector.EVEN if sum(self.occupations) % 2 == 0 else Sector.ODD

    @property
    def index(self) -> int:
        """Position in the lexicographic full basis (site 1 most significant)."""
        k = 0
        for n in self.occupations:
            k = 2 * k + n
        return k

    def __str__(self) -> str:
        return "".join(str(n) for n in self.occupations)


def _labels(*bits: str) -> tuple[BasisLabel, ...]:
    return tuple(BasisLabel.from_string(b) for b in bits)


TWO_SITE_FULL = _labels("00", "01", "10", "11")
TWO_SITE_EVEN = _labels("00", "11")
TWO_SITE_ODD = _labels("01", "10")
THREE_SITE_FULL = _labels(*(format(k, "03b") for k in range(8)))
THREE_SITE_EVEN = _labels("000", "011", "101", "110")
THREE_SITE_ODD = _labels("001", "010", "100", "111")

_BASES = {
    (2, Sector.FULL): TWO_SITE_FULL,
    (2, Sector.EVEN): TWO_SITE_EVEN,
    (2, Sector.ODD): TWO_SITE_ODD,
    (3, Sector.FULL): THREE_SITE_FULL,
    (3, Sector.EVEN): THREE_SITE_EVEN,
    (3, Sector.ODD): THREE_SITE_ODD,
}


def sector_basis(n_sites: int, sector: Sector) -> tuple[BasisLabel, ...]:
    """Ordered basis labels for a chain size and parity sector."""
    try:
        return _BASES[(n_sites, sector)]
    except KeyError:
        raise ValueError(f"no basis for {n_sites} sites, sector {sector}") from None


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class ChainSpec2:
    """Two-site chain parameters: onsite energies, hopping, pair potential."""

    eps1: float
    eps2: float
    tau: float
    delta: float

    def __post_init__(self) -> None:
        for name in ("eps1", "eps2", "tau", "delta"):
            object.__setattr__(self, name, _check_finite(name, getattr(self, name)))

    @property
    def n_sites(self) -> int:
        return 2


@dataclass(frozen=True)
class ChainSpec3:
    """Three-site chain parameters; couplings are per bond (1-2 and 2-3)."""

    eps1: float
    eps2: float
    eps3: float
    tau1: float
    tau2: float
    delta1: float
    delta2: float

    def __post_init__(self) -> None:
        for name in ("eps1", "eps2", "eps3", "tau1", "tau2", "delta1", "delta2"):
            object.__setattr__(self, name, _check_finite(name, getattr(self, name)))

    @property
    def n_sites(self) -> int:
        return 3


@dataclass(frozen=True)
class SectorHamiltonian:
    """Dense Hermitian matrix with its ordered basis labels and sector tag."""

    matrix: np.ndarray
    basis: tuple[BasisLabel, ...]
    sector: Sector

    def __post_init__(self) -> None:
        matrix = np.array(self.matrix, dtype=float)
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError(f"matrix must be square, got shape {matrix.shape}")
        if matrix.shape[0] != len(self.basis):
            raise ValueError("matrix dimension must equal basis length")
        if self.sector is not Sector.FULL:
            for label in self.basis:
                if label.parity is not self.sector:
                    raise ValueError(f"label {label} has wrong parity for {self.sector}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def build_two_site(spec: ChainSpec2, sector: Sector) -> SectorHamiltonian:
    """Two-site chain Hamiltonian in the requested parity sector.

    Full space (basis {|00>, |01>, |10>, |11>}):

        [[0,      0,    0,    delta        ],
         [0,      eps2, tau,  0            ],
         [0,      tau,  eps1, 0            ],
         [delta,  0,    0,    eps1 + eps2  ]]

    Even block acts on {|00>, |11>} with off-diagonal delta; odd block
    acts on {|01>, |10>} with off-diagonal tau.
    """
    e1, e2, t, d = spec.eps1, spec.eps2, spec.tau, spec.delta
    if sector is Sector.EVEN:
        m = [[0.0, d], [d, e1 + e2]]
    elif sector is Sector.ODD:
        m = [[e2, t], [t, e1]]
    else:
        m = [
            [0.0, 0.0, 0.0, d],
            [0.0, e2, t, 0.0],
            [0.0, t, e1, 0.0],
            [d, 0.0, 0.0, e1 + e2],
        ]
    return SectorHamiltonian(np.array(m), sector_basis(2, sector), sector)


def build_three_site(spec: ChainSpec3, sector: Sector) -> SectorHamiltonian:
    """Three-site chain Hamiltonian in the requested parity sector.

    Even block, basis {|000>, |011>, |101>, |110>}:

        [[0,       delta2,      0,           delta1     ],
         [delta2,  eps2 + eps3, tau1,        0          ],
         [0,       tau1,        eps1 + eps3, tau2       ],
         [delta1,  0,           tau2,        eps1 + eps2]]

    Odd block, basis {|001>, |010>, |100>, |111>}:

        [[eps3,    tau2,  0,      delta1             ],
         [tau2,    eps2,  tau1,   0                  ],
         [0,       tau1,  eps1,   delta2             ],
         [delta1,  0,     delta2, eps1 + eps2 + eps3 ]]

    The full 8x8 matrix is the block-diagonal assembly of both in
    lexicographic order; cross-parity entries are exactly zero.
    """
    e1, e2, e3 = spec.eps1, spec.eps2, spec.eps3
    t1, t2 = spec.tau1, spec.tau2
    d1, d2 = spec.delta1, spec.delta2
    even = np.array(
        [
            [0.0, d2, 0.0, d1],
            [d2, e2 + e3, t1, 0.0],
            [0.0, t1, e1 + e3, t2],
            [d1, 0.0, t2, e1 + e2],
        ]
    )
    odd = np.array(
        [
            [e3, t2, 0.0, d1],
            [t2, e2, t1, 0.0],
            [0.0, t1, e1, d2],
            [d1, 0.0, d2, e1 + e2 + e3],
        ]
    )
    if sector is Sector.EVEN:
        return SectorHamiltonian(even, THREE_SITE_EVEN, sector)
    if sector is Sector.ODD:
        return SectorHamiltonian(odd, THREE_SITE_ODD, sector)
    full = np.zeros((8, 8))
    for block, labels in ((even, THREE_SITE_EVEN), (odd, THREE_SITE_ODD)):
        idx = [label.index for label in labels]
        full[np.ix_(idx, idx)] = block
    return SectorHamiltonian(full, THREE_SITE_FULL, Sector.FULL)
