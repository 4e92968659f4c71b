"""Spectra of the chain Hamiltonians.

Numeric diagonalization (``numpy.linalg.eigh``) is the single source of
truth for eigenvalues and eigenvectors.  The closed-form two-site
spectrum and the uniform three-site quartic characteristic polynomial
are provided as independent cross-checks only; they never feed the
evolution pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NumericInvariantError
from .model import (
    ChainSpec2,
    ChainSpec3,
    Sector,
    SectorHamiltonian,
    build_three_site,
    build_two_site,
)

__all__ = [
    "EigenSystem",
    "diagonalize",
    "TwoSiteSpectrum",
    "two_site_analytic_spectrum",
    "three_site_quartic_residual",
    "quartic_discrepancies",
    "ground_state_splitting",
]

#: absolute tolerance on |H - H^dag| entries accepted by diagonalize
HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues ascending with orthonormal eigenvectors as columns.

    ``vectors[:, k]`` belongs to ``values[k]`` and is expressed in the
    same basis labels as the diagonalized Hamiltonian.  In degenerate
    subspaces any orthonormal choice may be returned; downstream code
    must only rely on basis-invariant quantities.
    """

    values: np.ndarray
    vectors: np.ndarray
    basis: tuple

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        vectors = np.array(self.vectors, dtype=complex)
        values.setflags(write=False)
        vectors.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "vectors", vectors)


def diagonalize(h: SectorHamiltonian) -> EigenSystem:
    """Complete orthonormal eigendecomposition of a sector Hamiltonian.

    Raises
    ------
    NumericInvariantError
        If the matrix deviates from Hermiticity beyond tolerance.
    """
    matrix = np.asarray(h.matrix)
    deviation = np.max(np.abs(matrix - matrix.conj().T))
    scale = max(1.0, float(np.max(np.abs(matrix))))
    if deviation > HERMITICITY_TOL * scale:
        raise NumericInvariantError(
            f"matrix is not Hermitian: max|H - H^dag| = {deviation:.3e}"
        )
    values, vectors = np.linalg.eigh(matrix)
    return EigenSystem(values, vectors, h.basis)


class TwoSiteSpectrum(NamedTuple):
    """Closed-form two-site energies, one pair per parity sector."""

    even_minus: float
    even_plus: float
    odd_minus: float
    odd_plus: float


def two_site_analytic_spectrum(spec: ChainSpec2) -> TwoSiteSpectrum:
    """Closed-form two-site spectrum.

    With eps_pm = (eps1 +- eps2)/2:

        E_even^pm = eps_+ +- sqrt(eps_+^2 + delta^2)
        E_odd^pm  = eps_+ +- sqrt(eps_-^2 + tau^2)
    """
    eps_p = 0.5 * (spec.eps1 + spec.eps2)
    eps_m = 0.5 * (spec.eps1 - spec.eps2)
    re = float(np.hypot(eps_p, spec.delta))
    ro = float(np.hypot(eps_m, spec.tau))
    return TwoSiteSpectrum(eps_p - re, eps_p + re, eps_p - ro, eps_p + ro)


#: relative tolerance for quartic residuals, scaled by (1 + |z|^4)
QUARTIC_TOL = 1e-8


def _uniform_parameters(spec: ChainSpec3) -> tuple[float, float, float]:
    eps = spec.eps1
    tau = spec.tau1
    delta = spec.delta1
    if not (spec.eps2 == eps and spec.eps3 == eps):
        raise ValueError("quartic polynomial requires uniform onsite energies")
    if spec.tau2 != tau:
        raise ValueError("quartic polynomial requires uniform hoppings")
    if spec.delta2 != delta:
        raise ValueError("quartic polynomial requires uniform pair potentials")
    return eps, tau, delta


def three_site_quartic_residual(spec: ChainSpec3, sector: Sector, z: float) -> float:
    """Residual of the uniform-chain characteristic quartic at energy z.

    For a chain with uniform eps, tau, delta the sector eigenvalues are
    roots of  z^4 - 6 eps z^3 + A z^2 + B z + C  with

        even: A = 12 eps^2 - 2 tau^2 - 2 delta^2
              B = 4 eps tau^2 + 8 eps delta^2 - 8 eps^3
              C = -8 eps^2 delta^2
        odd:  A = 12 eps^2 - 2 tau^2 - 2 delta^2
              B = 8 eps tau^2 + 4 eps delta^2 - 10 eps^3
              C = -2 eps^2 delta^2 - 6 eps^2 tau^2 + 3 eps^4

    Used only as a cross-check against ``diagonalize``; a nonzero return
    never feeds the numeric pipeline.
    """
    eps, tau, delta = _uniform_parameters(spec)
    a = 12.0 * eps**2 - 2.0 * tau**2 - 2.0 * delta**2
    if sector is Sector.EVEN:
        b = 4.0 * eps * tau**2 + 8.0 * eps * delta**2 - 8.0 * eps**3
        c = -8.0 * eps**2 * delta**2
    elif sector is Sector.ODD:
        b = 8.0 * eps * tau**2 + 4.0 * eps * delta**2 - 10.0 * eps**3
        c = -2.0 * eps**2 * delta**2 - 6.0 * eps**2 * tau**2 + 3.0 * eps**4
    else:
        raise ValueError("the characteristic quartic is defined per parity sector")
    z = float(z)
    return float(z**4 - 6.0 * eps * z**3 + a * z**2 + b * z + c)


def quartic_discrepancies(spec: ChainSpec3, tol: float = QUARTIC_TOL) -> list[dict]:
    """Check every sector eigenvalue against the quartic polynomial.

    Returns one entry per eigenvalue whose scaled residual
    |residual| / (1 + |z|^4) exceeds ``tol``.  An empty list means the
    printed coefficients agree with the diagonalized spectrum for this
    spec.
    """
    flagged = []
    for sector in (Sector.EVEN, Sector.ODD):
        system = diagonalize(build_three_site(spec, sector))
        for level, z in enumerate(system.values):
            residual = three_site_quartic_residual(spec, sector, z)
            scaled = abs(residual) / (1.0 + abs(z) ** 4)
            if scaled > tol:
                flagged.append(
                    {
                        "sector": sector.value,
                        "level": level,
                        "energy": float(z),
                        "residual": residual,
                        "scaled_residual": scaled,
                    }
                )
    return flagged


def ground_state_splitting(spec: ChainSpec2 | ChainSpec3) -> float:
    """|E_even^min - E_odd^min|, zero when both parity ground states degenerate."""
    if isinstance(spec, ChainSpec2):
        even = build_two_site(spec, Sector.EVEN)
        odd = build_two_site(spec, Sector.ODD)
    elif isinstance(spec, ChainSpec3):
        even = build_three_site(spec, Sector.EVEN)
        odd = build_three_site(spec, Sector.ODD)
    else:
        raise ValueError(f"unsupported spec type: {type(spec)!r}")
    e_even = diagonalize(even).values[0]
    e_odd = diagonalize(odd).values[0]
    return abs(float(e_even) - float(e_odd))
