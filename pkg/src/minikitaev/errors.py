"""Exception types shared across the package."""

__all__ = ["NumericInvariantError"]


class NumericInvariantError(Exception):
    """A numeric invariant was violated beyond tolerance.

    Raised when data that should satisfy a floating-point invariant
    (Hermiticity, positive semidefiniteness, unit norm, X-form sparsity)
    fails its check.  Distinct from ``ValueError``, which signals
    structural misuse such as a wrong dimension or an unknown label, so
    callers can map the two onto different exit codes.
    """
