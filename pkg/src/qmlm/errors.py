"""Exception types shared across the package.

Validation problems (bad shapes, out-of-range parameters, malformed files)
are raised as ``ValueError`` subclasses or plain ``ValueError``; failures of
the numerical machinery itself are ``NumericalError`` subclasses so callers
can distinguish the two.
"""

from __future__ import annotations


class NumericalError(RuntimeError):
    """A linear-algebra routine failed or received numerically invalid input."""


class NotHermitian(NumericalError):
    """Matrix deviates from its conjugate transpose beyond tolerance."""


class NotPSD(NumericalError):
    """Matrix has an eigenvalue below the negative tolerance."""


class NoConvergence(NumericalError):
    """An iterative eigenvalue or SVD routine did not converge."""


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes or qubit counts."""


class NotAnEncodedLabel(ValueError):
    """Statevector is not a tensor product of |0> and |+> factors."""
