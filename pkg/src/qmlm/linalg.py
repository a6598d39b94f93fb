"""Dense complex linear algebra primitives.

Thin, contract-checked wrappers around numpy's eigh/svd kernels.  All
functions accept anything ``np.asarray`` turns into a 2-D array of finite
numbers and return fresh ``complex128``/``float64`` arrays.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotHermitian, NotPSD

HERMITICITY_TOL = 1e-9
PSD_TOL = 1e-9


class HermitianEigen(NamedTuple):
    """Eigendecomposition of a Hermitian matrix.

    ``eigenvalues`` are real and ascending; ``eigenvectors`` holds the
    matching unit eigenvectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Coerce to a 2-D complex array, rejecting empty or non-finite input."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-D, got ndim={m.ndim}")
    if m.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    """Kronecker product of two non-empty matrices."""
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    return np.kron(a, b)


def hermiticity_deviation(a: np.ndarray) -> float:
    """Largest elementwise deviation of ``a`` from its conjugate transpose."""
    return float(np.max(np.abs(a - a.conj().T)))


def hermitian_eig(a) -> HermitianEigen:
    """Eigendecomposition of a Hermitian matrix.

    The input is checked against ``HERMITICITY_TOL`` and symmetrized as
    (a + a^dagger)/2 before the decomposition so tiny asymmetries from
    accumulated arithmetic cannot leak into complex eigenvalues.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"matrix must be square, got {a.shape}")
    if hermiticity_deviation(a) > HERMITICITY_TOL:
        raise NotHermitian(
            f"matrix deviates from Hermitian by {hermiticity_deviation(a):.3e}"
        )
    sym = (a + a.conj().T) / 2
    try:
        w, v = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return HermitianEigen(eigenvalues=w, eigenvectors=v)


def matrix_sqrt_psd(a) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix.

    Eigenvalues inside [-PSD_TOL, 0) are treated as exact zeros; anything
    below -PSD_TOL raises ``NotPSD``.
    """
    w, v = hermitian_eig(a)
    if w[0] < -PSD_TOL:
        raise NotPSD(f"smallest eigenvalue {w[0]:.3e} is below -{PSD_TOL}")
    root = np.sqrt(np.clip(w, 0.0, None))
    return (v * root) @ v.conj().T


def pinv(a, rcond: float | None = None) -> np.ndarray:
    """Moore-Penrose pseudoinverse via SVD.

    Singular values at or below ``rcond * sigma_max`` are treated as zero.
    The default cutoff is ``max(rows, cols) * machine_eps``, matching the
    conventional dense-SVD rank tolerance.
    """
    a = as_matrix(a)
    if rcond is None:
        rcond = max(a.shape) * np.finfo(float).eps
    elif rcond < 0:
        raise ValueError(f"rcond must be non-negative, got {rcond}")
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    cutoff = rcond * (s[0] if s.size else 0.0)
    inv = np.zeros_like(s)
    np.divide(1.0, s, out=inv, where=s > cutoff)
    return vh.conj().T @ (inv[:, None] * u.conj().T)


def solve_linear_map(dx, dy, rcond: float | None = None) -> np.ndarray:
    """Least-squares solution ``b`` of ``dx @ b = dy``.

    Computed as ``pinv(dx) @ dy``, which is the minimum-norm minimizer of
    the Frobenius residual.  The normal equations are never formed; they
    would square the condition number.
    """
    real_inputs = not (np.iscomplexobj(np.asarray(dx)) or np.iscomplexobj(np.asarray(dy)))
    dx = as_matrix(dx, "dx")
    dy = as_matrix(dy, "dy")
    if dx.shape[0] != dy.shape[0]:
        raise DimensionMismatch(
            f"dx has {dx.shape[0]} rows but dy has {dy.shape[0]}"
        )
    b = pinv(dx, rcond) @ dy
    return b.real if real_inputs else b
