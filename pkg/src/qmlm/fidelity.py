"""Fidelities between quantum states and fidelity Gram matrices.

Pure-pure overlaps use |<a|b>|^2 directly.  Mixed-mixed fidelity is the
Uhlmann fidelity (Tr sqrt(sqrt(a) b sqrt(a)))^2, evaluated through the
eigenvalues of sqrt(a) b sqrt(a).  Eigenvalues at or below
``d * eps * lambda_max`` are treated as exact zeros before the square root;
without that cutoff, rank-deficient inputs (any pure state) pick up
O(sqrt(eps)) error from noise eigenvalues, which is far too coarse here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .linalg import matrix_sqrt_psd
from .states import DensityMatrix, Statevector

SYMMETRY_TOL = 1e-10
DIAGONAL_TOL = 1e-9
RANGE_TOL = 1e-9


def _clamp01(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def fidelity_pure(a: Statevector, b: Statevector) -> float:
    """|<a|b>|^2 for two pure states of equal dimension."""
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatch(
            f"states have {a.n_qubits} and {b.n_qubits} qubits"
        )
    return _clamp01(float(np.abs(np.vdot(a.amplitudes, b.amplitudes)) ** 2))


def fidelity_pure_mixed(psi: Statevector, rho: DensityMatrix) -> float:
    """<psi| rho |psi> for a pure state against a mixed state."""
    if psi.n_qubits != rho.n_qubits:
        raise DimensionMismatch(
            f"state has {psi.n_qubits} qubits, density matrix {rho.n_qubits}"
        )
    a = psi.amplitudes
    return _clamp01(float(np.real(a.conj() @ rho.matrix @ a)))


def _uhlmann_from_sandwich(batch: np.ndarray) -> np.ndarray:
    """Fidelities from a batch of sqrt(a) b sqrt(a) products, shape (..., d, d)."""
    sym = (batch + batch.conj().swapaxes(-1, -2)) / 2
    w = np.linalg.eigvalsh(sym)
    d = w.shape[-1]
    top = np.clip(w[..., -1], 0.0, None)
    floor = d * np.finfo(float).eps * top
    w = np.where(w > floor[..., None], w, 0.0)
    return np.clip(np.sum(np.sqrt(w), axis=-1) ** 2, 0.0, 1.0)


def fidelity_mixed(a: DensityMatrix, b: DensityMatrix) -> float:
    """Uhlmann fidelity between two density matrices."""
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatch(
            f"density matrices have {a.n_qubits} and {b.n_qubits} qubits"
        )
    root = matrix_sqrt_psd(a.matrix)
    return float(_uhlmann_from_sandwich(root @ b.matrix @ root))


def mixed_fidelity_row(test: DensityMatrix, stack: np.ndarray) -> np.ndarray:
    """Uhlmann fidelities of ``test`` against a (N, d, d) stack of matrices.

    Same arithmetic as :func:`fidelity_mixed`, batched; the square root of
    ``test`` is computed once.
    """
    if stack.ndim != 3 or stack.shape[1:] != (test.dim, test.dim):
        raise DimensionMismatch(
            f"stack shape {stack.shape} does not match state dim {test.dim}"
        )
    root = matrix_sqrt_psd(test.matrix)
    return _uhlmann_from_sandwich(root @ stack @ root)


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """Symmetric fidelity matrix with unit diagonal and entries in [0, 1]."""

    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=float)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise DimensionMismatch(f"Gram matrix must be square, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("Gram matrix contains non-finite entries")
        if float(np.max(np.abs(v - v.T))) > SYMMETRY_TOL:
            raise ValueError("Gram matrix is not symmetric within tolerance")
        if float(np.max(np.abs(np.diag(v) - 1.0))) > DIAGONAL_TOL:
            raise ValueError("Gram matrix diagonal deviates from 1")
        if v.min() < -RANGE_TOL or v.max() > 1.0 + RANGE_TOL:
            raise ValueError("Gram matrix entries leave [0, 1]")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def size(self) -> int:
        return self.values.shape[0]


def _mirror_upper(g: np.ndarray) -> np.ndarray:
    """Copy the upper triangle onto the lower one, keeping the diagonal."""
    upper = np.triu(g)
    return upper + np.triu(g, 1).T


def gram_pure(states: list[Statevector]) -> GramMatrix:
    """Pairwise |<i|j>|^2 matrix for a list of pure states."""
    if not states:
        raise ValueError("at least one state required")
    n = states[0].n_qubits
    if any(s.n_qubits != n for s in states):
        raise DimensionMismatch("states have mixed qubit counts")
    a = np.stack([s.amplitudes for s in states])
    g = np.abs(a.conj() @ a.T) ** 2
    return GramMatrix(np.clip(_mirror_upper(g), 0.0, 1.0))


def gram_mixed(states: list[DensityMatrix]) -> GramMatrix:
    """Pairwise Uhlmann fidelity matrix for a list of density matrices.

    Entries are computed for i < j only and mirrored; the diagonal is set
    to exactly 1 (the fidelity of a state with itself).
    """
    if not states:
        raise ValueError("at least one state required")
    n = states[0].n_qubits
    if any(s.n_qubits != n for s in states):
        raise DimensionMismatch("states have mixed qubit counts")
    count = len(states)
    stack = np.stack([s.matrix for s in states])
    g = np.eye(count)
    for i in range(count - 1):
        root = matrix_sqrt_psd(states[i].matrix)
        g[i, i + 1 :] = _uhlmann_from_sandwich(root @ stack[i + 1 :] @ root)
    return GramMatrix(_mirror_upper(g))


def concentration_stats(g: GramMatrix) -> tuple[float, float]:
    """Mean and population variance of the off-diagonal Gram entries."""
    if g.size < 2:
        raise ValueError("need at least 2 states for off-diagonal statistics")
    mask = ~np.eye(g.size, dtype=bool)
    off = g.values[mask]
    return float(off.mean()), float(off.var())


def write_gram_csv(g: GramMatrix, path) -> None:
    """Header-less CSV, one row per state, 17 significant digits."""
    with open(path, "w", encoding="ascii") as f:
        for row in g.values:
            f.write(",".join(f"{x:.17g}" for x in row) + "\n")


def read_gram_csv(path) -> GramMatrix:
    """Parse the output of :func:`write_gram_csv`."""
    rows = []
    with open(path, "r", encoding="ascii") as f:
        for ln in f:
            ln = ln.strip()
            if ln:
                rows.append([float(tok) for tok in ln.split(",")])
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return GramMatrix(np.array(rows))
