"""Shared random-object builders for the test suite."""

from __future__ import annotations

import numpy as np

from qmlm.states import Circuit, DensityMatrix, Statevector, cnot, h, rx, rz

PAULIS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def random_pure(rng: np.random.Generator, n_qubits: int) -> Statevector:
    d = 2**n_qubits
    amps = rng.normal(size=d) + 1j * rng.normal(size=d)
    return Statevector(n_qubits, amps / np.linalg.norm(amps))


def random_density(rng: np.random.Generator, n_qubits: int) -> DensityMatrix:
    d = 2**n_qubits
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return DensityMatrix(n_qubits, m / np.trace(m).real)


def random_hermitian(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (g + g.conj().T) / 2


def random_circuit(rng: np.random.Generator, n_qubits: int, n_gates: int) -> Circuit:
    gates = []
    for _ in range(n_gates):
        kind = rng.choice(["rx", "rz", "h", "cnot"] if n_qubits > 1 else ["rx", "rz", "h"])
        if kind == "cnot":
            c, t = rng.choice(n_qubits, size=2, replace=False)
            gates.append(cnot(int(c), int(t)))
        else:
            q = int(rng.integers(n_qubits))
            theta = float(rng.uniform(-np.pi, np.pi))
            if kind == "rx":
                gates.append(rx(q, theta))
            elif kind == "rz":
                gates.append(rz(q, theta))
            else:
                gates.append(h(q))
    return Circuit(n_qubits, tuple(gates))


def embed_single(op: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Independent kron embedding used as an oracle."""
    out = np.array([[1.0]], dtype=complex)
    for q in range(n_qubits):
        out = np.kron(out, op if q == qubit else np.eye(2, dtype=complex))
    return out


def pauli_string(ops: str, qubits: tuple[int, ...], n_qubits: int) -> np.ndarray:
    """Embed a Pauli string, e.g. ops='XZ' on the listed qubits."""
    per_qubit = {q: PAULIS[o] for q, o in zip(qubits, ops)}
    out = np.array([[1.0]], dtype=complex)
    for q in range(n_qubits):
        out = np.kron(out, per_qubit.get(q, PAULIS["I"]))
    return out
