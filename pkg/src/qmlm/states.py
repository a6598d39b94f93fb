"""Statevector and density-matrix simulation of small gated circuits.

Conventions, fixed once and used everywhere:

* Qubit 0 is the leftmost tensor factor, so basis index ``b`` reads as the
  bitstring ``b_0 b_1 ... b_{n-1}`` (big-endian).
* ``RX(theta) = cos(theta/2) I - i sin(theta/2) X`` and
  ``RZ(theta) = diag(exp(-i theta/2), exp(+i theta/2))``.
* The gate set is {RX, RZ, H, CNOT}; nothing else is accepted.
* Noise is a depolarizing channel applied after each gate, acting on
  exactly the qubits the gate touched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NumericalError
from .linalg import hermiticity_deviation

NORM_TOL = 1e-10
TRACE_TOL = 1e-9
HERM_TOL = 1e-9
EIG_TOL = 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)

GATE_NAMES = ("RX", "RZ", "H", "CNOT")


def rx_matrix(theta: float) -> np.ndarray:
    """2x2 unitary for a rotation of ``theta`` about the X axis."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def rz_matrix(theta: float) -> np.ndarray:
    """2x2 unitary for a rotation of ``theta`` about the Z axis."""
    return np.array(
        [[np.exp(-1j * theta / 2), 0], [0, np.exp(1j * theta / 2)]], dtype=complex
    )


@dataclass(frozen=True)
class Gate:
    """One gate instance: a name, the qubits it acts on, and an optional angle."""

    name: str
    qubits: tuple[int, ...]
    theta: float | None = None

    def __post_init__(self) -> None:
        if self.name not in GATE_NAMES:
            raise ValueError(f"unknown gate {self.name!r}; supported: {GATE_NAMES}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        if self.name in ("RX", "RZ"):
            if len(self.qubits) != 1:
                raise ValueError(f"{self.name} acts on one qubit, got {self.qubits}")
            if self.theta is None or not math.isfinite(self.theta):
                raise ValueError(f"{self.name} needs a finite angle, got {self.theta}")
        elif self.name == "H":
            if len(self.qubits) != 1:
                raise ValueError(f"H acts on one qubit, got {self.qubits}")
            if self.theta is not None:
                raise ValueError("H takes no angle")
        else:
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError(
                    f"CNOT needs two distinct qubits, got {self.qubits}"
                )
            if self.theta is not None:
                raise ValueError("CNOT takes no angle")


def rx(qubit: int, theta: float) -> Gate:
    return Gate("RX", (qubit,), float(theta))


def rz(qubit: int, theta: float) -> Gate:
    return Gate("RZ", (qubit,), float(theta))


def h(qubit: int) -> Gate:
    return Gate("H", (qubit,))


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", (control, target))


@dataclass(frozen=True)
class Circuit:
    """An ordered gate list over ``n_qubits`` qubits."""

    n_qubits: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            for q in g.qubits:
                if q >= self.n_qubits:
                    raise ValueError(
                        f"gate {g.name} touches qubit {q} but the circuit has "
                        f"{self.n_qubits} qubits"
                    )


@dataclass(frozen=True, eq=False)
class Statevector:
    """Pure state over ``n_qubits`` qubits; amplitudes are big-endian indexed."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if amps.size != 2**self.n_qubits:
            raise DimensionMismatch(
                f"expected {2**self.n_qubits} amplitudes, got {amps.size}"
            )
        if not np.all(np.isfinite(amps.view(float))):
            raise ValueError("amplitudes contain non-finite entries")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {NORM_TOL}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @classmethod
    def zero(cls, n_qubits: int) -> "Statevector":
        """The all-zeros computational basis state |0...0>."""
        amps = np.zeros(2**n_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(n_qubits, amps)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Mixed state over ``n_qubits`` qubits: Hermitian, unit trace, PSD."""

    n_qubits: int
    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = np.array(self.matrix, dtype=complex)
        d = 2**self.n_qubits
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if m.shape != (d, d):
            raise DimensionMismatch(f"expected shape ({d}, {d}), got {m.shape}")
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("matrix contains non-finite entries")
        dev = hermiticity_deviation(m)
        if dev > HERM_TOL:
            raise ValueError(f"matrix deviates from Hermitian by {dev:.3e}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace {tr!r} deviates from 1 beyond {TRACE_TOL}")
        smallest = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
        if smallest < -EIG_TOL:
            raise ValueError(f"eigenvalue {smallest:.3e} is below -{EIG_TOL}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return 2**self.n_qubits

    @classmethod
    def from_statevector(cls, psi: Statevector) -> "DensityMatrix":
        """Rank-1 projector |psi><psi|."""
        a = psi.amplitudes
        return cls(psi.n_qubits, np.outer(a, a.conj()))

    @classmethod
    def maximally_mixed(cls, n_qubits: int) -> "DensityMatrix":
        """The state I/d."""
        d = 2**n_qubits
        return cls(n_qubits, np.eye(d, dtype=complex) / d)


def purity(rho: DensityMatrix) -> float:
    """Tr(rho^2); 1 exactly for pure states, 1/d for the maximally mixed."""
    return float(np.trace(rho.matrix @ rho.matrix).real)


def _local_unitary(gate: Gate) -> np.ndarray:
    if gate.name == "RX":
        return rx_matrix(gate.theta)
    if gate.name == "RZ":
        return rz_matrix(gate.theta)
    if gate.name == "H":
        return HADAMARD
    raise ValueError(f"{gate.name} has no local 2x2 form")


def embedded_unitary(gate: Gate, n_qubits: int) -> np.ndarray:
    """Full 2^n x 2^n unitary for ``gate`` acting inside ``n_qubits`` qubits."""
    for q in gate.qubits:
        if q >= n_qubits:
            raise ValueError(f"qubit {q} out of range for {n_qubits} qubits")
    d = 2**n_qubits
    if gate.name == "CNOT":
        c, t = gate.qubits
        u = np.zeros((d, d), dtype=complex)
        cbit = 1 << (n_qubits - 1 - c)
        tbit = 1 << (n_qubits - 1 - t)
        for i in range(d):
            j = i ^ tbit if i & cbit else i
            u[j, i] = 1.0
        return u
    q = gate.qubits[0]
    left = np.eye(2**q, dtype=complex)
    right = np.eye(2 ** (n_qubits - q - 1), dtype=complex)
    return np.kron(np.kron(left, _local_unitary(gate)), right)


def apply_gate_pure(psi: Statevector, gate: Gate) -> Statevector:
    """Apply one gate to a pure state."""
    u = embedded_unitary(gate, psi.n_qubits)
    return Statevector(psi.n_qubits, u @ psi.amplitudes)


def apply_gate_mixed(rho: DensityMatrix, gate: Gate) -> DensityMatrix:
    """Conjugate a density matrix by one gate: U rho U^dagger."""
    u = embedded_unitary(gate, rho.n_qubits)
    return DensityMatrix(rho.n_qubits, u @ rho.matrix @ u.conj().T)


def _check_probability(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {p}")
    return p


def depolarize_global(rho: DensityMatrix, p: float) -> DensityMatrix:
    """Mix the whole state towards I/d: (1-p) rho + (p/d) I."""
    p = _check_probability(p)
    d = rho.dim
    out = (1.0 - p) * rho.matrix + (p / d) * np.eye(d, dtype=complex)
    return DensityMatrix(rho.n_qubits, out)


def _permute_qubit_axes(m: np.ndarray, n: int, perm: list[int]) -> np.ndarray:
    """Reorder the qubit tensor factors of a d x d matrix by ``perm``."""
    t = m.reshape((2,) * (2 * n))
    axes = list(perm) + [n + q for q in perm]
    return t.transpose(axes).reshape(m.shape)


def depolarize_local(rho: DensityMatrix, qubits: tuple[int, ...], p: float) -> DensityMatrix:
    """Depolarize only the listed qubits.

    Implements (1-p) rho + (p/d_sub) Tr_sub(rho) (x) I_sub, where the partial
    trace removes the listed qubits and the identity is re-inserted at their
    positions.  Equivalent to the uniform Pauli twirl over those qubits.
    """
    p = _check_probability(p)
    n = rho.n_qubits
    sub = tuple(sorted(set(int(q) for q in qubits)))
    if len(sub) != len(qubits):
        raise ValueError(f"duplicate qubit in {qubits}")
    if not sub:
        raise ValueError("at least one qubit required")
    if sub[-1] >= n:
        raise ValueError(f"qubit {sub[-1]} out of range for {n} qubits")
    keep = [q for q in range(n) if q not in sub]
    perm = keep + list(sub)
    d_keep = 2 ** len(keep)
    d_sub = 2 ** len(sub)
    moved = _permute_qubit_axes(rho.matrix, n, perm)
    blocks = moved.reshape(d_keep, d_sub, d_keep, d_sub)
    traced = np.einsum("ajbj->ab", blocks)
    mixed = np.kron(traced, np.eye(d_sub, dtype=complex) / d_sub)
    inverse = list(np.argsort(perm))
    restored = _permute_qubit_axes(mixed, n, inverse)
    return DensityMatrix(n, (1.0 - p) * rho.matrix + p * restored)


def simulate_ideal(circuit: Circuit) -> Statevector:
    """Noiseless statevector run from |0...0>."""
    psi = Statevector.zero(circuit.n_qubits)
    for g in circuit.gates:
        psi = apply_gate_pure(psi, g)
    return psi


def simulate_noisy(circuit: Circuit, p1: float, p2: float) -> DensityMatrix:
    """Density-matrix run with a depolarizing channel after every gate.

    Single-qubit gates are followed by a strength-``p1`` channel on their
    qubit, CNOTs by a strength-``p2`` channel on control and target.
    """
    p1 = _check_probability(p1)
    p2 = _check_probability(p2)
    rho = DensityMatrix.from_statevector(Statevector.zero(circuit.n_qubits))
    for g in circuit.gates:
        rho = apply_gate_mixed(rho, g)
        strength = p2 if g.name == "CNOT" else p1
        if strength > 0.0:
            rho = depolarize_local(rho, g.qubits, strength)
    return rho


def expectation(op: np.ndarray, rho: DensityMatrix) -> float:
    """Tr(op rho) for a Hermitian observable."""
    op = np.asarray(op, dtype=complex)
    if op.shape != (rho.dim, rho.dim):
        raise DimensionMismatch(
            f"operator shape {op.shape} does not match state dim {rho.dim}"
        )
    if hermiticity_deviation(op) > HERM_TOL:
        raise ValueError("observable is not Hermitian within tolerance")
    value = complex(np.trace(op @ rho.matrix))
    if abs(value.imag) > HERM_TOL:
        raise NumericalError(f"expectation has imaginary residual {value.imag:.3e}")
    return float(value.real)


# --- text and CSV serialization -------------------------------------------

def circuit_to_text(circuit: Circuit) -> str:
    """Render a circuit in the line format ``QUBITS n`` / one gate per line.

    Angles are printed with 17 significant digits so parsing is lossless.
    """
    lines = [f"QUBITS {circuit.n_qubits}"]
    for g in circuit.gates:
        if g.name in ("RX", "RZ"):
            lines.append(f"{g.name} {g.qubits[0]} {g.theta:.17g}")
        elif g.name == "H":
            lines.append(f"H {g.qubits[0]}")
        else:
            lines.append(f"CNOT {g.qubits[0]} {g.qubits[1]}")
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    """Parse the output of :func:`circuit_to_text`."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty circuit text")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "QUBITS":
        raise ValueError(f"expected 'QUBITS n' header, got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError as exc:
        raise ValueError(f"bad qubit count {head[1]!r}") from exc
    gates = []
    for ln in lines[1:]:
        parts = ln.split()
        name = parts[0]
        try:
            if name in ("RX", "RZ") and len(parts) == 3:
                gates.append(Gate(name, (int(parts[1]),), float(parts[2])))
            elif name == "H" and len(parts) == 2:
                gates.append(h(int(parts[1])))
            elif name == "CNOT" and len(parts) == 3:
                gates.append(cnot(int(parts[1]), int(parts[2])))
            else:
                raise ValueError
        except ValueError as exc:
            raise ValueError(f"malformed gate line {ln!r}") from exc
    return Circuit(n, tuple(gates))


def _format_complex_row(values: np.ndarray) -> str:
    parts = []
    for z in values:
        parts.append(f"{z.real:.17g}")
        parts.append(f"{z.imag:.17g}")
    return ",".join(parts)


def write_statevector_csv(psi: Statevector, path) -> None:
    """One CSV row per amplitude: ``re,im`` with 17 significant digits."""
    with open(path, "w", encoding="ascii") as f:
        for z in psi.amplitudes:
            f.write(f"{z.real:.17g},{z.imag:.17g}\n")


def write_density_csv(rho: DensityMatrix, path) -> None:
    """One CSV row per matrix row, entries interleaved as re,im pairs."""
    with open(path, "w", encoding="ascii") as f:
        for row in rho.matrix:
            f.write(_format_complex_row(row) + "\n")


def _read_numeric_rows(path) -> list[list[float]]:
    rows = []
    with open(path, "r", encoding="ascii") as f:
        for ln in f:
            ln = ln.strip()
            if not ln:
                continue
            rows.append([float(tok) for tok in ln.split(",")])
    if not rows:
        raise ValueError(f"{path}: no data rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError(f"{path}: ragged rows")
    return rows


def _n_qubits_for(dim: int, path) -> int:
    n = int(round(math.log2(dim)))
    if 2**n != dim:
        raise ValueError(f"{path}: dimension {dim} is not a power of two")
    return n


def read_statevector_csv(path) -> Statevector:
    rows = _read_numeric_rows(path)
    if len(rows[0]) != 2:
        raise ValueError(f"{path}: expected two columns (re,im) per amplitude")
    amps = np.array([complex(r[0], r[1]) for r in rows])
    return Statevector(_n_qubits_for(len(amps), path), amps)


def read_density_csv(path) -> DensityMatrix:
    rows = _read_numeric_rows(path)
    d = len(rows)
    if len(rows[0]) != 2 * d:
        raise ValueError(
            f"{path}: expected {2 * d} columns for a {d}x{d} density matrix"
        )
    flat = np.array(rows, dtype=float)
    mat = flat[:, 0::2] + 1j * flat[:, 1::2]
    return DensityMatrix(_n_qubits_for(d, path), mat)


def read_state_csv(path) -> Statevector | DensityMatrix:
    """Load either state kind, telling them apart by column count."""
    rows = _read_numeric_rows(path)
    if len(rows[0]) == 2:
        return read_statevector_csv(path)
    if len(rows[0]) == 2 * len(rows):
        return read_density_csv(path)
    raise ValueError(
        f"{path}: neither a statevector (2 columns) nor a density matrix "
        f"(2 x rows columns)"
    )
