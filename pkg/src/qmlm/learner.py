"""Quantum minimal learning machine: similarity learning on fidelity matrices.

Training takes N noisy input states and their N ideal target states, builds
the two fidelity Gram matrices ``Dx`` (Uhlmann, inputs) and ``Dy`` (pure
overlaps, targets), and solves ``Dx @ b = Dy`` by pseudoinverse.  A test
state's fidelity row against the training inputs is mapped through ``b``;
the argmax of the mapped similarities selects the training target returned
as the prediction.  With zero noise ``b`` collapses to the identity and the
model is a fidelity lookup table.

Targets may be arbitrary statevectors (error mitigation) or label states
built by :func:`encode_label` (multi-label classification), where bit 1
becomes ``|+>`` and bit 0 becomes ``|0>`` so that the overlap of two label
states is exactly ``2 ** -hamming``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, NotAnEncodedLabel
from .fidelity import fidelity_pure, gram_mixed, gram_pure, mixed_fidelity_row
from .linalg import solve_linear_map
from .mlm import hamming
from .states import DensityMatrix, Statevector, read_density_csv, read_statevector_csv, write_density_csv, write_statevector_csv

_KET_0 = np.array([1.0, 0.0], dtype=complex)
_KET_PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)


def encode_label(bits) -> Statevector:
    """Tensor product of ``|+>`` (bit 1) and ``|0>`` (bit 0) factors."""
    bits = tuple(int(b) for b in bits)
    if not bits:
        raise ValueError("label must have at least one bit")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"label bits must be 0 or 1, got {bits}")
    amps = np.array([1.0], dtype=complex)
    for b in bits:
        amps = np.kron(amps, _KET_PLUS if b else _KET_0)
    return Statevector(len(bits), amps)


def decode_label(state: Statevector) -> tuple[int, ...]:
    """Recover the bits of a label state produced by :func:`encode_label`.

    Each qubit is peeled off by comparing its two amplitude blocks: a zero
    lower block means ``|0>``, equal blocks mean ``|+>``.  The decoded bits
    must reconstruct the input exactly (within 1e-9) or the state is
    rejected as not an encoded label.
    """
    tol = 1e-9
    rest = state.amplitudes
    bits = []
    for _ in range(state.n_qubits):
        half = rest.size // 2
        lo, hi = rest[:half], rest[half:]
        if np.linalg.norm(hi) <= tol * max(1.0, np.linalg.norm(lo)):
            bits.append(0)
            rest = lo
        else:
            bits.append(1)
            rest = lo * np.sqrt(2.0)
    decoded = tuple(bits)
    if np.max(np.abs(state.amplitudes - encode_label(decoded).amplitudes)) > tol:
        raise NotAnEncodedLabel(
            "state is not a tensor product of |0> and |+> factors"
        )
    return decoded


def label_fidelity(a, b) -> float:
    """Overlap of two encoded labels without building the states: 2^-hamming."""
    return float(2.0 ** -hamming(a, b))


@dataclass(frozen=True)
class LabelEncoding:
    """A bit vector together with its encoded statevector."""

    bits: tuple[int, ...]
    state: Statevector = field(repr=False)

    @classmethod
    def from_bits(cls, bits) -> "LabelEncoding":
        bits = tuple(int(b) for b in bits)
        return cls(bits=bits, state=encode_label(bits))


@dataclass(frozen=True, eq=False)
class QmlmModel:
    """Trained similarity map between input and target fidelity spaces."""

    train_inputs: tuple[DensityMatrix, ...]
    train_outputs: tuple[Statevector, ...]
    b: np.ndarray = field(repr=False)
    rcond: float | None = None

    @property
    def size(self) -> int:
        return len(self.train_inputs)

    @property
    def n_qubits(self) -> int:
        return self.train_inputs[0].n_qubits

    @cached_property
    def input_stack(self) -> np.ndarray:
        """Training input matrices stacked to (N, d, d) for batched fidelity."""
        return np.stack([dm.matrix for dm in self.train_inputs])


def train_qmlm(inputs, outputs, rcond: float | None = None) -> QmlmModel:
    """Solve ``gram_mixed(inputs) @ b = gram_pure(outputs)`` for ``b``."""
    inputs = tuple(inputs)
    outputs = tuple(outputs)
    if len(inputs) != len(outputs):
        raise ValueError(
            f"{len(inputs)} input states but {len(outputs)} target states"
        )
    if not inputs:
        raise ValueError("at least one training pair required")
    dx = gram_mixed(list(inputs)).values
    dy = gram_pure(list(outputs)).values
    b = solve_linear_map(dx, dy, rcond)
    return QmlmModel(train_inputs=inputs, train_outputs=outputs, b=b, rcond=rcond)


def predict_qmlm(model: QmlmModel, test_input: DensityMatrix) -> tuple[int, Statevector]:
    """Map the test fidelity row through ``b`` and take the argmax.

    Returns ``(index, train_outputs[index])``; exact ties resolve to the
    lowest index.
    """
    if test_input.n_qubits != model.n_qubits:
        raise DimensionMismatch(
            f"test state has {test_input.n_qubits} qubits, model {model.n_qubits}"
        )
    f = mixed_fidelity_row(test_input, model.input_stack)
    similarities = f @ model.b
    idx = int(np.argmax(similarities))
    return idx, model.train_outputs[idx]


def predict_label_qmlm(model: QmlmModel, test_input: DensityMatrix) -> tuple[int, ...]:
    """Predict and decode a label; targets must be encoded label states."""
    _, state = predict_qmlm(model, test_input)
    return decode_label(state)


def prediction_quality(predicted: Statevector, ideal: Statevector) -> float:
    """Fidelity of the predicted state against the known ideal one."""
    return fidelity_pure(predicted, ideal)


# --- persistence ------------------------------------------------------------

def save_model(model: QmlmModel, path, seed: int | None = None) -> None:
    """Write a model directory: inputs/, outputs/, b.csv and a meta file."""
    root = Path(path)
    (root / "inputs").mkdir(parents=True, exist_ok=True)
    (root / "outputs").mkdir(parents=True, exist_ok=True)
    for i, dm in enumerate(model.train_inputs):
        write_density_csv(dm, root / "inputs" / f"{i:04d}.csv")
    for i, sv in enumerate(model.train_outputs):
        write_statevector_csv(sv, root / "outputs" / f"{i:04d}.csv")
    with open(root / "b.csv", "w", encoding="ascii") as f:
        for row in model.b:
            f.write(",".join(f"{x:.17g}" for x in row) + "\n")
    rcond = "none" if model.rcond is None else f"{model.rcond:.17g}"
    with open(root / "meta", "w", encoding="ascii") as f:
        f.write(f"n = {model.size}\n")
        f.write(f"n_qubits = {model.n_qubits}\n")
        f.write(f"rcond = {rcond}\n")
        f.write(f"seed = {'none' if seed is None else int(seed)}\n")


def _read_meta(path) -> dict[str, str]:
    meta = {}
    with open(path, "r", encoding="ascii") as f:
        for ln in f:
            ln = ln.strip()
            if not ln:
                continue
            key, _, value = ln.partition("=")
            meta[key.strip()] = value.strip()
    return meta


def load_model(path) -> QmlmModel:
    """Load a directory written by :func:`save_model`."""
    root = Path(path)
    meta = _read_meta(root / "meta")
    try:
        n = int(meta["n"])
        n_qubits = int(meta["n_qubits"])
    except (KeyError, ValueError) as exc:
        raise ValueError(f"{root}/meta: missing or malformed n/n_qubits") from exc
    rcond = None if meta.get("rcond", "none") == "none" else float(meta["rcond"])
    input_files = sorted(os.listdir(root / "inputs"))
    output_files = sorted(os.listdir(root / "outputs"))
    if len(input_files) != n or len(output_files) != n:
        raise ValueError(
            f"{root}: meta says n={n} but found {len(input_files)} inputs "
            f"and {len(output_files)} outputs"
        )
    inputs = tuple(read_density_csv(root / "inputs" / f) for f in input_files)
    outputs = tuple(read_statevector_csv(root / "outputs" / f) for f in output_files)
    if any(dm.n_qubits != n_qubits for dm in inputs):
        raise ValueError(f"{root}: input state qubit count differs from meta")
    b = []
    with open(root / "b.csv", "r", encoding="ascii") as f:
        for ln in f:
            ln = ln.strip()
            if ln:
                b.append([float(tok) for tok in ln.split(",")])
    b = np.array(b)
    if b.shape != (n, n):
        raise ValueError(f"{root}/b.csv: expected shape ({n}, {n}), got {b.shape}")
    return QmlmModel(train_inputs=inputs, train_outputs=outputs, b=b, rcond=rcond)
