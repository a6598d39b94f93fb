"""Parameter sweeps over the layered RX/RZ + CNOT-chain ansatz.

A sweep varies one knob (qubit count, rotation range, layer count, or a
noise scale factor) over a list of values.  For every (value, dataset size)
cell a fresh training set of noisy/ideal state pairs is generated, a model
is trained, and ``trials`` fresh test circuits are predicted; the cell is
summarized by the mean predicted fidelity and its standard error.

Reproducibility contract: every cell's dataset and every trial draw from
their own RNG stream, derived from the base seed and the (value index,
size index, trial index) triple.  Results are reduced in trial order, so a
run is byte-identical for a given config and seed no matter how many
worker threads execute it (``QMLM_THREADS`` caps the pool; unset means one
worker per CPU).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .learner import QmlmModel, predict_qmlm, prediction_quality, train_qmlm
from .states import Circuit, DensityMatrix, Statevector, cnot, rx, rz, simulate_ideal, simulate_noisy

SWEEP_KINDS = ("qubits", "delta", "layers", "noise")
SWEEP_CSV_HEADER = "sweep_name,sweep_value,dataset_size,mean_fidelity,std_error,trials,seed"

DEFAULT_DATASET_SIZES = (10, 20, 40, 80, 160, 320)
DEFAULT_NOISE_SCALES = (0.0, 1.0, 5.0, 10.0, 25.0)


@dataclass(frozen=True)
class AnsatzSpec:
    """Shape of the random layered circuit family."""

    n_qubits: int
    layers: int
    delta: float

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")
        if self.layers < 1:
            raise ValueError(f"layers must be >= 1, got {self.layers}")
        if not 0.0 < self.delta <= math.pi:
            raise ValueError(f"delta must lie in (0, pi], got {self.delta}")

    @property
    def param_count(self) -> int:
        """Two rotation angles per qubit per layer."""
        return 2 * self.n_qubits * self.layers


@dataclass(frozen=True)
class NoiseSpec:
    """Depolarizing strengths after single-qubit (p1) and CNOT (p2) gates."""

    p1: float
    p2: float

    def __post_init__(self) -> None:
        for name, p in (("p1", self.p1), ("p2", self.p2)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")


def build_ansatz(spec: AnsatzSpec, thetas) -> Circuit:
    """Assemble the circuit for one angle vector.

    Each layer applies RX then RZ on every qubit (qubit-major angle
    consumption) followed by the CNOT chain (0,1), (1,2), ...
    """
    thetas = np.asarray(thetas, dtype=float).reshape(-1)
    if thetas.size != spec.param_count:
        raise ValueError(
            f"expected {spec.param_count} angles, got {thetas.size}"
        )
    gates = []
    k = 0
    for _ in range(spec.layers):
        for q in range(spec.n_qubits):
            gates.append(rx(q, thetas[k]))
            gates.append(rz(q, thetas[k + 1]))
            k += 2
        for q in range(spec.n_qubits - 1):
            gates.append(cnot(q, q + 1))
    return Circuit(spec.n_qubits, tuple(gates))


def sample_thetas(rng: np.random.Generator, count: int, delta: float) -> np.ndarray:
    """Draw ``count`` angles uniformly from [-delta, +delta]."""
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if not 0.0 < delta <= math.pi:
        raise ValueError(f"delta must lie in (0, pi], got {delta}")
    return rng.uniform(-delta, delta, size=count)


def generate_dataset(
    spec: AnsatzSpec, noise: NoiseSpec, n: int, rng: np.random.Generator
) -> tuple[list[DensityMatrix], list[Statevector]]:
    """Sample ``n`` random circuits; return (noisy inputs, ideal targets).

    Angles are consumed sequentially from ``rng``, one fresh vector per
    circuit, so the dataset is fully determined by the generator state.
    """
    if n < 1:
        raise ValueError(f"dataset size must be >= 1, got {n}")
    inputs = []
    outputs = []
    for _ in range(n):
        circuit = build_ansatz(spec, sample_thetas(rng, spec.param_count, spec.delta))
        outputs.append(simulate_ideal(circuit))
        inputs.append(simulate_noisy(circuit, noise.p1, noise.p2))
    return inputs, outputs


def run_trial(
    model: QmlmModel, spec: AnsatzSpec, noise: NoiseSpec, rng: np.random.Generator
) -> float:
    """One test prediction: fidelity of the predicted state to the ideal one."""
    circuit = build_ansatz(spec, sample_thetas(rng, spec.param_count, spec.delta))
    ideal = simulate_ideal(circuit)
    noisy = simulate_noisy(circuit, noise.p1, noise.p2)
    _, predicted = predict_qmlm(model, noisy)
    return prediction_quality(predicted, ideal)


@dataclass(frozen=True)
class SweepRecord:
    """Summary of one (sweep value, dataset size) cell."""

    sweep_name: str
    sweep_value: float
    dataset_size: int
    mean_fidelity: float
    std_error: float
    trials: int
    seed: int


@dataclass(frozen=True)
class ExperimentConfig:
    """Base ansatz/noise settings plus the swept parameter."""

    qubits: int = 3
    layers: int = 1
    delta: float = math.pi / 8
    p1: float = 0.001
    p2: float = 0.01
    dataset_sizes: tuple[int, ...] = DEFAULT_DATASET_SIZES
    trials: int = 400
    seed: int = 0
    sweep_kind: str = "qubits"
    sweep_values: tuple[float, ...] = (1, 2, 3, 4, 5)

    def __post_init__(self) -> None:
        AnsatzSpec(self.qubits, self.layers, self.delta)
        NoiseSpec(self.p1, self.p2)
        if not self.dataset_sizes:
            raise ValueError("dataset_sizes must be non-empty")
        if any(int(n) < 1 for n in self.dataset_sizes):
            raise ValueError(f"dataset sizes must be >= 1, got {self.dataset_sizes}")
        object.__setattr__(self, "dataset_sizes", tuple(int(n) for n in self.dataset_sizes))
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed}")
        if self.sweep_kind not in SWEEP_KINDS:
            raise ValueError(
                f"sweep kind must be one of {SWEEP_KINDS}, got {self.sweep_kind!r}"
            )
        if not self.sweep_values:
            raise ValueError("sweep values must be non-empty")
        values = []
        for v in self.sweep_values:
            if self.sweep_kind in ("qubits", "layers"):
                if float(v) != int(v) or int(v) < 1:
                    raise ValueError(
                        f"{self.sweep_kind} sweep values must be positive integers, got {v}"
                    )
                values.append(int(v))
            else:
                values.append(float(v))
        object.__setattr__(self, "sweep_values", tuple(values))
        for v in self.sweep_values:
            self.resolve(v)  # rejects out-of-range combinations up front

    def resolve(self, value) -> tuple[AnsatzSpec, NoiseSpec]:
        """Ansatz and noise settings for one sweep value."""
        spec = AnsatzSpec(self.qubits, self.layers, self.delta)
        noise = NoiseSpec(self.p1, self.p2)
        if self.sweep_kind == "qubits":
            spec = AnsatzSpec(int(value), self.layers, self.delta)
        elif self.sweep_kind == "layers":
            spec = AnsatzSpec(self.qubits, int(value), self.delta)
        elif self.sweep_kind == "delta":
            spec = AnsatzSpec(self.qubits, self.layers, float(value))
        else:
            scale = float(value)
            if scale < 0:
                raise ValueError(f"noise scale must be >= 0, got {scale}")
            noise = NoiseSpec(self.p1 * scale, self.p2 * scale)
        return spec, noise


def thread_count() -> int:
    """Worker cap from QMLM_THREADS, defaulting to the CPU count."""
    raw = os.environ.get("QMLM_THREADS")
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValueError(f"QMLM_THREADS must be an integer, got {raw!r}") from exc
    if n < 1:
        raise ValueError(f"QMLM_THREADS must be >= 1, got {n}")
    return n


def _cell_streams(seed: int, value_idx: int, size_idx: int):
    """Dataset generator for a cell, plus a factory for per-trial generators."""
    dataset_rng = np.random.default_rng(
        np.random.SeedSequence(seed, spawn_key=(value_idx, size_idx, 0, 0))
    )

    def trial_rng(t: int) -> np.random.Generator:
        return np.random.default_rng(
            np.random.SeedSequence(seed, spawn_key=(value_idx, size_idx, 1, t))
        )

    return dataset_rng, trial_rng


def iter_sweep(config: ExperimentConfig):
    """Yield one SweepRecord per (sweep value, dataset size) cell.

    Records stream in as they finish so callers can flush partial output.
    """
    workers = thread_count()
    for k, value in enumerate(config.sweep_values):
        spec, noise = config.resolve(value)
        for s, size in enumerate(config.dataset_sizes):
            dataset_rng, trial_rng = _cell_streams(config.seed, k, s)
            inputs, outputs = generate_dataset(spec, noise, size, dataset_rng)
            model = train_qmlm(inputs, outputs)

            def one_trial(t: int) -> float:
                return run_trial(model, spec, noise, trial_rng(t))

            if workers == 1 or config.trials == 1:
                fids = np.array([one_trial(t) for t in range(config.trials)])
            else:
                with ThreadPoolExecutor(max_workers=workers) as pool:
                    fids = np.array(list(pool.map(one_trial, range(config.trials))))
            mean = float(fids.mean())
            if config.trials > 1:
                se = float(fids.std(ddof=1) / math.sqrt(config.trials))
            else:
                se = 0.0
            yield SweepRecord(
                sweep_name=config.sweep_kind,
                sweep_value=value,
                dataset_size=size,
                mean_fidelity=mean,
                std_error=se,
                trials=config.trials,
                seed=config.seed,
            )


def run_sweep(config: ExperimentConfig) -> list[SweepRecord]:
    """Run the whole sweep and return all records."""
    return list(iter_sweep(config))


def format_sweep_record(rec: SweepRecord) -> str:
    """CSV row with decimals at 10 significant digits."""
    return (
        f"{rec.sweep_name},{rec.sweep_value:.10g},{rec.dataset_size},"
        f"{rec.mean_fidelity:.10g},{rec.std_error:.10g},{rec.trials},{rec.seed}"
    )


def write_sweep_csv(records, path) -> None:
    """Write header plus one row per record, flushing after every row."""
    with open(path, "w", encoding="ascii") as f:
        f.write(SWEEP_CSV_HEADER + "\n")
        f.flush()
        for rec in records:
            f.write(format_sweep_record(rec) + "\n")
            f.flush()


# --- config files -----------------------------------------------------------

CONFIG_KEYS = (
    "qubits", "layers", "delta", "p1", "p2",
    "dataset_sizes", "trials", "seed", "sweep.kind", "sweep.values",
)

_NUMBER_CHARS = set("0123456789pieE+-*/(). ")


def _parse_number(token: str) -> float:
    """Parse a decimal or a small arithmetic expression over ``pi``."""
    token = token.strip()
    try:
        return float(token)
    except ValueError:
        pass
    if not token or not set(token) <= _NUMBER_CHARS:
        raise ValueError(f"cannot parse number {token!r}")
    try:
        value = eval(token, {"__builtins__": {}}, {"pi": math.pi})  # charset-limited
    except Exception as exc:
        raise ValueError(f"cannot parse number {token!r}") from exc
    return float(value)


def _parse_int(token: str, key: str) -> int:
    try:
        return int(token.strip())
    except ValueError as exc:
        raise ValueError(f"{key} must be an integer, got {token.strip()!r}") from exc


def parse_config_text(text: str) -> ExperimentConfig:
    """Parse ``key = value`` lines into an ExperimentConfig.

    Unknown keys are rejected.  ``delta`` and ``sweep.values`` accept plain
    decimals or pi expressions such as ``pi/8``; list values are
    comma-separated.  ``#`` starts a comment.
    """
    seen: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        if key not in CONFIG_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        seen[key] = value

    kwargs: dict = {}
    if "qubits" in seen:
        kwargs["qubits"] = _parse_int(seen["qubits"], "qubits")
    if "layers" in seen:
        kwargs["layers"] = _parse_int(seen["layers"], "layers")
    if "delta" in seen:
        kwargs["delta"] = _parse_number(seen["delta"])
    if "p1" in seen:
        kwargs["p1"] = _parse_number(seen["p1"])
    if "p2" in seen:
        kwargs["p2"] = _parse_number(seen["p2"])
    if "dataset_sizes" in seen:
        kwargs["dataset_sizes"] = tuple(
            _parse_int(tok, "dataset_sizes") for tok in seen["dataset_sizes"].split(",")
        )
    if "trials" in seen:
        kwargs["trials"] = _parse_int(seen["trials"], "trials")
    if "seed" in seen:
        kwargs["seed"] = _parse_int(seen["seed"], "seed")
    if "sweep.kind" in seen:
        kwargs["sweep_kind"] = seen["sweep.kind"]
    if "sweep.values" in seen:
        kwargs["sweep_values"] = tuple(
            _parse_number(tok) for tok in seen["sweep.values"].split(",")
        )
    return ExperimentConfig(**kwargs)


def load_config(path) -> ExperimentConfig:
    """Read and parse a config file."""
    with open(path, "r", encoding="utf-8") as f:
        return parse_config_text(f.read())
