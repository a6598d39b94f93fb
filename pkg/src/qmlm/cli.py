"""Command-line entry point.

Subcommands:

* ``sweep <config> -o out.csv``   run a parameter sweep, streaming rows
* ``gram <states-dir> -o out.csv`` Gram matrix of saved states
* ``demo-mlc``                     small multi-label classification demo
* ``selftest``                     numerical identity checks

Exit codes: 0 on success, 1 on validation errors (bad arguments, malformed
files, out-of-range parameters), 2 on numerical failures.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .errors import NumericalError
from .experiments import AnsatzSpec, NoiseSpec, build_ansatz, iter_sweep, load_config, sample_thetas, write_sweep_csv
from .fidelity import fidelity_pure, gram_mixed, gram_pure, write_gram_csv
from .learner import encode_label, label_fidelity, predict_label_qmlm, train_qmlm
from .linalg import pinv
from .states import DensityMatrix, Statevector, depolarize_global, expectation, read_state_csv, simulate_ideal, simulate_noisy


class _Parser(argparse.ArgumentParser):
    """argparse variant that treats usage errors as validation errors (exit 1)."""

    def error(self, message):  # noqa: D102 - argparse hook
        self.print_help(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qmlm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep from a config file")
    p_sweep.add_argument("config", help="key = value config file")
    p_sweep.add_argument("-o", "--output", required=True, help="output CSV path")
    p_sweep.set_defaults(func=cmd_sweep)

    p_gram = sub.add_parser("gram", help="Gram matrix of the states in a directory")
    p_gram.add_argument("states_dir", help="directory of statevector or density CSV files")
    p_gram.add_argument("-o", "--output", required=True, help="output CSV path")
    p_gram.set_defaults(func=cmd_gram)

    p_demo = sub.add_parser("demo-mlc", help="multi-label classification walkthrough")
    p_demo.add_argument("--seed", type=int, default=7)
    p_demo.set_defaults(func=cmd_demo_mlc)

    p_self = sub.add_parser("selftest", help="run the numerical identity suites")
    p_self.set_defaults(func=cmd_selftest)
    return parser


def cmd_sweep(args) -> int:
    config = load_config(args.config)
    write_sweep_csv(iter_sweep(config), args.output)
    rows = len(config.sweep_values) * len(config.dataset_sizes)
    print(f"wrote {rows} rows to {args.output}")
    return 0


def cmd_gram(args) -> int:
    root = Path(args.states_dir)
    if not root.is_dir():
        raise ValueError(f"{root} is not a directory")
    files = sorted(p for p in root.iterdir() if p.suffix == ".csv")
    if not files:
        raise ValueError(f"no .csv state files in {root}")
    states = [read_state_csv(p) for p in files]
    if all(isinstance(s, Statevector) for s in states):
        g = gram_pure(states)
    elif all(isinstance(s, DensityMatrix) for s in states):
        g = gram_mixed(states)
    else:
        raise ValueError(f"{root} mixes statevector and density-matrix files")
    write_gram_csv(g, args.output)
    print(f"wrote {g.size}x{g.size} Gram matrix to {args.output}")
    return 0


def cmd_demo_mlc(args) -> int:
    """Train on noisy states tagged with multi-hot labels, then classify.

    Test states run the same circuits at a noisier setting, so a correct
    prediction means the fidelity map still recognizes each circuit.
    """
    rng = np.random.default_rng(args.seed)
    spec = AnsatzSpec(n_qubits=2, layers=1, delta=np.pi)
    train_noise = NoiseSpec(p1=0.002, p2=0.01)
    test_noise = NoiseSpec(p1=0.01, p2=0.05)
    n, n_labels = 6, 4

    labels = []
    while len(labels) < n:
        bits = tuple(int(b) for b in rng.integers(0, 2, size=n_labels))
        if sum(bits) == 0 or bits in labels:
            continue
        labels.append(bits)
    if not any(sum(b) > 1 for b in labels):
        labels[0] = (1, 1, 0, 0)

    circuits = [
        build_ansatz(spec, sample_thetas(rng, spec.param_count, spec.delta))
        for _ in range(n)
    ]
    inputs = [simulate_noisy(c, train_noise.p1, train_noise.p2) for c in circuits]
    encoded = [encode_label(b) for b in labels]
    model = train_qmlm(inputs, encoded)

    print(f"trained on {n} noisy 2-qubit states with {n_labels}-bit labels")
    correct = 0
    for i, circuit in enumerate(circuits):
        test_state = simulate_noisy(circuit, test_noise.p1, test_noise.p2)
        predicted = predict_label_qmlm(model, test_state)
        ok = predicted == labels[i]
        correct += ok
        true_s = "".join(map(str, labels[i]))
        pred_s = "".join(map(str, predicted))
        print(f"instance {i}: true {true_s} predicted {pred_s} {'ok' if ok else 'MISS'}")
    print(f"{correct}/{n} labels recovered at the noisier test setting")
    return 0


def _random_pure(rng: np.random.Generator, n_qubits: int) -> Statevector:
    amps = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return Statevector(n_qubits, amps / np.linalg.norm(amps))


def _check_label_fidelity(rng: np.random.Generator) -> tuple[str, float, float]:
    """Overlap of encoded labels must equal 2^-hamming."""
    worst = 0.0
    for _ in range(300):
        length = int(rng.integers(1, 9))
        a = tuple(int(b) for b in rng.integers(0, 2, size=length))
        b = tuple(int(b) for b in rng.integers(0, 2, size=length))
        got = fidelity_pure(encode_label(a), encode_label(b))
        worst = max(worst, abs(got - label_fidelity(a, b)))
    return "label-fidelity identity", worst, 1e-12


def _check_depolarized_trace(rng: np.random.Generator) -> tuple[str, float, float]:
    """Tr(rho1' rho2') must equal alpha F + (1 - alpha)/d after depolarizing."""
    worst = 0.0
    d = 4
    for _ in range(100):
        psi1, psi2 = _random_pure(rng, 2), _random_pure(rng, 2)
        f = fidelity_pure(psi1, psi2)
        r1 = DensityMatrix.from_statevector(psi1)
        r2 = DensityMatrix.from_statevector(psi2)
        for lam1 in (0.0, 0.3, 0.7, 1.0):
            for lam2 in (0.0, 0.3, 0.7, 1.0):
                out1 = depolarize_global(r1, lam1)
                out2 = depolarize_global(r2, lam2)
                alpha = (1 - lam1) * (1 - lam2)
                got = expectation(out1.matrix, out2)
                worst = max(worst, abs(got - (alpha * f + (1 - alpha) / d)))
    return "depolarized-trace identity", worst, 1e-10


def _check_pseudoinverse(rng: np.random.Generator) -> tuple[str, float, float]:
    """The four Moore-Penrose conditions on random matrices."""
    worst = 0.0
    for _ in range(20):
        rows = int(rng.integers(1, 33))
        cols = int(rng.integers(1, 33))
        a = rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))
        if rng.random() < 0.3:  # force a rank-deficient case
            rank = int(rng.integers(1, min(rows, cols) + 1))
            a = (rng.normal(size=(rows, rank)) + 1j * rng.normal(size=(rows, rank))) @ (
                rng.normal(size=(rank, cols)) + 1j * rng.normal(size=(rank, cols))
            )
        ai = pinv(a)
        worst = max(
            worst,
            float(np.max(np.abs(a @ ai @ a - a))),
            float(np.max(np.abs(ai @ a @ ai - ai))),
            float(np.max(np.abs((a @ ai).conj().T - a @ ai))),
            float(np.max(np.abs((ai @ a).conj().T - ai @ a))),
        )
    return "pseudoinverse conditions", worst, 1e-8


def cmd_selftest(args) -> int:
    rng = np.random.default_rng(20240815)
    failed = False
    for check in (_check_label_fidelity, _check_depolarized_trace, _check_pseudoinverse):
        name, worst, tol = check(rng)
        ok = worst <= tol
        failed = failed or not ok
        status = "ok" if ok else "FAILED"
        print(f"{name}: {status} (max deviation {worst:.3e}, tolerance {tol:.0e})")
    return 2 if failed else 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
