from __future__ import annotations

import numpy as np

import helpers
from qmlm.cli import main
from qmlm.fidelity import gram_mixed, gram_pure, read_gram_csv
from qmlm.states import write_density_csv, write_statevector_csv

TINY_CONFIG = """
qubits = 1
delta = pi/2
p1 = 0.01
p2 = 0.05
dataset_sizes = 3, 4
trials = 5
seed = 2
sweep.kind = delta
sweep.values = pi/4, pi/2
"""


class TestSweepCommand:
    def test_runs_and_writes_csv(self, tmp_path, capsys):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text(TINY_CONFIG)
        out = tmp_path / "out.csv"
        code = main(["sweep", str(cfg), "-o", str(out)])
        assert code == 0
        assert "wrote 4 rows" in capsys.readouterr().out
        lines = out.read_text().splitlines()
        assert lines[0] == "sweep_name,sweep_value,dataset_size,mean_fidelity,std_error,trials,seed"
        assert len(lines) == 5

    def test_missing_config_file(self, tmp_path, capsys):
        code = main(["sweep", str(tmp_path / "nope.cfg"), "-o", str(tmp_path / "o.csv")])
        assert code == 1
        assert "error" in capsys.readouterr().err.lower()

    def test_invalid_config_contents(self, tmp_path, capsys):
        cfg = tmp_path / "bad.cfg"
        cfg.write_text("temperature = 451\n")
        code = main(["sweep", str(cfg), "-o", str(tmp_path / "o.csv")])
        assert code == 1
        assert "temperature" in capsys.readouterr().err


class TestGramCommand:
    def test_pure_directory(self, tmp_path, capsys):
        rng = np.random.default_rng(0)
        states = [helpers.random_pure(rng, 2) for _ in range(3)]
        d = tmp_path / "states"
        d.mkdir()
        for k, s in enumerate(states):
            write_statevector_csv(s, d / f"{k}.csv")
        out = tmp_path / "gram.csv"
        assert main(["gram", str(d), "-o", str(out)]) == 0
        assert "3x3" in capsys.readouterr().out
        got = read_gram_csv(out)
        assert np.max(np.abs(got.values - gram_pure(states).values)) < 1e-15

    def test_density_directory(self, tmp_path):
        rng = np.random.default_rng(1)
        states = [helpers.random_density(rng, 1) for _ in range(3)]
        d = tmp_path / "states"
        d.mkdir()
        for k, s in enumerate(states):
            write_density_csv(s, d / f"{k}.csv")
        out = tmp_path / "gram.csv"
        assert main(["gram", str(d), "-o", str(out)]) == 0
        got = read_gram_csv(out)
        assert np.max(np.abs(got.values - gram_mixed(states).values)) < 1e-15

    def test_mixed_kinds_rejected(self, tmp_path, capsys):
        rng = np.random.default_rng(2)
        d = tmp_path / "states"
        d.mkdir()
        write_statevector_csv(helpers.random_pure(rng, 1), d / "a.csv")
        write_density_csv(helpers.random_density(rng, 1), d / "b.csv")
        assert main(["gram", str(d), "-o", str(tmp_path / "g.csv")]) == 1
        assert "error" in capsys.readouterr().err

    def test_empty_directory_rejected(self, tmp_path):
        d = tmp_path / "states"
        d.mkdir()
        assert main(["gram", str(d), "-o", str(tmp_path / "g.csv")]) == 1


class TestDemoCommand:
    def test_demo_runs_clean(self, capsys):
        assert main(["demo-mlc"]) == 0
        out = capsys.readouterr().out
        assert "labels recovered" in out
        assert "instance 0:" in out

    def test_demo_seed_changes_instances(self, capsys):
        main(["demo-mlc", "--seed", "3"])
        a = capsys.readouterr().out
        main(["demo-mlc", "--seed", "4"])
        b = capsys.readouterr().out
        assert a != b


class TestSelftestCommand:
    def test_all_suites_pass(self, capsys):
        assert main(["selftest"]) == 0
        out = capsys.readouterr().out
        assert out.count(": ok") == 3
        assert "FAILED" not in out


class TestUsageErrors:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 1
        assert "usage" in capsys.readouterr().err

    def test_no_arguments(self, capsys):
        assert main([]) == 1
        assert "usage" in capsys.readouterr().err

    def test_missing_output_flag(self, tmp_path, capsys):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text(TINY_CONFIG)
        assert main(["sweep", str(cfg)]) == 1
        assert "usage" in capsys.readouterr().err

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        assert "sweep" in capsys.readouterr().out
