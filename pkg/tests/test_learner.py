from __future__ import annotations

import itertools

import numpy as np
import pytest

import helpers
from qmlm.errors import DimensionMismatch, NotAnEncodedLabel
from qmlm.fidelity import fidelity_pure, gram_pure
from qmlm.learner import (
    LabelEncoding,
    decode_label,
    encode_label,
    label_fidelity,
    load_model,
    predict_label_qmlm,
    predict_qmlm,
    prediction_quality,
    save_model,
    train_qmlm,
)
from qmlm.mlm import hamming
from qmlm.states import DensityMatrix, Statevector, simulate_ideal, simulate_noisy
from qmlm.experiments import AnsatzSpec, build_ansatz, sample_thetas


def training_set(rng, n, n_qubits, delta, p1=0.0, p2=0.0, layers=1):
    spec = AnsatzSpec(n_qubits=n_qubits, layers=layers, delta=delta)
    inputs, outputs = [], []
    for _ in range(n):
        circ = build_ansatz(spec, sample_thetas(rng, spec.param_count, delta))
        inputs.append(simulate_noisy(circ, p1, p2))
        outputs.append(simulate_ideal(circ))
    return inputs, outputs


class TestLabelEncoding:
    def test_five_bit_example(self):
        # 01101 -> |0>|+>|+>|0>|+> : amplitude 2^(-3/2) wherever the three
        # plus-qubits vary and the zero-qubits stay 0
        state = encode_label((0, 1, 1, 0, 1))
        amps = state.amplitudes
        live = [i for i, a in enumerate(amps) if abs(a) > 1e-12]
        want = [
            int("".join(map(str, bits)), 2)
            for bits in itertools.product(*[(0, 1) if b else (0,) for b in (0, 1, 1, 0, 1)])
        ]
        assert live == sorted(want)
        assert np.allclose(amps[live], 2.0**-1.5)

    def test_all_zero_label_is_ground_state(self):
        state = encode_label((0, 0, 0))
        assert np.array_equal(state.amplitudes, [1] + [0] * 7)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            encode_label(())

    def test_rejects_non_bits(self):
        with pytest.raises(ValueError):
            encode_label((0, 2))

    def test_round_trip_all_six_bit_labels(self):
        for bits in itertools.product((0, 1), repeat=6):
            assert decode_label(encode_label(bits)) == bits

    def test_decode_rejects_generic_state(self):
        rng = np.random.default_rng(0)
        with pytest.raises(NotAnEncodedLabel):
            decode_label(helpers.random_pure(rng, 3))

    def test_decode_rejects_basis_one_state(self):
        one = Statevector(1, np.array([0, 1], dtype=complex))
        with pytest.raises(NotAnEncodedLabel):
            decode_label(one)

    def test_decode_rejects_phase_rotated_encoding(self):
        state = encode_label((1, 0))
        rotated = Statevector(2, np.exp(0.3j) * state.amplitudes)
        with pytest.raises(NotAnEncodedLabel):
            decode_label(rotated)

    def test_from_bits_carries_both_views(self):
        enc = LabelEncoding.from_bits([1, 0, 1])
        assert enc.bits == (1, 0, 1)
        assert fidelity_pure(enc.state, encode_label((1, 0, 1))) == pytest.approx(1.0)


class TestLabelFidelity:
    def test_closed_form_matches_state_overlap(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            l = int(rng.integers(1, 8))
            a = tuple(int(v) for v in rng.integers(0, 2, size=l))
            b = tuple(int(v) for v in rng.integers(0, 2, size=l))
            direct = fidelity_pure(encode_label(a), encode_label(b))
            assert abs(label_fidelity(a, b) - direct) < 1e-12

    def test_known_values(self):
        assert label_fidelity((0, 0), (0, 0)) == 1.0
        assert label_fidelity((0, 0), (1, 1)) == 0.25

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            label_fidelity((0,), (0, 1))

    def test_encoded_gram_is_hamming_powers(self):
        labels = list(itertools.product((0, 1), repeat=4))
        g = gram_pure([encode_label(b) for b in labels])
        for i, a in enumerate(labels):
            for j, b in enumerate(labels):
                assert abs(g.values[i, j] - 2.0 ** -hamming(a, b)) < 1e-12


class TestTraining:
    def test_zero_noise_map_is_identity(self):
        rng = np.random.default_rng(2)
        inputs, outputs = training_set(rng, 12, 2, np.pi)
        model = train_qmlm(inputs, outputs)
        assert np.max(np.abs(model.b - np.eye(12))) < 1e-8

    def test_map_solves_gram_equation(self):
        # residual of the fitted linear system is orthogonal to the column space
        rng = np.random.default_rng(3)
        inputs, outputs = training_set(rng, 8, 2, np.pi / 2, p1=0.01, p2=0.05)
        model = train_qmlm(inputs, outputs)
        from qmlm.fidelity import gram_mixed

        dx = gram_mixed(list(inputs)).values
        dy = gram_pure(list(outputs)).values
        assert np.max(np.abs(dx.T @ (dx @ model.b - dy))) < 1e-8

    def test_rejects_count_mismatch(self):
        rng = np.random.default_rng(4)
        inputs, outputs = training_set(rng, 3, 1, np.pi)
        with pytest.raises(ValueError):
            train_qmlm(inputs, outputs[:2])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            train_qmlm([], [])


class TestPrediction:
    def test_zero_noise_lookup(self):
        rng = np.random.default_rng(5)
        inputs, outputs = training_set(rng, 10, 2, np.pi)
        model = train_qmlm(inputs, outputs)
        for i in range(10):
            idx, state = predict_qmlm(model, inputs[i])
            assert idx == i
            assert prediction_quality(state, outputs[i]) > 1 - 1e-9

    def test_prediction_returns_member_of_training_outputs(self):
        rng = np.random.default_rng(6)
        inputs, outputs = training_set(rng, 8, 2, np.pi / 4, p1=0.01, p2=0.05)
        model = train_qmlm(inputs, outputs)
        test_inputs, _ = training_set(rng, 5, 2, np.pi / 4, p1=0.05, p2=0.1)
        for t in test_inputs:
            idx, state = predict_qmlm(model, t)
            assert state is model.train_outputs[idx]

    def test_rejects_qubit_mismatch(self):
        rng = np.random.default_rng(7)
        inputs, outputs = training_set(rng, 4, 2, np.pi)
        model = train_qmlm(inputs, outputs)
        with pytest.raises(DimensionMismatch):
            predict_qmlm(model, DensityMatrix.maximally_mixed(3))

    def test_degenerate_inputs_collapse_to_constant_prediction(self):
        # with indistinguishable training inputs the fidelity row is flat, so
        # every test point lands on the same training instance
        rng = np.random.default_rng(8)
        _, outputs = training_set(rng, 6, 2, np.pi)
        inputs = [DensityMatrix.maximally_mixed(2) for _ in range(6)]
        model = train_qmlm(inputs, outputs)
        picks = set()
        for _ in range(5):
            test = DensityMatrix.from_statevector(helpers.random_pure(rng, 2))
            picks.add(predict_qmlm(model, test)[0])
        assert len(picks) == 1

    def test_label_prediction_with_mild_noise(self):
        # distinct multi-bit labels survive a round trip through a noisy model
        rng = np.random.default_rng(9)
        labels = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1), (1, 0, 1)]
        spec = AnsatzSpec(n_qubits=3, layers=1, delta=np.pi)
        inputs, outputs = [], []
        for bits in labels:
            circ = build_ansatz(spec, sample_thetas(rng, spec.param_count, np.pi))
            inputs.append(simulate_noisy(circ, 0.002, 0.01))
            outputs.append(encode_label(bits))
        model = train_qmlm(inputs, outputs)
        hits = 0
        for k, bits in enumerate(labels):
            got = predict_label_qmlm(model, inputs[k])
            hits += got == bits
        assert hits == len(labels)

    def test_prediction_quality_is_pure_fidelity(self):
        rng = np.random.default_rng(10)
        a = helpers.random_pure(rng, 2)
        b = helpers.random_pure(rng, 2)
        assert prediction_quality(a, b) == fidelity_pure(a, b)


class TestModelPersistence:
    def test_round_trip(self, tmp_path):
        rng = np.random.default_rng(11)
        inputs, outputs = training_set(rng, 5, 2, np.pi / 2, p1=0.01, p2=0.02)
        model = train_qmlm(inputs, outputs, rcond=1e-10)
        save_model(model, tmp_path / "model", seed=123)
        back = load_model(tmp_path / "model")
        assert back.size == model.size
        assert back.rcond == model.rcond
        assert np.array_equal(back.b, model.b)
        for a, b in zip(back.train_inputs, model.train_inputs):
            assert np.max(np.abs(a.matrix - b.matrix)) < 1e-15
        for a, b in zip(back.train_outputs, model.train_outputs):
            assert np.max(np.abs(a.amplitudes - b.amplitudes)) < 1e-15
        rng2 = np.random.default_rng(99)
        test = DensityMatrix.from_statevector(helpers.random_pure(rng2, 2))
        assert predict_qmlm(back, test)[0] == predict_qmlm(model, test)[0]

    def test_load_rejects_missing_meta(self, tmp_path):
        (tmp_path / "model").mkdir()
        with pytest.raises((ValueError, OSError)):
            load_model(tmp_path / "model")

    def test_load_rejects_count_mismatch(self, tmp_path):
        rng = np.random.default_rng(12)
        inputs, outputs = training_set(rng, 3, 1, np.pi)
        model = train_qmlm(inputs, outputs)
        save_model(model, tmp_path / "model")
        extra = tmp_path / "model" / "inputs" / "0099.csv"
        extra.write_text((tmp_path / "model" / "inputs" / "0000.csv").read_text())
        with pytest.raises(ValueError):
            load_model(tmp_path / "model")
