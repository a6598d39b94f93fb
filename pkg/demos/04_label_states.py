"""Multi-hot labels as quantum states and a small noisy classifier.

Usage: python demos/04_label_states.py
"""

import numpy as np

from qmlm import (
    AnsatzSpec,
    NoiseSpec,
    build_ansatz,
    decode_label,
    encode_label,
    label_fidelity,
    predict_label_qmlm,
    sample_thetas,
    simulate_ideal,
    simulate_noisy,
    train_qmlm,
)

bits = (0, 1, 1, 0, 1)
state = encode_label(bits)
print(f"label {bits} encodes to a {state.dim}-amplitude state")
print(f"decoding recovers {decode_label(state)}")

print("\noverlap between encoded labels is 2^-hamming:")
for other in ((0, 1, 1, 0, 1), (1, 1, 1, 0, 1), (1, 0, 1, 0, 1), (1, 0, 0, 1, 0)):
    print(f"  {bits} vs {other}: {label_fidelity(bits, other):.4f}")

# tiny multi-label classifier: each class of circuit carries a label set
print("\nnoisy 3-qubit classifier over 4 multi-hot labels:")
rng = np.random.default_rng(11)
labels = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0)]
spec = AnsatzSpec(n_qubits=3, layers=1, delta=np.pi)
inputs, outputs = [], []
for lab in labels:
    circ = build_ansatz(spec, sample_thetas(rng, spec.param_count, np.pi))
    inputs.append(simulate_noisy(circ, 0.005, 0.02))
    outputs.append(encode_label(lab))
model = train_qmlm(inputs, outputs)

hits = 0
for k, lab in enumerate(labels):
    got = predict_label_qmlm(model, inputs[k])
    hits += got == lab
    print(f"  true {lab} -> predicted {got}")
print(f"{hits}/{len(labels)} recovered through the noisy inputs")
