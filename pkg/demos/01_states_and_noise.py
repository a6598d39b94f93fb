"""Build a small circuit, run it clean and noisy, inspect the damage.

Usage: python demos/01_states_and_noise.py
"""

import numpy as np

from qmlm import (
    Circuit,
    DensityMatrix,
    cnot,
    depolarize_global,
    fidelity_pure_mixed,
    h,
    purity,
    rx,
    simulate_ideal,
    simulate_noisy,
)

# a Bell-pair maker with one extra rotation
circuit = Circuit(2, (h(0), cnot(0, 1), rx(1, 0.3)))

ideal = simulate_ideal(circuit)
print("ideal amplitudes:")
for i, a in enumerate(ideal.amplitudes):
    print(f"  |{i:02b}>  {a.real:+.4f} {a.imag:+.4f}j")

print("\nnoisy runs (depolarizing after every gate):")
for p1, p2 in ((0.0, 0.0), (0.01, 0.05), (0.1, 0.3)):
    rho = simulate_noisy(circuit, p1, p2)
    f = fidelity_pure_mixed(ideal, rho)
    print(f"  p1={p1:<5} p2={p2:<5} purity={purity(rho):.4f}  fidelity to ideal={f:.4f}")

print("\na pure state fed through the global channel:")
rho = DensityMatrix.from_statevector(ideal)
for lam in (0.0, 0.5, 1.0):
    out = depolarize_global(rho, lam)
    print(f"  lambda={lam:<4} purity={purity(out):.4f}")

print("\nat lambda=1 the state is I/d regardless of the input:")
print(np.round(depolarize_global(rho, 1.0).matrix.real, 4))
