"""Quantum minimal learning machine toolkit.

Simulates small noisy quantum circuits, builds fidelity Gram matrices, and
learns a linear similarity map between noisy-input and ideal-target
fidelity spaces.  Includes the classical Euclidean counterpart and a
parameter-sweep harness for studying how dataset size, circuit width and
depth, rotation range, and depolarizing noise affect prediction quality.
"""

from __future__ import annotations

from .errors import (
    DimensionMismatch,
    NoConvergence,
    NotAnEncodedLabel,
    NotHermitian,
    NotPSD,
    NumericalError,
)
from .experiments import (
    AnsatzSpec,
    ExperimentConfig,
    NoiseSpec,
    SweepRecord,
    build_ansatz,
    format_sweep_record,
    generate_dataset,
    iter_sweep,
    load_config,
    parse_config_text,
    run_sweep,
    run_trial,
    sample_thetas,
    write_sweep_csv,
)
from .fidelity import (
    GramMatrix,
    concentration_stats,
    fidelity_mixed,
    fidelity_pure,
    fidelity_pure_mixed,
    gram_mixed,
    gram_pure,
    read_gram_csv,
    write_gram_csv,
)
from .learner import (
    LabelEncoding,
    QmlmModel,
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
from .linalg import (
    HermitianEigen,
    hermitian_eig,
    kron,
    matrix_sqrt_psd,
    pinv,
    solve_linear_map,
)
from .mlm import (
    LabeledDataset,
    MlmModel,
    distance_matrix,
    hamming,
    load_dataset_csv,
    load_mlm_model,
    predict_mlm,
    save_dataset_csv,
    save_mlm_model,
    train_mlm,
)
from .states import (
    Circuit,
    DensityMatrix,
    Gate,
    Statevector,
    apply_gate_mixed,
    apply_gate_pure,
    circuit_from_text,
    circuit_to_text,
    cnot,
    depolarize_global,
    depolarize_local,
    embedded_unitary,
    expectation,
    h,
    purity,
    read_density_csv,
    read_state_csv,
    read_statevector_csv,
    rx,
    rz,
    simulate_ideal,
    simulate_noisy,
    write_density_csv,
    write_statevector_csv,
)

__version__ = "0.1.0"
