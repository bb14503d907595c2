"""Closest Pauli channel extraction for approximate quantum gates.

Given a gate implementation (dense unitary, dense superoperator, or weighted
unitary ensemble) and its intended target, this package expands the residual
error in the Pauli-string basis, reads off the stochastic Pauli channel that
is provably closest in the normalized Frobenius metric, quantifies the
coherent weight that no stochastic model can reproduce, accounts for leakage
outside the computational subspace, and exports the model to
stochastic-noise simulators as a chain of correlated-error instructions.
"""

__version__ = "0.1.0"

from .channels import (
    PhysicalityReport,
    adjoint_channel,
    channel_distance,
    channel_from_oracle,
    check_physicality,
    compose,
    devectorize,
    entanglement_fidelity,
    hermiticity_defect,
    lift_unitary,
    pauli_pair_diagonal,
    trace_preservation_defect,
    vectorize,
)
from .errors import (
    DimensionError,
    ModelFormatError,
    PauliNoiseError,
    PhysicalityError,
    SizeLimitError,
)
from .extraction import (
    ExtractionResult,
    LeakageSpec,
    ModelDiagnostics,
    PauliNoiseModel,
    coefficient_matrix,
    coherent_residual,
    diagonal_weights_via_fidelity,
    error_channel,
    error_unitary,
    extract_from_channel,
    extract_from_unitary,
    leakage_project,
    leakage_project_channel,
    nearest_pauli_channel,
    pauli_coefficient_via_bitstrings,
    pauli_coefficients,
)
from .generators import (
    EnsembleMember,
    average_channel,
    overrotated_cz,
    pauli_channel,
    random_unitary,
    z_rotation,
)
from .model_io import (
    MatrixDocument,
    chain_to_probabilities,
    export_stim_chain,
    read_coefficient_file,
    read_ensemble_file,
    read_matrix_file,
    read_model,
    write_coefficient_file,
    write_ensemble_file,
    write_matrix_file,
    write_model,
)
from .paulis import (
    basis_matrices,
    frobenius_inner,
    index_to_label,
    label_to_index,
    pauli_basis,
    pauli_matrix,
    qubit_count,
    unitarity_defect,
    validate_label,
)

__all__ = [
    "DimensionError",
    "EnsembleMember",
    "ExtractionResult",
    "LeakageSpec",
    "MatrixDocument",
    "ModelDiagnostics",
    "ModelFormatError",
    "PauliNoiseError",
    "PauliNoiseModel",
    "PhysicalityError",
    "PhysicalityReport",
    "SizeLimitError",
    "__version__",
    "adjoint_channel",
    "average_channel",
    "basis_matrices",
    "chain_to_probabilities",
    "channel_distance",
    "channel_from_oracle",
    "check_physicality",
    "coefficient_matrix",
    "coherent_residual",
    "compose",
    "devectorize",
    "diagonal_weights_via_fidelity",
    "entanglement_fidelity",
    "error_channel",
    "error_unitary",
    "export_stim_chain",
    "extract_from_channel",
    "extract_from_unitary",
    "frobenius_inner",
    "hermiticity_defect",
    "index_to_label",
    "label_to_index",
    "leakage_project",
    "leakage_project_channel",
    "lift_unitary",
    "nearest_pauli_channel",
    "overrotated_cz",
    "pauli_basis",
    "pauli_channel",
    "pauli_coefficient_via_bitstrings",
    "pauli_coefficients",
    "pauli_matrix",
    "pauli_pair_diagonal",
    "qubit_count",
    "random_unitary",
    "read_coefficient_file",
    "read_ensemble_file",
    "read_matrix_file",
    "read_model",
    "trace_preservation_defect",
    "unitarity_defect",
    "validate_label",
    "vectorize",
    "write_coefficient_file",
    "write_ensemble_file",
    "write_matrix_file",
    "write_model",
    "z_rotation",
]
