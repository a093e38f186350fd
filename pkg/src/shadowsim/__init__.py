"""Dual-register ("shadow") state-vector quantum simulator.

Every quantum state carries a mirrored shadow amplitude record in a modeled
quantum vacuum; all operations update the primary and shadow registers in the
same atomic step.  The package provides truncated Fock-space ladder algebra,
multi-qubit dual registers, projective and Bell-basis measurement, the
teleportation / entanglement-swapping protocols with brute-force decomposition
oracles, 1D Schroedinger wave dynamics with zone-partition collapse, and a
deterministic CLI.
"""

from .fock import (
    ModeGrid,
    DualFockState,
    VacuumHandle,
    DispersionParams,
    vacuum,
    apply_b,
    apply_b_dagger,
    annihilation_matrix,
    creation_matrix,
    commutator_residual,
    anticommutator_residual,
    position_create,
)
from .register import (
    BellKind,
    DualRegister,
    from_amplitudes,
    bell_pair,
    tensor,
    apply_unitary,
    fidelity,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    HADAMARD,
)
from .measurement import (
    MeasurementRecord,
    Z_BASIS,
    X_BASIS,
    born_probabilities,
    projective_measure,
    bell_outcome_probabilities,
    bell_measure,
)
from .protocols import (
    DecompositionReport,
    CorrectionTable,
    TeleportationResult,
    SwapResult,
    ReadoutStats,
    ProductStateStats,
    bell_branches,
    reassemble_branches,
    derive_decomposition,
    teleport_input_state,
    teleport_decomposition,
    swap_input_state,
    swap_decomposition,
    derive_correction_table,
    run_teleportation,
    swap_outcome_map,
    run_entanglement_swap,
    entangled_readout_demo,
    product_plus_state,
    product_state_demo,
)
from .waves import (
    WaveGrid,
    Potential,
    ZonePartition,
    SlitGeometry,
    DoubleSlitResult,
    gaussian_packet,
    from_samples,
    evolve,
    free_propagate,
    zone_coefficients,
    zone_profile,
    collapse_detect,
    analytic_screen_intensity,
    fringe_visibility,
    double_slit_accumulate,
)
from .errata import build_erratum_report

__all__ = [
    "ModeGrid",
    "DualFockState",
    "VacuumHandle",
    "DispersionParams",
    "vacuum",
    "apply_b",
    "apply_b_dagger",
    "annihilation_matrix",
    "creation_matrix",
    "commutator_residual",
    "anticommutator_residual",
    "position_create",
    "BellKind",
    "DualRegister",
    "from_amplitudes",
    "bell_pair",
    "tensor",
    "apply_unitary",
    "fidelity",
    "PAULI_I",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "HADAMARD",
    "MeasurementRecord",
    "Z_BASIS",
    "X_BASIS",
    "born_probabilities",
    "projective_measure",
    "bell_outcome_probabilities",
    "bell_measure",
    "DecompositionReport",
    "CorrectionTable",
    "TeleportationResult",
    "SwapResult",
    "ReadoutStats",
    "ProductStateStats",
    "bell_branches",
    "reassemble_branches",
    "derive_decomposition",
    "teleport_input_state",
    "teleport_decomposition",
    "swap_input_state",
    "swap_decomposition",
    "derive_correction_table",
    "run_teleportation",
    "swap_outcome_map",
    "run_entanglement_swap",
    "entangled_readout_demo",
    "product_plus_state",
    "product_state_demo",
    "WaveGrid",
    "Potential",
    "ZonePartition",
    "SlitGeometry",
    "DoubleSlitResult",
    "gaussian_packet",
    "from_samples",
    "evolve",
    "free_propagate",
    "zone_coefficients",
    "zone_profile",
    "collapse_detect",
    "analytic_screen_intensity",
    "fringe_visibility",
    "double_slit_accumulate",
    "build_erratum_report",
]

__version__ = "0.1.0"
