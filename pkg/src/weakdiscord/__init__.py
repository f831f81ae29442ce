"""Density-matrix simulation of weak measurements and discord-type correlations."""

from .channels import (
    DilationGates, KrausChannel, apply_channel, apply_via_dilation, dilation_gates,
    lambda_from_x, phase_damping_kraus, rotation_angle_from_lambda, x_from_lambda,
)
from .discord import (
    DiscordReport, OptimizerConfig, classical_correlation, mutual_information, optimize_basis,
    quantum_discord, super_quantum_discord, weak_quantum_discord,
)
from .errors import ConvergenceError, DimensionError, DomainError
from .measure import (
    MeasurementBasis, MeasurementOutcome, WeakPovm, conditional_entropy_projective,
    conditional_entropy_weak, measure_b_projective, measure_b_weak, projectors, weak_povm,
)
from .qmath import eigh, fidelity, kron, partial_trace, trace_distance, von_neumann_entropy
from .states import (
    BellDiagonalParams, BlochVector, bell_diagonal, bloch_state, from_pauli_expectations,
    pauli_expectations, pseudopure_3q, werner,
)

__version__ = "0.1.0"
