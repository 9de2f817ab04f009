"""Coherence analysis of block-renormalization flows for the 2D
anisotropic-XY and transverse-field Ising models on five-site clusters."""

from .analysis import (
    DerivativePeak,
    ScalingFit,
    SweepRow,
    SweepSpec,
    add_derivatives,
    coherence_sweep,
    find_peak,
    scaling_analysis,
    scaling_fit,
    system_size,
)
from .coherence import l1_coherence, l1_coherence_pure, subsystem_coherence
from .groundstate import (
    EigenDecomposition,
    GroundSelection,
    eigh,
    ground_space,
    select_ground_ising,
    select_ground_xy,
    sign_fix,
)
from .ising import (
    FixedPointResult,
    cluster_hamiltonian_ising,
    fixed_point,
    g_prime,
    ground_state_ising,
    nu_exponent,
    rg_flow_ising,
)
from .spinops import (
    density_from_pure,
    expectation,
    partial_trace,
    pauli,
    pauli_pair,
)
from .xy import (
    ClosedFormCoeffs,
    XYCouplings,
    block_hamiltonian_xy,
    closed_form_coeffs,
    ground_energy_xy,
    ground_state_xy,
    psi0_closed_form,
    psi0_numeric,
    rg_flow_xy,
    rg_step_xy,
)

__version__ = "0.1.0"

__all__ = [
    "ClosedFormCoeffs",
    "DerivativePeak",
    "EigenDecomposition",
    "FixedPointResult",
    "GroundSelection",
    "ScalingFit",
    "SweepRow",
    "SweepSpec",
    "XYCouplings",
    "add_derivatives",
    "block_hamiltonian_xy",
    "closed_form_coeffs",
    "cluster_hamiltonian_ising",
    "coherence_sweep",
    "density_from_pure",
    "eigh",
    "expectation",
    "find_peak",
    "fixed_point",
    "g_prime",
    "ground_energy_xy",
    "ground_space",
    "ground_state_ising",
    "ground_state_xy",
    "l1_coherence",
    "l1_coherence_pure",
    "nu_exponent",
    "partial_trace",
    "pauli",
    "pauli_pair",
    "psi0_closed_form",
    "psi0_numeric",
    "rg_flow_ising",
    "rg_flow_xy",
    "rg_step_xy",
    "scaling_analysis",
    "scaling_fit",
    "select_ground_ising",
    "select_ground_xy",
    "sign_fix",
    "subsystem_coherence",
    "system_size",
]
