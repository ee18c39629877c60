"""Two-qubit gates from an XXZ exchange period plus individually pulsed spins.

The package covers the full pipeline: exact propagators of the two-step
protocol, the analytic parameter families realizing SWAP, iSWAP, sqrt-SWAP
and the Bell-pair entanglers, a reproducible numerical synthesizer for
arbitrary targets, and the optical-lattice calculator mapping lattice depths
to the effective couplings (J, gamma) with coherence-time feasibility bounds.
"""

from .catalog import (
    FamilyCheck,
    GateKind,
    GateTarget,
    Unrealizable,
    concurrence,
    condition_params,
    conjugated_entangler,
    entangler,
    gate_kind_from_name,
    iswap,
    make_gate,
    sqrt_swap,
    swap,
    swap_beta,
    verify_family,
)
from .core import (
    NotUnitaryError,
    adjoint,
    approx_equal_up_to_phase,
    ensure_unitary,
    kron,
    mat_mul,
    matrix_from_json,
    matrix_to_json,
    pauli,
    trace,
)
from .lattice import (
    EffectiveCouplings,
    FeasibilityReport,
    Infeasible,
    LatticeConfig,
    Statistics,
    effective_couplings,
    gate_feasibility,
    onsite_energies,
    solve_depths_for_couplings,
    spin_average_depth,
    tunneling_energy,
)
from .protocol import (
    CouplingParams,
    PhaseOptimum,
    ProtocolParams,
    PulseSpec,
    Spectrum,
    circuit_unitary,
    evolve_interaction,
    gate_fidelity,
    hamiltonian,
    phase_optimized_fidelity,
    pulse_unitary,
    single_pulse_unitary,
    spectrum,
)
from .synthesizer import (
    AxisSpec,
    SearchConfig,
    SynthesisResult,
    fidelity_landscape,
    synthesize,
)

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "CouplingParams",
    "EffectiveCouplings",
    "FamilyCheck",
    "FeasibilityReport",
    "GateKind",
    "GateTarget",
    "Infeasible",
    "LatticeConfig",
    "NotUnitaryError",
    "PhaseOptimum",
    "ProtocolParams",
    "PulseSpec",
    "SearchConfig",
    "Spectrum",
    "Statistics",
    "SynthesisResult",
    "Unrealizable",
    "adjoint",
    "approx_equal_up_to_phase",
    "circuit_unitary",
    "concurrence",
    "condition_params",
    "conjugated_entangler",
    "effective_couplings",
    "ensure_unitary",
    "entangler",
    "evolve_interaction",
    "fidelity_landscape",
    "gate_feasibility",
    "gate_fidelity",
    "gate_kind_from_name",
    "hamiltonian",
    "iswap",
    "kron",
    "make_gate",
    "mat_mul",
    "matrix_from_json",
    "matrix_to_json",
    "onsite_energies",
    "pauli",
    "phase_optimized_fidelity",
    "pulse_unitary",
    "single_pulse_unitary",
    "solve_depths_for_couplings",
    "spectrum",
    "spin_average_depth",
    "sqrt_swap",
    "swap",
    "swap_beta",
    "synthesize",
    "trace",
    "tunneling_energy",
    "verify_family",
]
