"""Classical single-query solution of the constant-or-balanced problem on
simulated NMR spin magnetisation, cross-checked against a small quantum
state-vector reference.

The package is layered by fidelity: complex-bit algebra (`complexbit`),
a unitary reference (`quantumref`), rotating-frame pulse simulation
(`spinsim`), spectral synthesis and phase readout (`signal`), and the
end-to-end runners (`pipeline`).
"""

from .complexbit import (
    BlackBoxParams,
    ComplexBit,
    DJResult,
    TruthTable,
    Verdict,
    apply_blackbox_n1,
    apply_blackbox_n2,
    params_from_truth_table,
    project,
    promise_functions,
    run_dequantised,
    truth_table_from_params,
)
from .errors import DJNMRError
from .pipeline import SpinSetup, crosscheck, default_setup, run, run_spin
from .quantumref import (
    StateVector,
    UnitaryBlackBox,
    apply_unitary_blackbox,
    basis_state,
    check_embedding_impossible,
    hadamard_all,
    make_unitary_blackbox,
    phase_indistinguishability,
    run_quantum_dj,
)
from .signal import (
    Fid,
    PhaseReading,
    Quadrant,
    Spectrum,
    classify_result,
    read_phase,
    spectrum,
    synthesize_fid,
)
from .spinsim import (
    Magnetisation,
    PulseSequence,
    SpinSpecies,
    compile_blackbox,
    compute_tau,
    embed,
    precess,
    readout,
    rotate,
    run_sequence,
)

__version__ = "0.1.0"

__all__ = [
    "BlackBoxParams",
    "ComplexBit",
    "DJNMRError",
    "DJResult",
    "Fid",
    "Magnetisation",
    "PhaseReading",
    "PulseSequence",
    "Quadrant",
    "SpinSetup",
    "SpinSpecies",
    "Spectrum",
    "StateVector",
    "TruthTable",
    "UnitaryBlackBox",
    "Verdict",
    "apply_blackbox_n1",
    "apply_blackbox_n2",
    "apply_unitary_blackbox",
    "basis_state",
    "check_embedding_impossible",
    "classify_result",
    "compile_blackbox",
    "compute_tau",
    "crosscheck",
    "default_setup",
    "embed",
    "hadamard_all",
    "make_unitary_blackbox",
    "params_from_truth_table",
    "phase_indistinguishability",
    "precess",
    "project",
    "promise_functions",
    "read_phase",
    "readout",
    "rotate",
    "run",
    "run_dequantised",
    "run_quantum_dj",
    "run_sequence",
    "run_spin",
    "spectrum",
    "synthesize_fid",
    "truth_table_from_params",
    "__version__",
]
