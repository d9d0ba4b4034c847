"""Multi-component cat codes under photon loss.

Closed-form channel behaviour, correctability analysis and a one-way
repeater simulator for rotation-symmetric coherent-state codes, with every
closed form backed by a truncated Fock-space brute-force oracle.
"""

__version__ = "0.1.0"

from .fock import (
    DensityMatrix,
    FockVector,
    TruncationError,
    annihilate,
    basis_state,
    coherent_state,
    default_n_max,
    inner,
    mix,
    outer,
    parity_phase_apply,
    trace_distance,
)
from .codes import (
    CodeSpec,
    CodewordId,
    LogicalCoeffs,
    codeword_coherent,
    codeword_fock,
    codeword_overlap,
    verify_code_equations,
)
from .channel import (
    ChannelParams,
    LossClassWeights,
    MixtureComponent,
    channel_apply_exact,
    class_probabilities,
    class_probabilities_kraus,
    encode,
    kraus_apply,
    logical_mixture,
    mixture_weights,
)
from .qec import (
    FidelityResult,
    KLReport,
    fidelity_bound,
    fidelity_scan,
    fidelity_state,
    kl_check,
    parity_project,
)
from .restore import (
    BellNorms,
    FilterParams,
    filter_operators,
    filter_params,
    filter_success,
    ow_success,
    restoration_factor,
    teleport_success,
    teleport_success_assembled,
)
from .repeater import (
    ChainResult,
    RepeaterConfig,
    SweepRow,
    segment_gamma,
    simulate_chain,
    sweep,
)

__all__ = [
    "DensityMatrix", "FockVector", "TruncationError", "annihilate",
    "basis_state", "coherent_state", "default_n_max", "inner", "mix",
    "outer", "parity_phase_apply", "trace_distance",
    "CodeSpec", "CodewordId", "LogicalCoeffs", "codeword_coherent",
    "codeword_fock", "codeword_overlap", "verify_code_equations",
    "ChannelParams", "LossClassWeights", "MixtureComponent",
    "channel_apply_exact", "class_probabilities", "class_probabilities_kraus",
    "encode", "kraus_apply", "logical_mixture", "mixture_weights",
    "FidelityResult", "KLReport", "fidelity_bound", "fidelity_scan",
    "fidelity_state", "kl_check", "parity_project",
    "BellNorms", "FilterParams", "filter_operators", "filter_params",
    "filter_success", "ow_success", "restoration_factor", "teleport_success",
    "teleport_success_assembled",
    "ChainResult", "RepeaterConfig", "SweepRow", "segment_gamma",
    "simulate_chain", "sweep",
]
