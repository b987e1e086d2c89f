"""Tailbiting convolutional code laboratory.

Defines rate 1/n feedforward codes and their trellises, tailbiting
encoding, a QPSK/AWGN/flat-Rayleigh modem, a Viterbi engine with merge-gap
recording, the two-step anchored decoder, ML / exhaustive / fixed-circular
baselines, and a seeded Monte Carlo BLER harness with a CLI.
"""

from .baselines import decode_cva_fixed, decode_exhaustive, decode_ml
from .codes import CodeSpec, Trellis, build_trellis
from .encoding import encode_tailbiting, rotate, tailbiting_state_sequence
from .engine import (
    OPEN_START,
    ForwardRecord,
    StartConstraint,
    best_final_state,
    branch_metric,
    forward_pass,
    traceback,
)
from .errors import ConfigurationError
from .kernels import BACKEND
from .modem import ChannelConfig, demap_llr, modulate_qpsk, noise_variance_per_dim, transmit
from .reliability import (
    ReliabilityPath,
    analyze_path,
    compute_state_likelihoods,
    select_anchor,
    windowed_likelihood,
)
from .sim import (
    BlerPoint,
    SimConfig,
    SweepPoint,
    emit_csv,
    read_csv,
    run_campaign,
    run_point,
    run_window_sweep,
)
from .two_step import DecodeResult, TwoStepConfig, decode_anchored, decode_two_step

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BlerPoint",
    "ChannelConfig",
    "CodeSpec",
    "ConfigurationError",
    "DecodeResult",
    "ForwardRecord",
    "OPEN_START",
    "ReliabilityPath",
    "SimConfig",
    "SweepPoint",
    "StartConstraint",
    "Trellis",
    "TwoStepConfig",
    "analyze_path",
    "best_final_state",
    "branch_metric",
    "build_trellis",
    "compute_state_likelihoods",
    "decode_anchored",
    "decode_cva_fixed",
    "decode_exhaustive",
    "decode_ml",
    "decode_two_step",
    "demap_llr",
    "emit_csv",
    "encode_tailbiting",
    "forward_pass",
    "modulate_qpsk",
    "noise_variance_per_dim",
    "read_csv",
    "rotate",
    "run_campaign",
    "run_point",
    "run_window_sweep",
    "select_anchor",
    "tailbiting_state_sequence",
    "traceback",
    "transmit",
    "windowed_likelihood",
]
