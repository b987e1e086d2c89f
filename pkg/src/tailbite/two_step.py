"""The two-step decoder for tailbiting blocks.

Step 1 runs an open-start forward pass with merge-gap recording (optionally
over several concatenated copies of the block for very short blocks), traces
back the minimum-metric survivor, and picks the most reliable (position,
state) pair on it.  Step 2 rotates the block so that position becomes the
trellis boundary and runs a conventional Viterbi decode forced to start and
end in the chosen state, then rotates the decoded bits back.

The output is always a tailbiting codeword and the work is fixed at
(n_copies + 1) * L stage updates regardless of SNR.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .codes import Trellis
from .encoding import rotate
from .engine import OPEN_START, StartConstraint, best_final_state, forward_pass, traceback
from .errors import ConfigurationError
from .reliability import compute_state_likelihoods, select_anchor


@dataclass(frozen=True)
class TwoStepConfig:
    """window: moving-average size for the anchor search (tune per code with
    the sweep harness); n_copies: step-1 concatenation count for short
    blocks."""

    window: int
    n_copies: int = 1

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ConfigurationError(f"window must be >= 1, got {self.window}")
        if self.n_copies < 1:
            raise ConfigurationError(f"n_copies must be >= 1, got {self.n_copies}")


@dataclass(eq=False)
class DecodeResult:
    """Decoded info bits plus decoder bookkeeping.

    anchor: (block position, state) forced in step 2; None for decoders
    without an anchor.  update_count: trellis stage updates spent.
    anchor_replica: which step-1 replica held the anchor (0 unless
    n_copies > 1).  is_tailbiting: decoded path starts and ends in the same
    state.
    """

    info_bits: np.ndarray
    anchor: tuple[int, int] | None
    path_metric: float
    update_count: int
    is_tailbiting: bool
    anchor_replica: int = 0


def decode_anchored(trellis: Trellis, llrs, position: int, state: int) -> DecodeResult:
    """Constrained Viterbi decode forcing ``state`` at block position ``position``.

    The block is rotated so ``position`` becomes the trellis boundary, the
    pass starts at ``state``, and the traceback begins at ``state`` no matter
    which final state has the minimum metric.
    """
    arr = np.ascontiguousarray(llrs, dtype=np.float64)
    n = trellis.n_out
    if arr.ndim != 1 or arr.size == 0 or arr.size % n:
        raise ValueError(f"LLR block length {arr.size} is not a multiple of n_out={n}")
    block_len = arr.size // n
    if not 0 <= position < block_len:
        raise ValueError(f"anchor position {position} out of range 0..{block_len - 1}")
    rotated = rotate(arr, n * position)
    record = forward_pass(trellis, rotated, StartConstraint(state))
    path, bits = traceback(record, state)
    info = rotate(bits, (block_len - position) % block_len)
    return DecodeResult(
        info_bits=info,
        anchor=(position, state),
        path_metric=record.metric(state, record.n_stages),
        update_count=record.update_count,
        is_tailbiting=bool(path[0] == path[-1]),
    )


def decode_two_step(trellis: Trellis, llrs, config: TwoStepConfig) -> DecodeResult:
    """Full two-step decode of one tailbiting LLR block."""
    arr = np.ascontiguousarray(llrs, dtype=np.float64)
    n = trellis.n_out
    if arr.ndim != 1 or arr.size == 0 or arr.size % n:
        raise ValueError(f"LLR block length {arr.size} is not a multiple of n_out={n}")
    block_len = arr.size // n

    tiled = np.tile(arr, config.n_copies) if config.n_copies > 1 else arr
    record = forward_pass(trellis, tiled, OPEN_START, record_deltas=True)
    path, _ = traceback(record, best_final_state(record))
    lik = compute_state_likelihoods(record, path)
    raw_pos, state = select_anchor(lik, path, config.window)

    second = decode_anchored(trellis, arr, raw_pos % block_len, state)
    return DecodeResult(
        info_bits=second.info_bits,
        anchor=second.anchor,
        path_metric=second.path_metric,
        update_count=record.update_count + second.update_count,
        is_tailbiting=second.is_tailbiting,
        anchor_replica=raw_pos // block_len,
    )
