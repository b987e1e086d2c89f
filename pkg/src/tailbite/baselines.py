"""Reference decoders: exact ML over all boundary states, brute-force
codeword enumeration (the ground-truth oracle), and the fixed-length
circular decoder.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .codes import Trellis
from .encoding import encode_tailbiting
from .engine import (
    OPEN_START,
    _traceback_arrays,
    best_final_state,
    forward_pass,
    saturation_metric,
    stage_costs,
    traceback,
)
from .errors import ConfigurationError
from . import kernels
from .two_step import DecodeResult

MAX_ENUM_INFO_BITS = 20
_SCORE_CHUNK = 1 << 16


def decode_ml(trellis: Trellis, llrs) -> DecodeResult:
    """Exact tailbiting decode: one constrained Viterbi pass per possible
    boundary state, keeping the minimum final metric (lowest state on ties).

    Costs 2**M * L stage updates.
    """
    costs = stage_costs(trellis, llrs)
    if costs.shape[0] < trellis.memory:
        raise ValueError(
            f"block of {costs.shape[0]} info bits shorter than memory {trellis.memory}"
        )
    state, metric, choice = kernels.ml_best_start(
        trellis.pred_state, trellis.pred_word, costs, saturation_metric(llrs)
    )
    path, bits = _traceback_arrays(trellis, choice, state)
    return DecodeResult(
        info_bits=bits,
        anchor=None,
        path_metric=float(metric),
        update_count=trellis.n_states * costs.shape[0],
        is_tailbiting=bool(path[0] == path[-1]),
    )


@lru_cache(maxsize=4)
def _codebook(trellis: Trellis, block_len: int) -> np.ndarray:
    # Row k holds the codeword of info block k (bits of k, MSB first).
    rows = 1 << block_len
    book = np.empty((rows, trellis.n_out * block_len), dtype=np.uint8)
    shifts = np.arange(block_len - 1, -1, -1)
    for k in range(rows):
        info = (k >> shifts) & 1
        book[k] = encode_tailbiting(trellis, info)
    return book


def decode_exhaustive(trellis: Trellis, llrs) -> DecodeResult:
    """Score every tailbiting codeword directly; the decoding oracle.

    Uses the same branch-metric sum as the trellis decoders but no trellis
    recursion.  Ties go to the lexicographically smallest info block.
    Refuses blocks beyond MAX_ENUM_INFO_BITS info bits (2**20 codewords).
    """
    arr = np.ascontiguousarray(llrs, dtype=np.float64)
    n = trellis.n_out
    if arr.ndim != 1 or arr.size == 0 or arr.size % n:
        raise ValueError(f"LLR block length {arr.size} is not a multiple of n_out={n}")
    block_len = arr.size // n
    if block_len < trellis.memory:
        raise ValueError(
            f"block of {block_len} info bits shorter than memory {trellis.memory}"
        )
    if block_len > MAX_ENUM_INFO_BITS:
        raise ValueError(
            f"refusing to enumerate 2**{block_len} codewords "
            f"(limit 2**{MAX_ENUM_INFO_BITS})"
        )
    book = _codebook(trellis, block_len)
    best_k = -1
    best_score = np.inf
    for lo in range(0, book.shape[0], _SCORE_CHUNK):
        scores = book[lo : lo + _SCORE_CHUNK] @ arr
        k = int(np.argmin(scores))
        if scores[k] < best_score:
            best_score = float(scores[k])
            best_k = lo + k
    shifts = np.arange(block_len - 1, -1, -1)
    bits = ((best_k >> shifts) & 1).astype(np.uint8)
    return DecodeResult(
        info_bits=bits,
        anchor=None,
        path_metric=best_score,
        update_count=0,  # not a trellis decoder; no stage updates to count
        is_tailbiting=True,
    )


def decode_cva_fixed(
    trellis: Trellis, llrs, n_copies: int = 2, output_replica: int | None = None
) -> DecodeResult:
    """Fixed-length circular decode over ``n_copies`` concatenated replicas.

    An open-start pass runs across the replicas, the best final state is
    traced back, and the info bits of ``output_replica`` (default: the last,
    which has the most converged history) are returned.  The decoded segment
    need not be tailbiting.  Costs n_copies * L stage updates.
    """
    if n_copies < 2:
        raise ConfigurationError(f"n_copies must be >= 2, got {n_copies}")
    arr = np.ascontiguousarray(llrs, dtype=np.float64)
    n = trellis.n_out
    if arr.ndim != 1 or arr.size == 0 or arr.size % n:
        raise ValueError(f"LLR block length {arr.size} is not a multiple of n_out={n}")
    block_len = arr.size // n
    replica = n_copies - 1 if output_replica is None else output_replica
    if not 0 <= replica < n_copies:
        raise ConfigurationError(f"output replica {replica} out of range 0..{n_copies - 1}")
    record = forward_pass(trellis, np.tile(arr, n_copies), OPEN_START)
    final = best_final_state(record)
    path, bits = traceback(record, final)
    lo = replica * block_len
    hi = lo + block_len
    return DecodeResult(
        info_bits=bits[lo:hi],
        anchor=None,
        path_metric=record.metric(final, record.n_stages),
        update_count=n_copies * block_len,
        is_tailbiting=bool(path[lo] == path[hi]),
    )
