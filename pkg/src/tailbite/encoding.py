"""Tailbiting encoding and the circular rotations used by the decoders.

The encoder register is preset with the last ``M`` info bits, so the encoder
starts and ends in the same state: initial state = ``(u[L-1], ..., u[L-M])``
with ``u[L-1]`` in the MSB.  Under this preset the code is cyclic at the
block level: rotating the info block by ``j`` rotates the codeword by
``n_out * j``.
"""

from __future__ import annotations

import numpy as np

from .codes import Trellis


def tailbiting_start_state(info_bits: np.ndarray, memory: int) -> int:
    """Encoder preset state for ``info_bits``: the last ``memory`` bits."""
    bits = np.asarray(info_bits)
    state = 0
    for j in range(1, memory + 1):
        state |= int(bits[len(bits) - j]) << (memory - j)
    return state


def encode_tailbiting(trellis: Trellis, info_bits) -> np.ndarray:
    """Encode ``info_bits`` tailbiting; returns ``n_out * L`` coded bits.

    The registered history at stage ``i`` is circular under the tailbiting
    preset -- cell ``j`` holds ``u[(i - j) mod L]`` -- so the whole codeword
    is one binary matrix product of the stacked shifted inputs with the
    generator taps.
    """
    bits = np.asarray(info_bits, dtype=np.uint8)
    spec = trellis.spec
    m = spec.memory
    if bits.ndim != 1 or len(bits) < m:
        raise ValueError(f"need at least memory={m} info bits, got shape {bits.shape}")
    history = np.stack([np.roll(bits, j) for j in range(spec.constraint_length)], axis=1)
    taps = np.empty((spec.constraint_length, spec.n_out), dtype=np.uint8)
    for c, gen in enumerate(spec.generators):
        for j in range(spec.constraint_length):
            taps[j, c] = (gen >> (spec.constraint_length - 1 - j)) & 1
    coded = (history.astype(np.int64) @ taps.astype(np.int64)) & 1
    return coded.reshape(-1).astype(np.uint8)


def tailbiting_state_sequence(info_bits, memory: int) -> np.ndarray:
    """Encoder state at each trellis boundary 0..L (length L+1).

    Entry ``i`` is the state between info bits ``i-1`` and ``i``; entry L
    equals entry 0 (tailbiting closure).
    """
    bits = np.asarray(info_bits)
    length = len(bits)
    states = np.empty(length + 1, dtype=np.int64)
    for i in range(length + 1):
        s = 0
        for j in range(1, memory + 1):
            s |= int(bits[(i - j) % length]) << (memory - j)
        states[i] = s
    return states


def rotate(seq, k: int) -> np.ndarray:
    """Left-rotate ``seq`` by ``k`` positions (``k`` taken modulo the length).

    ``rotate(rotate(x, k), len(x) - k) == x``.
    """
    arr = np.asarray(seq)
    if arr.size == 0:
        return arr.copy()
    return np.roll(arr, -(k % arr.size))
