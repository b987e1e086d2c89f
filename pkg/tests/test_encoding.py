"""Tailbiting encoder: closure, circular shift structure, known vectors."""

import numpy as np
import pytest

from tailbite import CodeSpec, build_trellis, encode_tailbiting, rotate
from tailbite.encoding import tailbiting_start_state, tailbiting_state_sequence


def test_impulse_response_7_5(trellis_75):
    # Single one followed by zeros: preset state is 00, so the output is the
    # plain impulse response 11 10 11 followed by the all-zero stage.
    info = np.array([1, 0, 0, 0], dtype=np.uint8)
    coded = encode_tailbiting(trellis_75, info)
    assert list(coded) == [1, 1, 1, 0, 1, 1, 0, 0]


def test_start_state_uses_last_memory_bits():
    assert tailbiting_start_state(np.array([1, 0, 0, 0]), 2) == 0
    # newest bit (u[L-1]) lands in the MSB
    assert tailbiting_start_state(np.array([0, 0, 0, 1]), 2) == 0b10
    assert tailbiting_start_state(np.array([0, 0, 1, 0]), 2) == 0b01
    assert tailbiting_start_state(np.array([1, 1, 0, 1, 1, 1]), 6) == 0b111011


def test_encoder_path_is_closed(trellis_171_133):
    rng = np.random.default_rng(11)
    for _ in range(50):
        info = rng.integers(0, 2, 48, dtype=np.uint8)
        states = tailbiting_state_sequence(info, trellis_171_133.memory)
        assert states[0] == states[-1]
        assert len(states) == 49


def test_state_sequence_matches_trellis_walk(trellis_171_133):
    t = trellis_171_133
    rng = np.random.default_rng(12)
    info = rng.integers(0, 2, 30, dtype=np.uint8)
    states = tailbiting_state_sequence(info, t.memory)
    s = int(states[0])
    for i, b in enumerate(info):
        s = int(t.next_state[s, b])
        assert s == states[i + 1]


def test_encoding_is_block_cyclic(trellis_171_133):
    # Rotating the info block rotates the codeword by n_out positions per bit.
    t = trellis_171_133
    rng = np.random.default_rng(13)
    for _ in range(25):
        info = rng.integers(0, 2, 40, dtype=np.uint8)
        coded = encode_tailbiting(t, info)
        k = int(rng.integers(0, 40))
        assert np.array_equal(
            encode_tailbiting(t, rotate(info, k)), rotate(coded, t.n_out * k)
        )


def test_codeword_length_and_dtype(trellis_75):
    coded = encode_tailbiting(trellis_75, np.ones(9, dtype=np.uint8))
    assert coded.shape == (18,)
    assert coded.dtype == np.uint8


def test_too_short_block_rejected(trellis_171_133):
    with pytest.raises(ValueError):
        encode_tailbiting(trellis_171_133, np.array([1, 0, 1], dtype=np.uint8))


def test_rotate_round_trip():
    x = np.arange(7)
    assert np.array_equal(rotate(x, 3), np.array([3, 4, 5, 6, 0, 1, 2]))
    assert np.array_equal(rotate(rotate(x, 3), 4), x)
    assert np.array_equal(rotate(x, 7), x)
    assert np.array_equal(rotate(x, 10), rotate(x, 3))
    assert rotate(np.array([]), 5).size == 0


def test_all_zero_and_all_one_blocks(trellis_75):
    zeros = np.zeros(8, dtype=np.uint8)
    assert not encode_tailbiting(trellis_75, zeros).any()
    ones = np.ones(8, dtype=np.uint8)
    # state stays at 11; register 111 gives outputs g7=1, g5=0 each stage
    expect = np.tile([1, 0], 8).astype(np.uint8)
    assert np.array_equal(encode_tailbiting(trellis_75, ones), expect)
