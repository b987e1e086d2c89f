"""Two-step decoder: anchored second pass and end-to-end behaviour."""

import numpy as np
import pytest

from tailbite import CodeSpec, build_trellis, decode_two_step, encode_tailbiting
from tailbite.encoding import rotate, tailbiting_start_state, tailbiting_state_sequence
from tailbite.engine import stage_costs
from tailbite.errors import ConfigurationError
from tailbite.two_step import TwoStepConfig, decode_anchored

from conftest import noisy_block


def _noiseless_llrs(coded):
    # log P(0)/P(1): strongly negative for a transmitted 1
    return np.where(coded == 1, -8.0, 8.0).astype(np.float64)


def test_config_validation():
    TwoStepConfig(window=1)
    with pytest.raises(ConfigurationError):
        TwoStepConfig(window=0)
    with pytest.raises(ConfigurationError):
        TwoStepConfig(window=4, n_copies=0)


def test_llr_length_must_divide(trellis_75):
    with pytest.raises(ValueError):
        decode_two_step(trellis_75, np.ones(7), TwoStepConfig(window=2))
    with pytest.raises(ValueError):
        decode_anchored(trellis_75, np.ones(7), 0, 0)


def test_anchored_position_range(trellis_75):
    llrs = np.ones(16)
    with pytest.raises(ValueError):
        decode_anchored(trellis_75, llrs, 8, 0)
    with pytest.raises(ValueError):
        decode_anchored(trellis_75, llrs, -1, 0)


def test_noiseless_recovery(trellis_75, trellis_171_133):
    for trellis, L in ((trellis_75, 12), (trellis_171_133, 30)):
        rng = np.random.default_rng(7)
        for _ in range(20):
            info = rng.integers(0, 2, size=L).astype(np.uint8)
            llrs = _noiseless_llrs(encode_tailbiting(trellis, info))
            result = decode_two_step(trellis, llrs, TwoStepConfig(window=4))
            assert np.array_equal(result.info_bits, info)
            assert result.is_tailbiting


def test_anchored_recovers_from_any_position(trellis_75):
    # with clean LLRs the anchored decode must recover the block no matter
    # which on-path (position, state) pair is forced
    rng = np.random.default_rng(11)
    info = rng.integers(0, 2, size=10).astype(np.uint8)
    llrs = _noiseless_llrs(encode_tailbiting(trellis_75, info))
    states = tailbiting_state_sequence(info, trellis_75.spec.memory)
    for pos in range(10):
        result = decode_anchored(trellis_75, llrs, pos, int(states[pos]))
        assert np.array_equal(result.info_bits, info), f"position {pos}"
        assert result.anchor == (pos, int(states[pos]))


def test_update_count_is_copies_plus_one_blocks(trellis_171_133):
    info, llrs = noisy_block(trellis_171_133, 24, 2.0, seed=88)
    for n_copies in (1, 2, 3):
        result = decode_two_step(trellis_171_133, llrs, TwoStepConfig(window=6, n_copies=n_copies))
        assert result.update_count == (n_copies + 1) * 24


def test_output_is_always_tailbiting(trellis_171_133):
    # even at miserable SNR the emitted word must close on itself
    for seed in range(40):
        info, llrs = noisy_block(trellis_171_133, 20, -2.0, seed=900 + seed)
        result = decode_two_step(trellis_171_133, llrs, TwoStepConfig(window=5))
        assert result.is_tailbiting
        m = trellis_171_133.spec.memory
        states = tailbiting_state_sequence(result.info_bits, m)
        pos, state = result.anchor
        assert states[pos] == state
        assert tailbiting_start_state(result.info_bits, m) == states[0]


def test_path_metric_matches_reencoded_cost(trellis_75):
    for seed in range(10):
        info, llrs = noisy_block(trellis_75, 12, 1.0, seed=70 + seed)
        result = decode_two_step(trellis_75, llrs, TwoStepConfig(window=3))
        # metric of the winning path equals the cost of its codeword against
        # the *rotated* LLRs used in step 2
        pos, _ = result.anchor
        coded = encode_tailbiting(trellis_75, result.info_bits)
        rot_llrs = rotate(llrs, trellis_75.n_out * pos)
        rot_coded = rotate(coded, trellis_75.n_out * pos)
        cost = float(np.sum(rot_llrs[rot_coded == 1]))
        assert result.path_metric == pytest.approx(cost, abs=1e-9)


def test_rotation_consistency(trellis_75):
    # decoding a rotated block gives the rotated decode (identical channel
    # values, shifted boundary); holds exactly because every tie rule is
    # position-independent and the anchor is searched over the same window
    info, llrs = noisy_block(trellis_75, 16, 3.0, seed=55)
    base = decode_two_step(trellis_75, llrs, TwoStepConfig(window=4))
    for k in (1, 5, 9):
        shifted = decode_two_step(
            trellis_75, rotate(llrs, trellis_75.n_out * k), TwoStepConfig(window=4)
        )
        assert np.array_equal(shifted.info_bits, rotate(base.info_bits, k))


def test_anchor_replica_bounds(trellis_75):
    info, llrs = noisy_block(trellis_75, 8, 0.0, seed=21)
    result = decode_two_step(trellis_75, llrs, TwoStepConfig(window=2, n_copies=3))
    assert 0 <= result.anchor_replica < 3
    assert 0 <= result.anchor[0] < 8
    one = decode_two_step(trellis_75, llrs, TwoStepConfig(window=2))
    assert one.anchor_replica == 0
