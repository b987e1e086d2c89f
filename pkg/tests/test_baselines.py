"""Exact ML decoder, exhaustive enumeration oracle, and fixed circular decoder."""

import numpy as np
import pytest

from tailbite import CodeSpec, build_trellis, encode_tailbiting
from tailbite.baselines import (
    MAX_ENUM_INFO_BITS,
    decode_cva_fixed,
    decode_exhaustive,
    decode_ml,
)
from tailbite.errors import ConfigurationError

from conftest import noisy_block


def _noiseless_llrs(coded):
    return np.where(coded == 1, -8.0, 8.0).astype(np.float64)


def test_ml_matches_exhaustive(trellis_75):
    # the trellis scan and raw codebook enumeration are the same minimization
    for seed in range(200):
        snr = (0.0, 3.0)[seed % 2]
        info, llrs = noisy_block(trellis_75, 8, snr, seed=2000 + seed)
        ml = decode_ml(trellis_75, llrs)
        ex = decode_exhaustive(trellis_75, llrs)
        assert np.array_equal(ml.info_bits, ex.info_bits), f"seed {seed}"
        assert ml.path_metric == pytest.approx(ex.path_metric, abs=1e-9)


def test_ml_noiseless_and_tailbiting(trellis_171_133):
    rng = np.random.default_rng(3)
    for _ in range(10):
        info = rng.integers(0, 2, size=16).astype(np.uint8)
        result = decode_ml(trellis_171_133, _noiseless_llrs(encode_tailbiting(trellis_171_133, info)))
        assert np.array_equal(result.info_bits, info)
        assert result.is_tailbiting
        assert result.anchor is None


def test_ml_update_count(trellis_75, trellis_171_133):
    _, llrs = noisy_block(trellis_75, 10, 0.0, seed=1)
    assert decode_ml(trellis_75, llrs).update_count == 4 * 10
    _, llrs = noisy_block(trellis_171_133, 12, 0.0, seed=1)
    assert decode_ml(trellis_171_133, llrs).update_count == 64 * 12


def test_ml_rejects_short_block(trellis_171_133):
    with pytest.raises(ValueError):
        decode_ml(trellis_171_133, np.ones(2 * 4))  # 4 < memory 6


def test_exhaustive_guard_rails(trellis_75):
    with pytest.raises(ValueError):
        decode_exhaustive(trellis_75, np.ones(2 * (MAX_ENUM_INFO_BITS + 1)))
    with pytest.raises(ValueError):
        decode_exhaustive(trellis_75, np.ones(5))  # not a multiple of n_out
    with pytest.raises(ValueError):
        decode_exhaustive(trellis_75, np.ones(2))  # 1 < memory 2


def test_exhaustive_prefers_smallest_info_block_on_tie(trellis_75):
    # all-zero LLRs score every codeword identically; the all-zero info
    # block (k = 0) must win
    result = decode_exhaustive(trellis_75, np.zeros(16))
    assert not result.info_bits.any()
    assert result.path_metric == 0.0


def test_cva_validation(trellis_75):
    llrs = np.ones(16)
    with pytest.raises(ConfigurationError):
        decode_cva_fixed(trellis_75, llrs, n_copies=1)
    with pytest.raises(ConfigurationError):
        decode_cva_fixed(trellis_75, llrs, n_copies=2, output_replica=2)
    with pytest.raises(ValueError):
        decode_cva_fixed(trellis_75, np.ones(7), n_copies=2)


def test_cva_noiseless_recovery(trellis_75):
    rng = np.random.default_rng(23)
    for _ in range(10):
        info = rng.integers(0, 2, size=12).astype(np.uint8)
        llrs = _noiseless_llrs(encode_tailbiting(trellis_75, info))
        for n_copies in (2, 3):
            result = decode_cva_fixed(trellis_75, llrs, n_copies=n_copies)
            assert np.array_equal(result.info_bits, info)
            assert result.update_count == n_copies * 12
            assert result.is_tailbiting


def test_cva_output_replica_selects_segment(trellis_75):
    info, llrs = noisy_block(trellis_75, 10, 8.0, seed=41)
    last = decode_cva_fixed(trellis_75, llrs, n_copies=3)
    explicit = decode_cva_fixed(trellis_75, llrs, n_copies=3, output_replica=2)
    assert np.array_equal(last.info_bits, explicit.info_bits)
    # at high SNR every replica converges to the transmitted block
    first = decode_cva_fixed(trellis_75, llrs, n_copies=3, output_replica=0)
    assert np.array_equal(first.info_bits, last.info_bits)


def test_cva_may_emit_non_tailbiting_output(trellis_171_133):
    # at very low SNR the open traceback sometimes fails to close the loop;
    # the flag must report it honestly
    flags = []
    for seed in range(60):
        _, llrs = noisy_block(trellis_171_133, 16, -3.0, seed=3000 + seed)
        flags.append(decode_cva_fixed(trellis_171_133, llrs, n_copies=2).is_tailbiting)
    assert not all(flags)
