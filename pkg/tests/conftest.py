"""Shared fixtures: small codes and seeded noisy blocks."""

import numpy as np
import pytest

from tailbite import ChannelConfig, CodeSpec, build_trellis, demap_llr
from tailbite import encode_tailbiting, modulate_qpsk, noise_variance_per_dim, transmit


@pytest.fixture(scope="session")
def trellis_75():
    return build_trellis(CodeSpec.from_octal("7,5"))


@pytest.fixture(scope="session")
def trellis_171_133():
    return build_trellis(CodeSpec.from_octal("171,133"))


def noisy_block(trellis, info_len, snr_db, seed, model="awgn"):
    """One seeded (info, llrs) pair through QPSK and the given channel."""
    rng = np.random.default_rng(seed)
    info = rng.integers(0, 2, info_len, dtype=np.uint8)
    coded = encode_tailbiting(trellis, info)
    symbols = modulate_qpsk(coded)
    rate = trellis.spec.rate
    cfg = ChannelConfig(model=model, snr_db=snr_db, rng_seed=seed + 1, code_rate=rate)
    received, gains = transmit(symbols, cfg)
    sigma2 = noise_variance_per_dim(snr_db, rate)
    llrs = demap_llr(received, gains, sigma2 if sigma2 > 0.0 else 1.0)
    return info, llrs
