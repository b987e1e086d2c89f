"""Gray QPSK mapping, AWGN / flat-Rayleigh channels, and LLR demapping.

SNR convention: snr_db is Eb/N0 over info bits, so the noise variance
accounts for the code rate.  LLR convention: lambda = log P(bit=0)/P(bit=1);
bit 0 maps to amplitude +1/sqrt(2) per dimension, so positive LLRs favor
bit 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

CHANNEL_MODELS = ("awgn", "flat_rayleigh")


@dataclass(frozen=True)
class ChannelConfig:
    """model: awgn or flat_rayleigh (independent per-symbol fades with ideal
    per-symbol CSI); snr_db: Eb/N0 in dB, +inf switches the noise off;
    rng_seed: the private noise stream; code_rate: info bits per coded bit.
    """

    model: str = "awgn"
    snr_db: float = 0.0
    rng_seed: int = 0
    code_rate: float = 1.0

    def __post_init__(self) -> None:
        if self.model not in CHANNEL_MODELS:
            raise ConfigurationError(
                f"unknown channel model {self.model!r}; choose from {CHANNEL_MODELS}"
            )
        if math.isnan(self.snr_db) or self.snr_db == -math.inf:
            raise ConfigurationError(f"snr_db must be a real value, got {self.snr_db}")
        if not 0.0 < self.code_rate <= 1.0:
            raise ConfigurationError(f"code_rate must be in (0, 1], got {self.code_rate}")


def modulate_qpsk(coded_bits) -> np.ndarray:
    """Gray-map coded bits to unit-energy QPSK, two bits per symbol.

    The first bit of each pair drives the real dimension, the second the
    imaginary one; bit 0 -> +1/sqrt(2).  The supported codes never produce
    odd-length blocks, so an odd length is an error rather than padded.
    """
    bits = np.asarray(coded_bits)
    if bits.ndim != 1 or bits.size % 2:
        raise ValueError(f"coded block length {bits.size} is not even")
    pairs = bits.astype(np.float64).reshape(-1, 2)
    amp = math.sqrt(0.5)
    return amp * ((1.0 - 2.0 * pairs[:, 0]) + 1j * (1.0 - 2.0 * pairs[:, 1]))


def noise_variance_per_dim(snr_db: float, code_rate: float) -> float:
    """Noise variance per real dimension for unit-energy QPSK at Eb/N0 = snr_db.

    sigma^2 = 1 / (2 * rate * log2(4) * 10^(snr_db/10)); snr_db = +inf
    gives exactly 0.
    """
    ebn0 = 10.0 ** (snr_db / 10.0)
    if math.isinf(ebn0):
        return 0.0
    return 1.0 / (2.0 * code_rate * 2.0 * ebn0)


def transmit(symbols, cfg: ChannelConfig) -> tuple[np.ndarray, np.ndarray]:
    """Send symbols through the configured channel.

    Returns (received, gains).  AWGN: y = x + n with unit gains.
    flat_rayleigh: y = h*x + n with h complex Gaussian, E|h|^2 = 1,
    independent per symbol, and h returned as ideal CSI.  The same
    rng_seed reproduces the same fades and noise.
    """
    x = np.asarray(symbols, dtype=np.complex128)
    rng = np.random.default_rng(cfg.rng_seed)
    if cfg.model == "flat_rayleigh":
        gains = math.sqrt(0.5) * (
            rng.standard_normal(x.size) + 1j * rng.standard_normal(x.size)
        )
    else:
        gains = np.ones(x.size, dtype=np.complex128)
    sigma = math.sqrt(noise_variance_per_dim(cfg.snr_db, cfg.code_rate))
    noise = sigma * (rng.standard_normal(x.size) + 1j * rng.standard_normal(x.size))
    return gains * x + noise, gains


def demap_llr(received, csi, sigma2: float) -> np.ndarray:
    """Per-bit LLRs for Gray QPSK with known gains.

    Matched-filters each symbol with its gain and scales by 2/sigma2 per
    real dimension: lambda = 2 * Re(conj(h) y) / sigma2 for the first bit
    of the pair, the imaginary part for the second.  AWGN uses h = 1.
    """
    if sigma2 <= 0:
        raise ConfigurationError(f"sigma2 must be > 0, got {sigma2}")
    y = np.asarray(received, dtype=np.complex128)
    h = np.asarray(csi, dtype=np.complex128)
    z = (2.0 / sigma2) * (np.conj(h) * y)
    llrs = np.empty(2 * y.size, dtype=np.float64)
    llrs[0::2] = z.real
    llrs[1::2] = z.imag
    return llrs
