"""Seeded Monte Carlo BLER/BER campaigns and the anchor-error window sweep.

Reproducibility: every trial draws from streams derived only from the
campaign seed and the trial index (base = seed XOR trial; info bits from
stream 2*base, channel from 2*base+1).  Results are therefore identical
across runs and independent of any parallel scheduling, and different
decoders at the same point see exactly the same blocks and noise, making
decoder comparisons paired.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .baselines import decode_cva_fixed, decode_exhaustive, decode_ml
from .codes import CodeSpec, Trellis, build_trellis
from .encoding import encode_tailbiting, tailbiting_state_sequence
from .engine import OPEN_START, best_final_state, forward_pass, traceback
from .errors import ConfigurationError
from .modem import ChannelConfig, demap_llr, modulate_qpsk, noise_variance_per_dim, transmit
from .reliability import compute_state_likelihoods, select_anchor
from .two_step import TwoStepConfig, decode_two_step

DECODER_NAMES = ("tsva", "ml", "cva", "exhaustive")

CSV_HEADER = "snr_db,decoder,blocks,block_errors,bler,bit_errors,ber,updates_per_block"
SWEEP_CSV_HEADER = "window,snr_db,blocks,errors,error_rate"


@dataclass(frozen=True)
class SimConfig:
    """One campaign: a code, the decoders to run, and the channel grid.

    min_block_errors is the per-point stopping target; max_blocks caps the
    loop when the error rate is too low to reach it.  window / n_copies
    configure the two-step decoder; cva_copies the fixed circular baseline.
    """

    code: CodeSpec
    info_len: int
    decoders: tuple[str, ...] = ("tsva",)
    channel: str = "awgn"
    snr_db: tuple[float, ...] = (0.0,)
    min_block_errors: int = 100
    max_blocks: int = 10_000_000
    seed: int = 0
    window: int = 8
    n_copies: int = 1
    cva_copies: int = 2
    out_path: str | None = None

    def __post_init__(self) -> None:
        if self.info_len < self.code.memory:
            raise ConfigurationError(
                f"info_len {self.info_len} below code memory {self.code.memory}"
            )
        for name in self.decoders:
            if name not in DECODER_NAMES:
                raise ConfigurationError(
                    f"unknown decoder {name!r}; choose from {DECODER_NAMES}"
                )
        if self.min_block_errors < 1:
            raise ConfigurationError("min_block_errors must be >= 1")
        if self.max_blocks < self.min_block_errors:
            raise ConfigurationError("max_blocks must be >= min_block_errors")
        if self.seed < 0:
            raise ConfigurationError("seed must be non-negative")
        if self.window < 1 or self.n_copies < 1:
            raise ConfigurationError("window and n_copies must be >= 1")
        if self.cva_copies < 2:
            raise ConfigurationError("cva_copies must be >= 2")


@dataclass(frozen=True)
class BlerPoint:
    """One (SNR, decoder) measurement.

    low_confidence marks points that hit max_blocks before reaching
    min_block_errors.  Only the first eight fields go to CSV.
    """

    snr_db: float
    decoder: str
    blocks: int
    block_errors: int
    bler: float
    bit_errors: int
    ber: float
    updates_per_block: int
    wall_clock_s: float = 0.0
    low_confidence: bool = False

    def csv_row(self) -> str:
        return ",".join(
            str(v)
            for v in (
                self.snr_db,
                self.decoder,
                self.blocks,
                self.block_errors,
                self.bler,
                self.bit_errors,
                self.ber,
                self.updates_per_block,
            )
        )


@dataclass(frozen=True)
class SweepPoint:
    """Anchor-decision error rate for one (window, SNR) cell."""

    window: int
    snr_db: float
    blocks: int
    errors: int
    error_rate: float


def _make_decoder(trellis: Trellis, cfg: SimConfig, name: str):
    if name == "tsva":
        two = TwoStepConfig(window=cfg.window, n_copies=cfg.n_copies)
        return lambda llrs: decode_two_step(trellis, llrs, two)
    if name == "ml":
        return lambda llrs: decode_ml(trellis, llrs)
    if name == "cva":
        return lambda llrs: decode_cva_fixed(trellis, llrs, cfg.cva_copies)
    if name == "exhaustive":
        return lambda llrs: decode_exhaustive(trellis, llrs)
    raise ConfigurationError(f"unknown decoder {name!r}")


def _trial_block(cfg: SimConfig, trellis: Trellis, snr_db: float, trial: int):
    """Generate trial ``trial``: (info bits, soft LLR block)."""
    base = cfg.seed ^ trial
    info_rng = np.random.default_rng(2 * base)
    info = info_rng.integers(0, 2, cfg.info_len, dtype=np.uint8)
    coded = encode_tailbiting(trellis, info)
    symbols = modulate_qpsk(coded)
    chan = ChannelConfig(
        model=cfg.channel, snr_db=snr_db, rng_seed=2 * base + 1, code_rate=cfg.code.rate
    )
    received, gains = transmit(symbols, chan)
    sigma2 = noise_variance_per_dim(snr_db, cfg.code.rate)
    # Noiseless switch: LLR scale is irrelevant to every decoder's decisions.
    llrs = demap_llr(received, gains, sigma2 if sigma2 > 0.0 else 1.0)
    return info, llrs


def run_point(cfg: SimConfig, snr_db: float, decoder: str) -> BlerPoint:
    """Measure one decoder at one SNR until min_block_errors or max_blocks."""
    trellis = build_trellis(cfg.code)
    decode = _make_decoder(trellis, cfg, decoder)
    start = time.perf_counter()
    blocks = 0
    block_errors = 0
    bit_errors = 0
    updates = 0
    while block_errors < cfg.min_block_errors and blocks < cfg.max_blocks:
        info, llrs = _trial_block(cfg, trellis, snr_db, blocks)
        result = decode(llrs)
        wrong = int(np.count_nonzero(result.info_bits != info))
        blocks += 1
        bit_errors += wrong
        block_errors += wrong > 0
        updates = result.update_count
    return BlerPoint(
        snr_db=snr_db,
        decoder=decoder,
        blocks=blocks,
        block_errors=block_errors,
        bler=block_errors / blocks,
        bit_errors=bit_errors,
        ber=bit_errors / (blocks * cfg.info_len),
        updates_per_block=updates,
        wall_clock_s=time.perf_counter() - start,
        low_confidence=block_errors < cfg.min_block_errors,
    )


def run_campaign(cfg: SimConfig, log=None) -> list[BlerPoint]:
    """run_point over the full snr_db x decoders grid."""
    points = []
    for snr in cfg.snr_db:
        for name in cfg.decoders:
            point = run_point(cfg, snr, name)
            points.append(point)
            if log is not None:
                log(
                    f"{name:>10s} @ {snr:g} dB: bler={point.bler:.3e} "
                    f"({point.block_errors}/{point.blocks} blocks, "
                    f"{point.wall_clock_s:.1f}s)"
                )
    return points


def run_window_sweep(
    cfg: SimConfig, windows, snr_dbs, n_blocks: int = 2000
) -> list[SweepPoint]:
    """Anchor-decision error rate per (window, SNR) over n_blocks blocks.

    An error is a selected (position, state) whose state differs from the
    transmitted path's state at that block position.  One step-1 pass is
    shared by all windows on each block, so wide sweeps stay cheap.
    """
    windows = [int(w) for w in windows]
    if not windows or min(windows) < 1:
        raise ConfigurationError("windows must be positive integers")
    if n_blocks < 1:
        raise ConfigurationError("n_blocks must be >= 1")
    trellis = build_trellis(cfg.code)
    block_len = cfg.info_len
    points = []
    for snr in snr_dbs:
        errors = dict.fromkeys(windows, 0)
        for trial in range(n_blocks):
            base = cfg.seed ^ trial
            info = np.random.default_rng(2 * base).integers(0, 2, block_len, dtype=np.uint8)
            tx_states = tailbiting_state_sequence(info, trellis.memory)
            coded = encode_tailbiting(trellis, info)
            symbols = modulate_qpsk(coded)
            chan = ChannelConfig(
                model=cfg.channel, snr_db=snr, rng_seed=2 * base + 1, code_rate=cfg.code.rate
            )
            received, gains = transmit(symbols, chan)
            sigma2 = noise_variance_per_dim(snr, cfg.code.rate)
            llrs = demap_llr(received, gains, sigma2 if sigma2 > 0.0 else 1.0)
            tiled = np.tile(llrs, cfg.n_copies) if cfg.n_copies > 1 else llrs
            record = forward_pass(trellis, tiled, OPEN_START, record_deltas=True)
            path, _ = traceback(record, best_final_state(record))
            lik = compute_state_likelihoods(record, path)
            for w in windows:
                pos, state = select_anchor(lik, path, w)
                if state != tx_states[pos % block_len]:
                    errors[w] += 1
        points.extend(
            SweepPoint(
                window=w,
                snr_db=snr,
                blocks=n_blocks,
                errors=errors[w],
                error_rate=errors[w] / n_blocks,
            )
            for w in windows
        )
    return points


def emit_csv(points, path) -> None:
    """Write BLER points (header + one row each); plain decimal formatting."""
    with open(path, "w", encoding="ascii") as handle:
        handle.write(CSV_HEADER + "\n")
        for point in points:
            handle.write(point.csv_row() + "\n")


def read_csv(path) -> list[BlerPoint]:
    """Parse a file written by emit_csv back into BlerPoints.

    Wall clock and the confidence flag are not stored in the CSV and come
    back as their defaults.
    """
    points = []
    with open(path, "r", encoding="ascii") as handle:
        header = handle.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        for line in handle:
            line = line.strip()
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != 8:
                raise ValueError(f"malformed CSV row {line!r}")
            points.append(
                BlerPoint(
                    snr_db=float(fields[0]),
                    decoder=fields[1],
                    blocks=int(fields[2]),
                    block_errors=int(fields[3]),
                    bler=float(fields[4]),
                    bit_errors=int(fields[5]),
                    ber=float(fields[6]),
                    updates_per_block=int(fields[7]),
                )
            )
    return points


def emit_sweep_csv(points, path) -> None:
    """Write window-sweep cells as CSV."""
    with open(path, "w", encoding="ascii") as handle:
        handle.write(SWEEP_CSV_HEADER + "\n")
        for point in points:
            handle.write(
                f"{point.window},{point.snr_db},{point.blocks},"
                f"{point.errors},{point.error_rate}\n"
            )
