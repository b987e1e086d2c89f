"""Command-line front end: BLER campaigns and the anchor window sweep.

Two subcommands:

    tailbite simulate --code 171,133 --info-len 48 --decoders tsva,ml \
        --snr 0:0.5:6 --channel awgn --window 8 --min-errors 100 \
        --seed 42 --out curves.csv

    tailbite sweep-window --code 171,133 --info-len 48 --windows 1:32 \
        --snr 2,4 --blocks 2000 --out sweep.csv

Every option may also come from --config FILE, a flat key=value file using
the long option names (dashes or underscores); values given on the command
line override the file.  Without --out the CSV goes to stdout; progress
lines go to stderr either way.
"""

from __future__ import annotations

import argparse
import math
import sys

from .codes import CodeSpec
from .errors import ConfigurationError
from .sim import (
    CSV_HEADER,
    SWEEP_CSV_HEADER,
    SimConfig,
    emit_csv,
    emit_sweep_csv,
    run_campaign,
    run_window_sweep,
)

_SIMULATE_DEFAULTS = {
    "code": "171,133",
    "info_len": "48",
    "decoders": "tsva",
    "snr": "0:0.5:6",
    "channel": "awgn",
    "window": "8",
    "copies": "1",
    "cva_copies": "2",
    "min_errors": "100",
    "max_blocks": "10000000",
    "seed": "0",
}

_SWEEP_DEFAULTS = {
    "code": "171,133",
    "info_len": "48",
    "windows": "1:16",
    "snr": "2,4",
    "channel": "awgn",
    "blocks": "2000",
    "copies": "1",
    "seed": "0",
}


def parse_float_list(text: str) -> tuple[float, ...]:
    """Parse "a,b,c", a single value, or an inclusive "start:step:stop"."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) == 2:
            start, stop = float(parts[0]), float(parts[1])
            step = 1.0
        elif len(parts) == 3:
            start, step, stop = (float(p) for p in parts)
        else:
            raise ConfigurationError(f"bad range {text!r}; use start:step:stop")
        if step <= 0:
            raise ConfigurationError(f"range step must be positive in {text!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        if count < 1:
            raise ConfigurationError(f"empty range {text!r}")
        return tuple(start + i * step for i in range(count))
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def parse_int_list(text: str) -> tuple[int, ...]:
    values = parse_float_list(text)
    out = []
    for v in values:
        if v != int(v):
            raise ConfigurationError(f"expected integers, got {v} in {text!r}")
        out.append(int(v))
    return tuple(out)


def load_config_file(path: str) -> dict[str, str]:
    """Read flat key=value lines; '#' starts a comment, blanks ignored."""
    values: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep or not key.strip():
                raise ConfigurationError(
                    f"{path}:{lineno}: expected key=value, got {raw.strip()!r}"
                )
            values[key.strip().replace("-", "_")] = val.strip()
    return values


def _merge(args: argparse.Namespace, defaults: dict[str, str]) -> dict[str, str]:
    """CLI value if given, else config-file value, else built-in default."""
    file_cfg = load_config_file(args.config) if args.config else {}
    unknown = set(file_cfg) - set(defaults)
    if unknown:
        raise ConfigurationError(
            f"unknown config keys {sorted(unknown)}; valid: {sorted(defaults)}"
        )
    merged = {}
    for key, builtin in defaults.items():
        cli = getattr(args, key)
        if cli is not None:
            merged[key] = cli
        elif key in file_cfg:
            merged[key] = file_cfg[key]
        else:
            merged[key] = builtin
    return merged


def cmd_simulate(args: argparse.Namespace) -> int:
    opt = _merge(args, _SIMULATE_DEFAULTS)
    cfg = SimConfig(
        code=CodeSpec.from_octal(opt["code"]),
        info_len=int(opt["info_len"]),
        decoders=tuple(t.strip() for t in opt["decoders"].split(",") if t.strip()),
        channel=opt["channel"],
        snr_db=parse_float_list(opt["snr"]),
        min_block_errors=int(opt["min_errors"]),
        max_blocks=int(opt["max_blocks"]),
        seed=int(opt["seed"]),
        window=int(opt["window"]),
        n_copies=int(opt["copies"]),
        cva_copies=int(opt["cva_copies"]),
        out_path=args.out,
    )
    points = run_campaign(cfg, log=lambda msg: print(msg, file=sys.stderr))
    if args.out is None:
        sys.stdout.write(CSV_HEADER + "\n")
        for point in points:
            sys.stdout.write(point.csv_row() + "\n")
    else:
        emit_csv(points, args.out)
        print(f"wrote {len(points)} points to {args.out}", file=sys.stderr)
    low = [p for p in points if p.low_confidence]
    for p in low:
        print(
            f"low confidence: {p.decoder} @ {p.snr_db:g} dB stopped at "
            f"{p.block_errors} errors / {p.blocks} blocks",
            file=sys.stderr,
        )
    return 0


def cmd_sweep_window(args: argparse.Namespace) -> int:
    opt = _merge(args, _SWEEP_DEFAULTS)
    cfg = SimConfig(
        code=CodeSpec.from_octal(opt["code"]),
        info_len=int(opt["info_len"]),
        channel=opt["channel"],
        seed=int(opt["seed"]),
        n_copies=int(opt["copies"]),
        out_path=args.out,
    )
    windows = parse_int_list(opt["windows"])
    snrs = parse_float_list(opt["snr"])
    points = run_window_sweep(cfg, windows, snrs, n_blocks=int(opt["blocks"]))
    if args.out is None:
        sys.stdout.write(SWEEP_CSV_HEADER + "\n")
        for p in points:
            sys.stdout.write(
                f"{p.window},{p.snr_db},{p.blocks},{p.errors},{p.error_rate}\n"
            )
    else:
        emit_sweep_csv(points, args.out)
        print(f"wrote {len(points)} cells to {args.out}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailbite",
        description="Tailbiting convolutional decoding experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run BLER/BER curves to CSV")
    sim.add_argument("--code", help="octal generators, e.g. 171,133")
    sim.add_argument("--info-len", dest="info_len", help="info bits per block")
    sim.add_argument("--decoders", help="comma list: tsva,ml,cva,exhaustive")
    sim.add_argument("--snr", help="Eb/N0 grid in dB: list or start:step:stop")
    sim.add_argument("--channel", help="awgn or flat_rayleigh")
    sim.add_argument("--window", help="moving-average window for tsva")
    sim.add_argument("--copies", help="trellis replicas for tsva step 1")
    sim.add_argument("--cva-copies", dest="cva_copies", help="replicas for cva baseline")
    sim.add_argument("--min-errors", dest="min_errors", help="block errors per point")
    sim.add_argument("--max-blocks", dest="max_blocks", help="cap on blocks per point")
    sim.add_argument("--seed", help="campaign seed")
    sim.add_argument("--config", help="key=value defaults file")
    sim.add_argument("--out", help="CSV path (default: stdout)")
    sim.set_defaults(func=cmd_simulate)

    sweep = sub.add_parser(
        "sweep-window", help="anchor-decision error rate vs window size"
    )
    sweep.add_argument("--code", help="octal generators, e.g. 171,133")
    sweep.add_argument("--info-len", dest="info_len", help="info bits per block")
    sweep.add_argument("--windows", help="window sizes: list or start[:step]:stop")
    sweep.add_argument("--snr", help="Eb/N0 grid in dB")
    sweep.add_argument("--channel", help="awgn or flat_rayleigh")
    sweep.add_argument("--blocks", help="blocks per cell")
    sweep.add_argument("--copies", help="trellis replicas for step 1")
    sweep.add_argument("--seed", help="campaign seed")
    sweep.add_argument("--config", help="key=value defaults file")
    sweep.add_argument("--out", help="CSV path (default: stdout)")
    sweep.set_defaults(func=cmd_sweep_window)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigurationError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
