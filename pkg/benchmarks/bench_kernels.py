"""Time the hot kernels on every importable backend.

Runs the three kernels (open forward pass with merge gaps, all-starts ML
scan, path likelihoods) and the three block decoders on identical seeded
inputs for the compiled and pure-python backends, printing per-call times
and the speedup.  Results are medians over --repeats batches.

    python benchmarks/bench_kernels.py --code 171,133 --info-len 48
"""

import argparse
import statistics
import time

import numpy as np

from tailbite import CodeSpec, build_trellis
from tailbite.baselines import decode_cva_fixed, decode_ml
from tailbite.engine import OPEN_START, forward_pass, saturation_metric, stage_costs, traceback
from tailbite.kernels import BACKEND, available_backends
from tailbite.modem import ChannelConfig, demap_llr, modulate_qpsk, noise_variance_per_dim, transmit
from tailbite.encoding import encode_tailbiting
from tailbite.two_step import TwoStepConfig, decode_two_step


def make_blocks(trellis, info_len, snr_db, n_blocks, seed):
    blocks = []
    for trial in range(n_blocks):
        rng = np.random.default_rng(2 * (seed ^ trial))
        info = rng.integers(0, 2, info_len, dtype=np.uint8)
        symbols = modulate_qpsk(encode_tailbiting(trellis, info))
        chan = ChannelConfig(
            model="awgn", snr_db=snr_db, rng_seed=2 * (seed ^ trial) + 1,
            code_rate=trellis.spec.rate,
        )
        received, gains = transmit(symbols, chan)
        blocks.append(demap_llr(received, gains, noise_variance_per_dim(snr_db, trellis.spec.rate)))
    return blocks


def timed(fn, blocks, repeats):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        for llrs in blocks:
            fn(llrs)
        times.append((time.perf_counter() - start) / len(blocks))
    return statistics.median(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--code", default="171,133", help="octal generators")
    parser.add_argument("--info-len", type=int, default=48, dest="info_len")
    parser.add_argument("--snr", type=float, default=2.0, help="Eb/N0 in dB")
    parser.add_argument("--blocks", type=int, default=200, help="blocks per batch")
    parser.add_argument("--repeats", type=int, default=5, help="batches per median")
    parser.add_argument("--window", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    spec = CodeSpec.from_octal(args.code)
    trellis = build_trellis(spec)
    blocks = make_blocks(trellis, args.info_len, args.snr, args.blocks, args.seed)
    backends = available_backends()
    print(f"code ({spec.n_out}*{args.info_len},{args.info_len}) gens {args.code}, "
          f"{trellis.n_states} states, {args.snr:g} dB, {args.blocks} blocks x {args.repeats}")
    print(f"active backend: {BACKEND}; available: {', '.join(backends)}")

    two = TwoStepConfig(window=args.window)

    def kernel_cases(impl):
        def run_acs(llrs):
            costs = stage_costs(trellis, llrs)
            gamma0 = np.zeros(trellis.n_states)
            impl.acs_forward(trellis.pred_state, trellis.pred_word, costs, gamma0, True)

        def run_ml(llrs):
            costs = stage_costs(trellis, llrs)
            impl.ml_best_start(
                trellis.pred_state, trellis.pred_word, costs, saturation_metric(llrs)
            )

        def run_lik(llrs):
            record = forward_pass(trellis, llrs, OPEN_START, record_deltas=True)
            path, _ = traceback(record, int(np.argmin(record.gamma[-1])))
            impl.path_likelihoods(
                trellis.pred_state, record.choice, record.deltas, path
            )

        return [("acs_forward", run_acs), ("ml_best_start", run_ml),
                ("path_likelihoods", run_lik)]

    rows = []
    for name, impl in backends.items():
        for case, fn in kernel_cases(impl):
            rows.append((case, name, timed(fn, blocks, args.repeats)))

    # whole-decoder timings use the active backend only (selection is at import)
    for case, fn in [
        ("decode_two_step", lambda llrs: decode_two_step(trellis, llrs, two)),
        ("decode_ml", lambda llrs: decode_ml(trellis, llrs)),
        ("decode_cva_fixed", lambda llrs: decode_cva_fixed(trellis, llrs)),
    ]:
        rows.append((case, BACKEND, timed(fn, blocks, args.repeats)))

    width = max(len(r[0]) for r in rows)
    by_case = {}
    for case, backend, per_call in rows:
        by_case.setdefault(case, {})[backend] = per_call
        print(f"{case:<{width}}  {backend:>8}  {per_call * 1e6:9.1f} us/block")
    for case, per in by_case.items():
        if "compiled" in per and "python" in per:
            print(f"{case:<{width}}  speedup  {per['python'] / per['compiled']:9.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
