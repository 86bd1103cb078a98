"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot kernels (BCJR forward-backward, symbol demapping,
f_eta inversion) on realistic frame-sized inputs, prints a comparison
table with the cross-backend max difference, and finishes with an
end-to-end frame decode under the active backend.

Usage: python3 benchmarks/bench_kernels.py [--repeats N] [--length L]
"""

import argparse
import time

import numpy as np

from bicmid import codec, decoder, harness, infogeo, interleave, modem
from bicmid.kernels import ACTIVE_BACKEND, load_backend


def _max_diff(x, y):
    """Max abs difference over finite entries; infinities must match up
    (BCJR outputs -inf for structurally impossible bits, e.g. tail inputs)."""
    x, y = np.asarray(x), np.asarray(y)
    if not np.array_equal(np.isfinite(x), np.isfinite(y)):
        return float("nan")
    if not np.array_equal(x[~np.isfinite(x)], y[~np.isfinite(y)]):
        return float("nan")
    finite = np.isfinite(x)
    return float(np.max(np.abs(x[finite] - y[finite]))) if finite.any() else 0.0


def _time(fn, repeats):
    fn()  # warm-up / JIT compile outside the timed region
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _build_inputs(length, seed):
    cfg = harness.ExperimentConfig(
        ebno_db_list=(5.0,), frames=1, info_len=length // 3 - 2, seed=seed
    )
    system = harness.build_system(cfg)
    ch = modem.ChannelParams.from_ebno_db(5.0)
    rng = harness.frame_rng(seed, 0, 0)
    info = rng.integers(0, 2, cfg.info_len)
    coded = codec.encode(info, system.trellis)
    x = interleave.interleave(coded, system.perm)
    y = modem.transmit(modem.map_symbols(x, system.constellation), ch, rng)

    prior = rng.uniform(0.05, 0.95, length)
    prior_llr = infogeo.logit(prior)
    marg = rng.uniform(1e-9, 1.0 - 1e-9, length)
    return system, ch, y, prior, prior_llr, marg


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=7)
    ap.add_argument("--length", type=int, default=6000, help="coded bits per frame")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    system, ch, y, prior, prior_llr, marg = _build_inputs(args.length, args.seed)
    trellis = system.trellis
    pts = system.constellation.points
    labels = system.constellation.labels.astype(np.float64)
    inv2s2 = 1.0 / (2.0 * ch.sigma2)

    backends = {}
    for name in ("numba", "numpy"):
        try:
            backends[name] = load_backend(name)
        except RuntimeError as exc:  # numba not installed
            print(f"skipping {name}: {exc}")
    if not backends:
        raise SystemExit("no kernel backend available")

    cases = {
        "bcjr_llrs": lambda impl: impl.bcjr_llrs(
            prior_llr, trellis.next_state, trellis.out_bits
        ),
        "demap_llrs": lambda impl: impl.demap_llrs(
            y.samples.real, y.samples.imag, prior_llr, pts.real, pts.imag, labels, inv2s2
        ),
        "invert_distortion": lambda impl: impl.invert_distortion(marg, 0.05),
    }

    print(f"frame: {args.length} coded bits, repeats: {args.repeats} (best-of)")
    header = f"{'kernel':<18}" + "".join(f"{n + ' (ms)':>14}" for n in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}{'max |diff|':>12}"
    print(header)
    for case, call in cases.items():
        times = {n: _time(lambda i=impl: call(i), args.repeats) for n, impl in backends.items()}
        row = f"{case:<18}" + "".join(f"{1e3 * times[n]:>14.3f}" for n in backends)
        if len(backends) == 2:
            out = {n: call(impl) for n, impl in backends.items()}
            a = out["numba"] if isinstance(out["numba"], tuple) else (out["numba"],)
            b = out["numpy"] if isinstance(out["numpy"], tuple) else (out["numpy"],)
            diff = max(_max_diff(x, y) for x, y in zip(a, b))
            row += f"{times['numpy'] / times['numba']:>10.2f}x"
            row += f"{diff:>12.2e}"
        print(row)

    dcfg = decoder.DecoderConfig()
    run = lambda: decoder.run_frame(y, dcfg, system.constellation, ch, trellis, system.perm)
    best = _time(run, args.repeats)
    trace = run()
    print(
        f"\nend-to-end classical frame ({ACTIVE_BACKEND} backend): "
        f"{1e3 * best:.1f} ms for {trace.iterations} iterations"
    )


if __name__ == "__main__":
    main()
