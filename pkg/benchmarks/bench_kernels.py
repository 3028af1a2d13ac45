"""Compare the compiled and numpy profile kernels (and the per-state path).

Usage: python3 benchmarks/bench_kernels.py [--n 100000] [--repeat 5]
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from triresource import kernels, measures
from triresource.states import haar_amplitudes


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=100_000, help="states per batch")
    parser.add_argument("--repeat", type=int, default=5, help="timing repetitions (best is reported)")
    parser.add_argument("--per-state", type=int, default=2_000, help="states for the single-state loop")
    parser.add_argument("--seed", type=int, default=2022)
    args = parser.parse_args(argv)

    amps = haar_amplitudes(args.seed, 0, args.n)
    reference = kernels.profile_table(amps, backend="python")
    print(f"{args.n} Haar states, best of {args.repeat}")
    print(f"{'backend':<12}{'seconds':>10}{'states/s':>14}{'max |diff|':>14}")
    baseline = None
    for name in sorted(kernels.BACKENDS, key=lambda b: b != "python"):
        seconds = best_of(lambda: kernels.profile_table(amps, backend=name), args.repeat)
        diff = float(np.max(np.abs(kernels.profile_table(amps, backend=name) - reference)))
        baseline = baseline or seconds
        print(f"{name:<12}{seconds:>10.4f}{args.n / seconds:>14.0f}{diff:>14.2e}  ({baseline / seconds:.1f}x)")
    if "cython" not in kernels.BACKENDS:
        print("compiled kernel not built; run `python3 setup.py build_ext --inplace`")

    few = amps[: args.per_state]
    seconds = best_of(lambda: [measures.profile(a) for a in few], 1)
    print(f"{'per-state':<12}{seconds:>10.4f}{len(few) / seconds:>14.0f}{'':>14}  (measures.profile loop, {len(few)} states)")


if __name__ == "__main__":
    main()
