"""Compare the numba kernels against the pure-numpy/Python fallback.

Each workload runs in a fresh interpreter with BIERR_NUMBA set to 1 or 0, so
the fallback is exactly what a numba-less install would execute. Compile time
is excluded by a warm-up call.

    python benchmarks/bench_kernels.py [--M 10000] [--repeat 3]
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def _best(fn, repeat):
    fn()  # warm-up (JIT compile, caches)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def worker(m: int, repeat: int) -> dict:
    import numpy as np

    from bierror import HypothesisPair, SimConfig, run_simulation, youden_numeric, zeta_curve
    from bierror.distributions import fisher_f, quantile, student_t

    f_pair = HypothesisPair(fisher_f(10, 10), fisher_f(10, 10, 10))
    grid = np.linspace(0.05, 8.0, 10_001)
    sim = SimConfig(M=m)
    t9 = student_t(9)
    ps = np.linspace(0.001, 0.999, 2_000)
    return {
        f"simulation (M={m}, 180 cells)": _best(lambda: run_simulation(sim), repeat),
        "zeta grid, noncentral F (10,001 pts)": _best(lambda: zeta_curve(f_pair, grid), repeat),
        "youden_numeric, noncentral F": _best(lambda: youden_numeric(f_pair), repeat),
        "t quantiles (2,000)": _best(lambda: quantile(t9, ps), repeat),
    }


def run(flag: str, m: int, repeat: int) -> dict:
    env = dict(os.environ, BIERR_NUMBA=flag)
    out = subprocess.run(
        [sys.executable, __file__, "--worker", "--M", str(m), "--repeat", str(repeat)],
        env=env, check=True, capture_output=True, text=True,
    )
    return json.loads(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--M", type=int, default=2000, help="replications per simulation cell")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args(argv)
    if args.worker:
        print(json.dumps(worker(args.M, args.repeat)))
        return
    fast = run("1", args.M, args.repeat)
    slow = run("0", args.M, args.repeat)
    width = max(map(len, fast))
    print(f"{'workload':<{width}}  {'numba [s]':>10}  {'fallback [s]':>12}  {'speed-up':>8}")
    for name in fast:
        print(f"{name:<{width}}  {fast[name]:>10.4f}  {slow[name]:>12.4f}  {slow[name] / fast[name]:>7.1f}x")


if __name__ == "__main__":
    main()
