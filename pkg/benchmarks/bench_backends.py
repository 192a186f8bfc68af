"""Compare the numba loop kernel with the vectorised numpy kernel.

Kernel timings run in this process (both implementations are importable
side by side). End-to-end timings start one interpreter per backend so that
``MLOPC_NUMBA`` takes effect at import.

    python benchmarks/bench_backends.py [--repeat 200]
"""

import argparse
import json
import os
import statistics
import subprocess
import sys
import time

from mlopc import _kernels
from mlopc._backend import USE_NUMBA

# (mu, h, N, t, lam_re, lam_im, alpha, expo, gam, fold)
KERNEL_CASES = {
    "N=27 folded": (1.5049, 0.1819, 27, 1.0, -10.0, 0.0, 0.7, -0.3, 1.0, True),
    "N=27 full": (1.5049, 0.1819, 27, 1.0, -7.0, 7.0, 0.7, -0.3, 1.0, False),
    "N=500 full": (1.5049, 0.0100, 500, 1.0, -7.0, 7.0, 0.7, -0.3, 1.0, False),
    "N=5000 full": (1.5049, 0.0010, 5000, 1.0, -7.0, 7.0, 0.7, -0.3, 1.0, False),
}

END_TO_END = """
import json, statistics, sys, time, cmath, math
import mlopc
pts = [complex(-r, 0.0) for r in (1e-2, 1.0, 1e2)] + [cmath.rect(20.0, 0.75 * math.pi)]
mlopc.mittag_leffler(0.7, 1.0, 1.0, pts[0])
out = {}
for z in pts:
    ts = []
    for _ in range(int(sys.argv[1])):
        t0 = time.perf_counter_ns()
        mlopc.mittag_leffler(0.7, 1.0, 1.0, z)
        ts.append(time.perf_counter_ns() - t0)
    out[repr(z)] = statistics.median(ts)
print(json.dumps({"backend": mlopc.BACKEND, "median_ns": out}))
"""


def median_ns(fn, args, repeat):
    fn(*args)
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter_ns()
        fn(*args)
        ts.append(time.perf_counter_ns() - t0)
    return statistics.median(ts)


def end_to_end(flag, repeat):
    env = dict(os.environ, MLOPC_NUMBA=flag)
    res = subprocess.run([sys.executable, "-c", END_TO_END, str(repeat)], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    if not USE_NUMBA:
        print("numba backend disabled; kernel rows compare the python loop with numpy")

    print(f"{'kernel case':<16}{'loop us':>12}{'numpy us':>12}{'speedup':>10}")
    for name, case in KERNEL_CASES.items():
        loop = median_ns(_kernels.loop_trapezoid_sum, case, args.repeat)
        vec = median_ns(_kernels.numpy_trapezoid_sum, case, args.repeat)
        print(f"{name:<16}{loop / 1e3:>12.1f}{vec / 1e3:>12.1f}{vec / loop:>10.2f}")

    print()
    fast, slow = end_to_end("1", args.repeat), end_to_end("0", args.repeat)
    print(f"{'E_0.7(z), z =':<44}{fast['backend'] + ' us':>12}{slow['backend'] + ' us':>12}")
    for z, t in fast["median_ns"].items():
        print(f"{z:<44}{t / 1e3:>12.1f}{slow['median_ns'][z] / 1e3:>12.1f}")


if __name__ == "__main__":
    main()
