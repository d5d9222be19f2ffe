"""Time the double-coset kernels with and without numba.

    python3 benchmarks/bench_kernels.py [--size 7] [--repeat 3]

Each configuration runs in a fresh interpreter because the JIT switch is read
at import time.
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
from oddhecke import kernels, nsymq

size, repeat = int(sys.argv[1]), int(sys.argv[2])
t0 = time.perf_counter()
kernels.double_coset_lengths((1,) * size, (size,))  # compile / warm caches
warm = time.perf_counter() - t0
comps = list(nsymq.compositions(size))
best = float("inf")
for _ in range(repeat):
    t0 = time.perf_counter()
    for a in comps:
        for b in comps:
            kernels.double_coset_lengths(a, b)
    best = min(best, time.perf_counter() - t0)
print(json.dumps({"jit": kernels.JIT_ACTIVE, "pairs": len(comps) ** 2, "warmup": warm, "best": best}))
"""


def run(size, repeat, jit):
    env = dict(os.environ, ODDHECKE_JIT="1" if jit else "0")
    out = subprocess.run([sys.executable, "-c", CHILD, str(size), str(repeat)],
                         env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rows = [run(args.size, args.repeat, jit) for jit in (True, False)]
    for r in rows:
        label = "numba" if r["jit"] else "python"
        print(f"{label:>7}: {r['pairs']} coset histograms in {r['best']:.3f}s (first call {r['warmup']:.3f}s)")
    if rows[0]["jit"] and rows[1]["best"] > 0:
        print(f"speedup: {rows[1]['best'] / rows[0]['best']:.1f}x")


if __name__ == "__main__":
    main()
