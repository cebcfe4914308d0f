"""Compare the numba and numpy lattice-scan backends.

Runs the same dilate counts in two subprocesses (the backend is fixed at
import time by LPOLY_NO_NUMBA) and prints a timing table.  Counts must
agree exactly; both backends are integer-only.

Usage: python3 benchmarks/bench_count.py [-m 100]
"""

import argparse
import json
import os
import subprocess
import sys
import time

WORKER = """
import json, sys, time
from lpoly.counting import count_points
from lpoly.polyhedra import LabelledPolyhedron, label

cases = {
    "cube3": LabelledPolyhedron(3, [
        label(1, 0, 0, 0), label(0, 1, 0, 0), label(0, 0, 1, 0),
        label(-1, 0, 0, -1), label(0, -1, 0, -1), label(0, 0, -1, -1),
    ]),
    "pyramid": LabelledPolyhedron(3, [
        label(0, 0, 1, 0), label(1, 0, -1, 0), label(0, 1, -1, 0),
        label(-1, 0, -1, -2), label(0, -1, -1, -2),
    ]),
    "simplex3": LabelledPolyhedron(3, [
        label(1, 0, 0, 0), label(0, 1, 0, 0), label(0, 0, 1, 0),
        label(-1, -1, -1, -1),
    ]),
}
m = int(sys.argv[1])
out = {}
for name, P in cases.items():
    count_points(P, 1)  # warm up (jit compile / cache load)
    t0 = time.perf_counter()
    total = count_points(P, m)
    out[name] = {"seconds": time.perf_counter() - t0, "total": total}
print(json.dumps(out))
"""


def run_backend(no_numba: bool, mmax: int):
    env = dict(os.environ)
    env["LPOLY_NO_NUMBA"] = "1" if no_numba else "0"
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, str(mmax)],
        env=env, capture_output=True, text=True, check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("-m", type=int, default=100, help="single dilation factor; box has (m*side+1)^3 candidates")
    args = parser.parse_args()
    numba = run_backend(False, args.m)
    numpy = run_backend(True, args.m)
    print(f"{'case':<10} {'count':>12} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    for name in numba:
        a, b = numba[name], numpy[name]
        assert a["total"] == b["total"], f"backend mismatch on {name}"
        ratio = b["seconds"] / a["seconds"] if a["seconds"] else float("inf")
        print(f"{name:<10} {a['total']:>12} {a['seconds']:>10.3f} {b['seconds']:>10.3f} {ratio:>7.1f}x")


if __name__ == "__main__":
    main()
