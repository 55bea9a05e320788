"""Compare the compiled and pure-Python elimination kernels.

Times the fraction-free integer Gauss-Jordan kernel from both backends on
random dense matrices, then times two end-to-end library operations in
subprocesses with the backend forced each way. Run from the repository
root:

    python3 benchmarks/bench_elim.py
"""

import argparse
import copy
import random
import statistics
import subprocess
import sys
import time

from flatunitary._kernels._elim_py import ff_gauss_jordan_int as ff_py

try:
    from flatunitary._kernels._elim_cy import ff_gauss_jordan_int as ff_cy
except ImportError:
    ff_cy = None


def random_matrix(rng, nrows, ncols, bound=50):
    return [[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(nrows)]


def time_kernel(fn, rows, ncols, repeats):
    samples = []
    for _ in range(repeats):
        work = copy.deepcopy(rows)
        started = time.perf_counter()
        fn(work, ncols)
        samples.append(time.perf_counter() - started)
    return min(samples)


END_TO_END = (
    (
        "quintic fibre dims",
        "import random, time\n"
        "from fractions import Fraction\n"
        "from flatunitary.polyring import HomPoly, graded_basis\n"
        "from flatunitary.jacobian import make_fiber\n"
        "rng = random.Random(7)\n"
        "p = HomPoly(5, {e: Fraction(rng.randint(-3, 3)) for e in graded_basis(5)})\n"
        "t0 = time.perf_counter()\n"
        "make_fiber(p)\n"
        "print(time.perf_counter() - t0)\n",
    ),
    (
        "quartic family ranks",
        "import time\n"
        "from flatunitary.family import parse_family\n"
        "from flatunitary.unitary import filtration_ranks\n"
        "fam = parse_family('Y0^4 + Y1^4 + Y2^4 + T*Y0^2*Y1^2')\n"
        "t0 = time.perf_counter()\n"
        "filtration_ranks(fam, mode='ratfun')\n"
        "print(time.perf_counter() - t0)\n",
    ),
)


def time_end_to_end(snippet, force_pure, repeats):
    import os

    env = dict(os.environ)
    env.pop("FLATUNITARY_PURE_PYTHON", None)
    if force_pure:
        env["FLATUNITARY_PURE_PYTHON"] = "1"
    samples = []
    for _ in range(repeats):
        proc = subprocess.run(
            [sys.executable, "-c", snippet],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        samples.append(float(proc.stdout.strip()))
    return statistics.median(samples)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument(
        "--sizes",
        default="20x20,40x40,60x45,80x60",
        help="comma-separated ROWSxCOLS kernel benchmark sizes",
    )
    args = parser.parse_args()

    if ff_cy is None:
        print("compiled kernel not built; showing pure-Python timings only")

    rng = random.Random(123)
    print(f"{'kernel: size':<22}{'python':>12}{'cython':>12}{'speedup':>10}")
    for token in args.sizes.split(","):
        nrows, ncols = (int(x) for x in token.lower().split("x"))
        rows = random_matrix(rng, nrows, ncols)
        t_py = time_kernel(ff_py, rows, ncols, args.repeats)
        if ff_cy is None:
            print(f"{token:<22}{t_py:>11.4f}s{'-':>12}{'-':>10}")
            continue
        work = copy.deepcopy(rows)
        pivots_py = ff_py(work, ncols)
        check = copy.deepcopy(rows)
        assert ff_cy(check, ncols) == pivots_py and check == work, "kernels disagree"
        t_cy = time_kernel(ff_cy, rows, ncols, args.repeats)
        print(f"{token:<22}{t_py:>11.4f}s{t_cy:>11.4f}s{t_py / t_cy:>9.2f}x")

    if ff_cy is not None:
        print()
        print(f"{'end to end':<22}{'python':>12}{'cython':>12}{'speedup':>10}")
        for label, snippet in END_TO_END:
            t_pure = time_end_to_end(snippet, True, args.repeats)
            t_fast = time_end_to_end(snippet, False, args.repeats)
            print(f"{label:<22}{t_pure:>11.4f}s{t_fast:>11.4f}s{t_pure / t_fast:>9.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
