"""Compare the compiled and pure-Python Smith normal form kernels.

Usage: python3 benchmarks/bench_snf.py [--repeat N] [--size N]
"""

import argparse
import random
import timeit

from skelette.cycles import skeleton_bundle
from skelette.io import load_fan
from skelette.lattice import snf
from skelette.lattice.snf import BACKEND, snf_raw


def boundary_matrices():
    out = []
    for name in ("p1", "p2", "p1xp1"):
        cx = skeleton_bundle(load_fan(name + ".json")).skeleton
        for k in range(1, cx.top_dim + 1):
            a = cx.boundary_matrix(k)
            if a and a[0]:
                out.append(("%s d%d" % (name, k), a))
    return out


def random_matrix(rng, m, n, lo=-20, hi=20):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def bench(label, a, repeat, transforms):
    m, n = len(a), len(a[0])
    times = {}
    for backend in ("python", "compiled"):
        t = timeit.timeit(lambda: snf_raw(a, m, n, transforms, backend), number=repeat)
        times[backend] = t / repeat
    assert snf_raw(a, m, n, transforms, "python") == snf_raw(a, m, n, transforms, "compiled")
    speedup = times["python"] / times["compiled"] if times["compiled"] else float("inf")
    print("%-16s %4dx%-4d %10.5f %10.5f %8.1fx  %s"
          % (label, m, n, times["python"], times["compiled"], speedup, kernel_status(a, transforms)))


def kernel_status(a, transforms):
    if snf._fast is None:
        return "python only"
    try:
        snf._fast.snf_lists(a, len(a), len(a[0]), transforms)
    except OverflowError:
        return "int64 overflow, fell back"
    return "int64"


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--size", type=int, default=60)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    if BACKEND != "compiled":
        print("compiled kernel not built; both columns use Python")
    rng = random.Random(args.seed)
    print("%-16s %9s %10s %10s %9s  %s"
          % ("matrix", "shape", "python s", "compiled s", "speedup", "kernel"))
    for label, a in boundary_matrices():
        bench(label, a, args.repeat, False)
    for size in (args.size // 2, args.size):
        bench("random %d" % size, random_matrix(rng, size, size, -3, 3), args.repeat, True)
        bench("sparse %d" % size, [[x if rng.random() < 0.1 else 0 for x in row]
                                   for row in random_matrix(rng, size, size)],
              args.repeat, False)


if __name__ == "__main__":
    main()
