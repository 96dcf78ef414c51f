"""Compiled vs pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per (kernel, case) with the best time of each backend and the
speed-up.  Both backends are imported directly, so ``POLYSTAR_PURE_PYTHON``
has no effect here.
"""

import argparse
import random
import timeit

import numpy as np

from polystar import _pykernels

try:
    from polystar import _ckernels
except ImportError:
    _ckernels = None


def _word(rng, n):
    return tuple(rng.randint(0, 1) for _ in range(n - 1)) + (1,)


def shuffle_cases(rng):
    for la, lb in [(4, 4), (6, 6), (8, 7), (9, 9)]:
        yield f"shuffle |a|={la} |b|={lb}", (_word(rng, la), _word(rng, lb))


def taylor_cases(rng):
    for n, order in [(3, 2000), (6, 2000), (6, 20000), (10, 20000)]:
        yield f"li_taylor |w|={n} N={order}", (_word(rng, n), order)


def bench(fn, args, repeat, clear=None):
    def run():
        if clear:
            clear()  # the Python shuffle memoizes; time a cold call
        fn(*args)

    number = max(1, int(0.2 / max(timeit.timeit(run, number=1), 1e-6)))
    return min(timeit.repeat(run, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    if _ckernels is None:
        print("compiled extension not built; only the Python backend is timed")

    rows = []
    for name, case in shuffle_cases(rng):
        py = bench(_pykernels.shuffle_counts, case, args.repeat, _pykernels._shuffle_rec.cache_clear)
        c = None
        if _ckernels:
            assert _ckernels.shuffle_counts(*case) == _pykernels.shuffle_counts(*case)
            c = bench(_ckernels.shuffle_counts, case, args.repeat)
        rows.append((name, py, c))
    for name, case in taylor_cases(rng):
        py = bench(_pykernels.li_taylor, case, args.repeat)
        c = None
        if _ckernels:
            assert np.allclose(_ckernels.li_taylor(*case), _pykernels.li_taylor(*case), rtol=1e-12, atol=0)
            c = bench(_ckernels.li_taylor, case, args.repeat)
        rows.append((name, py, c))

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'python':>11}  {'cython':>11}  speed-up")
    for name, py, c in rows:
        cs = f"{c * 1e3:9.3f}ms" if c else "        n/a"
        sp = f"{py / c:7.1f}x" if c else ""
        print(f"{name:<{width}}  {py * 1e3:9.3f}ms  {cs}  {sp}")


if __name__ == "__main__":
    main()
