"""Compiled vs pure-Python exact-change kernel, alone and inside ``md``.

Usage: ``python3 benchmarks/bench_kernels.py [--repeat N]``
"""
import argparse
import random
import timeit

from singres import _kernels_py, kernels
from singres.invariants import md

try:
    from singres import _kernels as _compiled
except ImportError:
    _compiled = None


def kernel_cases():
    rng = random.Random(0)
    for limit in (100, 1_000, 10_000, 100_000):
        coins = [rng.randint(1, 30) for _ in range(4)]
        costs = [rng.randint(1, 20) for _ in range(4)]
        yield f"min_cost_change limit={limit}", coins, costs, limit


def bench(fn, repeat):
    timer = timeit.Timer(fn)
    number, _ = timer.autorange()
    return min(timer.repeat(repeat, number)) / number


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _compiled is None:
        print("compiled kernel not built; install with `pip install -e . --no-build-isolation`")
        return
    rows = []
    for label, coins, costs, limit in kernel_cases():
        assert _compiled.min_cost_change(coins, costs, limit) == _kernels_py.min_cost_change(coins, costs, limit)
        c = bench(lambda: _compiled.min_cost_change(coins, costs, limit), args.repeat)
        p = bench(lambda: _kernels_py.min_cost_change(coins, costs, limit), args.repeat)
        rows.append((label, c, p))

    from singres import corpus

    e6 = corpus.load("e6")
    original = kernels._compiled
    for m in (50, 500, 5000):
        kernels._compiled = original
        c = bench(lambda: md(e6, m), args.repeat)
        kernels._compiled = None
        p = bench(lambda: md(e6, m), args.repeat)
        rows.append((f"md(e6, m={m})", c, p))
    kernels._compiled = original

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'compiled':>12}  {'python':>12}  {'speedup':>8}")
    for label, c, p in rows:
        print(f"{label:<{width}}  {c * 1e6:>10.1f}us  {p * 1e6:>10.1f}us  {p / c:>7.1f}x")


if __name__ == "__main__":
    main()
