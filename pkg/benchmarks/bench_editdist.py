"""Compare the compiled edit-distance kernel against the pure-Python one.

Usage: python benchmarks/bench_editdist.py [pairs] [maxlen]
"""

import random
import string
import sys
import time

from conceal_scan import _editdist_py, metrics


def make_pairs(n, maxlen, seed=1):
    rng = random.Random(seed)
    alphabet = string.ascii_lowercase

    def word():
        return "".join(rng.choice(alphabet) for _ in range(rng.randrange(1, maxlen)))

    return [(word(), word()) for _ in range(n)]


def bench(fn, pairs):
    start = time.perf_counter()
    total = 0
    for a, b in pairs:
        total += fn(a, b)
    return time.perf_counter() - start, total


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 20_000
    maxlen = int(sys.argv[2]) if len(sys.argv) > 2 else 24
    pairs = make_pairs(n, maxlen)

    py_time, py_total = bench(_editdist_py.levenshtein, pairs)
    active_time, active_total = bench(metrics.levenshtein, pairs)
    assert py_total == active_total, "kernels disagree"

    print(f"pairs: {n}, max word length: {maxlen}")
    print(f"pure python : {py_time:.3f}s")
    print(f"active ({metrics.KERNEL:>8}): {active_time:.3f}s")
    if metrics.KERNEL == "compiled" and active_time > 0:
        print(f"speedup     : {py_time / active_time:.1f}x")
    else:
        print("compiled extension not built; both runs used the python kernel")


if __name__ == "__main__":
    main()
