"""Rank of M(q, n) against C(n+q-1, n) for every q^n up to a bound.

    python scripts/rank_sweep.py [--limit 100000]
"""

import argparse
import math
import time

from symrel import field_new
from symrel.relations import evaluation_rank

FIELDS = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=10**5)
    args = ap.parse_args()
    bad = 0
    for p, k in FIELDS:
        F = field_new(p, k)
        n = 1
        while F.q**n <= args.limit:
            t = time.perf_counter()
            r = evaluation_rank(F, n)
            expect = math.comb(n + F.q - 1, n)
            bad += r != expect
            print(f"q={F.q} n={n:2d} rank={r:5d} expected={expect:5d} "
                  f"{'ok' if r == expect else 'MISMATCH'} {time.perf_counter() - t:.2f}s")
            n += 1
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
