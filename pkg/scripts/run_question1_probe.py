#!/usr/bin/env python3
"""Probe whether the poset minimum matches the permutation minimum.

Enumerates every poset on n elements (up to isomorphism, via naturally
labeled down-set sequences) for small n, minimizes the homogenous
(k+1)-set count, and records whether it equals the minimum over
permutations.  The inequality poset_min <= perm_min always holds; whether
equality does in general is open, so the table records the outcome instead
of asserting it.
"""

import argparse
import csv
import sys
import time

from monoseq import min_hk_over_posets


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--min-n", type=int, default=5)
    ap.add_argument("--max-n", type=int, default=7)
    args = ap.parse_args()

    writer = csv.writer(sys.stdout)
    writer.writerow(["n", "k", "poset_min", "perm_min", "equal", "witness_covers"])
    for n in range(args.min_n, args.max_n + 1):
        t0 = time.perf_counter()
        res = min_hk_over_posets(n, args.k)
        assert res.permutation_minimum is not None
        assert res.minimum <= res.permutation_minimum
        writer.writerow(
            [
                n,
                args.k,
                res.minimum,
                res.permutation_minimum,
                res.minimum == res.permutation_minimum,
                ";".join(f"{a}<{b}" for a, b in res.witness_relation),
            ]
        )
        print(f"# n={n}: {time.perf_counter() - t0:.1f}s", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
