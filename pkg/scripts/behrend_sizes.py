"""Compare progression-free constructions: digit sphere, greedy, exact maximum.

The exact column runs a branch-and-bound search and is only filled in up to
--exact-limit; past that it prints a dash.

Usage:
    python3 scripts/behrend_sizes.py --sizes 50,125,300,1000 --exact-limit 40
"""

import argparse

from gaplab.extremal_constructions import (behrend_set, exact_ap_free,
                                           greedy_ap_free)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="50,125,300,1000,3000")
    parser.add_argument("--exact-limit", type=int, default=40)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    print(f"{'n':>6} {'sphere':>6} {'base':>4} {'digits':>6} {'r^2':>4} "
          f"{'greedy':>6} {'exact':>5}")
    for n in sizes:
        rep = behrend_set(n)
        greedy = len(greedy_ap_free(n))
        exact = str(len(exact_ap_free(n))) if n <= args.exact_limit else "-"
        print(f"{n:>6} {rep.size:>6} {rep.base:>4} {rep.digit_count:>6} "
              f"{rep.radius_sq:>4} {greedy:>6} {exact:>5}")


if __name__ == "__main__":
    main()
