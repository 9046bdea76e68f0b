"""Measure orbit census sizes against the 2*ell bound across dimensions.

Samples rational rotation vectors on the d-torus, runs the census of their
first n multiples, and reports how the census size compares with the bound
and with (4/3)^d.

Usage:
    python3 scripts/kronecker_ratio_scan.py --dims 1,2,3 --n 500 --trials 20
"""

import argparse
import random
from fractions import Fraction

from gaplab.nn_census import kronecker_census

PRIMES = (4099, 65537, 262147)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--dims", default="1,2,3")
    parser.add_argument("--n", type=int, default=500)
    parser.add_argument("--trials", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = random.Random(args.seed)
    dims = [int(s) for s in args.dims.split(",") if s.strip()]
    print(f"{'d':>2} {'trials':>6} {'census<=2l':>10} {'tie-free':>8} "
          f"{'max census':>10} {'max ell':>7} {'mean ratio':>10}")
    for d in dims:
        contained = ties = 0
        max_census = max_ell = 0
        ratios = []
        for _ in range(args.trials):
            q = rng.choice(PRIMES)
            alphas = tuple(Fraction(rng.randrange(1, q), q) for _ in range(d))
            rep = kronecker_census(alphas, args.n)
            contained += rep.passed
            ties += not rep.tie_free
            max_census = max(max_census, rep.census_size)
            max_ell = max(max_ell, rep.ell)
            ratios.append(rep.ratio)
        mean_ratio = sum(ratios) / len(ratios)
        print(f"{d:>2} {args.trials:>6} {contained:>10} {ties:>8} "
              f"{max_census:>10} {max_ell:>7} {mean_ratio:>10.3f}")


if __name__ == "__main__":
    main()
