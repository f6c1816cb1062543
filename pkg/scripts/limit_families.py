"""Sample limit families and show the values of the section along each one."""

import argparse
import random

from tropgr.limits import sample_family, settle
from tropgr.plucker import format_pair, vanishing_set


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=12)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    failed = 0
    for k in range(args.count):
        fam = sample_family(4 + k % 3, rng)
        rep, halvings = settle(fam)
        J = ",".join(format_pair(p) for p in sorted(vanishing_set(fam.x)))
        failed += not rep.ok
        print(f"{'ok ' if rep.ok else 'BAD'} n={fam.x.n} J={{{J}}} halvings={halvings}: {rep.line()}")
    print(f"{args.count - failed}/{args.count} families extrapolate to sigma(x)(f)")


if __name__ == "__main__":
    main()
