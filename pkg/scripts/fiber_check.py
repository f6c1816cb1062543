"""Sweep the maximality check over several n and seeds and report timings."""

import argparse
import time

from tropgr.config import FiberSweep
from tropgr.section import sample_fiber_and_check_max


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[4, 5, 6, 7])
    ap.add_argument("--matrices", type=int, default=50)
    ap.add_argument("--polys", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    sweep = FiberSweep(seed=args.seed, sizes=tuple(args.n), matrices_per_size=args.matrices, polys=args.polys)
    for n in sweep.sizes:
        start = time.perf_counter()
        rep = sample_fiber_and_check_max(n, seed=sweep.seed + n, poly_count=sweep.polys, matrices=sweep.matrices_per_size)
        status = "ok" if rep.ok else f"{len(rep.failures)} failures"
        print(f"n={n} matrices={rep.matrices} polys={rep.polynomials} strict={rep.strict} {status} "
              f"({time.perf_counter() - start:.2f}s)")
        for line in rep.failures[:5]:
            print("  " + line)


if __name__ == "__main__":
    main()
