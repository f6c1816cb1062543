"""Print the split complex of tree space modulo lineality for n = 4..7."""

import argparse
import time

from tropgr.quotient import split_complex


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--all-splits", action="store_true", help="include the 3|3 splits for n >= 6")
    args = ap.parse_args()
    for n in range(4, 8):
        start = time.perf_counter()
        sc = split_complex(n, all_splits=args.all_splits)
        checks = ", ".join(f"{k}={v}" for k, v in sc.checks.items())
        print(f"n={n}: {checks} ({time.perf_counter() - start:.3f}s)")


if __name__ == "__main__":
    main()
