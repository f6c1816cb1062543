"""Print the Gr(2,4) initial-degeneration catalog as a table."""

from tropgr.degeneration import gr24_catalog
from tropgr.plucker import format_pair


def main() -> None:
    for e in gr24_catalog():
        J = ",".join(sorted(format_pair(p) for p in e.J)) or "-"
        I = ",".join(sorted(format_pair(p) for p in e.I))
        gens = "; ".join(e.generators) or "(none)"
        print(f"{e.case:<42} J={J:<16} I={I:<12} {gens}")


if __name__ == "__main__":
    main()
