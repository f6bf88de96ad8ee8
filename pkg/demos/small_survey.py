"""Certify every graph on at most five vertices and tally which strategy did the work."""

import collections
from pathlib import Path

from tarsgraph import build_recon_graph, construct_certificate, parse_graph6
from tarsgraph.search import validate_certificate

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def main():
    tally = collections.Counter()
    bad = 0
    for n in range(1, 6):
        for line in (DATA / f"graphs{n}.g6").read_text().split():
            g = parse_graph6(line)
            cert = construct_certificate(g)
            bad += validate_certificate(build_recon_graph(g), cert) is not None
            tally[cert.strategy] += 1
    print(f"{sum(tally.values())} graphs, {bad} invalid certificates")
    for name, count in sorted(tally.items()):
        print(f"  {name:10s} {count}")


if __name__ == "__main__":
    main()
