"""Grow a path one leaf at a time and watch the certificate get lifted at each step."""

import sys

from tarsgraph import Graph, build_recon_graph, tree_certificate
from tarsgraph.search import validate_certificate


def main(n=7):
    for k in range(2, n + 1):
        g = Graph.path(k)
        cert = tree_certificate(g)
        r = build_recon_graph(g)
        ok = validate_certificate(r, cert) is None
        print(f"P{k}: N={cert.N:3d}  lengths 3..{cert.N}  valid={ok}")
        for line in cert.trace[-3:]:
            print("    ", line)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 7)
