"""Walk through the claw K1,3: its dominating sets, the two edge layers, and a certificate."""

from tarsgraph import Graph, build_recon_graph, construct_certificate, enumerate_dominating_sets
from tarsgraph.graph import format_set
from tarsgraph.search import validate_certificate


def main():
    g = Graph.star(3)  # centre 0, leaves 1..3
    family = enumerate_dominating_sets(g)
    print(f"K1,3 has {len(family)} dominating sets:")
    for s in family:
        print("  ", format_set(s))

    r = build_recon_graph(g)
    tar, ts = r.edge_counts()
    print(f"\nreconfiguration graph: N={r.order}, {tar} add/remove edges, {ts} slide edges")
    for i in range(r.order):
        for j in r.neighbors(i):
            if j > i and r.kind(i, j) == "TS":
                print("  slide", format_set(family[i]), "->", format_set(family[j]))

    cert = construct_certificate(g)
    print(f"\ncertificate via '{cert.strategy}':")
    for k, cyc in sorted(cert.cycles.items()):
        print(f"  length {k}: " + " ".join(format_set(family[v]) for v in cyc))
    print("valid:", validate_certificate(r, cert) is None)


if __name__ == "__main__":
    main()
