"""Slow, obviously-correct reference implementations used only by the tests.

They work on frozensets and edge lists so they share no code path with the
bitmask implementations under test.
"""

from __future__ import annotations

from itertools import combinations
from pathlib import Path

import networkx as nx

from tarsgraph.graph import Graph, parse_graph6

DATA = Path(__file__).parent / "data"


def catalog(name: str) -> list[Graph]:
    return [parse_graph6(line) for line in (DATA / name).read_text().split()]


def graphs_upto(n: int) -> list[Graph]:
    return [g for k in range(0, n + 1) for g in catalog(f"graphs{k}.g6")]


def trees_upto(n: int) -> list[Graph]:
    return [t for t in catalog("trees_le8.g6") if t.order <= n]


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def naive_dominating(g: Graph) -> list[frozenset]:
    nbrs = {v: {v} for v in range(g.order)}
    for a, b in g.edges():
        nbrs[a].add(b)
        nbrs[b].add(a)
    out = []
    for k in range(g.order + 1):
        for s in combinations(range(g.order), k):
            if all(nbrs[v] & set(s) for v in range(g.order)):
                out.append(frozenset(s))
    return out


def to_mask(s) -> int:
    return sum(1 << v for v in s)


def naive_recon_edges(g: Graph) -> tuple[set, set]:
    """Pair-scan over every pair of dominating sets; edges as frozenset pairs of masks."""
    edge_set = {frozenset(e) for e in g.edges()}
    doms = naive_dominating(g)
    tar, ts = set(), set()
    for a, b in combinations(doms, 2):
        diff = a ^ b
        if len(diff) == 1:
            tar.add(frozenset((to_mask(a), to_mask(b))))
        elif len(a) == len(b) and len(a - b) == 1 and frozenset(diff) in edge_set:
            ts.add(frozenset((to_mask(a), to_mask(b))))
    return tar, ts


def recon_nx(g: Graph, mode: str = "TARS") -> nx.Graph:
    tar, ts = naive_recon_edges(g)
    h = nx.Graph()
    h.add_nodes_from(to_mask(s) for s in naive_dominating(g))
    if mode in ("TARS", "TAR"):
        h.add_edges_from(tuple(e) for e in tar)
    if mode in ("TARS", "TS"):
        h.add_edges_from(tuple(e) for e in ts)
    return h


def has_cycle_of_length(h: nx.Graph, length: int) -> bool:
    """Plain DFS over simple paths, no pruning; stops at the first closed walk of ``length``."""

    def extend(path, seen):
        if len(path) == length:
            return h.has_edge(path[-1], path[0])
        return any(extend(path + [w], seen | {w}) for w in h[path[-1]] if w not in seen)

    return any(extend([s], {s}) for s in h.nodes)


def cycle_lengths(h: nx.Graph) -> set[int]:
    return {k for k in range(3, h.number_of_nodes() + 1) if has_cycle_of_length(h, k)}


def brgc_by_flips(n: int) -> list[int]:
    """Reflected Gray code built by flipping the lowest set bit position of j."""
    out = [0]
    for j in range(1, 1 << n):
        low = (j & -j).bit_length() - 1
        out.append(out[-1] ^ (1 << low))
    return out


def is_q_cycle(seq, n: int) -> bool:
    if len(set(seq)) != len(seq) or len(seq) < 4:
        return False
    for i in range(len(seq)):
        a, b = seq[i], seq[(i + 1) % len(seq)]
        if not (0 <= a < 1 << n) or bin(a ^ b).count("1") != 1:
            return False
    return True
