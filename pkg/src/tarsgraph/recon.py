"""The TARS-graph of a seed graph and its TAR / TS layers.

Reconfiguration vertex ``i`` is the ``i``-th dominating set in ascending mask
order.  Both edge layers are always built; ``mode`` only selects which of them
the graph exposes through :attr:`ReconGraph.adj`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .domination import DominatingFamily, enumerate_dominating_sets
from .graph import Graph, GraphError, bits, check_order

MODES = ("TARS", "TAR", "TS")
DEFAULT_VERTEX_CAP = 1 << 20


def tar_adjacent(x: int, y: int) -> bool:
    if x == y:
        raise ValueError("tar_adjacent needs two distinct sets")
    return (x ^ y).bit_count() == 1


def ts_adjacent(g: Graph, x: int, y: int) -> bool:
    """True iff ``y`` is ``x`` with one token slid along an edge of ``g``."""
    if x == y:
        raise ValueError("ts_adjacent needs two distinct sets")
    out = x & ~y
    into = y & ~x
    if out.bit_count() != 1 or into.bit_count() != 1:
        return False
    u = out.bit_length() - 1
    return bool(g.adj[u] & into)


def edge_kind(g: Graph, x: int, y: int) -> str | None:
    if x == y:
        return None
    if tar_adjacent(x, y):
        return "TAR"
    if ts_adjacent(g, x, y):
        return "TS"
    return None


@dataclass(frozen=True, eq=False)
class ReconGraph:
    seed: Graph
    family: DominatingFamily
    tar_adj: tuple[int, ...]
    ts_adj: tuple[int, ...]
    mode: str = "TARS"

    @property
    def order(self) -> int:
        return len(self.family)

    @property
    def adj(self) -> tuple[int, ...]:
        cached = self.__dict__.get("_adj")
        if cached is None:
            if self.mode == "TAR":
                cached = self.tar_adj
            elif self.mode == "TS":
                cached = self.ts_adj
            else:
                cached = tuple(a | b for a, b in zip(self.tar_adj, self.ts_adj))
            object.__setattr__(self, "_adj", cached)
        return cached

    def neighbors(self, i: int) -> list[int]:
        return list(bits(self.adj[i]))

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def kind(self, i: int, j: int) -> str | None:
        """Label of the pair in the full TARS graph, regardless of mode."""
        if self.tar_adj[i] >> j & 1:
            return "TAR"
        if self.ts_adj[i] >> j & 1:
            return "TS"
        return None

    def with_mode(self, mode: str) -> "ReconGraph":
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        return ReconGraph(self.seed, self.family, self.tar_adj, self.ts_adj, mode)

    def edges(self, kind: str | None = None) -> list[tuple[int, int, str]]:
        out = []
        for i in range(self.order):
            if kind in (None, "TAR") and self.mode in ("TARS", "TAR"):
                out += [(i, j, "TAR") for j in bits(self.tar_adj[i] >> (i + 1) << (i + 1))]
            if kind in (None, "TS") and self.mode in ("TARS", "TS"):
                out += [(i, j, "TS") for j in bits(self.ts_adj[i] >> (i + 1) << (i + 1))]
        out.sort()
        return out

    def layer_counts(self) -> tuple[int, int]:
        """(TAR, TS) edge counts of the full TARS graph, whatever the mode."""
        tar = sum(r.bit_count() for r in self.tar_adj) // 2
        ts = sum(r.bit_count() for r in self.ts_adj) // 2
        return tar, ts

    def edge_counts(self) -> tuple[int, int]:
        """(TAR, TS) edge counts of the active mode; the inactive layer counts 0."""
        tar, ts = self.layer_counts()
        return (tar if self.mode != "TS" else 0), (ts if self.mode != "TAR" else 0)

    def sets(self, ids) -> list[int]:
        return [self.family[i] for i in ids]

    def ids(self, masks) -> list[int]:
        return [self.family.index(m) for m in masks]


@lru_cache(maxsize=256)
def _build_layers(g: Graph, cap: int) -> tuple[DominatingFamily, tuple[int, ...], tuple[int, ...]]:
    check_order(g)
    fam = enumerate_dominating_sets(g)
    if len(fam) > cap:
        raise GraphError(f"{len(fam)} dominating sets exceed the vertex cap {cap}")
    index = {m: i for i, m in enumerate(fam.sets)}
    n = g.order
    tar = []
    ts = []
    for s in fam.sets:
        row = 0
        for v in range(n):
            j = index.get(s ^ (1 << v))
            if j is not None:
                row |= 1 << j
        tar.append(row)
        row = 0
        for u in bits(s):
            base = s ^ (1 << u)
            for v in bits(g.adj[u] & ~s):
                j = index.get(base | (1 << v))
                if j is not None:
                    row |= 1 << j
        ts.append(row)
    return fam, tuple(tar), tuple(ts)


def build_recon_graph(g: Graph, mode: str = "TARS", cap: int = DEFAULT_VERTEX_CAP) -> ReconGraph:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    fam, tar, ts = _build_layers(g, cap)
    return ReconGraph(g, fam, tar, ts, mode)


def component_count(r: ReconGraph) -> int:
    seen = 0
    count = 0
    adj = r.adj
    for v in range(r.order):
        if seen >> v & 1:
            continue
        count += 1
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
    return count


def is_bipartite_by_cardinality(r: ReconGraph) -> bool:
    """Confirm every TAR edge joins sets of opposite size parity."""
    if r.mode != "TAR":
        raise ValueError("is_bipartite_by_cardinality expects a TAR-mode graph")
    for i, row in enumerate(r.tar_adj):
        pi = r.family[i].bit_count() & 1
        for j in bits(row):
            if r.family[j].bit_count() & 1 == pi:
                raise AssertionError(f"TAR edge ({i}, {j}) joins equal-parity sets")
    return True


def to_dot(r: ReconGraph) -> str:
    """Graphviz rendering: TAR edges solid, TS edges dashed."""
    from .graph import format_set

    lines = ["graph tars {"]
    for i, s in enumerate(r.family):
        lines.append(f'  {i} [label="{format_set(s)}"];')
    for i, j, kind in r.edges():
        style = "solid" if kind == "TAR" else "dashed"
        lines.append(f"  {i} -- {j} [style={style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
