"""Seed graphs as per-vertex neighbourhood bitmasks.

Vertices are the dense integers ``0..order-1``; a vertex set is an int whose
bit ``v`` is set iff ``v`` belongs to the set.  Everything in this module is
immutable and hashable so results can be cached per graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

MAX_ORDER = 24


class GraphError(ValueError):
    """Raised for malformed graph input or violated preconditions."""


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def format_set(mask: int) -> str:
    return "{" + ",".join(str(v) for v in bits(mask)) + "}"


@dataclass(frozen=True)
class Graph:
    order: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.order:
            raise GraphError(f"expected {self.order} adjacency rows, got {len(self.adj)}")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex outside 0..{self.order - 1}")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge ({u}, {v}) out of range for order {order}")
            if u == v:
                raise GraphError(f"loop edge at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(order, tuple(rows))

    @classmethod
    def empty(cls, order: int) -> "Graph":
        return cls(order, (0,) * order)

    @classmethod
    def complete(cls, order: int) -> "Graph":
        full = (1 << order) - 1
        return cls(order, tuple(full ^ (1 << v) for v in range(order)))

    @classmethod
    def path(cls, order: int) -> "Graph":
        return cls.from_edges(order, ((i, i + 1) for i in range(order - 1)))

    @classmethod
    def cycle(cls, order: int) -> "Graph":
        return cls.from_edges(order, ((i, (i + 1) % order) for i in range(order)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """K_{1,leaves} with the centre at vertex 0."""
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @property
    def full(self) -> int:
        return (1 << self.order) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.order) for v in bits(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def closed(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def complement(self) -> "Graph":
        full = self.full
        return Graph(self.order, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled 0.. in increasing id order."""
        keep = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(keep)}
        rows = []
        for v in keep:
            rows.append(sum(1 << pos[u] for u in bits(self.adj[v]) if u in pos))
        return Graph(len(keep), tuple(rows))

    def components(self) -> list[list[int]]:
        """Connected components as sorted vertex lists, ordered by smallest member."""
        seen = 0
        comps = []
        for v in range(self.order):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_forest(self) -> bool:
        return self.num_edges() == self.order - len(self.components())

    def is_complete(self) -> bool:
        return all(row.bit_count() == self.order - 1 for row in self.adj)

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.order
        for v in range(self.order):
            rows[perm[v]] = remap(self.adj[v], perm)
        return Graph(self.order, tuple(rows))

    def __str__(self):
        return f"Graph(order={self.order}, edges={self.edges()})"


def remap(mask: int, perm: list[int]) -> int:
    """Rename each member ``v`` of ``mask`` to ``perm[v]``."""
    out = 0
    for v in bits(mask):
        out |= 1 << perm[v]
    return out


def check_order(g: Graph, cap: int = MAX_ORDER) -> None:
    if g.order > cap:
        raise GraphError(f"order {g.order} exceeds the supported maximum of {cap}")


# parsing ----------------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n <order>`` header followed by one ``u v`` pair per line.

    Blank lines and ``#`` comments are ignored; duplicate edges collapse.
    """
    order = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if order is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphError(f"line {lineno}: expected header 'n <order>', got {raw!r}")
            try:
                order = int(parts[1])
            except ValueError:
                raise GraphError(f"line {lineno}: bad order {parts[1]!r}") from None
            if order < 0:
                raise GraphError(f"line {lineno}: negative order")
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer vertex in {raw!r}") from None
        if not (0 <= u < order and 0 <= v < order):
            raise GraphError(f"line {lineno}: vertex out of range 0..{order - 1}")
        if u == v:
            raise GraphError(f"line {lineno}: loop edge at {u}")
        edges.append((u, v))
    if order is None:
        raise GraphError("missing 'n <order>' header")
    return Graph.from_edges(order, edges)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.order}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (orders up to 62, optional ``>>graph6<<`` header)."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    vals = []
    for ch in s:
        c = ord(ch) - 63
        if not 0 <= c <= 63:
            raise GraphError(f"invalid graph6 character {ch!r}")
        vals.append(c)
    n = vals[0]
    if n == 63:
        raise GraphError("graph6 orders above 62 are not supported")
    need = n * (n - 1) // 2
    payload = vals[1:]
    if len(payload) * 6 < need:
        raise GraphError(f"truncated graph6 payload: need {need} bits, got {len(payload) * 6}")
    if len(payload) != (need + 5) // 6:
        raise GraphError("graph6 payload has trailing characters")
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if payload[k // 6] >> (5 - k % 6) & 1:
                edges.append((i, j))
            k += 1
    return Graph.from_edges(n, edges)


def to_graph6(g: Graph) -> str:
    if g.order > 62:
        raise GraphError("graph6 encoding limited to order 62")
    out = [chr(g.order + 63)]
    acc = nbits = 0
    for j in range(1, g.order):
        for i in range(j):
            acc = acc << 1 | (g.adj[j] >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


# combination operators --------------------------------------------------


def union(g: Graph, h: Graph) -> Graph:
    """Disjoint union; ``h``'s vertices are shifted up by ``g.order``."""
    shift = g.order
    return Graph(g.order + h.order, g.adj + tuple(row << shift for row in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between ``g`` and ``h``."""
    shift = g.order
    gmask = g.full
    hmask = h.full << shift
    rows = tuple(row | hmask for row in g.adj) + tuple((row << shift) | gmask for row in h.adj)
    return Graph(g.order + h.order, rows)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """Vertex ``(u, v)`` gets id ``u * h.order + v``."""
    m = h.order
    rows = []
    for u in range(g.order):
        for v in range(m):
            row = h.adj[v] << (u * m)
            for w in bits(g.adj[u]):
                row |= 1 << (w * m + v)
            rows.append(row)
    return Graph(g.order * m, tuple(rows))


# structure recognition ---------------------------------------------------


@dataclass(frozen=True)
class ReductionStep:
    """One Operation A or B step, vertex ids in the input forest's labelling.

    OpA removes ``u`` and ``v`` where N(u) = {x, v} and N(v) = {u}.
    OpB removes ``v`` where N(u) = N(v) = {x}.
    """

    kind: str
    u: int
    v: int
    x: int

    def removed(self) -> int:
        return (1 << self.u | 1 << self.v) if self.kind == "OpA" else 1 << self.v


@dataclass(frozen=True)
class ReductionSequence:
    steps: tuple[ReductionStep, ...]
    base: Graph
    kept: tuple[int, ...] = field(default=())  # input ids surviving into base, increasing


def step_applies(g: Graph, alive: int, step: ReductionStep) -> bool:
    """Check a step's neighbourhood precondition inside the subgraph induced on ``alive``."""
    need = 1 << step.u | 1 << step.v | 1 << step.x
    if alive & need != need or len({step.u, step.v, step.x}) != 3:
        return False
    nu = g.adj[step.u] & alive
    nv = g.adj[step.v] & alive
    if step.kind == "OpA":
        return nu == (1 << step.x | 1 << step.v) and nv == 1 << step.u
    if step.kind == "OpB":
        return nu == 1 << step.x and nv == 1 << step.x
    return False


def _find_step(g: Graph, alive: int) -> Optional[ReductionStep]:
    for x in bits(alive):
        leaves = [w for w in bits(g.adj[x] & alive) if g.adj[w] & alive == 1 << x]
        if len(leaves) >= 2:
            return ReductionStep("OpB", leaves[0], leaves[1], x)
    for x in bits(alive):
        for u in bits(g.adj[x] & alive):
            nu = g.adj[u] & alive
            if nu.bit_count() != 2:
                continue
            v = (nu & ~(1 << x)).bit_length() - 1
            if g.adj[v] & alive == 1 << u:
                return ReductionStep("OpA", u, v, x)
    return None


def find_reduction_sequence(f: Graph) -> ReductionSequence:
    """Reduce a forest by Operations A/B until every component is P1 or P2.

    Operation B at the lowest-id centre is preferred, then Operation A at the
    lowest-id attachment vertex, so the result is deterministic.
    """
    if not f.is_forest():
        raise GraphError("find_reduction_sequence requires a forest")
    alive = f.full
    steps = []
    while True:
        step = _find_step(f, alive)
        if step is None:
            break
        steps.append(step)
        alive &= ~step.removed()
    kept = tuple(bits(alive))
    base = f.induced(kept)
    if any(len(c) > 2 for c in base.components()):
        raise GraphError("reduction got stuck before reaching P1/P2 components")
    return ReductionSequence(tuple(steps), base, kept)


def replay_reduction(f: Graph, seq: ReductionSequence) -> Graph:
    """Apply ``seq`` to ``f`` checking each precondition; return the residual graph."""
    alive = f.full
    for i, step in enumerate(seq.steps):
        if not step_applies(f, alive, step):
            raise GraphError(f"step {i} ({step}) does not apply")
        alive &= ~step.removed()
    return f.induced(bits(alive))


def join_parts(g: Graph) -> Optional[tuple[list[int], list[int]]]:
    """Vertex lists (A, B) with G = G[A] v G[B], A the co-component holding vertex 0."""
    if g.order < 2:
        return None
    comps = g.complement().components()
    if len(comps) < 2:
        return None
    first = comps[0]
    rest = sorted(v for c in comps[1:] for v in c)
    return first, rest


def join_decompose(g: Graph) -> Optional[tuple[Graph, Graph]]:
    """Split ``g`` as a join when its complement is disconnected, else None."""
    parts = join_parts(g)
    if parts is None:
        return None
    return g.induced(parts[0]), g.induced(parts[1])


def threshold_elimination(g: Graph) -> Optional[tuple[list[str], list[int]]]:
    """Creation tags and the vertex added at each step, or None if not threshold."""
    if g.order == 0:
        return None
    alive = g.full
    removed = []
    while alive.bit_count() > 1:
        size = alive.bit_count()
        pick = None
        for v in bits(alive):
            d = (g.adj[v] & alive).bit_count()
            if d == 0:
                pick = (v, "isolated")
                break
            if d == size - 1:
                pick = (v, "universal")
                break
        if pick is None:
            return None
        removed.append(pick)
        alive &= ~(1 << pick[0])
    removed.append((alive.bit_length() - 1, "start"))
    removed.reverse()
    return [tag for _, tag in removed], [v for v, _ in removed]


def threshold_sequence(g: Graph) -> Optional[list[str]]:
    """Creation sequence (``start`` then ``isolated``/``universal`` tags) or None."""
    found = threshold_elimination(g)
    return None if found is None else found[0]


def build_threshold(tags: list[str]) -> Graph:
    g = Graph.empty(0)
    for tag in tags:
        if tag == "universal":
            g = join(g, Graph.empty(1))
        else:
            g = union(g, Graph.empty(1))
    return g
