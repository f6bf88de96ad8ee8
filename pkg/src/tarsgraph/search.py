"""Backtracking cycle search, certificates, and their validators.

The search is the independent check on every constructive result: it knows
nothing about Gray codes or lifting, only the adjacency bitsets of a
:class:`~tarsgraph.recon.ReconGraph`.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Optional

from .graph import Graph, bits, to_graph6
from .recon import ReconGraph, build_recon_graph

DEFAULT_BUDGET = 10**8


def default_budget() -> int:
    env = os.environ.get("TARS_RECON_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Violation:
    """First problem found by a validator; ``position`` indexes the cycle."""

    message: str
    position: Optional[int] = None
    length: Optional[int] = None
    found: Optional[str] = None

    def __str__(self):
        where = []
        if self.length is not None:
            where.append(f"length {self.length}")
        if self.position is not None:
            where.append(f"position {self.position}")
        prefix = f"[{', '.join(where)}] " if where else ""
        suffix = f" (adjacency found: {self.found})" if self.found else ""
        return prefix + self.message + suffix


def validate_cycle(r: ReconGraph, cycle) -> Optional[Violation]:
    """Return None if ``cycle`` is a cycle of ``r`` in its active mode, else the first violation."""
    c = list(cycle)
    if len(c) < 3:
        return Violation(f"length {len(c)} < 3")
    seen = set()
    for i, v in enumerate(c):
        if not (isinstance(v, int) and 0 <= v < r.order):
            return Violation(f"vertex id {v!r} out of range 0..{r.order - 1}", position=i)
        if v in seen:
            return Violation(f"vertex {v} repeated", position=i)
        seen.add(v)
    for i in range(len(c)):
        a, b = c[i], c[(i + 1) % len(c)]
        if not r.has_edge(a, b):
            kind = r.kind(a, b)
            found = "none" if kind is None else f"{kind}, inactive in mode {r.mode}"
            return Violation(f"no edge between {a} and {b}", position=i, found=found)
    return None


@dataclass
class PancyclicCertificate:
    """One cycle per length 3..N of the reconfiguration graph of ``seed``."""

    seed: Graph
    N: int
    cycles: dict[int, tuple[int, ...]]
    provenance: dict[int, str]
    mode: str = "TARS"
    strategy: str = ""
    trace: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "seed": {"order": self.seed.order, "edges": [list(e) for e in self.seed.edges()],
                     "graph6": to_graph6(self.seed)},
            "mode": self.mode,
            "N": self.N,
            "strategy": self.strategy,
            "cycles": {str(k): list(self.cycles[k]) for k in sorted(self.cycles)},
            "provenance": {str(k): self.provenance[k] for k in sorted(self.provenance)},
            "trace": list(self.trace),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "PancyclicCertificate":
        try:
            seed = Graph.from_edges(int(data["seed"]["order"]), [tuple(e) for e in data["seed"]["edges"]])
            cycles = {int(k): tuple(int(x) for x in v) for k, v in data["cycles"].items()}
            prov = {int(k): str(v) for k, v in data.get("provenance", {}).items()}
            return cls(seed, int(data["N"]), cycles, prov, data.get("mode", "TARS"),
                       data.get("strategy", ""), list(data.get("trace", [])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from exc

    @classmethod
    def loads(cls, text: str) -> "PancyclicCertificate":
        return cls.from_json(json.loads(text))


def validate_certificate(r: ReconGraph, cert: PancyclicCertificate) -> Optional[Violation]:
    if cert.N != r.order:
        return Violation(f"N mismatch: certificate says {cert.N}, graph has {r.order}")
    if cert.mode != r.mode:
        return Violation(f"mode mismatch: certificate {cert.mode}, graph {r.mode}")
    want = set(range(3, r.order + 1))
    have = set(cert.cycles)
    if have - want:
        return Violation(f"unexpected lengths {sorted(have - want)}")
    if want - have:
        return Violation(f"gap at {min(want - have)}", length=min(want - have))
    for length in sorted(cert.cycles):
        c = cert.cycles[length]
        if len(c) != length:
            return Violation(f"cycle listed under {length} has {len(c)} vertices", length=length)
        bad = validate_cycle(r, c)
        if bad is not None:
            return Violation(bad.message, bad.position, length, bad.found)
    return None


# search -------------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    """``status`` is ``found``, ``absent`` (space exhausted) or ``budget``."""

    status: str
    cycle: Optional[tuple[int, ...]] = None
    expansions: int = 0
    note: str = ""


class _Budget(Exception):
    pass


def _reach(adj, start_row: int, avail: int) -> int:
    comp = frontier = start_row & avail
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= adj[u]
        frontier = nxt & avail & ~comp
        comp |= frontier
    return comp


def _dfs_from(adj, n_total: int, s: int, length: int, allowed: int, state: list, hamilton: bool):
    """Find a cycle of ``length`` whose minimum vertex is ``s``; None if none exists."""
    budget = state[1]
    path = [s]
    visited = 1 << s
    sadj = adj[s] & allowed
    if sadj.bit_count() < 2:
        return None
    stack = []

    def candidates(e: int) -> list[int]:
        d = len(path)
        rem = length - d
        avail = allowed & ~visited
        cand = adj[e] & avail
        # the closing vertex must lie above path[1] (one orientation per cycle)
        close = sadj & ~((2 << path[1]) - 1) if d > 1 else sadj
        if rem == 1:
            return list(bits(cand & close))
        if not cand or not close & avail:
            return []
        if rem >= 2:
            reach = _reach(adj, adj[e], avail)
            if reach.bit_count() < rem or not reach & close:
                return []
            if hamilton and length == n_total:
                if reach != avail:
                    return []
                ends = avail | (1 << e) | (1 << s)
                for w in bits(avail):
                    if (adj[w] & ends).bit_count() < 2:
                        return []
        out = list(bits(cand))
        if hamilton:
            out.sort(key=lambda c: ((adj[c] & avail).bit_count(), c))
        return out

    stack.append(iter(candidates(s)))
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            last = path.pop()
            visited &= ~(1 << last)
            continue
        state[0] += 1
        if budget is not None and state[0] > budget:
            raise _Budget
        path.append(nxt)
        visited |= 1 << nxt
        if len(path) == length:
            return tuple(path)
        stack.append(iter(candidates(nxt)))
    return None


def find_cycle_of_length(r: ReconGraph, length: int, budget: Optional[int] = None,
                         hamilton_pruning: Optional[bool] = None) -> SearchResult:
    """Anchored DFS for a cycle of exactly ``length`` vertices.

    The cycle's smallest vertex is fixed as the anchor and only larger
    vertices may follow it; the second vertex is kept below the last one so
    each cycle is met in a single orientation.  ``budget`` caps node
    expansions (None means unlimited).
    """
    n = r.order
    if not 3 <= length <= n:
        raise ValueError(f"length {length} outside 3..{n}")
    if r.mode == "TAR" and length % 2:
        return SearchResult("absent", note="TAR graphs are bipartite by cardinality parity")
    if hamilton_pruning is None:
        hamilton_pruning = length >= n - 4
    adj = r.adj
    state = [0, budget]
    try:
        for s in range(n - length + 1):
            allowed = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)
            found = _dfs_from(adj, n, s, length, allowed, state, hamilton_pruning)
            if found is not None:
                bad = validate_cycle(r, found)
                assert bad is None, f"search produced an invalid cycle: {bad}"
                return SearchResult("found", found, state[0])
    except _Budget:
        return SearchResult("budget", None, state[0])
    return SearchResult("absent", None, state[0])


def find_hamilton_cycle(r: ReconGraph, budget: Optional[int] = None) -> SearchResult:
    if r.order < 3:
        raise ValueError("Hamilton cycles need at least 3 vertices")
    if r.mode == "TAR" and r.order % 2:
        return SearchResult("absent", note="odd-order bipartite graph")
    return find_cycle_of_length(r, r.order, budget, hamilton_pruning=True)


def _chord_shortcut(r: ReconGraph, cycles, target: int) -> Optional[tuple[int, ...]]:
    adj = r.adj
    for c in cycles:
        m = len(c)
        if m <= target:
            continue
        skip = m - target  # drop ``skip`` consecutive vertices via a chord
        for i in range(m):
            j = (i + skip + 1) % m
            if adj[c[i]] >> c[j] & 1:
                if j > i:
                    return tuple(c[: i + 1] + c[j:])
                return tuple(c[j: i + 1])
    return None


@dataclass
class PancyclicReport:
    N: int
    status: dict[int, str]
    cycles: dict[int, tuple[int, ...]]
    expansions: dict[int, int]

    @property
    def first_failure(self) -> Optional[int]:
        bad = [k for k, s in self.status.items() if s == "absent"]
        return min(bad) if bad else None

    @property
    def inconclusive(self) -> list[int]:
        return sorted(k for k, s in self.status.items() if s == "budget")

    @property
    def verdict(self) -> str:
        if self.first_failure is not None:
            return f"fails-at-{self.first_failure}"
        if self.inconclusive:
            return "inconclusive"
        return "pancyclic"

    def certificate(self, r: ReconGraph) -> Optional[PancyclicCertificate]:
        if self.verdict != "pancyclic":
            return None
        return PancyclicCertificate(r.seed, r.order, dict(sorted(self.cycles.items())),
                                    {k: "searched" for k in self.cycles}, r.mode, "searched")


def check_pancyclic(r: ReconGraph, budget: Optional[int] = None, lengths=None) -> PancyclicReport:
    """Search every length 3..N, longest first, reusing chords of earlier finds."""
    n = r.order
    todo = sorted(lengths if lengths is not None else range(3, n + 1), reverse=True)
    status, cycles, spent = {}, {}, {}
    for length in todo:
        short = _chord_shortcut(r, [cycles[k] for k in sorted(cycles)], length)
        if short is not None and validate_cycle(r, short) is None:
            status[length], cycles[length], spent[length] = "found", short, 0
            continue
        res = find_cycle_of_length(r, length, budget)
        status[length] = res.status
        spent[length] = res.expansions
        if res.cycle is not None:
            cycles[length] = res.cycle
    return PancyclicReport(n, dict(sorted(status.items())), cycles, dict(sorted(spent.items())))


def searched_certificate(g: Graph, budget: Optional[int] = None,
                         mode: str = "TARS") -> tuple[PancyclicReport, Optional[PancyclicCertificate]]:
    r = build_recon_graph(g, mode)
    if r.order < 3:
        rep = PancyclicReport(r.order, {}, {}, {})
        return rep, PancyclicCertificate(g, r.order, {}, {}, mode, "searched")
    rep = check_pancyclic(r, budget)
    return rep, rep.certificate(r)
