"""Dominating sets of a seed graph."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .graph import Graph, GraphError, bits, check_order


def is_dominating(g: Graph, s: int) -> bool:
    if s & ~g.full:
        raise GraphError("vertex set uses bits outside the graph")
    covered = s
    for v in bits(s):
        covered |= g.adj[v]
    return covered == g.full


@dataclass(frozen=True)
class DominatingFamily:
    seed: Graph
    sets: tuple[int, ...]

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    def index(self, mask: int) -> int:
        i = int(np.searchsorted(self._array, mask))
        if i < len(self.sets) and self.sets[i] == mask:
            return i
        raise KeyError(mask)

    def __contains__(self, mask) -> bool:
        try:
            self.index(mask)
        except KeyError:
            return False
        return True

    @property
    def _array(self) -> np.ndarray:
        arr = self.__dict__.get("_arr")
        if arr is None:
            arr = np.fromiter(self.sets, dtype=np.int64, count=len(self.sets))
            object.__setattr__(self, "_arr", arr)
        return arr


@lru_cache(maxsize=256)
def enumerate_dominating_sets(g: Graph) -> DominatingFamily:
    """All dominating sets of ``g`` in ascending mask order.

    Every mask ``0..2^n - 1`` is tested at once: the closed neighbourhood of
    each member is OR-ed into a coverage array and compared against V(G).
    """
    check_order(g)
    n = g.order
    if n == 0:
        return DominatingFamily(g, (0,))
    masks = np.arange(1 << n, dtype=np.uint32)
    cover = np.zeros_like(masks)
    for v in range(n):
        cover[(masks >> np.uint32(v)) & np.uint32(1) == 1] |= np.uint32(g.closed(v))
    found = masks[cover == g.full]
    return DominatingFamily(g, tuple(int(m) for m in found))


def domination_number(g: Graph) -> int:
    if g.order == 0:
        raise GraphError("domination number undefined for the empty graph")
    return min(s.bit_count() for s in enumerate_dominating_sets(g))
