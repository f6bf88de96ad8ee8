"""Explicit pancyclicity certificates built from the structure of the seed graph.

Cycles are assembled as lists of dominating sets (bitmasks over the seed's
vertices) and only turned into reconfiguration-vertex ids at the end, where
every cycle is validated against the actual TARS-graph.  Nothing here is
trusted: a cycle that fails validation raises :class:`ConstructionError`.

Notation follows the usual shorthand ``S^u`` for ``S | {u}``; in code that is
``s | U`` with ``U = 1 << u``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .domination import enumerate_dominating_sets, is_dominating
from .graph import (
    Graph,
    GraphError,
    ReductionStep,
    bits,
    find_reduction_sequence,
    format_set,
    join,
    join_parts,
    remap,
    step_applies,
    threshold_elimination,
    union,
)
from .gray import bipan_cycle_with_edge, brgc_term, hamiltonian_path_between_adjacent, word_to_set
from .recon import build_recon_graph, edge_kind
from .search import PancyclicCertificate, searched_certificate, validate_certificate

log = logging.getLogger(__name__)

K1 = Graph.empty(1)


class ConstructionError(RuntimeError):
    """A constructed cycle failed validation, or a proof precondition did not hold."""


class SearchVerdictError(ConstructionError):
    """The search fallback did not prove pancyclicity; ``report`` says why."""

    def __init__(self, report):
        super().__init__(f"search verdict {report.verdict}")
        self.report = report


# plumbing -----------------------------------------------------------------


def certificate_masks(cert: PancyclicCertificate) -> dict[int, list[int]]:
    fam = enumerate_dominating_sets(cert.seed)
    return {k: [fam[i] for i in c] for k, c in cert.cycles.items()}


def finalize(seed: Graph, masks: dict[int, list[int]], strategy: str, trace: list[str],
             provenance: str = "constructed") -> PancyclicCertificate:
    """Map mask cycles to recon ids and validate the whole certificate."""
    r = build_recon_graph(seed)
    cycles = {}
    for length in sorted(masks):
        c = masks[length]
        try:
            cycles[length] = tuple(r.family.index(m) for m in c)
        except KeyError as exc:
            raise ConstructionError(f"{strategy}: length {length} uses non-dominating set "
                                    f"{format_set(exc.args[0])}") from None
    cert = PancyclicCertificate(seed, r.order, cycles, {k: provenance for k in cycles},
                                "TARS", strategy, list(trace))
    bad = validate_certificate(r, cert)
    if bad is not None:
        raise ConstructionError(f"{strategy}: {bad}")
    return cert


def trivial_certificate(seed: Graph, strategy: str = "trivial", trace=()) -> PancyclicCertificate:
    n = len(enumerate_dominating_sets(seed))
    if n >= 3:
        raise ConstructionError("trivial certificate needs fewer than 3 dominating sets")
    return PancyclicCertificate(seed, n, {}, {}, "TARS", strategy, list(trace))


def relabel_certificate(cert: PancyclicCertificate, perm: Sequence[int], target: Graph,
                        strategy: Optional[str] = None) -> PancyclicCertificate:
    """Transport ``cert`` along the vertex renaming ``v -> perm[v]`` onto ``target``."""
    if cert.seed.relabel(list(perm)) != target:
        raise ConstructionError("relabelling does not map the seed onto the target graph")
    strategy = strategy or cert.strategy
    if cert.N < 3:
        return trivial_certificate(target, strategy, cert.trace)
    masks = {k: [remap(m, list(perm)) for m in c] for k, c in certificate_masks(cert).items()}
    return finalize(target, masks, strategy, cert.trace)


def splice(cycle: list[int], p: int, q: int, middle: Sequence[int]) -> None:
    """Replace the cycle edge (p, q) by the path p, *middle, q, in place."""
    i = cycle.index(p)
    m = len(cycle)
    if cycle[(i + 1) % m] == q:
        cycle[i + 1:i + 1] = middle
    elif cycle[i - 1] == q:
        cycle[i:i] = list(reversed(middle))
    else:
        raise ConstructionError(f"{format_set(p)} and {format_set(q)} are not consecutive")


def _grow(base: list[int], ops: list[Callable[[list[int]], None]], out: dict[int, list[int]]) -> list[int]:
    """Apply ``ops`` one after another, recording every intermediate cycle by length."""
    cur = list(base)
    out.setdefault(len(cur), list(cur))
    for op in ops:
        op(cur)
        out.setdefault(len(cur), list(cur))
    return cur


def _sp(p, q, middle):
    return lambda c: splice(c, p, q, middle)


def _require_coverage(masks: dict[int, list[int]], n_total: int, what: str) -> dict[int, list[int]]:
    missing = [k for k in range(3, n_total + 1) if k not in masks]
    if missing:
        raise ConstructionError(f"{what}: no cycle produced for lengths {missing[:8]}")
    return {k: masks[k] for k in range(3, n_total + 1)}


def _rotate(c: list[int], k: int) -> list[int]:
    return c[k:] + c[:k]


# Operation A / B lifting ------------------------------------------------------


@dataclass(frozen=True)
class LiftContext:
    """``Hprime`` is ``H`` after ``step``; ``embed[i]`` is the H-id of H'-vertex ``i``."""

    H: Graph
    Hprime: Graph
    step: ReductionStep
    embed: tuple[int, ...]

    def __post_init__(self):
        if not step_applies(self.H, self.H.full, self.step):
            raise ConstructionError(f"{self.step} does not apply to H")
        keep = [v for v in range(self.H.order) if not self.step.removed() >> v & 1]
        if list(self.embed) != keep or self.H.induced(keep) != self.Hprime:
            raise ConstructionError("Hprime is not H minus the removed vertices")

    def up(self, mask: int) -> int:
        return remap(mask, list(self.embed))


@dataclass(frozen=True)
class BoundarySetJ:
    """Sets dominating H' - {x} but not H' (ids of H')."""

    members: tuple[int, ...]


def compute_boundary_J(hprime: Graph, x: int) -> BoundarySetJ:
    if not 0 <= x < hprime.order:
        raise GraphError(f"vertex {x} not in graph")
    rest = [w for w in range(hprime.order) if w != x]
    sub = hprime.induced(rest)
    out = []
    for s in enumerate_dominating_sets(sub):
        m = remap(s, rest)
        if not is_dominating(hprime, m):
            out.append(m)
    return BoundarySetJ(tuple(sorted(out)))


def lift_operation_A(ctx: LiftContext, cert_p: PancyclicCertificate) -> PancyclicCertificate:
    """Certificate for ε(H) from one for ε(H') where H' = H - {u, v} by Operation A."""
    st = ctx.step
    if st.kind != "OpA":
        raise ConstructionError("lift_operation_A needs an OpA step")
    U, V, X = 1 << st.u, 1 << st.v, 1 << st.x
    n = cert_p.N
    if n % 2 == 0:
        raise ConstructionError(f"ε(H') has an even number ({n}) of vertices")
    if n < 3:
        raise ConstructionError("Operation A lift needs |ε(H')| >= 3")
    base = {k: [ctx.up(m) for m in c] for k, c in certificate_masks(cert_p).items()}
    xp = ctx.embed.index(st.x)
    J = [ctx.up(s) for s in compute_boundary_J(ctx.Hprime, xp).members]
    sx = {s | X: s for s in J}
    trace = [f"OpA lift u={st.u} v={st.v} x={st.x}: n={n}, |J|={len(J)}"]

    G = base[n]
    k = next((i for i, g in enumerate(G) if g not in sx), None)
    if k is None:
        raise ConstructionError("every vertex of the Hamilton cycle has the form S^x")
    G = _rotate(G, k)
    if k:
        trace.append(f"rotated Hamilton cycle by {k} so G1 is not of the form S^x")
    F = base[n - 1] if n - 1 >= 3 else G[:2]

    out: dict[int, list[int]] = {}
    for length in range(3, n + 1):
        out[length] = [m | V for m in base[length]]
    out[n + 1] = [F[0] | V, F[0] | U | V, F[1] | U | V, F[1] | V] + [f | V for f in F[2:]]
    g1, g2, rest = G[0], G[1], [g | V for g in G[2:]]
    out[n + 2] = [g1 | V, g1 | U | V, g2 | U | V, g2 | V] + rest
    out[n + 3] = [g1 | V, g1 | U | V, g1 | U, g2 | U, g2 | V] + rest
    out[n + 4] = [g1 | V, g1 | U | V, g1 | U, g2 | U, g2 | U | V, g2 | V] + rest

    gn = G[-1]
    z_e = [g1 | U, g2 | U, g2 | U | V, g1 | U | V] + [g | V for g in G] + [gn | U]
    z_o = z_e[:-1] + [gn | U | V, gn | U]
    pockets = []
    for a in range(2, n - 2, 2):  # 1-based odd j = a + 1 in 3..n-2
        ga, gb = G[a], G[a + 1]
        pockets.append(_sp(ga | V, gb | V, [ga | U | V, gb | U | V]))
        pockets.append(_sp(ga | U | V, gb | U | V, [ga | U, gb | U]))
    ze_star = _grow(z_e, pockets, out)
    zo_star = _grow(z_o, pockets, out)
    assert len(ze_star) == 3 * n - 1 and len(zo_star) == 3 * n

    last = sx.get(gn)
    j_ops = [(s, _sp(s | X | U, s | X | U | V, [s | U, s | U | V])) for s in J]
    zo_full = _grow(zo_star, [op for _, op in j_ops], out)
    _grow(ze_star, [op for s, op in j_ops if s != last], out)
    if last is not None:
        patched = [m for m in zo_full if m not in (last | U, last | U | V)]
        splice(patched, gn | V, gn | U | V, [last | U | V])
        out.setdefault(len(patched), patched)
        trace.append(f"G_n = S^x for S={format_set(last)}: shortened odd cycle for the top even length")

    total = 3 * n + 2 * len(J)
    if len(enumerate_dominating_sets(ctx.H)) != total:
        raise ConstructionError(f"count identity failed: |ε(H)| != 3*{n} + 2*{len(J)}")
    masks = _require_coverage(out, total, "OpA lift")
    return finalize(ctx.H, masks, "forest", cert_p.trace + trace)


@dataclass(frozen=True)
class OpBPartition:
    Xp: tuple[int, ...]
    X: tuple[int, ...]
    Bp: tuple[int, ...]
    B: tuple[int, ...]
    U: tuple[int, ...]


def opb_partition(h: Graph, step: ReductionStep) -> OpBPartition:
    """Split the dominating sets of H by membership of x, u and v."""
    Xb, Ub, Vb = 1 << step.x, 1 << step.u, 1 << step.v
    parts = {"Xp": [], "X": [], "Bp": [], "B": [], "U": []}
    for s in enumerate_dominating_sets(h):
        key = (bool(s & Xb), bool(s & Ub), bool(s & Vb))
        name = {(True, False, False): "Xp", (True, False, True): "X", (True, True, False): "Bp",
                (True, True, True): "B", (False, True, True): "U"}.get(key)
        if name is None:
            raise ConstructionError(f"{format_set(s)} fits none of the five classes")
        parts[name].append(s)
    p = OpBPartition(**{k: tuple(v) for k, v in parts.items()})
    if not (len(p.Xp) == len(p.X) == len(p.Bp) == len(p.B)):
        raise ConstructionError("class sizes differ")
    if sorted(s | Vb for s in p.Xp) != list(p.X) or sorted(s | Ub for s in p.Xp) != list(p.Bp) \
            or sorted(s | Ub | Vb for s in p.Xp) != list(p.B):
        raise ConstructionError("class bijections fail")
    return p


def _x_runs(cycle: list[int], is_x) -> list[list[int]]:
    """Maximal cyclic runs of consecutive X-members, as lists of positions."""
    m = len(cycle)
    flags = [is_x(s) for s in cycle]
    if all(flags):
        raise ConstructionError("cycle lies entirely in X")
    start = next(i for i in range(m) if not flags[i])
    runs, cur = [], []
    for k in range(1, m + 1):
        i = (start + k) % m
        if flags[i]:
            cur.append(i)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def lift_operation_B(ctx: LiftContext, cert_p: PancyclicCertificate) -> PancyclicCertificate:
    """Certificate for ε(H) from one for ε(H') where H' = H - {v} by Operation B."""
    st = ctx.step
    if st.kind != "OpB":
        raise ConstructionError("lift_operation_B needs an OpB step")
    U, V, X = 1 << st.u, 1 << st.v, 1 << st.x
    n = cert_p.N
    if n < 3 or n % 2 == 0:
        raise ConstructionError(f"Operation B lift needs odd |ε(H')| >= 3, got {n}")
    part = opb_partition(ctx.H, st)
    xset = set(part.X)
    base = {k: [ctx.up(m) | V for m in c] for k, c in certificate_masks(cert_p).items()}
    trace = [f"OpB lift u={st.u} v={st.v} x={st.x}: n={n}, |X|={len(part.X)}"]
    total = n + 2 * len(part.X)
    if len(enumerate_dominating_sets(ctx.H)) != total:
        raise ConstructionError("count identity failed: |ε(H)| != n + 2|X|")

    def xp(s):  # X_j -> X'_j
        return s & ~V

    def bp(s):  # X_j -> B'_j
        return (s & ~V) | U

    def detours(cycle, skip=None, half=None, split=None):
        """Detour operations on every maximal X-run of ``cycle``.

        ``skip``: an X-member whose special detour is omitted; ``half``: one
        whose pair detour stops after the X' stage; ``split``: an X-member
        treated as a run boundary that receives no detour at all.
        """
        ops = []
        m = len(cycle)
        for run in _x_runs(cycle, lambda s: s in xset):
            q = [cycle[i] for i in run]
            pred = cycle[(run[0] - 1) % m]
            succ = cycle[(run[-1] + 1) % m]
            pieces = [(q, False)]
            if split is not None and split in q:
                p = q.index(split)
                q1, q2 = q[:p], q[p + 1:]
                pieces = [(q1, len(q1) % 2 == 1), (q2, False)]
            for seg, special_first in pieces:
                if not seg:
                    continue
                if special_first:
                    a = seg[0]
                    ops.append(_sp(pred, a, [bp(a), xp(a)]))
                    seg = seg[1:]
                for k in range(0, len(seg) - 1, 2):
                    a, b = seg[k], seg[k + 1]
                    ops.append(_sp(a, b, [xp(a), xp(b)]))
                    if half not in (a, b):
                        ops.append(_sp(xp(a), xp(b), [bp(a), bp(b)]))
                if len(seg) % 2 and not special_first:
                    a = seg[-1]
                    if a != skip:
                        nxt = succ if seg[-1] == q[-1] else None
                        if nxt is None:
                            raise ConstructionError("special detour away from a run end")
                        ops.append(_sp(a, nxt, [xp(a), bp(a)]))
        return ops

    out = {k: list(c) for k, c in base.items()}
    z_o = base[n]
    _grow(z_o, detours(z_o), out)

    if n - 1 >= 3:
        z_e = base[n - 1]
    else:  # ε(H') is a triangle: use its edge with the most X-members
        pairs = [[z_o[i], z_o[(i + 1) % n]] for i in range(n)]
        z_e = max(pairs, key=lambda p: sum(s in xset for s in p))
        trace.append("ε(H') is K3: even base is a single edge")
    _grow(z_e, detours(z_e), out)

    missing = [s for s in z_o if s not in set(z_e)]
    x_missing = [s for s in missing if s in xset]
    if x_missing and len(z_e) >= 3:
        x1 = x_missing[0]
        b1 = x1 | U
        cyc = list(z_e)
        i = cyc.index(b1)
        prev, nxt = cyc[i - 1], cyc[(i + 1) % len(cyc)]
        bset = set(part.B)
        if nxt in bset or prev in bset:
            if nxt not in bset:
                cyc.reverse()
                i = cyc.index(b1)
                nxt = cyc[(i + 1) % len(cyc)]
            b2 = nxt
            x2 = b2 & ~U
            trace.append(f"Z_e misses X1={format_set(x1)}: case 1 via B2={format_set(b2)}")
            ops = [_sp(b1, b2, [b1 & ~V, xp(x1), xp(x2), b2 & ~V])] + detours(cyc, split=x2)
        else:
            uset = set(part.U)
            if prev not in uset or nxt not in uset:
                raise ConstructionError("B1 has a neighbour outside U and B on Z_e")
            cands = [w for w in (nxt, prev) if w != b1 & ~X]
            if not cands:
                raise ConstructionError("no TS neighbour of B1 in U")
            u2 = cands[0]
            wbit = u2 & ~(b1 & ~X)
            if wbit.bit_count() != 1 or not ctx.H.adj[st.x] & wbit or wbit & (U | V):
                raise ConstructionError(f"case 2: no vertex w in N(x) - {{u, v}} for U2={format_set(u2)}")
            b2 = b1 | wbit
            x2 = b2 & ~U
            trace.append(f"Z_e misses X1={format_set(x1)}: case 2 via w={wbit.bit_length() - 1}")
            ops = [_sp(b1, u2, [x1, xp(x1), bp(x1), bp(x2)])] + detours(cyc, skip=x2, half=x2)
        final = list(cyc)
        for op in ops:
            op(final)
        if len(final) != total - 1:
            raise ConstructionError(f"even repair produced length {len(final)}, expected {total - 1}")
        out.setdefault(len(final), final)

    masks = _require_coverage(out, total, "OpB lift")
    return finalize(ctx.H, masks, "forest", cert_p.trace + trace)


# trees and unions -----------------------------------------------------------


def _k3_certificate(seed: Graph, trace=()) -> PancyclicCertificate:
    fam = enumerate_dominating_sets(seed)
    return finalize(seed, {3: list(fam.sets)}, "forest", list(trace) + ["base ε(P2) = K3"])


def _tree_component(t: Graph) -> PancyclicCertificate:
    if t.order == 1:
        return trivial_certificate(t, "forest", ["base ε(P1) = P1"])
    seq = find_reduction_sequence(t)
    alive = [t.full]
    for step in seq.steps:
        alive.append(alive[-1] & ~step.removed())
    verts = [list(bits(a)) for a in alive]
    cert = _k3_certificate(t.induced(verts[-1]))
    for i in range(len(seq.steps) - 1, -1, -1):
        step = seq.steps[i]
        big, small = verts[i], verts[i + 1]
        pos = {v: k for k, v in enumerate(big)}
        local = ReductionStep(step.kind, pos[step.u], pos[step.v], pos[step.x])
        ctx = LiftContext(t.induced(big), t.induced(small), local, tuple(pos[v] for v in small))
        lift = lift_operation_A if step.kind == "OpA" else lift_operation_B
        cert = lift(ctx, cert)
    return cert


def tree_certificate(t: Graph) -> PancyclicCertificate:
    """Certificate for any forest: lift P1/P2 bases back along Operations A and B."""
    if not t.is_forest():
        raise GraphError("tree_certificate requires a forest")
    comps = t.components()
    if len(comps) <= 1:
        if t.order == 0:
            return trivial_certificate(t, "forest")
        return _tree_component(t)
    return _combine(t, comps, [_tree_component(t.induced(c)) for c in comps], "forest")


def product_certificate(cert1: PancyclicCertificate, cert2: PancyclicCertificate) -> PancyclicCertificate:
    """Certificate for ε(H1 ∪ H2) ≅ ε(H1) □ ε(H2), H2's vertices shifted past H1's.

    Odd lengths: the Hamilton cycle of the first factor sits in the first
    layer; disjoint edge pairs of it are pushed up through the layers
    (following a Hamilton path of the second factor) two vertices at a
    time, and the leftover column is absorbed pairwise at the end.  Even
    lengths start from the (N1 - 1)-cycle and absorb the missing column
    except its bottom vertex.
    """
    g1, g2 = cert1.seed, cert2.seed
    seed = union(g1, g2)
    shift = g1.order
    trace = cert1.trace + cert2.trace
    n1, n2 = cert1.N, cert2.N

    def emb(d1, d2):
        return d1 | (d2 << shift)

    if n1 * n2 < 3:
        return trivial_certificate(seed, "union", trace)
    if n1 == 1 or n2 == 1:
        if n1 == 1:
            d1 = enumerate_dominating_sets(g1)[0]
            masks = {k: [emb(d1, m) for m in c] for k, c in certificate_masks(cert2).items()}
        else:
            d2 = enumerate_dominating_sets(g2)[0]
            masks = {k: [emb(m, d2) for m in c] for k, c in certificate_masks(cert1).items()}
        return finalize(seed, masks, "union", trace + ["identity factor ε(H) = K1"])

    m1 = certificate_masks(cert1)
    m2 = certificate_masks(cert2)
    a = m1[n1]
    b = m2[n2]  # used as a Hamilton path b[0] .. b[-1]
    out = {k: [emb(s, b[0]) for s in c] for k, c in m1.items()}

    def pockets(row):
        ops = []
        for k in range(0, len(row) - 1, 2):
            p, q = row[k], row[k + 1]
            for d in range(1, n2):
                ops.append(_sp(emb(p, b[d - 1]), emb(q, b[d - 1]), [emb(p, b[d]), emb(q, b[d])]))
        return ops

    def absorb(host, col):
        return [_sp(emb(host, b[j]), emb(host, b[j + 1]), [emb(col, b[j]), emb(col, b[j + 1])])
                for j in range(1, n2 - 1, 2)]

    odd_base = [emb(s, b[0]) for s in a]
    _grow(odd_base, pockets(a[:-1]) + absorb(a[-2], a[-1]), out)

    e = m1[n1 - 1] if n1 - 1 >= 3 else a[:2]
    miss = next(s for s in a if s not in set(e))
    host = next(s for s in e if edge_kind(g1, s, miss) is not None)
    _grow([emb(s, b[0]) for s in e], pockets(e) + absorb(host, miss), out)

    masks = _require_coverage(out, n1 * n2, "union")
    return finalize(seed, masks, "union", trace + [f"product of ε with {n1} and {n2} vertices"])


def _combine(g: Graph, comps: list[list[int]], certs: list[PancyclicCertificate], strategy: str):
    cur = certs[0]
    for c in certs[1:]:
        cur = product_certificate(cur, c)
    order = [v for comp in comps for v in comp]
    return relabel_certificate(cur, order, g, strategy)


# joins -------------------------------------------------------------------------


def join_k1_certificate(g: Graph, cert_g: PancyclicCertificate) -> PancyclicCertificate:
    """Certificate for ε(G ∨ K1); the new vertex x gets id ``g.order``."""
    n = g.order
    h = join(g, K1)
    if g.num_edges() == 0:
        cert = tree_certificate(h)
        cert.trace.append(f"G edgeless: G v K1 is the star K_1,{n}")
        cert.strategy = "join"
        return cert
    if cert_g.seed != g:
        raise ConstructionError("certificate belongs to a different graph")
    X = 1 << n
    v = next(w for w in range(n) if g.adj[w])
    full = g.full
    S = full & ~(1 << v)
    free = list(range(n))
    top = full  # word of S^{v,x}
    nxt = full & ~(1 << v)  # word of S^x
    trace = [f"join with K1: x={n}, v={v}, Q_{n} on the sets containing x"]

    def lift(words):
        return [X | word_to_set(w, free) for w in words]

    out: dict[int, list[int]] = {3: [full, full | X, S | X]}
    for length in range(4, (1 << n) + 1, 2):
        cyc = lift(bipan_cycle_with_edge(n, top, nxt, length))
        out[length] = cyc
        out[length + 1] = [cyc[0], full] + cyc[1:]
    ham = out[1 << n]
    out[(1 << n) + 2] = [ham[0], full, S] + ham[1:]

    fam_g = certificate_masks(cert_g)
    used_ts = 0
    for length, c in sorted(fam_g.items()):
        m = len(c)
        kinds = [edge_kind(g, c[i], c[(i + 1) % m]) for i in range(m)]
        i = kinds.index("TAR") if "TAR" in kinds else 0
        a, bb = c[i], c[(i + 1) % m]
        start = a | X
        end = bb | X if kinds[i] == "TAR" else (a & bb) | X
        used_ts += kinds[i] != "TAR"
        path = hamiltonian_path_between_adjacent(n, start & full, end & full)
        cyc = c[:i + 1] + lift(path) + c[i + 1:]
        out[length + (1 << n)] = cyc
    if used_ts:
        trace.append(f"{used_ts} cycle(s) of ε(G) had only TS edges; entered Q_{n} through a TS edge")

    total = cert_g.N + (1 << n)
    if len(enumerate_dominating_sets(h)) != total:
        raise ConstructionError("count identity failed: |ε(G v K1)| != |ε(G)| + 2^n")
    masks = _require_coverage(out, total, "join with K1")
    return finalize(h, masks, "join", cert_g.trace + trace)


def _peel_complete(base: Graph, cert: PancyclicCertificate, times: int):
    cur, c = base, cert
    for _ in range(times):
        c = join_k1_certificate(cur, c)
        cur = join(cur, K1)
    return cur, c


def _degree_ok(g: Graph, limit: int) -> list[int]:
    return [w for w in range(g.order) if g.degree(w) <= limit]


def join_certificate(g: Graph, h: Graph, cert_g: PancyclicCertificate,
                     cert_h: PancyclicCertificate) -> PancyclicCertificate:
    """Certificate for ε(G ∨ H) (G's vertices first, then H's)."""
    m, n = g.order, h.order
    target = join(g, h)
    if m == 0 or n == 0:
        raise ConstructionError("join with an empty graph")
    if m < n:
        sub = join_certificate(h, g, cert_h, cert_g)
        perm = [m + k for k in range(n)] + list(range(m))
        return relabel_certificate(sub, perm, target, "join")
    if n == 1:
        return join_k1_certificate(g, cert_g)
    if g.is_complete():
        cur, cert = _peel_complete(h, cert_h, m)
        cert.trace.append(f"G = K_{m}: joined {m} copies of K1 onto H")
        perm = [m + k for k in range(n)] + list(range(m))
        return relabel_certificate(cert, perm, target, "join")
    if h.is_complete():
        cur, cert = _peel_complete(g, cert_g, n)
        cert.trace.append(f"H = K_{n}: joined {n} copies of K1 onto G")
        return relabel_certificate(cert, list(range(m + n)), target, "join")
    if m == 2:  # both 2K1: the 4-cycle, settled by search
        rep, cert = searched_certificate(target)
        if cert is None:
            raise ConstructionError(f"ε(C4) search: {rep.verdict}")
        cert.strategy = "join"
        cert.trace.append("K_2,2 = C4 base case checked by exhaustive search")
        return cert
    return _join_general(g, h)


def _join_general(g: Graph, h: Graph) -> PancyclicCertificate:
    m, n = g.order, h.order
    seed = join(g, h)
    lowg = _degree_ok(g, m - 2)
    lowh = _degree_ok(h, n - 2)
    g1, g2, hh = lowg[0], lowg[1], lowh[0]
    free_g = [g1] + [w for w in range(m) if w not in (g1, g2)] + [g2]
    free_h = [hh] + [w for w in range(n) if w != hh]
    xs = [word_to_set(brgc_term(i, m), free_g) for i in range(1 << m)]
    ys = [word_to_set(brgc_term(j, n), free_h) << m for j in range(1 << n)]
    hb = 1 << (m + hh)
    gpb = 1 << g2
    assert xs[1] == 1 << g1 and xs[-2] == (1 << g1 | gpb) and ys[1] == hb
    trace = [f"join G(m={m}) v H(n={n}): g={g1}, g'={g2}, h={m + hh}"]

    def P(i, j):
        return xs[i] | ys[j]

    full = seed.full
    out: dict[int, list[int]] = {}

    # hypercube of supersets of {g, h}
    qfree = [w for w in range(m + n) if w not in (g1, m + hh)]
    qbase = 1 << g1 | hb
    qdim = len(qfree)
    top = (1 << qdim) - 1
    gp_word = top & ~(1 << qfree.index(g2))
    out[3] = [full, full & ~hb, full & ~gpb]
    for length in range(4, (1 << qdim) + 1, 2):
        cyc = [qbase | word_to_set(w, qfree) for w in bipan_cycle_with_edge(qdim, top, gp_word, length)]
        out.setdefault(length, cyc)
        out.setdefault(length + 1, [cyc[0], full & ~hb] + cyc[1:])

    last = (1 << m) - 2
    tt = xs.index(g.full)
    ladder = lambda npairs: [_sp(P(2 * i + 1, j), P(2 * i + 2, j), [P(2 * i + 1, j + 1), P(2 * i + 2, j + 1)])
                             for i in range(npairs) for j in range(1, (1 << n) - 1)]
    base = [P(i, 1) for i in range(1, last + 1)]
    with_t = list(base)
    k = with_t.index(P(tt, 1))
    with_t.insert(k + 1 if tt % 2 == 0 else k, P(tt, 0))
    _grow(base, ladder((1 << (m - 1)) - 1), out)
    _grow(with_t, ladder((1 << (m - 1)) - 1), out)

    A, Bc, C, T = last - 1, last, last + 1, (1 << n) - 1
    z_e = list(base)
    splice(z_e, P(A, 1), P(Bc, 1),
           [P(A, j) for j in range(2, T + 1)] + [P(Bc, T)] + [P(C, j) for j in range(T, 0, -1)])
    for jj in range(1, (1 << (n - 1)) - 1):
        splice(z_e, P(A, 2 * jj), P(A, 2 * jj + 1), [P(Bc, 2 * jj), P(Bc, 2 * jj + 1)])
    z_o = list(z_e)
    splice(z_o, P(A, T), P(Bc, T), [P(Bc, T - 1)])
    _grow(z_e, ladder((1 << (m - 1)) - 2), out)
    cur = _grow(z_o, ladder((1 << (m - 1)) - 2), out)
    if len(cur) != ((1 << m) - 1) * ((1 << n) - 1):
        raise ConstructionError("augmented Z_o misses some set meeting both sides")

    # sets missing one side: (x_i, y_0) along row 1, (x_0, y_j) along column 1
    ops = []

    def absorb(host_of, extra_of, idx, partner, dominates, label):
        for i in idx:
            if not i < partner(i) and dominates(partner(i)):
                continue  # the pair is handled from its smaller index
            k = partner(i)
            di, dk = dominates(i), dominates(k)
            if di and dk:
                big, small = (i, k) if extra_of(i) & ~extra_of(k) else (k, i)
                ops.append(_sp(host_of(small), host_of(big), [extra_of(big)]))
                ops.append(_sp(host_of(small), extra_of(big), [extra_of(small)]))
            elif di:
                ops.append(_sp(host_of(i), host_of(k), [extra_of(i)]))
            trace_note = f"{label} {i}" + (f"+{k}" if di and dk else "")
            trace.append(trace_note)

    fam = set(enumerate_dominating_sets(seed).sets)
    g_idx = [i for i in range(2, last + 1) if xs[i] in fam]
    absorb(lambda i: P(i, 1), lambda i: P(i, 0), g_idx, lambda i: i + 1 if i % 2 == 0 else i - 1,
           lambda i: P(i, 0) in fam, "absorb (x_i, y_0) i =")
    h_idx = [j for j in range(2, T + 1) if ys[j] in fam]
    absorb(lambda j: P(1, j), lambda j: P(0, j), h_idx, lambda j: j + 1 if j % 2 == 0 else j - 1,
           lambda j: P(0, j) in fam, "absorb (x_0, y_j) j =")
    _grow(cur, ops, out)

    total = len(fam)
    masks = _require_coverage(out, total, "join")
    return finalize(seed, masks, "join", trace)


# dispatcher -----------------------------------------------------------------------


def construct_certificate(g: Graph, budget: Optional[int] = None) -> PancyclicCertificate:
    """Pick a construction from the structure of ``g``; search only as a last resort.

    The chosen path is recorded in ``strategy`` and ``trace``.
    """
    n_sets = len(enumerate_dominating_sets(g))
    if n_sets < 3:
        return trivial_certificate(g, "trivial", [f"ε(G) has {n_sets} vertex"])
    comps = g.components()
    if len(comps) > 1:
        try:
            return _combine(g, comps, [construct_certificate(g.induced(c), budget) for c in comps], "union")
        except SearchVerdictError:
            raise
        except ConstructionError as exc:
            log.warning("union construction failed (%s); falling back to search", exc)
            return _searched(g, budget, [f"union construction failed: {exc}"])
    if g.is_forest():
        return tree_certificate(g)
    thr = threshold_elimination(g)
    if thr is not None:
        return _threshold(g, *thr)
    parts = join_parts(g)
    if parts is not None:
        a, b = parts
        ga, gb = g.induced(a), g.induced(b)
        cert = join_certificate(ga, gb, construct_certificate(ga, budget), construct_certificate(gb, budget))
        cert.trace.insert(0, f"join of {a} and {b}")
        return relabel_certificate(cert, a + b, g, "join")
    return _searched(g, budget, ["no decomposition applies"])


def _searched(g: Graph, budget, trace) -> PancyclicCertificate:
    rep, cert = searched_certificate(g, budget)
    if cert is None:
        raise SearchVerdictError(rep)
    cert.trace = list(trace) + [f"searched all lengths 3..{cert.N}"]
    return cert


def _threshold(g: Graph, tags: list[str], order: list[int]) -> PancyclicCertificate:
    cur = K1
    cert = trivial_certificate(K1, "threshold")
    for tag in tags[1:]:
        if tag == "universal":
            cert = join_k1_certificate(cur, cert)
            cur = join(cur, K1)
        else:
            nxt = union(cur, K1)
            cert = product_certificate(cert, trivial_certificate(K1)) if cert.N >= 3 \
                else trivial_certificate(nxt, "threshold", cert.trace)
            cur = nxt
    cert.trace.insert(0, "threshold creation sequence " + " ".join(tags))
    return relabel_certificate(cert, order, g, "threshold")
