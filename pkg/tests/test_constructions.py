import pytest

from oracles import catalog, graphs_upto, trees_upto
from tarsgraph.constructions import (
    ConstructionError,
    LiftContext,
    SearchVerdictError,
    certificate_masks,
    compute_boundary_J,
    construct_certificate,
    join_certificate,
    join_k1_certificate,
    lift_operation_A,
    lift_operation_B,
    opb_partition,
    product_certificate,
    splice,
    tree_certificate,
)
from tarsgraph.domination import enumerate_dominating_sets
from tarsgraph.graph import Graph, ReductionStep, bits, join, step_applies, union
from tarsgraph.recon import ReconGraph, build_recon_graph
from tarsgraph.search import (
    PancyclicCertificate,
    check_pancyclic,
    find_cycle_of_length,
    searched_certificate,
    validate_certificate,
)


def valid(cert, g=None):
    g = g if g is not None else cert.seed
    r = build_recon_graph(g)
    assert cert.N == r.order
    if r.order >= 3:
        assert validate_certificate(r, cert) is None
        assert sorted(cert.cycles) == list(range(3, r.order + 1))
    return True


def lift_context(h, step):
    keep = [w for w in range(h.order) if not step.removed() >> w & 1]
    return LiftContext(h, h.induced(keep), step, tuple(keep))


def applicable_steps(h):
    for x in range(h.order):
        for u in range(h.order):
            for v in range(h.order):
                for kind in ("OpA", "OpB"):
                    step = ReductionStep(kind, u, v, x)
                    if step_applies(h, h.full, step):
                        yield step


# boundary set J and the Operation B partition


def test_boundary_J_examples():
    assert compute_boundary_J(Graph.path(2), 0).members == ()
    assert compute_boundary_J(Graph.path(3), 1).members == ()
    # path x-a-b with x = 0: only {b} dominates a-b without dominating x
    assert compute_boundary_J(Graph.path(3), 0).members == (0b100,)


def test_boundary_J_definition():
    for g in graphs_upto(5):
        fam = set(enumerate_dominating_sets(g))
        for x in range(g.order):
            members = compute_boundary_J(g, x).members
            want = []
            for s in range(1 << g.order):
                if s >> x & 1 or s in fam:
                    continue
                rest = g.full & ~(1 << x)
                cover = s
                for v in bits(s):
                    cover |= g.adj[v]
                if cover & rest == rest:
                    want.append(s)
            assert list(members) == want


def test_opb_partition_star():
    k13 = Graph.star(3)
    p = opb_partition(k13, ReductionStep("OpB", 1, 2, 0))
    sizes = [len(p.Xp), len(p.X), len(p.Bp), len(p.B), len(p.U)]
    assert sizes[:4] == [2, 2, 2, 2] and sum(sizes) == 9
    assert sorted(p.Xp + p.X + p.Bp + p.B + p.U) == list(enumerate_dominating_sets(k13))


# lifting


def test_lift_A_path4():
    h = Graph.path(4)
    step = ReductionStep("OpA", 1, 0, 2)
    ctx = lift_context(h, step)
    base = tree_certificate(ctx.Hprime)
    cert = lift_operation_A(ctx, base)
    j = compute_boundary_J(ctx.Hprime, ctx.embed.index(2)).members
    assert cert.N == 3 * 3 + 2 * len(j) == 9
    assert valid(cert)
    assert check_pancyclic(build_recon_graph(h)).verdict == "pancyclic"


def test_lift_A_rotation_avoids_boundary_sets():
    for t in trees_upto(7):
        for step in applicable_steps(t):
            if step.kind != "OpA":
                continue
            ctx = lift_context(t, step)
            if not ctx.Hprime.is_connected() or ctx.Hprime.order < 2:
                continue
            cert = lift_operation_A(ctx, tree_certificate(ctx.Hprime))
            n = tree_certificate(ctx.Hprime).N
            first = certificate_masks(cert)[n + 2][0] & ~(1 << step.v)
            forms = {ctx.up(s) | 1 << step.x for s in compute_boundary_J(ctx.Hprime, ctx.embed.index(step.x)).members}
            assert first not in forms


def test_lift_B_star():
    h = Graph.star(3)
    step = ReductionStep("OpB", 1, 2, 0)
    ctx = lift_context(h, step)
    cert = lift_operation_B(ctx, tree_certificate(ctx.Hprime))
    assert cert.N == 9 and valid(cert)


def test_lift_preconditions():
    h = Graph.star(3)
    ctx = lift_context(h, ReductionStep("OpB", 1, 2, 0))
    with pytest.raises(ConstructionError):
        lift_operation_A(ctx, tree_certificate(ctx.Hprime))
    with pytest.raises(ConstructionError):
        LiftContext(h, Graph.path(3), ReductionStep("OpA", 1, 2, 0), (0, 1, 3))
    with pytest.raises(ConstructionError):
        LiftContext(h, Graph.path(2), ReductionStep("OpB", 1, 2, 0), (0, 1))


@pytest.mark.parametrize("source", ["built", "searched"])
def test_every_applicable_lift(source):
    # every OpA/OpB step of every tree up to 6 vertices, starting from either certificate
    count = 0
    for t in trees_upto(6):
        for step in applicable_steps(t):
            ctx = lift_context(t, step)
            if not ctx.Hprime.is_connected():
                continue
            base = tree_certificate(ctx.Hprime) if source == "built" else searched_certificate(ctx.Hprime)[1]
            if base.N < 3:
                continue
            lift = lift_operation_A if step.kind == "OpA" else lift_operation_B
            assert valid(lift(ctx, base))
            count += 1
    assert count > 50


def _case2_inputs(t, step):
    """Certificates for H' whose even cycle leaves B1's two neighbours outside the x-sets."""
    ctx = lift_context(t, step)
    hp = ctx.Hprime
    r = build_recon_graph(hp)
    xp, up = ctx.embed.index(step.x), ctx.embed.index(step.u)
    base = tree_certificate(hp)
    if r.order < 4:
        return
    for i, s1 in enumerate(r.family):
        if not s1 >> xp & 1 or s1 >> up & 1:
            continue
        b = r.family.index(s1 | 1 << up)
        bad = sum(1 << j for j in bits(r.adj[b]) if r.family[j] >> xp & 1)
        tar, ts = list(r.tar_adj), list(r.ts_adj)
        for k in range(r.order):
            m = -1 if k == i else (1 << i) | (bad if k == b else 0) | (1 << b if bad >> k & 1 else 0)
            tar[k] &= ~m
            ts[k] &= ~m
        res = find_cycle_of_length(ReconGraph(hp, r.family, tuple(tar), tuple(ts)), r.order - 1, budget=10**5)
        if res.status == "found":
            yield ctx, PancyclicCertificate(hp, base.N, {**base.cycles, r.order - 1: res.cycle}, {})


def test_lift_B_case_two():
    seen = 0
    for t in trees_upto(6):
        for step in applicable_steps(t):
            if step.kind != "OpB" or step.u > step.v:
                continue
            for ctx, cp in _case2_inputs(t, step):
                cert = lift_operation_B(ctx, cp)
                assert valid(cert)
                seen += any("case 2" in line for line in cert.trace)
    assert seen > 0


def test_trees_up_to_seven():
    for t in trees_upto(7):
        cert = tree_certificate(t)
        assert valid(cert)
        assert cert.strategy == "forest"


def test_tree_base_cases():
    cert = tree_certificate(Graph.path(2))
    assert cert.N == 3 and set(cert.cycles) == {3}
    assert tree_certificate(Graph.empty(1)).N == 1
    assert valid(tree_certificate(union(Graph.path(3), Graph.star(3))))


def test_operation_A_count_identity():
    for t in trees_upto(8):
        for step in applicable_steps(t):
            if step.kind != "OpA":
                continue
            ctx = lift_context(t, step)
            n = len(enumerate_dominating_sets(ctx.Hprime))
            j = compute_boundary_J(ctx.Hprime, ctx.embed.index(step.x)).members
            assert len(enumerate_dominating_sets(t)) == 3 * n + 2 * len(j)


# unions and joins


def test_product_examples():
    p2 = tree_certificate(Graph.path(2))
    cert = product_certificate(p2, p2)
    assert cert.N == 9 and valid(cert)
    t = tree_certificate(Graph.path(4))
    k1 = tree_certificate(Graph.empty(1))
    ident = product_certificate(t, k1)
    assert ident.cycles == t.cycles
    assert product_certificate(k1, t).cycles == t.cycles


def test_products_of_small_certificates():
    certs = [construct_certificate(g) for g in graphs_upto(3) if g.order]
    for a in certs:
        for b in certs:
            assert valid(product_certificate(a, b))


def test_join_with_k1():
    cert = join_k1_certificate(Graph.complete(2), tree_certificate(Graph.path(2)))
    assert cert.N == 7 and valid(cert)
    k4 = join_k1_certificate(Graph.complete(3), cert)
    assert k4.N == 15 and valid(k4)
    star = join_k1_certificate(Graph.empty(3), tree_certificate(Graph.empty(3)))
    assert star.N == 9 and valid(star)


def test_join_k1_count_identity_and_vertex_choice():
    for g in graphs_upto(5):
        if g.order == 0 or g.num_edges() == 0:
            continue
        cert = join_k1_certificate(g, construct_certificate(g))
        assert cert.N == len(enumerate_dominating_sets(g)) + 2 ** g.order
        assert valid(cert)
        line = [x for x in cert.trace if x.startswith("join with K1")][-1]
        v = int(line.split("v=")[1].split(",")[0])
        assert g.adj[v]


def test_join_examples():
    e2, e3 = Graph.empty(2), Graph.empty(3)
    c4 = join_certificate(e2, e2, construct_certificate(e2), construct_certificate(e2))
    assert c4.N == 11 and valid(c4)
    k23 = join_certificate(e2, e3, construct_certificate(e2), construct_certificate(e3))
    assert valid(k23)
    p3, k2 = Graph.path(3), Graph.complete(2)
    assert valid(join_certificate(p3, k2, construct_certificate(p3), construct_certificate(k2)))
    k = Graph.empty(1)
    cert = tree_certificate(k)
    for n in range(2, 6):
        cert = join_k1_certificate(k, cert)
        k = join(k, Graph.empty(1))
        assert k == Graph.complete(n) and valid(cert)


def test_general_join_pairs():
    small = [g for g in graphs_upto(4) if g.order >= 2]
    for g in small:
        for h in small:
            if g.order + h.order > 7:
                continue
            cert = join_certificate(g, h, construct_certificate(g), construct_certificate(h))
            assert valid(cert, join(g, h))


# dispatcher


def test_dispatcher_strategies():
    assert construct_certificate(join(Graph.empty(2), Graph.empty(3))).strategy == "join"
    assert construct_certificate(Graph.cycle(5)).strategy == "searched"
    assert construct_certificate(Graph.star(3)).strategy == "forest"
    assert construct_certificate(Graph.complete(4)).strategy == "threshold"
    assert construct_certificate(union(Graph.cycle(5), Graph.path(2))).strategy == "union"
    assert construct_certificate(Graph.empty(4)).strategy == "trivial"
    for t in trees_upto(8):
        if t.order > 1:
            assert construct_certificate(t).strategy == "forest"


def test_dispatcher_on_all_graphs_up_to_six():
    for g in graphs_upto(6):
        assert valid(construct_certificate(g))


@pytest.mark.slow
def test_dispatcher_on_all_graphs_of_order_seven():
    from networkx.generators.atlas import graph_atlas_g

    for a in graph_atlas_g():
        if a.number_of_nodes() == 7:
            g = Graph.from_edges(7, a.edges())
            assert valid(construct_certificate(g))


def test_dispatcher_is_deterministic():
    for g in catalog("graphs5.g6"):
        assert construct_certificate(g).dumps() == construct_certificate(g).dumps()


def test_search_fallback_reports_budget():
    with pytest.raises(SearchVerdictError) as info:
        construct_certificate(Graph.cycle(5), budget=0)
    assert info.value.report.verdict == "inconclusive"


def test_splice():
    c = [1, 2, 3, 4]
    splice(c, 2, 3, [9, 8])
    assert c == [1, 2, 9, 8, 3, 4]
    splice(c, 1, 4, [7])
    assert c == [7, 1, 2, 9, 8, 3, 4] or c == [1, 2, 9, 8, 3, 4, 7]
    with pytest.raises(ConstructionError):
        splice(c, 1, 3, [5])
