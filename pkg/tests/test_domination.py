import pytest
from hypothesis import given

from oracles import graphs_upto, naive_dominating, to_mask
from test_graph import graphs
from tarsgraph.domination import domination_number, enumerate_dominating_sets, is_dominating
from tarsgraph.graph import Graph, GraphError, union


def test_examples():
    fam = enumerate_dominating_sets(Graph.star(3))
    assert len(fam) == 9
    assert enumerate_dominating_sets(Graph.path(2)).sets == (1, 2, 3)
    assert enumerate_dominating_sets(Graph.empty(3)).sets == (0b111,)
    assert enumerate_dominating_sets(Graph.empty(0)).sets == (0,)
    assert domination_number(Graph.star(3)) == 1
    assert domination_number(Graph.cycle(6)) == 2
    with pytest.raises(GraphError):
        domination_number(Graph.empty(0))


def test_matches_naive_enumeration():
    for g in graphs_upto(5):
        want = sorted(to_mask(s) for s in naive_dominating(g))
        assert list(enumerate_dominating_sets(g).sets) == want


@given(graphs(8))
def test_family_properties(g):
    fam = enumerate_dominating_sets(g)
    assert list(fam.sets) == sorted(set(fam.sets))
    assert len(fam) % 2 == 1
    assert g.full in fam
    for i, s in enumerate(fam):
        assert fam.index(s) == i
        assert is_dominating(g, s)
        # supersets of dominating sets dominate
        for v in range(g.order):
            assert (s | 1 << v) in fam
    missing = next((m for m in range(1 << g.order) if m not in set(fam.sets)), None)
    if missing is not None:
        assert not is_dominating(g, missing)
        with pytest.raises(KeyError):
            fam.index(missing)


@given(graphs(4), graphs(4))
def test_union_family_is_product(g, h):
    # dominating sets of a disjoint union are exactly unions of dominating sets of the parts
    fu = set(enumerate_dominating_sets(union(g, h)))
    want = {a | b << g.order for a in enumerate_dominating_sets(g) for b in enumerate_dominating_sets(h)}
    assert fu == want


def test_is_dominating_rejects_foreign_bits():
    with pytest.raises(GraphError):
        is_dominating(Graph.path(2), 0b100)
