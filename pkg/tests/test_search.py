import json

import pytest

from oracles import cycle_lengths, graphs_upto, recon_nx
from tarsgraph.graph import Graph
from tarsgraph.recon import build_recon_graph
from tarsgraph.search import (
    PancyclicCertificate,
    _chord_shortcut,
    check_pancyclic,
    default_budget,
    find_cycle_of_length,
    find_hamilton_cycle,
    searched_certificate,
    validate_certificate,
    validate_cycle,
)


def test_validate_cycle_reports_first_problem():
    r = build_recon_graph(Graph.star(3))
    assert validate_cycle(r, [0, 1]).message.startswith("length 2")
    assert "out of range" in validate_cycle(r, [0, 1, 99]).message
    assert "repeated" in validate_cycle(r, [0, 1, 0]).message
    cyc = find_cycle_of_length(r, 9).cycle
    assert validate_cycle(r, cyc) is None
    bad = list(cyc)
    bad[2], bad[5] = bad[5], bad[2]
    v = validate_cycle(r, bad)
    assert v is not None and v.position is not None
    assert "position" in str(v)


def test_inactive_edge_is_named():
    r = build_recon_graph(Graph.path(3))
    fam = r.family
    i, j = fam.index(0b011), fam.index(0b101)  # a TS pair
    k = fam.index(0b111)
    v = validate_cycle(r.with_mode("TAR"), [i, j, k])
    assert v.found == "TS, inactive in mode TAR"


def test_search_examples():
    r = build_recon_graph(Graph.path(3))
    assert find_cycle_of_length(r, 3).status == "found"
    r = build_recon_graph(Graph.star(3))
    assert find_hamilton_cycle(r).status == "found"
    tar = r.with_mode("TAR")
    assert find_cycle_of_length(tar, 3).status == "absent"
    assert find_hamilton_cycle(tar).status == "absent"
    assert check_pancyclic(tar).verdict == "fails-at-3"
    assert check_pancyclic(build_recon_graph(Graph.cycle(4))).verdict == "pancyclic"
    with pytest.raises(ValueError):
        find_cycle_of_length(r, 2)
    with pytest.raises(ValueError):
        find_cycle_of_length(r, 10)


def test_budget_exhaustion_is_reported():
    r = build_recon_graph(Graph.cycle(6))
    res = find_cycle_of_length(r, r.order, budget=3, hamilton_pruning=False)
    assert res.status == "budget" and res.cycle is None
    rep = check_pancyclic(r, budget=1)
    assert rep.verdict in ("inconclusive", "pancyclic")
    if rep.verdict == "inconclusive":
        assert rep.inconclusive and rep.certificate(r) is None


def test_budget_env(monkeypatch):
    monkeypatch.setenv("TARS_RECON_BUDGET", "1234")
    assert default_budget() == 1234
    monkeypatch.delenv("TARS_RECON_BUDGET")
    assert default_budget() == 10**8


@pytest.mark.parametrize("mode", ["TARS", "TAR", "TS"])
def test_search_agrees_with_cycle_enumeration(mode):
    # for every connected graph of order <= 4, unlimited search never runs out and finds
    # exactly the cycle lengths an exhaustive simple-cycle enumeration finds
    for g in graphs_upto(4):
        if not g.order or not g.is_connected():
            continue
        r = build_recon_graph(g, mode)
        if r.order < 3:
            continue
        lengths = cycle_lengths(recon_nx(g, mode))
        rep = check_pancyclic(r)
        assert not rep.inconclusive
        assert {k for k, s in rep.status.items() if s == "found"} == lengths


def test_pruning_does_not_change_answers():
    for g in graphs_upto(4):
        r = build_recon_graph(g)
        for length in range(max(3, r.order - 4), r.order + 1):
            a = find_cycle_of_length(r, length, hamilton_pruning=True).status
            b = find_cycle_of_length(r, length, hamilton_pruning=False).status
            assert a == b


def test_chord_shortcut():
    r = build_recon_graph(Graph.complete(3))
    cyc = find_hamilton_cycle(r).cycle
    for target in range(3, r.order):
        short = _chord_shortcut(r, [cyc], target)
        if short is not None:
            assert len(short) == target and validate_cycle(r, short) is None


def test_certificate_json_roundtrip_and_validation():
    g = Graph.star(3)
    rep, cert = searched_certificate(g)
    r = build_recon_graph(g)
    assert validate_certificate(r, cert) is None
    again = PancyclicCertificate.loads(cert.dumps())
    assert again.cycles == cert.cycles and again.seed == g and again.N == 9
    data = json.loads(cert.dumps())
    assert list(data["cycles"]) == [str(k) for k in range(3, 10)]
    assert data["provenance"]["3"] == "searched"

    gap = PancyclicCertificate(g, 9, {k: v for k, v in cert.cycles.items() if k != 5}, {})
    assert str(validate_certificate(r, gap)).endswith("gap at 5")
    wrong = validate_certificate(build_recon_graph(Graph.cycle(4)), cert)
    assert "N mismatch" in wrong.message
    assert "mode mismatch" in validate_certificate(r.with_mode("TS"), cert).message
    extra = PancyclicCertificate(g, 9, {**cert.cycles, 12: (0, 1, 2)}, {})
    assert "unexpected" in validate_certificate(r, extra).message
    short = PancyclicCertificate(g, 9, {**cert.cycles, 4: cert.cycles[3]}, {})
    assert "has 3 vertices" in validate_certificate(r, short).message
    with pytest.raises(ValueError):
        PancyclicCertificate.loads('{"seed": {}}')
    with pytest.raises(ValueError):
        PancyclicCertificate.loads('{"seed": {"order": 2, "edges": [[0, 5]]}, "N": 3, "cycles": {}}')


def test_trivial_searched_certificate():
    rep, cert = searched_certificate(Graph.empty(3))
    assert cert.N == 1 and cert.cycles == {}
    assert rep.verdict == "pancyclic"
