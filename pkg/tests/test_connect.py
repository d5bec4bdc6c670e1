import random

import networkx as nx
import pytest

from degseq_forge.coloring import EquitableColoring, check_coloring, hs_coloring
from degseq_forge.connect import connect_target, connectify, connectify_with_report, edge_connectivity, flow_tree
from degseq_forge.errors import InvalidInput, RepairStuck
from degseq_forge.graphcore import Graph, complete, cycle
from helpers import random_bounded_graph, to_nx


def _disjoint(*graphs):
    edges, off = [], 0
    for G in graphs:
        edges += [(a + off, b + off) for a, b in G.edges()]
        off += G.n
    return Graph(off, edges)


def test_connect_target():
    assert connect_target(3).target == 2
    assert connect_target(4).target == 4
    assert connect_target(1).target == 1
    assert connect_target(0).target == 0


def test_edge_connectivity_examples():
    assert edge_connectivity(complete(4))[0] == 3
    assert edge_connectivity(cycle(6))[0] == 2
    lam, witness = edge_connectivity(_disjoint(complete(3), complete(3)))
    assert lam == 0 and witness.size == 0


def test_edge_connectivity_matches_networkx():
    rng = random.Random(4)
    for _ in range(60):
        G = random_bounded_graph(rng, rng.randint(2, 14), rng.randint(1, 6))
        lam, witness = edge_connectivity(G)
        assert lam == nx.edge_connectivity(to_nx(G))
        assert witness.size == lam
        assert nx.cut_size(to_nx(G), witness.side_A) == lam


def test_flow_tree_gives_pairwise_connectivity():
    rng = random.Random(6)
    for _ in range(10):
        G = random_bounded_graph(rng, 9, 4)
        table = flow_tree(G).pairwise()
        H = to_nx(G)
        for s in range(G.n):
            for t in range(s + 1, G.n):
                assert table[s][t] == nx.edge_connectivity(H, s, t)


def _coloring(G):
    return hs_coloring(G, G.max_degree() + 1)


def test_fixed_point():
    G = complete(4)
    f = _coloring(G)
    rep = connectify_with_report(G, G, f)
    assert rep.graph == G and not rep.steps


@pytest.mark.parametrize(
    "parts, expected",
    [((complete(4), complete(4)), 2), ((cycle(4), cycle(4)), 2)],
)
def test_disconnected_examples(parts, expected):
    G0 = _disjoint(*parts)
    f = _coloring(G0)
    H = connectify(G0, G0, f)
    assert nx.edge_connectivity(to_nx(H)) >= expected
    assert H.degrees() == G0.degrees()
    assert check_coloring(H, f).proper


def test_preconditions():
    G = cycle(4)
    with pytest.raises(InvalidInput):
        connectify(G, Graph(4, [(0, 1)]), _coloring(G))
    with pytest.raises(InvalidInput):
        connectify(G, G, EquitableColoring((0, 0, 1, 1), 2))
    with pytest.raises(InvalidInput):
        connectify(G, Graph(4, [(0, 2)]), _coloring(G))


def test_labels_are_respected():
    # Two components; only equally labelled edges may be exchanged.
    G0 = _disjoint(cycle(4), cycle(4))
    labels = {e: (0 if e[0] < 4 else 1) for e in G0.edges()}
    f = _coloring(G0)
    with pytest.raises(RepairStuck):
        connectify_with_report(G0, G0, f, edge_classes=labels)
    same = {e: 0 for e in G0.edges()}
    rep = connectify_with_report(G0, G0, f, edge_classes=same)
    assert set(rep.labels.values()) == {0}


def test_each_step_is_recorded_and_monotone():
    G0 = _disjoint(complete(4), complete(4), complete(4))
    f = _coloring(G0)
    rep = connectify_with_report(G0, G0, f)
    assert rep.lambda_before == 0 and rep.lambda_after >= 2
    for s in rep.steps:
        assert s["measure_after"] > s["measure_before"]
