import itertools
import random

import pytest

from degseq_forge.errors import InvalidExchange, InvalidInput, SearchFailed, SwapBlocked
from degseq_forge.exchange import (
    COMPLEMENT,
    LEFTOVER,
    ExchangeList,
    FactorDecomposition,
    apply_all,
    apply_colored_exchange,
    check_exchange,
    find_disjoint_exchanges,
    single_factor,
    two_swap,
)
from degseq_forge.graphcore import Graph, complete, cycle, degree_sequence_of
from helpers import class_degrees, class_of, random_decomposition, random_exchange


def test_two_swap_examples():
    C4 = cycle(4)
    out = two_swap(C4, (0, 1), (2, 3))
    assert out.degrees() == [2, 2, 2, 2]
    assert out.has_edge(0, 2) and out.has_edge(1, 3)
    two = Graph(4, [(0, 1), (2, 3)])
    out = two_swap(two, (0, 1), (2, 3))
    assert out.edge_set() == {(0, 2), (1, 3)}
    with pytest.raises(SwapBlocked):
        two_swap(C4, (0, 1), (3, 2))  # would add 0-3, already an edge
    with pytest.raises(SwapBlocked):
        two_swap(C4, (0, 1), (0, 3))


def test_two_swap_rejects_missing_edge():
    with pytest.raises(SwapBlocked):
        two_swap(Graph(4, [(0, 1)]), (0, 1), (2, 3))


def test_random_two_swaps_keep_degrees():
    rng = random.Random(7)
    done = 0
    while done < 2000:
        n = rng.randint(4, 12)
        G = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.4])
        edges = G.edges()
        if len(edges) < 2:
            continue
        e1, e2 = rng.sample(edges, 2)
        try:
            H = two_swap(G, e1, e2[::-1] if rng.random() < 0.5 else e2)
        except SwapBlocked:
            continue
        assert degree_sequence_of(H) == degree_sequence_of(G)
        assert H.num_edges() == G.num_edges()
        done += 1


def test_decomposition_validation():
    K4 = complete(4)
    D = single_factor(K4, [(0, 1), (2, 3)])
    assert D.regularities == (1,)
    assert D.class_of(0, 1) == 0 and D.class_of(0, 2) == LEFTOVER
    assert FactorDecomposition(cycle(4), ()).class_of(0, 2) == COMPLEMENT
    with pytest.raises(InvalidInput):
        single_factor(K4, [(0, 1)])  # not regular
    with pytest.raises(InvalidInput):
        FactorDecomposition(K4, ({(0, 1), (2, 3)}, {(0, 1), (2, 3)}))
    with pytest.raises(InvalidInput):
        single_factor(cycle(4), [(0, 2), (1, 3)])  # not host edges


def test_length_two_exchange_is_a_two_swap():
    G = Graph(4, [(0, 1), (2, 3)])
    D = FactorDecomposition(G, ())
    # u=0, v=2; x0=1 (leftover to u, non-edge to v), x1=3 (leftover to v, non-edge to u)
    L = ExchangeList(0, 2, (1, 3))
    out = apply_colored_exchange(D, L)
    assert out.host == two_swap(G, (0, 1), (3, 2))


def test_three_vertex_exchange_with_one_factor():
    # u=0, v=1, internals 2, 4, 6: towards u the classes are factor, leftover,
    # non-edge; towards v they are non-edge, factor, leftover.
    n = 8
    fac = [(0, 2), (1, 4), (3, 5), (6, 7)]
    host = Graph(n, fac + [(0, 4), (1, 6)])
    D = single_factor(host, fac)
    L = ExchangeList(0, 1, (2, 4, 6))
    check_exchange(D, L)
    out = apply_colored_exchange(D, L)
    assert out.regularities == D.regularities
    assert degree_sequence_of(out.host) == degree_sequence_of(host)
    assert apply_colored_exchange(out, L) == D


def test_empty_exchange_is_identity():
    D = single_factor(complete(4), [(0, 1), (2, 3)])
    assert apply_colored_exchange(D, ExchangeList(0, 1, ())) == D


def test_pattern_violation():
    D = single_factor(complete(4), [(0, 1), (2, 3)])
    with pytest.raises(InvalidExchange):
        apply_colored_exchange(D, ExchangeList(0, 1, (2, 3)))
    with pytest.raises(InvalidExchange):
        check_exchange(D, ExchangeList(0, 0, (2,)))


def test_random_exchanges_preserve_structure():
    rng = random.Random(11)
    done = 0
    while done < 1500:
        D = random_decomposition(rng)
        L = random_exchange(D, rng)
        if L is None:
            continue
        out = apply_colored_exchange(D, L)
        assert out.regularities == D.regularities
        assert class_degrees(out) == class_degrees(D)
        assert apply_colored_exchange(out, L) == D
        done += 1


def test_disjoint_exchanges_trivial_cases():
    D = FactorDecomposition(cycle(5), ())
    assert find_disjoint_exchanges(D, 0, 2, []) == []
    K4m = Graph(4, [e for e in itertools.combinations(range(4), 2) if e != (2, 3)])
    D = FactorDecomposition(K4m, ())
    # N(u) - N(v) - {v} is empty for the two degree-2 vertices.
    assert {x for x in K4m.adj[2] if x != 3 and not K4m.has_edge(x, 3)} == set()
    assert find_disjoint_exchanges(D, 2, 3, []) == []
    with pytest.raises(InvalidInput):
        find_disjoint_exchanges(FactorDecomposition(Graph(4, [(0, 1), (0, 2), (0, 3)]), ()), 0, 1, [2])


def _pattern_ok(D, L):
    u, v, xs = L.hub_u, L.hub_v, L.internals
    for a, b in ((u, v), (v, u)):
        to_a = [class_of(D, x, a) for x in xs]
        if len(set(to_a)) == len(xs) and all(class_of(D, b, xs[(j + 1) % len(xs)]) == to_a[j] for j in range(len(xs))):
            return True
    return False


def _valid_instances(rng, max_n=8, max_x=3):
    """Random decompositions on at most 8 vertices with p <= 1 and every valid (u, v, X)."""
    D = random_decomposition(rng, max_n=max_n, max_p=1)
    H = D.host
    for u, v in itertools.permutations(range(D.n), 2):
        if H.degree(v) < H.degree(u):
            continue
        cand = sorted(x for x in H.adj[u] if x != v and not H.has_edge(x, v))
        for r in range(0, min(max_x, len(cand)) + 1):
            for X in itertools.combinations(cand, r):
                yield D, u, v, X


def test_disjoint_exchange_contract():
    rng = random.Random(3)
    checked = 0
    for _ in range(25):
        for D, u, v, X in _valid_instances(rng):
            lists = find_disjoint_exchanges(D, u, v, X)
            assert len(lists) == len(X)
            assert sorted(L.internals[0] for L in lists) == sorted(X)
            seen = set()
            for L in lists:
                assert _pattern_ok(D, L)
                assert not seen & set(L.internals)
                seen |= set(L.internals)
            out = apply_all(D, lists)
            for x in X:
                assert out.host.has_edge(x, v) and not out.host.has_edge(x, u)
            assert out.regularities == D.regularities
            checked += 1
    assert checked > 500


def _brute_two_swaps(G, u, v, x):
    """Every 2-swap result that moves ``x`` from ``u``'s neighbourhood to ``v``'s."""
    outs = set()
    for y in G.adj[v]:
        try:
            outs.add(two_swap(G, (u, x), (y, v)))
        except SwapBlocked:
            pass
    return outs


def test_without_factors_each_exchange_is_a_two_swap():
    rng = random.Random(5)
    checked = 0
    while checked < 200:
        D = random_decomposition(rng, max_n=6, max_p=0)
        G = D.host
        for u, v in itertools.permutations(range(G.n), 2):
            if G.degree(v) < G.degree(u):
                continue
            for x in sorted(G.adj[u]):
                if x == v or G.has_edge(x, v):
                    continue
                try:
                    (L,) = find_disjoint_exchanges(D, u, v, [x])
                except SearchFailed:
                    assert not _brute_two_swaps(G, u, v, x)
                    continue
                assert L.q == 2
                assert apply_colored_exchange(D, L).host in _brute_two_swaps(G, u, v, x)
                checked += 1
