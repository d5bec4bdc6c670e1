"""Realizations of degree sequences, optionally carrying a regular factor."""

from __future__ import annotations

import random
from typing import Sequence

import networkx as nx

from ..errors import (
    NotGraphic,
    OracleTooLarge,
    PackingFailed,
    ParityError,
    SearchStalled,
    TheoremViolation,
)
from ..exchange import FactorDecomposition
from ..graphcore import Edge, Graph, circulant, edge
from ..seqcore import DegreeSequence, FactorSpec, is_graphic, kfactor_condition, max_even_k, normalize, shift
from .result import Certificate, RealizationResult, certify


def _as_sequence(pi) -> DegreeSequence:
    return pi if isinstance(pi, DegreeSequence) else normalize(pi)


def havel_hakimi_edges(degrees: Sequence[int]) -> list[Edge]:
    """Havel–Hakimi on arbitrary (not necessarily sorted) degrees.

    The vertex with the largest remaining degree (lowest index on ties) is
    joined to the next-largest ones (lowest index on ties).
    """
    rem = list(degrees)
    n = len(rem)
    edges = []
    while True:
        order = sorted((v for v in range(n) if rem[v] > 0), key=lambda v: (-rem[v], v))
        if not order:
            return edges
        v = order[0]
        need = rem[v]
        partners = order[1 : need + 1]
        if len(partners) < need:
            raise NotGraphic(f"Havel–Hakimi ran out of partners at v{v + 1}")
        rem[v] = 0
        for w in partners:
            if rem[w] == 0:
                raise NotGraphic("Havel–Hakimi hit a zero degree")
            rem[w] -= 1
            edges.append(edge(v, w))


def havel_hakimi(pi) -> Graph:
    """Deterministic realization of ``pi`` with ``deg(v_i) = d_i``.

    Raises
    ------
    NotGraphic
        If ``pi`` is not graphic.
    """
    d = _as_sequence(pi)
    if not is_graphic(d):
        raise NotGraphic(f"({d}) is not graphic")
    return Graph(d.n, havel_hakimi_edges(d.degrees))


# disjoint layers -----------------------------------------------------------


def _permuted(G: Graph, rng: random.Random) -> list[set[int]]:
    perm = list(range(G.n))
    rng.shuffle(perm)
    adj = [set() for _ in range(G.n)]
    for u, v in G.edges():
        adj[perm[u]].add(perm[v])
        adj[perm[v]].add(perm[u])
    return adj


def separate_layers(
    layers: list[list[set[int]]],
    movable: Sequence[bool],
    rng: random.Random,
    max_iters: int = 4000,
) -> bool:
    """Make the layers pairwise edge-disjoint by 2-swaps inside movable layers.

    Every swap keeps the degrees of its own layer.  A swap that creates no
    new overlap is preferred; otherwise a random swap that removes the
    overlapping edge is taken to escape.  Mutates ``layers`` in place.
    """
    n = len(layers[0])
    nl = len(layers)

    def count(a: int, b: int) -> int:
        return sum(1 for L in layers if b in L[a])

    def overlaps() -> list[tuple[int, int, int]]:
        out = []
        for i in range(nl):
            if not movable[i]:
                continue
            for a in range(n):
                for b in layers[i][a]:
                    if a < b and count(a, b) > 1:
                        out.append((i, a, b))
        return out

    for it in range(max_iters):
        bad = overlaps()
        if not bad:
            return True
        i, x, y = rng.choice(bad)
        L = layers[i]
        cands = [(u, v) for u in range(n) for v in L[u] if len({u, v, x, y}) == 4]
        rng.shuffle(cands)
        clean, dirty = None, None
        for u, v in cands:
            # remove xy, uv; add xu, yv
            if u in L[x] or v in L[y]:
                continue
            if count(x, u) == 0 and count(y, v) == 0 and count(u, v) == 1:
                clean = (u, v)
                break
            if dirty is None:
                dirty = (u, v)
        pick = clean or dirty
        if pick is None:
            continue
        u, v = pick
        for a, b in ((x, y), (u, v)):
            L[a].discard(b)
            L[b].discard(a)
        for a, b in ((x, u), (y, v)):
            L[a].add(b)
            L[b].add(a)
    return not overlaps()


def _k_factor_gadget(C: Graph, k: int) -> frozenset[Edge] | None:
    """Exact ``k``-factor of ``C`` through Tutte's reduction to perfect matching."""
    if k == 0:
        return frozenset()
    if any(C.degree(v) < k for v in range(C.n)) or (k * C.n) % 2:
        return None
    gadget = nx.Graph()
    for v in range(C.n):
        outer = [("o", v, w) for w in C.adj[v]]
        gadget.add_nodes_from(outer)
        for j in range(C.degree(v) - k):
            inner = ("i", v, j)
            gadget.add_edges_from((inner, o) for o in outer)
    for v, w in C.edges():
        gadget.add_edge(("o", v, w), ("o", w, v))
    matching = nx.max_weight_matching(gadget, maxcardinality=True)
    if 2 * len(matching) != gadget.number_of_nodes():
        return None
    out = set()
    for a, b in matching:
        if a[0] == "o" and b[0] == "o":
            out.add(edge(a[1], b[1]))
    return frozenset(out)


def packing_size_conditions(n: int, k: int, G2prime: Graph) -> bool:
    return k >= 1 and n >= 2 * (G2prime.max_degree() + 1) and n >= 4 * k - 5


def pack_factor(k: int, G2prime: Graph, seed: int = 0, restarts: int = 20) -> Graph:
    """A ``k``-regular graph on the same vertices, edge-disjoint from ``G2prime``.

    Random relabelings of a circulant are repaired by 2-swaps first; if that
    fails, an exact search (Tutte gadget plus maximum matching) decides.

    Raises
    ------
    TheoremViolation
        If no packing exists although the packing size conditions hold.
    PackingFailed
        If no packing exists otherwise.
    """
    n = G2prime.n
    if k == 0:
        return Graph(n)
    if (k * n) % 2 or k > n - 1:
        raise PackingFailed(f"no {k}-regular graph on {n} vertices")
    rng = random.Random(seed)
    base = circulant(n, k)
    fixed = G2prime.mutable()
    for _ in range(restarts):
        F = _permuted(base, rng)
        layers = [F, fixed]
        if separate_layers(layers, [True, False], rng, max_iters=20 * n):
            return Graph.from_adj(F)
    found = _k_factor_gadget(G2prime.complement(), k)
    if found is not None:
        return Graph(n, found)
    if packing_size_conditions(n, k, G2prime):
        raise TheoremViolation(f"no {k}-regular packing although the size conditions hold (n={n})")
    raise PackingFailed(f"no {k}-regular graph packs with the given graph (n={n})")


def _oracle_realization_with_factor(d: DegreeSequence, k: int) -> tuple[Graph, frozenset[Edge]] | None:
    from ..oracle import enumerate_realizations, find_k_factor

    try:
        for G in enumerate_realizations(d):
            F = find_k_factor(G, k)
            if F is not None:
                return G, F
    except OracleTooLarge:
        return None
    return None


def build_factored_realization(
    pi,
    regularities: Sequence[int],
    seed: int = 0,
    restarts: int = 30,
) -> FactorDecomposition:
    """A realization of ``pi`` with edge-disjoint factors of the given regularities.

    The leftover layer starts as the Havel–Hakimi realization of
    ``pi - sum(regularities)`` and each factor as a randomly relabeled
    circulant; overlaps are removed by in-layer 2-swaps, restarting with fresh
    relabelings when a run stalls.
    """
    d = _as_sequence(pi)
    ks = [int(k) for k in regularities if int(k) > 0]
    total = sum(ks)
    rest = shift(d, total)
    if not is_graphic(rest):
        raise NotGraphic(f"({d}) minus {total} is not graphic")
    for k in ks:
        if (k * d.n) % 2:
            raise ParityError(f"k*n = {k * d.n} is odd")
    base = Graph(d.n, havel_hakimi_edges(rest))
    if not ks:
        return FactorDecomposition(base, ())
    rng = random.Random(seed)
    for attempt in range(restarts):
        leftover = base.mutable() if attempt == 0 else _permuted_realization(base, rng)
        facs = [_permuted(circulant(d.n, k), rng) for k in ks]
        layers = [leftover, *facs]
        if separate_layers(layers, [True] * len(layers), rng, max_iters=400 + 40 * d.n * len(ks)):
            host = [set().union(*(L[v] for L in layers)) for v in range(d.n)]
            factors = tuple(frozenset(edge(a, b) for a in range(d.n) for b in L[a] if a < b) for L in facs)
            return FactorDecomposition(Graph.from_adj(host), factors)
    if len(ks) == 1:
        got = _oracle_realization_with_factor(d, ks[0])
        if got is not None:
            return FactorDecomposition(got[0], (got[1],))
    raise SearchStalled(f"could not separate factors {ks} inside a realization of ({d})")


def _permuted_realization(G: Graph, rng: random.Random) -> list[set[int]]:
    """Random degree-preserving 2-swaps applied to ``G``."""
    adj = G.mutable()
    edges = G.edges()
    if len(edges) < 2:
        return adj
    for _ in range(4 * len(edges)):
        (x, y), (u, v) = rng.sample(edges, 2)
        if rng.random() < 0.5:
            u, v = v, u
        if len({x, y, u, v}) < 4 or u in adj[x] or v in adj[y]:
            continue
        adj[x].discard(y)
        adj[y].discard(x)
        adj[u].discard(v)
        adj[v].discard(u)
        adj[x].add(u)
        adj[u].add(x)
        adj[y].add(v)
        adj[v].add(y)
        edges = [e for e in edges if e not in (edge(x, y), edge(u, v))] + [edge(x, u), edge(y, v)]
    return adj


def realize_with_factor(pi, spec, seed: int = 0) -> RealizationResult:
    """Realize ``pi`` together with a ``k``-factor (constant ``k``).

    Requires ``pi`` and ``pi - k`` graphic and ``k*n`` even.

    Raises
    ------
    NotGraphic, ParityError
        On violated preconditions.
    """
    d = _as_sequence(pi)
    k = spec.k if isinstance(spec, FactorSpec) else int(spec)
    if not is_graphic(d):
        raise NotGraphic(f"({d}) is not graphic")
    if (k * d.n) % 2:
        raise ParityError(f"k*n = {k * d.n} is odd")
    if not is_graphic(shift(d, k)):
        raise NotGraphic(f"({d}) minus {k} is not graphic")
    D = build_factored_realization(d, [k], seed=seed) if k else FactorDecomposition(havel_hakimi(d), (frozenset(),))
    if not D.factors:
        D = FactorDecomposition(D.host, (frozenset(),))
    result = RealizationResult(
        graph=D.host,
        factors=D,
        coloring=None,
        provenance=f"layered(k={k})",
        extras={"k": k},
    )
    return certify(result, sequence=d, factor_degrees=[k], kfactor_oracle=k)


def thm3_construct(pi, spec, seed: int = 0) -> RealizationResult:
    """Realization with a ``k``-factor whenever the factor criterion holds.

    Pipeline: ``k' = max_even_k``; ``pi - k'`` must be graphic; realize at
    ``k'``; then, since ``pi - k`` is graphic as well, realize at ``k``.

    Raises
    ------
    CriterionFails
        If the criterion does not hold.
    TheoremViolation
        If a shifted sequence the argument guarantees graphic is not.
    """
    d = _as_sequence(pi)
    k = spec.k if isinstance(spec, FactorSpec) else int(spec)
    kp = max_even_k(d, k)
    if not is_graphic(shift(d, kp)):
        raise TheoremViolation(f"({d}) minus k'={kp} is not graphic")
    if not is_graphic(shift(d, k)):
        raise TheoremViolation(f"({d}) minus k={k} is not graphic although ({d}) minus {kp} is")
    upper = realize_with_factor(d, kp, seed=seed) if kp != k else None
    res = realize_with_factor(d, k, seed=seed)
    res.provenance = f"thm3(k={k}, k'={kp})"
    res.extras["k_prime"] = kp
    if upper is not None:
        res.extras["k_prime_graph6"] = upper.graph6
    res.certificates.insert(0, Certificate("criterion", kfactor_condition(d, k), f"k={k}"))
    return res
