"""Equitable Δ-colorable realizations that keep everything outside a k-factor."""

from __future__ import annotations

import itertools
import logging
from typing import Iterator

from ..coloring import EquitableColoring, equitable_exact, hs_coloring, iter_equitable_colorings, make_coloring
from ..connect import connectify_with_report
from ..errors import ForbiddenGraph, InvalidInput, OracleTooLarge, PackingFailed, RepairStuck
from ..exchange import FactorDecomposition
from ..graphcore import Edge, Graph, edge
from .realize import pack_factor
from .result import ORACLE_COLORING_N, RealizationResult, certify

log = logging.getLogger(__name__)

EXACT_SECONDS = 20.0
COLORING_TRIES = 12


def _check_shape(G: Graph, k: int) -> None:
    n = G.n
    if k < 1:
        raise ForbiddenGraph("the factor must be at least 1-regular")
    if G.num_edges() == n * (n - 1) // 2:
        raise ForbiddenGraph("complete graphs are excluded")
    if G.is_regular(1):
        raise ForbiddenGraph("a 1-factor is excluded")
    if G.is_regular(2) and n % 2:
        raise ForbiddenGraph("a 2-factor on an odd number of vertices is excluded")


def _cycles(G: Graph) -> list[list[int]]:
    seen, out = set(), []
    for s in range(G.n):
        if s in seen:
            continue
        cyc, prev, cur = [s], None, s
        seen.add(s)
        while True:
            nxt = next(w for w in sorted(G.adj[cur]) if w != prev)
            if nxt == s:
                break
            cyc.append(nxt)
            seen.add(nxt)
            prev, cur = cur, nxt
        out.append(cyc)
    return out


def merge_odd_cycles(G: Graph) -> Graph:
    """Pair up odd cycles of a 2-regular graph and splice each pair into one even cycle."""
    odd = [c for c in _cycles(G) if len(c) % 2]
    adj = G.mutable()
    for c1, c2 in zip(odd[::2], odd[1::2]):
        x, y = c1[0], c1[1]
        u, v = c2[0], c2[1]
        # remove xy, uv; add xu, yv
        adj[x].discard(y)
        adj[y].discard(x)
        adj[u].discard(v)
        adj[v].discard(u)
        adj[x].add(u)
        adj[u].add(x)
        adj[y].add(v)
        adj[v].add(y)
    return Graph.from_adj(adj)


def _bipartite_sides(G: Graph) -> tuple[set[int], set[int]] | None:
    side = {}
    for s in range(G.n):
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            a = stack.pop()
            for b in G.adj[a]:
                if b not in side:
                    side[b] = 1 - side[a]
                    stack.append(b)
                elif side[b] == side[a]:
                    return None
    return {v for v in side if side[v] == 0}, {v for v in side if side[v] == 1}


def break_complete_bipartite(G: Graph, F: frozenset[Edge]) -> Graph | None:
    """For ``G = K^{Δ,Δ}`` with odd ``Δ``: swap two factor edges ``xy, uv`` into ``xu, yv``."""
    n, D = G.n, G.max_degree()
    if D % 2 == 0 or n != 2 * D or not G.is_regular(D) or G.num_edges() != D * D:
        return None
    sides = _bipartite_sides(G)
    if sides is None:
        return None
    A, _ = sides
    fac = sorted(F)
    (x, y) = fac[0] if fac[0][0] in A else fac[0][::-1]
    for e in fac[1:]:
        u, v = e if e[0] in A else e[::-1]
        if len({x, y, u, v}) == 4:
            adj = G.mutable()
            adj[x].discard(y)
            adj[y].discard(x)
            adj[u].discard(v)
            adj[v].discard(u)
            adj[x].add(u)
            adj[u].add(x)
            adj[y].add(v)
            adj[v].add(y)
            return Graph.from_adj(adj)
    return None


def _class_cliques(n: int, f: EquitableColoring) -> list[Edge]:
    return [edge(a, b) for cls in f.classes for a, b in itertools.combinations(sorted(cls), 2)]


def _z_colorings(Z: Graph, c: int, seed: int) -> Iterator[EquitableColoring]:
    seen = set()
    for s in range(COLORING_TRIES):
        try:
            f = hs_coloring(Z, c, seed=seed + s)
        except Exception:  # noqa: BLE001 - a stalled restart just moves on
            continue
        if f.assignment not in seen:
            seen.add(f.assignment)
            yield f
    if Z.n <= ORACLE_COLORING_N:
        try:
            for f in iter_equitable_colorings(Z, c, max_seconds=EXACT_SECONDS):
                f = make_coloring(f.assignment, c)
                if f.assignment not in seen:
                    seen.add(f.assignment)
                    yield f
        except OracleTooLarge:
            return


def _packed(Z: Graph, k: int, c: int, seed: int) -> Iterator[tuple[str, Graph, frozenset[Edge], EquitableColoring]]:
    """Realizations ``Z + F'`` with ``F'`` a k-factor packed away from Z and the color classes."""
    for f in _z_colorings(Z, c, seed):
        G2 = Z.union(Graph(Z.n, _class_cliques(Z.n, f)))
        try:
            Fp = pack_factor(k, G2, seed=seed)
        except PackingFailed:
            continue
        yield "packing", Z.union(Fp), Fp.edge_set(), f


def _exact_candidates(G: Graph, F: frozenset[Edge], c: int) -> Iterator[tuple[str, Graph, frozenset[Edge], EquitableColoring]]:
    if G.n > ORACLE_COLORING_N:
        return
    cands = [(G, F)]
    if G.is_regular(2) and F == G.edge_set():
        H = merge_odd_cycles(G)
        cands.insert(0, (H, frozenset(H.edges())))
    H = break_complete_bipartite(G, F)
    if H is not None:
        cands.insert(0, (H, (F & H.edge_set()) | (H.edge_set() - G.edge_set())))
    for H, FH in cands:
        try:
            f = equitable_exact(H, c, max_seconds=EXACT_SECONDS)
        except OracleTooLarge:
            continue
        if f is not None:
            yield "exact", H, FH, f


def thm1_construct(G: Graph, F, seed: int = 0, connect: bool = True) -> RealizationResult:
    """Realization of ``π(G)`` containing ``G - E(F)`` with an equitable ``Δ(G)``-coloring.

    ``F`` is a :class:`FactorDecomposition` with one factor, or an edge set
    of a regular spanning subgraph of ``G``.  Outside the regimes
    ``Δ <= 4`` and ``Δ >= n/4`` the factor is repacked away from the color
    classes of an equitable coloring of ``G - E(F)`` first; inside them the
    exact search on ``G`` (after the odd-cycle and ``K^{Δ,Δ}`` repairs) goes
    first.  With at least ``n - 1`` edges the result is then made
    edge-connected by exchanging factor edges only.

    Raises
    ------
    ForbiddenGraph
        For excluded shapes.
    PackingFailed
        If no candidate realization yields an equitable coloring.
    """
    if isinstance(F, FactorDecomposition):
        if F.p != 1 or F.host != G:
            raise InvalidInput("expected exactly one factor of G")
        D = F
    else:
        D = FactorDecomposition(G, (frozenset(edge(*e) for e in F),))
    Fe = D.factors[0]
    n = G.n
    k = D.regularities[0]
    _check_shape(G, k)
    delta = G.max_degree()
    Z = G.difference(Fe)
    mid_degree = 4 < delta < n / 4

    routes = (_packed(Z, k, delta, seed), _exact_candidates(G, Fe, delta))
    if not mid_degree:
        routes = routes[::-1]
    want_connect = connect and G.num_edges() >= n - 1
    last_stuck = None
    for route, H, FH, f in itertools.chain(*routes):
        result = RealizationResult(graph=H, factors=FactorDecomposition(H, (FH,)), coloring=f, provenance=f"thm1/{route}")
        if want_connect:
            try:
                rep = connectify_with_report(H, Graph(n, FH), f, strict=False)
            except RepairStuck as exc:
                last_stuck = exc
                log.info("connectify stuck on a candidate: %s", exc)
                continue
            result.graph = rep.graph
            result.factors = FactorDecomposition(rep.graph, (frozenset(rep.labels),))
            result.extras["lambda_before"] = rep.lambda_before
            result.extras["connect_steps"] = len(rep.steps)
        return certify(
            result,
            sequence=G.degrees(),
            factor_degrees=[k],
            colors=delta,
            equitable_oracle=delta,
            contains=Z,
            connectivity_delta=G.min_degree() if want_connect else None,
        )
    if last_stuck is not None:
        raise last_stuck
    raise PackingFailed(f"no candidate realization is equitably {delta}-colorable")
