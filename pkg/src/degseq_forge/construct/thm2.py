"""Equitable colorings of realizations with regular factors, by potential descent.

The search keeps a realization together with a ``(γ+1)``-coloring whose
first ``γ`` classes are balanced and whose extra class (the overflow) is no
larger than any of them.  Every accepted move strictly decreases the
potential

    (|overflow|, S_2, ..., S_{γ+1}, T)

where ``S_j`` sums the (1-based) vertex indices of the first ``j - 1``
classes, classes ordered by non-increasing size and then by index sum, and
``T`` sums the indices of the neighbors of the highest-indexed overflow
vertex.  The potential takes finitely many values, so the search ends; it
ends with an empty overflow whenever ``γ`` is at least the bound.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from ..coloring import EquitableColoring, hs_coloring, make_coloring
from ..connect import connectify_with_report
from ..errors import InvalidInput, NotGraphic, SearchFailed, SearchStalled
from ..exchange import FactorDecomposition, find_disjoint_exchanges, apply_all
from ..graphcore import Graph
from ..seqcore import DegreeSequence, FactorSpec, gamma_bound, is_graphic, normalize
from .realize import build_factored_realization
from .result import RealizationResult, certify

log = logging.getLogger(__name__)


@dataclass
class Thm2SearchState:
    """A decomposition plus a ``(γ+1)``-coloring; color ``gamma`` is the overflow."""

    decomposition: FactorDecomposition
    color: list[int]
    gamma: int

    @property
    def graph(self) -> Graph:
        return self.decomposition.host

    def members(self) -> list[set[int]]:
        out = [set() for _ in range(self.gamma + 1)]
        for v, c in enumerate(self.color):
            out[c].add(v)
        return out

    def order(self) -> list[int]:
        """Balanced classes in potential order: larger first, then smaller index sum."""
        mem = self.members()
        return sorted(range(self.gamma), key=lambda c: (-len(mem[c]), sum(v + 1 for v in mem[c]), c))

    @property
    def overflow(self) -> set[int]:
        return {v for v, c in enumerate(self.color) if c == self.gamma}

    def shape_ok(self) -> bool:
        sizes = [0] * (self.gamma + 1)
        for c in self.color:
            sizes[c] += 1
        body = sizes[: self.gamma]
        return max(body) - min(body) <= 1 and sizes[self.gamma] <= min(body)

    def proper(self) -> bool:
        return all(self.color[a] != self.color[b] for a, b in self.graph.edges())

    def potential(self) -> tuple[int, ...]:
        mem = self.members()
        prefix, sums = 0, []
        for c in self.order():
            prefix += sum(v + 1 for v in mem[c])
            sums.append(prefix)
        over = mem[self.gamma]
        tail = 0
        if over:
            alpha = max(over)
            tail = sum(w + 1 for w in self.graph.adj[alpha])
        return (len(over), *sums, tail)

    def q_index(self) -> int:
        """Position (in potential order) of the first class of the smallest balanced size."""
        mem = self.members()
        order = self.order()
        small = min(len(mem[c]) for c in order)
        return next(i for i, c in enumerate(order) if len(mem[c]) == small)


def _nbr_in(G: Graph, v: int, cls: set[int]) -> bool:
    return not G.adj[v].isdisjoint(cls)


def _recolor_paths(st: Thm2SearchState) -> Iterator[tuple[str, FactorDecomposition, list[int]]]:
    """Shift one overflow vertex into a balanced class along a class path."""
    G = st.graph
    mem = st.members()
    gamma = st.gamma
    small = min(len(mem[c]) for c in range(gamma))
    for x in sorted(mem[gamma], reverse=True):
        prev = {}
        queue = deque()
        for c in range(gamma):
            if not _nbr_in(G, x, mem[c]):
                prev[c] = (None, x)
                queue.append(c)
        while queue:
            c = queue.popleft()
            if len(mem[c]) == small:
                color = list(st.color)
                node = c
                while node is not None:
                    src, y = prev[node]
                    color[y] = node
                    node = src
                yield "recolor", st.decomposition, color
                break
            for c2 in range(gamma):
                if c2 in prev:
                    continue
                y = next((y for y in sorted(mem[c]) if not _nbr_in(G, y, mem[c2])), None)
                if y is not None:
                    prev[c2] = (c, y)
                    queue.append(c2)


def _exchanges(D: FactorDecomposition, u: int, v: int, X, blocked) -> FactorDecomposition | None:
    try:
        lists = find_disjoint_exchanges(D, u, v, X, blocked=blocked)
    except (SearchFailed, InvalidInput):
        return None
    return apply_all(D, lists)


def _overflow_into_class(st: Thm2SearchState) -> Iterator[tuple[str, FactorDecomposition, list[int]]]:
    """Free an overflow vertex's way into a smallest class by moving its neighbors there to a larger-degree vertex."""
    G, D = st.graph, st.decomposition
    mem = st.members()
    order = st.order()
    q = st.q_index()
    for i in sorted(mem[st.gamma], reverse=True):
        for j in order[q:]:
            X = G.adj[i] & mem[j]
            for s in range(G.n):
                if s == i or s in mem[j] or G.degree(s) < G.degree(i) or _nbr_in(G, s, mem[j]):
                    continue
                blocked = (mem[j] | mem[st.color[s]]) - X - {i, s}
                D2 = _exchanges(D, i, s, X, blocked)
                if D2 is None:
                    continue
                color = list(st.color)
                color[i] = j
                yield "overflow-exchange", D2, color


def _index_swaps(st: Thm2SearchState) -> Iterator[tuple[str, FactorDecomposition, list[int]]]:
    """Trade a vertex for a lower-indexed one from a later class."""
    G, D = st.graph, st.decomposition
    mem = st.members()
    seq = st.order() + [st.gamma]
    for zi, z in enumerate(seq):
        for z2 in seq[zi + 1 :]:
            for t in sorted(mem[z], reverse=True):
                rest = mem[z] - {t}
                for s in sorted(mem[z2]):
                    if s >= t:
                        break
                    if _nbr_in(G, s, rest):
                        continue
                    X = G.adj[t] & (mem[z2] - {s})
                    blocked = (mem[z] | mem[z2]) - X - {s, t}
                    D2 = _exchanges(D, t, s, X, blocked)
                    if D2 is None:
                        continue
                    color = list(st.color)
                    color[t], color[s] = z2, z
                    yield "index-swap", D2, color


def _pivot_neighbors(st: Thm2SearchState) -> Iterator[tuple[str, FactorDecomposition, list[int]]]:
    """Replace a neighbor of the highest overflow vertex by a lower-indexed vertex."""
    G, D = st.graph, st.decomposition
    over = st.overflow
    if not over:
        return
    alpha = max(over)
    mem = st.members()
    for w in sorted(G.adj[alpha], reverse=True):
        for s in range(w):
            if s == alpha or s in G.adj[alpha] or st.color[s] == st.gamma:
                continue
            blocked = (mem[st.color[w]] | mem[st.color[s]]) - {alpha, w, s}
            D2 = _exchanges(D, w, s, [alpha], blocked)
            if D2 is not None:
                yield "pivot-exchange", D2, list(st.color)


MOVES = (_recolor_paths, _overflow_into_class, _index_swaps, _pivot_neighbors)


def reduce_colors(
    D: FactorDecomposition,
    f: EquitableColoring,
    log_moves: list | None = None,
    max_moves: int | None = None,
) -> tuple[FactorDecomposition, EquitableColoring]:
    """Turn an equitable ``c``-coloring into an equitable ``(c-1)``-coloring of a realization.

    Raises
    ------
    SearchStalled
        If no move improves the potential while the overflow is non-empty, or
        the move cap ``n**4`` is exceeded.
    """
    c = f.num_colors
    gamma = c - 1
    sizes = f.class_sizes
    mem = f.classes
    spare = max(range(c), key=lambda k: (-sizes[k], sum(mem[k]), k))
    relabel = {old: i for i, old in enumerate(k for k in range(c) if k != spare)}
    relabel[spare] = gamma
    st = Thm2SearchState(D, [relabel[x] for x in f.assignment], gamma)
    assert st.shape_ok() and st.proper()
    n = D.n
    cap = max_moves if max_moves is not None else max(n**4, 16)
    pot = st.potential()
    for step in range(cap + 1):
        if pot[0] == 0:
            return st.decomposition, make_coloring(st.color, gamma)
        if step == cap:
            raise SearchStalled(f"move cap {cap} reached with {pot[0]} vertices left over at γ={gamma}")
        accepted = None
        for gen in MOVES:
            for name, D2, color in gen(st):
                cand = Thm2SearchState(D2, color, gamma)
                if not (cand.shape_ok() and cand.proper()):
                    continue
                p2 = cand.potential()
                if p2 < pot:
                    accepted = (name, cand, p2)
                    break
            if accepted:
                break
        if accepted is None:
            raise SearchStalled(f"no improving move at γ={gamma}; potential {pot}")
        name, cand, p2 = accepted
        assert p2 < pot, "potential must strictly decrease"
        assert cand.graph.degrees() == st.graph.degrees()
        assert cand.decomposition.regularities == st.decomposition.regularities
        if log_moves is not None:
            log_moves.append({"gamma": gamma, "move": name, "before": list(pot), "after": list(p2)})
        log.debug("γ=%d %s: %s -> %s", gamma, name, pot, p2)
        st, pot = cand, p2
    raise AssertionError("unreachable")


def thm2_construct(
    pi,
    factor_specs: Sequence[FactorSpec | int] = (),
    gamma: int | None = None,
    seed: int = 0,
    connect: bool = True,
) -> RealizationResult:
    """Realization of ``pi`` with the requested regular factors and an equitable ``gamma``-coloring.

    ``gamma`` defaults to the bound computed by :func:`gamma_bound`.  The
    coloring starts as an equitable ``(Δ+1)``-coloring and loses one color
    at a time by :func:`reduce_colors`.  When the degree sum is at least
    ``2(n-1)`` the result is also made edge-connected up to the usual target,
    exchanging only edges of equal factor label so the factors survive.

    Raises
    ------
    InvalidInput
        If ``pi`` is not positive or ``gamma`` is below the bound.
    SearchStalled
        If the descent gets stuck.
    """
    d = pi if isinstance(pi, DegreeSequence) else normalize(pi)
    if not d.is_positive:
        raise InvalidInput("the sequence must be positive")
    if not is_graphic(d):
        raise NotGraphic(f"({d}) is not graphic")
    bound = gamma_bound(d)
    gamma = bound if gamma is None else int(gamma)
    if gamma < bound:
        raise InvalidInput(f"γ={gamma} is below the bound {bound}")
    ks = [s.k if isinstance(s, FactorSpec) else int(s) for s in factor_specs]
    D = build_factored_realization(d, ks, seed=seed)
    if len(D.factors) != len([k for k in ks if k > 0]):
        raise AssertionError("factor count mismatch")
    G = D.host
    n = d.n
    moves: list[dict] = []
    f = hs_coloring(G, max(gamma, G.max_degree() + 1), seed=seed)
    while f.num_colors > gamma:
        D, f = reduce_colors(D, f, log_moves=moves)
    result = RealizationResult(
        graph=D.host,
        factors=D,
        coloring=f,
        provenance=f"thm2(γ={gamma})",
        extras={"gamma": gamma, "gamma_bound": bound, "moves": moves},
    )
    if connect and sum(d.degrees) >= 2 * (n - 1) and n >= 2:
        result = _connect_factored(result, seed)
    return certify(
        result,
        sequence=d.degrees,
        factor_degrees=[k for k in ks if k > 0],
        colors=gamma,
        connectivity_delta=d.degrees[-1] if connect and sum(d.degrees) >= 2 * (n - 1) else None,
    )


def _connect_factored(result: RealizationResult, seed: int) -> RealizationResult:
    """Raise connectivity by label-preserving exchanges; factors are rebuilt from the labels."""
    D = result.factors
    H = D.host
    labels = {e: D.class_of(*e) for e in H.edges()}
    rep = connectify_with_report(H, H, result.coloring, edge_classes=labels, strict=False)
    factors = tuple(frozenset(e for e, lab in rep.labels.items() if lab == i) for i in range(D.p))
    result.graph = rep.graph
    result.factors = FactorDecomposition(rep.graph, factors)
    result.extras["lambda_before"] = rep.lambda_before
    result.extras["connect_steps"] = len(rep.steps)
    return result
