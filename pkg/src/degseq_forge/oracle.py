"""Brute-force referees for small instances.

Everything here is exhaustive and deliberately naive: it enumerates labeled
graphs and factors by backtracking and shares no code with the constructive
side beyond the graph type.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterator, Sequence

from .coloring import DEFAULT_COLORING_CAP, equitable_exact
from .errors import OracleTooLarge
from .graphcore import Edge, Graph
from .seqcore import DegreeSequence, normalize


@dataclass(frozen=True)
class OracleBudget:
    max_n: int = 8
    max_factor_n: int = 16
    max_coloring_n: int = DEFAULT_COLORING_CAP
    max_seconds: float | None = None
    seed: int = 0


DEFAULT_BUDGET = OracleBudget()


class _Clock:
    def __init__(self, seconds: float | None):
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise OracleTooLarge("oracle query exceeded its time budget")


def _degree_constrained(
    rem: list[int],
    allowed: Sequence[frozenset[int]] | None,
    clock: _Clock,
) -> Iterator[list[Edge]]:
    """Every edge set (inside ``allowed``) giving vertex ``v`` exactly ``rem[v]`` edges.

    Vertex ``i`` picks its partners among later vertices, so each labeled
    subgraph appears exactly once, in lexicographic order of adjacency rows.
    """
    n = len(rem)
    if sum(rem) % 2 or any(x < 0 for x in rem):
        return
    rem = list(rem)
    chosen: list[Edge] = []

    def later_ok(i: int) -> bool:
        # each later vertex must still find enough partners after i
        pool = [j for j in range(i + 1, n) if rem[j] > 0]
        for j in pool:
            if allowed is None:
                room = len(pool) - 1
            else:
                room = sum(1 for w in pool if w != j and w in allowed[j])
            if rem[j] > room:
                return False
        return True

    def pick(i: int, cands: list[int], start: int, need: int) -> Iterator[None]:
        if need == 0:
            yield None
            return
        for idx in range(start, len(cands) - need + 1):
            j = cands[idx]
            rem[j] -= 1
            chosen.append((i, j))
            yield from pick(i, cands, idx + 1, need - 1)
            chosen.pop()
            rem[j] += 1

    def row(i: int) -> Iterator[list[Edge]]:
        clock.check()
        if i == n:
            yield list(chosen)
            return
        need = rem[i]
        if need == 0:
            yield from row(i + 1)
            return
        cands = [j for j in range(i + 1, n) if rem[j] > 0 and (allowed is None or j in allowed[i])]
        if len(cands) < need:
            return
        rem[i] = 0
        for _ in pick(i, cands, 0, need):
            if later_ok(i):
                yield from row(i + 1)
        rem[i] = need

    yield from row(0)


def enumerate_realizations(pi, budget: OracleBudget = DEFAULT_BUDGET) -> Iterator[Graph]:
    """Every labeled simple graph with ``deg(v_i) = d_i``, each exactly once.

    Raises
    ------
    OracleTooLarge
        If ``n`` exceeds ``budget.max_n``.
    """
    d = pi.degrees if isinstance(pi, DegreeSequence) else tuple(pi)
    n = len(d)
    if n > budget.max_n:
        raise OracleTooLarge(f"realization enumeration capped at n={budget.max_n}, got n={n}")
    clock = _Clock(budget.max_seconds)
    for edges in _degree_constrained(list(d), None, clock):
        yield Graph(n, edges)


def find_k_factor(G: Graph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset[Edge] | None:
    """Edge set of some ``k``-regular spanning subgraph of ``G``, or ``None``."""
    if G.n > budget.max_factor_n:
        raise OracleTooLarge(f"k-factor search capped at n={budget.max_factor_n}, got n={G.n}")
    if k < 0 or k > G.min_degree() or (k * G.n) % 2:
        return None
    clock = _Clock(budget.max_seconds)
    for edges in _degree_constrained([k] * G.n, G.adj, clock):
        return frozenset(edges)
    return None


def has_k_factor(G: Graph, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    return find_k_factor(G, k, budget) is not None


def exists_realization_with_kfactor(pi, k: int, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    d = pi if isinstance(pi, DegreeSequence) else normalize(pi)
    if d.n > budget.max_n:
        raise OracleTooLarge(f"realization enumeration capped at n={budget.max_n}, got n={d.n}")
    return any(has_k_factor(G, k, budget) for G in enumerate_realizations(d, budget))


def min_equitable_colors(G: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Least ``c`` admitting an equitable ``c``-coloring."""
    if G.n > budget.max_coloring_n:
        raise OracleTooLarge(f"exact coloring capped at n={budget.max_coloring_n}, got n={G.n}")
    for c in range(1, G.n + 1):
        if equitable_exact(G, c, max_n=budget.max_coloring_n, max_seconds=budget.max_seconds) is not None:
            return c
    return 0
