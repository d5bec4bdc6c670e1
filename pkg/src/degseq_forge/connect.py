"""Edge connectivity and cut repair by color-safe edge exchanges."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping

from .coloring import EquitableColoring, check_coloring
from .errors import InvalidInput, RepairStuck
from .graphcore import CutWitness, Edge, Graph, cut, edge

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConnectTarget:
    delta: int
    target: int
    parity_case: str


def connect_target(delta: int) -> ConnectTarget:
    """``delta - 1`` when ``delta >= 3`` is odd, otherwise ``delta``."""
    if delta >= 3 and delta % 2:
        return ConnectTarget(delta, delta - 1, "odd")
    return ConnectTarget(delta, delta, "even-or-one" if delta else "zero")


def _max_flow(adj: list[set[int]] | tuple, s: int, t: int) -> tuple[int, set[int]]:
    """Unit-capacity undirected max flow; returns the value and the source side of a min cut."""
    n = len(adj)
    res = [dict.fromkeys(adj[a], 1) for a in range(n)]
    value = 0
    while True:
        prev = {s: None}
        queue = deque([s])
        while queue and t not in prev:
            a = queue.popleft()
            for b, cap in res[a].items():
                if cap > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if t not in prev:
            return value, set(prev)
        b = t
        while prev[b] is not None:
            a = prev[b]
            res[a][b] -= 1
            res[b][a] += 1
            b = a
        value += 1


def edge_connectivity(G: Graph) -> tuple[int, CutWitness]:
    """``λ(G)`` and a minimum cut, from max flows between vertex 0 and every other vertex."""
    if G.n < 2:
        raise InvalidInput("edge connectivity needs at least two vertices")
    best, side = None, None
    for t in range(1, G.n):
        val, s_side = _max_flow(G.adj, 0, t)
        if best is None or val < best:
            best, side = val, s_side
            if best == 0:
                break
    return best, cut(G, side)


@dataclass
class FlowTree:
    """Gusfield tree: ``weight[i]`` is the min cut between ``i`` and ``parent[i]``."""

    parent: list[int]
    weight: list[int]
    sides: list[frozenset[int]]

    def pairwise(self) -> list[list[int]]:
        n = len(self.parent)
        nbrs: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for i in range(1, n):
            nbrs[i].append((self.parent[i], self.weight[i]))
            nbrs[self.parent[i]].append((i, self.weight[i]))
        out = [[0] * n for _ in range(n)]
        for s in range(n):
            stack = [(s, -1, None)]
            while stack:
                x, px, low = stack.pop()
                if low is not None:
                    out[s][x] = low
                for y, w in nbrs[x]:
                    if y != px:
                        stack.append((y, x, w if low is None else min(low, w)))
        return out


def flow_tree(G: Graph) -> FlowTree:
    n = G.n
    parent = [0] * n
    weight = [0] * n
    sides: list[frozenset[int]] = [frozenset()] * n
    for s in range(1, n):
        t = parent[s]
        val, side = _max_flow(G.adj, s, t)
        weight[s] = val
        sides[s] = frozenset(side)
        for i in range(s + 1, n):
            if i in side and parent[i] == t:
                parent[i] = s
    return FlowTree(parent, weight, sides)


def _measure(G: Graph, target: int) -> tuple[tuple[int, int], FlowTree]:
    tree = flow_tree(G)
    pw = tree.pairwise()
    n = G.n
    deficit = sum(max(0, target - pw[i][j]) for i in range(n) for j in range(i + 1, n))
    lam = min(tree.weight[1:], default=0)
    return (lam, -deficit), tree


@dataclass
class ConnectReport:
    graph: Graph
    target: ConnectTarget
    lambda_before: int
    lambda_after: int
    steps: list[dict] = field(default_factory=list)
    labels: dict[Edge, int] = field(default_factory=dict)


def connectify_with_report(
    G0: Graph,
    Z0: Graph,
    f: EquitableColoring,
    edge_classes: Mapping[Edge, int] | None = None,
    max_steps: int | None = None,
    strict: bool = True,
) -> ConnectReport:
    """Raise edge connectivity while keeping degrees, ``G0 - E(Z0)`` and ``f`` intact.

    At a cut ``(A, B)`` below target, two exchangeable edges ``aa'`` inside
    ``A`` and ``bb'`` inside ``B`` are replaced by ``ab'`` and ``a'b`` (or by
    ``ab`` and ``a'b'``) whenever the new edges join differently colored
    vertices.  An exchange is accepted only if it strictly improves
    ``(λ, -deficit)``, where deficit sums ``target - λ(s, t)`` over vertex
    pairs below target.  ``edge_classes`` optionally labels Z0 edges; only
    equally labelled edges are exchanged, and new edges inherit the label.

    Raises
    ------
    InvalidInput
        On violated preconditions.
    RepairStuck
        If no improving exchange exists at any violating cut, or the step cap
        ``n**3`` is exceeded.
    """
    n = G0.n
    if n < 2:
        raise InvalidInput("connectify needs at least two vertices")
    if not Z0.subgraph_of(G0):
        raise InvalidInput("Z0 must be a subgraph of G0")
    if Z0.min_degree() < 1:
        raise InvalidInput("every vertex needs an edge in Z0")
    if strict and G0.min_degree() == 1 and Z0.num_edges() < n - 1:
        raise InvalidInput("Z0 needs at least n-1 edges when the minimum degree is 1")
    chk = check_coloring(G0, f)
    if not (chk.proper and chk.equitable):
        raise InvalidInput("f must be a proper equitable coloring of G0")

    goal = connect_target(G0.min_degree())
    protected = G0.edge_set() - Z0.edge_set()
    label: dict[Edge, int] = {e: (edge_classes or {}).get(e, 0) for e in Z0.edges()}
    color = f.assignment
    degrees = G0.degrees()
    G = G0
    cap = max_steps if max_steps is not None else n**3
    measure, tree = _measure(G, goal.target)
    report = ConnectReport(G0, goal, measure[0], measure[0])

    for step in range(cap + 1):
        if measure[0] >= goal.target:
            break
        if step == cap:
            raise RepairStuck(f"step cap {cap} reached at λ={measure[0]}")
        cuts = sorted(
            (tree.weight[i], sorted(tree.sides[i])) for i in range(1, n) if tree.weight[i] < goal.target
        )
        accepted = None
        for _, side in cuts:
            A = frozenset(side)
            inside_a = [e for e in label if e[0] in A and e[1] in A]
            inside_b = [e for e in label if e[0] not in A and e[1] not in A]
            for ea in inside_a:
                for eb in inside_b:
                    if label[ea] != label[eb]:
                        continue
                    for a, a2 in (ea, ea[::-1]):
                        for b, b2 in (eb, eb[::-1]):
                            # remove aa', bb'; add ab', a'b
                            if G.has_edge(a, b2) or G.has_edge(a2, b):
                                continue
                            if color[a] == color[b2] or color[a2] == color[b]:
                                continue
                            adj = G.mutable()
                            adj[a].discard(a2)
                            adj[a2].discard(a)
                            adj[b].discard(b2)
                            adj[b2].discard(b)
                            adj[a].add(b2)
                            adj[b2].add(a)
                            adj[a2].add(b)
                            adj[b].add(a2)
                            H = Graph.from_adj(adj)
                            m2, t2 = _measure(H, goal.target)
                            if m2 > measure:
                                accepted = (H, m2, t2, (a, a2), (b, b2))
                                break
                        if accepted:
                            break
                    if accepted:
                        break
                if accepted:
                    break
            if accepted:
                break
        if accepted is None:
            raise RepairStuck(
                f"no improving exchange at λ={measure[0]} (target {goal.target})",
                cut=cut(G, cuts[0][1]) if cuts else None,
            )
        H, m2, t2, (a, a2), (b, b2) = accepted
        lab = label.pop(edge(a, a2))
        label.pop(edge(b, b2))
        label[edge(a, b2)] = lab
        label[edge(a2, b)] = lab
        assert H.degrees() == degrees
        assert all(H.has_edge(*e) for e in protected)
        assert all(color[x] != color[y] for x, y in ((a, b2), (a2, b)))
        report.steps.append(
            {
                "removed": [(a + 1, a2 + 1), (b + 1, b2 + 1)],
                "added": [(a + 1, b2 + 1), (a2 + 1, b + 1)],
                "measure_before": list(measure),
                "measure_after": list(m2),
            }
        )
        log.debug("connectify step %d: %s -> %s", step, measure, m2)
        G, measure, tree = H, m2, t2

    report.graph = G
    report.lambda_after = measure[0]
    report.labels = label
    return report


def connectify(G0: Graph, Z0: Graph, f: EquitableColoring, **kwargs) -> Graph:
    return connectify_with_report(G0, Z0, f, **kwargs).graph
