"""Degree-preserving edge exchanges.

Two flavours: the plain 2-swap ``xy, uv -> xu, yv`` and the colored exchange
that rotates edge classes around two hub vertices so that every regular
factor of a decomposition keeps its degrees.

Edge classes of a :class:`FactorDecomposition`:

* ``0 .. p-1`` -- the regular factors,
* ``LEFTOVER`` -- host edges in no factor,
* ``COMPLEMENT`` -- non-edges of the host (never materialized).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import InvalidExchange, InvalidInput, SearchFailed, SwapBlocked
from .graphcore import Edge, Graph, edge

LEFTOVER = -1
COMPLEMENT = -2


def two_swap(G: Graph, e1: Sequence[int], e2: Sequence[int]) -> Graph:
    """Replace edges ``xy`` and ``uv`` by ``xu`` and ``yv``.

    Raises
    ------
    SwapBlocked
        If the vertices are not distinct, ``xy`` or ``uv`` is missing, or
        ``xu`` or ``yv`` is already present.
    """
    x, y = e1
    u, v = e2
    if len({x, y, u, v}) != 4:
        raise SwapBlocked("swap needs four distinct vertices", (e1, e2))
    for a, b in ((x, y), (u, v)):
        if not G.has_edge(a, b):
            raise SwapBlocked(f"({a + 1},{b + 1}) is not an edge", (e1, e2))
    for a, b in ((x, u), (y, v)):
        if G.has_edge(a, b):
            raise SwapBlocked(f"({a + 1},{b + 1}) is already an edge", (e1, e2))
    adj = G.mutable()
    for a, b in ((x, y), (u, v)):
        adj[a].discard(b)
        adj[b].discard(a)
    for a, b in ((x, u), (y, v)):
        adj[a].add(b)
        adj[b].add(a)
    return Graph.from_adj(adj)


@dataclass(frozen=True, eq=False)
class FactorDecomposition:
    """A host graph with pairwise edge-disjoint regular spanning factors."""

    host: Graph
    factors: tuple[frozenset[Edge], ...] = ()
    _label: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        facs = tuple(frozenset(edge(*e) for e in f) for f in self.factors)
        object.__setattr__(self, "factors", facs)
        label = {}
        host_edges = self.host.edge_set()
        for i, f in enumerate(facs):
            for e in f:
                if e not in host_edges:
                    raise InvalidInput(f"factor {i} edge ({e[0] + 1},{e[1] + 1}) is not a host edge")
                if e in label:
                    raise InvalidInput(f"edge ({e[0] + 1},{e[1] + 1}) lies in two factors")
                label[e] = i
            degs = [0] * self.host.n
            for a, b in f:
                degs[a] += 1
                degs[b] += 1
            if len(set(degs)) > 1:
                raise InvalidInput(f"factor {i} is not regular: degrees {sorted(set(degs))}")
        object.__setattr__(self, "_label", label)

    def __eq__(self, other):
        if not isinstance(other, FactorDecomposition):
            return NotImplemented
        return self.host == other.host and self.factors == other.factors

    def __hash__(self):
        return hash((self.host, self.factors))

    @property
    def n(self) -> int:
        return self.host.n

    @property
    def p(self) -> int:
        return len(self.factors)

    @property
    def regularities(self) -> tuple[int, ...]:
        return tuple(2 * len(f) // self.host.n if self.host.n else 0 for f in self.factors)

    @property
    def leftover(self) -> frozenset[Edge]:
        return frozenset(e for e in self.host.edges() if e not in self._label)

    def class_of(self, a: int, b: int) -> int:
        if not self.host.has_edge(a, b):
            return COMPLEMENT
        return self._label.get(edge(a, b), LEFTOVER)

    def factor_graph(self, i: int) -> Graph:
        return Graph(self.n, self.factors[i])

    def union_graph(self) -> Graph:
        return Graph(self.n, [e for f in self.factors for e in f])

    def class_degree(self, v: int, cls: int) -> int:
        if cls == COMPLEMENT:
            return self.n - 1 - self.host.degree(v)
        return sum(1 for w in self.host.adj[v] if self.class_of(v, w) == cls)


def single_factor(host: Graph, factor_edges: Iterable[Sequence[int]]) -> FactorDecomposition:
    return FactorDecomposition(host, (frozenset(edge(*e) for e in factor_edges),))


@dataclass(frozen=True)
class ExchangeList:
    """Alternating list ``(v x0, x0 u, v x1, x1 u, ...)`` around hubs ``u`` and ``v``."""

    hub_u: int
    hub_v: int
    internals: tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.internals)

    @property
    def edges(self) -> list[Edge]:
        out = []
        for x in self.internals:
            out.append((self.hub_v, x))
            out.append((x, self.hub_u))
        return out

    def inverse(self) -> "ExchangeList":
        return ExchangeList(self.hub_v, self.hub_u, self.internals)


def _pattern_holds(D: FactorDecomposition, u: int, v: int, xs: Sequence[int]) -> bool:
    q = len(xs)
    to_u = [D.class_of(x, u) for x in xs]
    if len(set(to_u)) != q:
        return False
    return all(D.class_of(v, xs[(j + 1) % q]) == to_u[j] for j in range(q))


def check_exchange(D: FactorDecomposition, L: ExchangeList) -> None:
    """Raise :class:`InvalidExchange` unless ``L`` is a valid exchange for ``D``.

    The class pattern may hold with either hub playing ``u``: both readings
    swap the same pairs of edges.
    """
    u, v, xs = L.hub_u, L.hub_v, L.internals
    if not xs:
        return
    if u == v:
        raise InvalidExchange("hubs must differ")
    if len(set(xs)) != len(xs) or u in xs or v in xs:
        raise InvalidExchange("internal vertices must be distinct and differ from the hubs")
    if not all(0 <= w < D.n for w in (u, v, *xs)):
        raise InvalidExchange("vertex out of range")
    if len(xs) > D.p + 2:
        raise InvalidExchange(f"{len(xs)} internal vertices exceed the {D.p + 2} edge classes")
    if not (_pattern_holds(D, u, v, xs) or _pattern_holds(D, v, u, xs)):
        raise InvalidExchange("class pattern violated")


def apply_colored_exchange(D: FactorDecomposition, L: ExchangeList, check: bool = True) -> FactorDecomposition:
    """Swap the classes of ``v x_j`` and ``x_j u`` for every internal vertex ``x_j``."""
    if check:
        check_exchange(D, L)
    if not L.internals:
        return D
    u, v = L.hub_u, L.hub_v
    changes = {}
    for x in L.internals:
        a, b = edge(v, x), edge(x, u)
        changes[a] = D.class_of(*b)
        changes[b] = D.class_of(*a)
    adj = D.host.mutable()
    facs = [set(f) for f in D.factors]
    for (a, b), new in changes.items():
        old = D.class_of(a, b)
        if old >= 0:
            facs[old].discard((a, b))
        if old == COMPLEMENT and new != COMPLEMENT:
            adj[a].add(b)
            adj[b].add(a)
        elif old != COMPLEMENT and new == COMPLEMENT:
            adj[a].discard(b)
            adj[b].discard(a)
        if new >= 0:
            facs[new].add((a, b))
    return FactorDecomposition(Graph.from_adj(adj), tuple(frozenset(f) for f in facs))


def apply_all(D: FactorDecomposition, lists: Iterable[ExchangeList]) -> FactorDecomposition:
    for L in lists:
        D = apply_colored_exchange(D, L)
    return D


def _classes(D: FactorDecomposition) -> list[int]:
    return list(range(D.p)) + [LEFTOVER, COMPLEMENT]


def find_exchange(
    D: FactorDecomposition,
    u: int,
    v: int,
    anchor: int,
    blocked: set[int] | frozenset[int] = frozenset(),
) -> ExchangeList | None:
    """Shortest exchange with ``anchor`` as ``x_0`` that moves the edge ``anchor-u`` to ``anchor-v``.

    The classes ``class(x_j u)`` form a simple path that starts at
    ``class(anchor u)`` and ends at ``COMPLEMENT``; a vertex ``y`` steps from
    class ``c`` to ``c'`` when ``class(v y) = c`` and ``class(y u) = c'``.
    Vertices in ``blocked`` are never used.
    """
    start = D.class_of(anchor, u)
    if start == COMPLEMENT or D.class_of(v, anchor) != COMPLEMENT:
        return None
    avoid = set(blocked) | {u, v, anchor}
    # arcs[c][c'] = smallest free vertex realizing the step c -> c'
    arcs: dict[int, dict[int, int]] = {}
    for y in range(D.n):
        if y in avoid:
            continue
        a, b = D.class_of(v, y), D.class_of(y, u)
        if a == COMPLEMENT:
            continue
        arcs.setdefault(a, {}).setdefault(b, y)
    parent = {start: None}
    queue = deque([start])
    while queue:
        c = queue.popleft()
        for c2, y in sorted(arcs.get(c, {}).items()):
            if c2 in parent:
                continue
            parent[c2] = (c, y)
            if c2 == COMPLEMENT:
                chain = []
                node = c2
                while parent[node] is not None:
                    prev, y = parent[node]
                    chain.append(y)
                    node = prev
                return ExchangeList(u, v, (anchor, *reversed(chain)))
            queue.append(c2)
    return None


def find_disjoint_exchanges(
    D: FactorDecomposition,
    u: int,
    v: int,
    X: Iterable[int],
    blocked: Iterable[int] = (),
) -> list[ExchangeList]:
    """Internally disjoint exchanges moving every ``x`` in ``X`` from ``u``'s to ``v``'s neighborhood.

    Requires ``X`` inside ``N(u) - N(v)`` and ``deg(v) >= deg(u)``.  Each
    factor class is balanced at ``u`` and ``v``, and ``v`` has at least as many
    leftover edges as ``u``, so a walk from ``class(x u)`` can always be
    continued until it reaches the complement class; the exchanges are
    therefore found greedily, one anchor at a time.

    Raises
    ------
    InvalidInput
        If the preconditions fail.
    SearchFailed
        If some anchor cannot be served (carries the exchanges found so far).
    """
    xs = sorted(set(X))
    H = D.host
    if u == v:
        raise InvalidInput("hubs must differ")
    if H.degree(v) < H.degree(u):
        raise InvalidInput(f"deg(v{v + 1}) < deg(v{u + 1})")
    for x in xs:
        if x in (u, v) or not H.has_edge(x, u) or H.has_edge(x, v):
            raise InvalidInput(f"v{x + 1} must be a neighbor of v{u + 1} and a non-neighbor of v{v + 1}")
    used = set(blocked) | set(xs)
    found: list[ExchangeList] = []
    for x in xs:
        L = find_exchange(D, u, v, x, blocked=used - {x})
        if L is None:
            raise SearchFailed(f"no exchange anchored at v{x + 1}", found)
        used.update(L.internals)
        found.append(L)
    return found
