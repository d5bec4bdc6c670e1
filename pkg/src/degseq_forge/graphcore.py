"""Simple undirected graphs on vertices ``0..n-1``.

Vertices are 0-based inside the library.  Text formats, the CLI and error
messages use 1-based labels (``v_1 .. v_n``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidCut, InvalidEdge, InvalidParams, ParseError
from .seqcore import DegreeSequence

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple graph stored as a tuple of neighbor frozensets."""

    __slots__ = ("n", "adj", "duplicates", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise InvalidParams("vertex count must be non-negative")
        adj = [set() for _ in range(n)]
        dup = 0
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidEdge(f"edge ({u + 1},{v + 1}) has an endpoint outside 1..{n}")
            if u == v:
                raise InvalidEdge(f"loop at vertex {u + 1}")
            if v in adj[u]:
                dup += 1
                continue
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(frozenset(s) for s in adj)
        self.duplicates = dup
        self._hash = None

    @classmethod
    def from_adj(cls, adj: Sequence[Iterable[int]]) -> "Graph":
        g = cls.__new__(cls)
        g.n = len(adj)
        g.adj = tuple(frozenset(s) for s in adj)
        g.duplicates = 0
        g._hash = None
        return g

    def mutable(self) -> list[set[int]]:
        return [set(s) for s in self.adj]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.adj))
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={[(u + 1, v + 1) for u, v in self.edges()]})"

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(s) for s in self.adj]

    def edges(self) -> list[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges())

    def num_edges(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def max_degree(self) -> int:
        return max((len(s) for s in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(s) for s in self.adj), default=0)

    def complement(self) -> "Graph":
        every = set(range(self.n))
        return Graph.from_adj([every - s - {v} for v, s in enumerate(self.adj)])

    def union(self, other: "Graph") -> "Graph":
        if other.n != self.n:
            raise InvalidParams("union needs graphs on the same vertex set")
        return Graph.from_adj([a | b for a, b in zip(self.adj, other.adj)])

    def difference(self, edges: Iterable[Sequence[int]]) -> "Graph":
        adj = self.mutable()
        for u, v in edges:
            adj[u].discard(v)
            adj[v].discard(u)
        return Graph.from_adj(adj)

    def subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and all(a <= b for a, b in zip(self.adj, other.adj))

    def is_regular(self, k: int | None = None) -> bool:
        degs = set(self.degrees())
        if k is None:
            return len(degs) <= 1
        return degs <= {k} if self.n else True

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1


def graph_from_edges(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from 1-based vertex pairs.

    Repeated edges collapse into one; ``Graph.duplicates`` counts them.

    >>> graph_from_edges(3, [(1, 2), (2, 3), (3, 1)]).degrees()
    [2, 2, 2]
    """
    pairs = []
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (1 <= u <= n and 1 <= v <= n):
            raise InvalidEdge(f"edge ({u},{v}) has an endpoint outside 1..{n}")
        pairs.append((u - 1, v - 1))
    return Graph(n, pairs)


def degree_sequence_of(G: Graph) -> DegreeSequence:
    return DegreeSequence(tuple(sorted(G.degrees(), reverse=True)))


def canonicalize(G: Graph) -> tuple[Graph, list[int]]:
    """Relabel so degrees are non-increasing; returns the graph and ``order``.

    ``order[i]`` is the old label of new vertex ``i``.  Ties keep their
    original relative order.
    """
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    pos = {old: new for new, old in enumerate(order)}
    return Graph(G.n, [(pos[u], pos[v]) for u, v in G.edges()]), order


def relabel(G: Graph, mapping: Sequence[int]) -> Graph:
    """Vertex ``v`` becomes ``mapping[v]``."""
    return Graph(G.n, [(mapping[u], mapping[v]) for u, v in G.edges()])


def join(G: Graph, H: Graph) -> Graph:
    """Disjoint union of ``G`` and ``H`` plus every edge between them; ``G`` comes first."""
    off = G.n
    edges = list(G.edges())
    edges += [(u + off, v + off) for u, v in H.edges()]
    edges += [(u, off + w) for u in range(G.n) for w in range(H.n)]
    return Graph(G.n + H.n, edges)


def complete(n: int) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def independent(n: int) -> Graph:
    return Graph(n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParams("a cycle needs at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return join(independent(a), independent(b))


def circulant(n: int, r: int) -> Graph:
    """An ``r``-regular circulant on ``n`` vertices with consecutive offsets."""
    if r < 0 or r > max(n - 1, 0) or (r * n) % 2:
        raise InvalidParams(f"no {r}-regular graph on {n} vertices")
    offsets = list(range(1, r // 2 + 1))
    edges = [(i, (i + o) % n) for i in range(n) for o in offsets]
    if r % 2:
        edges += [(i, i + n // 2) for i in range(n // 2)]
    return Graph(n, edges)


def split_graph(s: int, t: int) -> Graph:
    """A clique on ``s`` vertices joined to an independent set of ``2t-1`` vertices."""
    if s < 1 or t < 1:
        raise InvalidParams("split_graph needs s >= 1 and t >= 1")
    return join(complete(s), independent(2 * t - 1))


def sharpness_factor_family(k: int) -> Graph:
    """The family on which the k-factor criterion fails by exactly one.

    Even ``k``: two independent vertices joined to a ``(k-2)``-regular graph on
    ``k+2`` vertices.  Odd ``k``: an edge joined to a ``(k-2)``-regular graph on
    ``k+1`` vertices.  Degrees are ``(k+2, k+2, k, ..., k)``.
    """
    if k < 2:
        raise InvalidParams("sharpness_factor_family needs k >= 2")
    if k % 2 == 0:
        return join(independent(2), circulant(k + 2, k - 2))
    return join(complete(2), circulant(k + 1, k - 2))


_NAMED = {
    "complete": complete,
    "cycle": cycle,
    "independent": independent,
    "path": path,
    "complete_bipartite": complete_bipartite,
    "circulant": circulant,
    "split_graph": split_graph,
    "sharpness_factor_family": sharpness_factor_family,
}


def named(kind: str, *params: int) -> Graph:
    try:
        fn = _NAMED[kind]
    except KeyError:
        raise InvalidParams(f"unknown graph kind {kind!r}") from None
    return fn(*params)


def boundary(G: Graph, X: Iterable[int]) -> frozenset[int]:
    """Vertices of ``X`` with a neighbor outside ``X``."""
    xs = frozenset(X)
    return frozenset(x for x in xs if G.adj[x] - xs)


@dataclass(frozen=True)
class CutWitness:
    side_A: frozenset[int]
    crossing_edges: frozenset[Edge]

    @property
    def size(self) -> int:
        return len(self.crossing_edges)


def cut(G: Graph, X: Iterable[int]) -> CutWitness:
    xs = frozenset(X)
    if not xs or len(xs) >= G.n or not xs <= frozenset(range(G.n)):
        raise InvalidCut("a cut needs a proper non-empty vertex subset")
    crossing = frozenset(edge(x, y) for x in xs for y in G.adj[x] if y not in xs)
    return CutWitness(xs, crossing)


# graph6 ---------------------------------------------------------------------

_G6_HEADER = ">>graph6<<"


def _g6_size(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in (30, 24, 18, 12, 6, 0)]


def encode_graph6(G: Graph) -> str:
    bits = [1 if G.has_edge(i, j) else 0 for j in range(1, G.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    chunks = [int("".join(map(str, bits[i : i + 6])), 2) for i in range(0, len(bits), 6)]
    return "".join(chr(63 + x) for x in _g6_size(G.n) + chunks)


def decode_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER) :]
    if not s:
        raise ParseError("empty graph6 string")
    vals = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in vals):
        raise ParseError("graph6 characters must lie in '?'..'~'")
    if vals[0] < 63:
        n, body = vals[0], vals[1:]
    elif len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8:
            raise ParseError("truncated graph6 size field")
        n = 0
        for x in vals[2:8]:
            n = (n << 6) | x
        body = vals[8:]
    else:
        if len(vals) < 4:
            raise ParseError("truncated graph6 size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = vals[4:]
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise ParseError(f"graph6 body has {len(body)} chars, expected {(nbits + 5) // 6}")
    bits = [(x >> (5 - b)) & 1 for x in body for b in range(6)]
    if any(bits[nbits:]):
        raise ParseError("non-zero graph6 padding bits")
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph(n, edges)


# edge-list text ------------------------------------------------------------


def encode_edgelist(G: Graph) -> str:
    lines = [str(G.n)] + [f"{u + 1} {v + 1}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def decode_edgelist(text: str) -> Graph:
    """Parse ``n`` on the first line, then one 1-based ``u v`` pair per line."""
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [r for r in rows if r and not r.startswith("#")]
    if not rows:
        raise ParseError("empty edge list")
    try:
        n = int(rows[0])
        pairs = []
        for r in rows[1:]:
            parts = r.replace(",", " ").split()
            if len(parts) != 2:
                raise ParseError(f"expected 'u v', got {r!r}")
            pairs.append((int(parts[0]), int(parts[1])))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if n < 0:
        raise ParseError("negative vertex count")
    try:
        return graph_from_edges(n, pairs)
    except InvalidEdge as exc:
        raise ParseError(str(exc)) from None


def read_graph(text: str) -> Graph:
    """Accept either an edge list or a single graph6 line."""
    s = text.strip()
    if not s:
        raise ParseError("empty graph input")
    first = s.splitlines()[0].strip()
    if first.isdigit():
        return decode_edgelist(s)
    return decode_graph6(first)
