"""Equitable colorings: checking, the (Δ+1)-color construction, and exact search."""

from __future__ import annotations

import json
import random
import time
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ColoringDefect, InvalidInput, OracleTooLarge, ParseError
from .graphcore import Graph

DEFAULT_COLORING_CAP = 24


@dataclass(frozen=True)
class EquitableColoring:
    """A vertex coloring with colors ``0..num_colors-1``.

    Use :func:`make_coloring` to get the canonical labelling in which class
    sizes are non-increasing.  ``overflow`` marks the spare class of the
    intermediate colorings used while shrinking the number of colors.
    """

    assignment: tuple[int, ...]
    num_colors: int
    overflow: int | None = None

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def classes(self) -> list[frozenset[int]]:
        buckets: list[set[int]] = [set() for _ in range(self.num_colors)]
        for v, c in enumerate(self.assignment):
            buckets[c].add(v)
        return [frozenset(b) for b in buckets]

    @property
    def class_sizes(self) -> list[int]:
        sizes = [0] * self.num_colors
        for c in self.assignment:
            sizes[c] += 1
        return sizes

    @property
    def is_equitable(self) -> bool:
        sizes = self.class_sizes
        return not sizes or max(sizes) - min(sizes) <= 1

    def to_json(self) -> str:
        return json.dumps([c + 1 for c in self.assignment])

    @classmethod
    def from_json(cls, text: str, num_colors: int | None = None) -> "EquitableColoring":
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"coloring is not valid JSON: {exc}") from None
        if not isinstance(raw, list) or not all(isinstance(x, int) and x >= 1 for x in raw):
            raise ParseError("coloring must be a JSON list of positive class numbers")
        c = num_colors if num_colors is not None else max(raw, default=0)
        if raw and max(raw) > c:
            raise ParseError(f"class {max(raw)} exceeds the {c} available colors")
        return cls(tuple(x - 1 for x in raw), c)


def make_coloring(assignment: Sequence[int], num_colors: int) -> EquitableColoring:
    """Relabel colors so class sizes are non-increasing (ties: smallest member first)."""
    n = len(assignment)
    sizes = [0] * num_colors
    first = [n] * num_colors
    for v, c in enumerate(assignment):
        sizes[c] += 1
        first[c] = min(first[c], v)
    order = sorted(range(num_colors), key=lambda c: (-sizes[c], first[c], c))
    new = {old: i for i, old in enumerate(order)}
    return EquitableColoring(tuple(new[c] for c in assignment), num_colors)


@dataclass(frozen=True)
class ColoringCheck:
    proper: bool
    equitable: bool
    class_sizes: list[int]


def check_coloring(G: Graph, f: EquitableColoring) -> ColoringCheck:
    if f.n != G.n:
        raise InvalidInput(f"coloring covers {f.n} vertices, graph has {G.n}")
    a = f.assignment
    proper = all(a[u] != a[v] for u, v in G.edges())
    sizes = f.class_sizes
    equitable = not sizes or max(sizes) - min(sizes) <= 1
    return ColoringCheck(proper, equitable, sizes)


# (Δ+1)-coloring ------------------------------------------------------------


def _greedy(G: Graph, c: int, order: Sequence[int]) -> list[int]:
    color = [-1] * G.n
    sizes = [0] * c
    for v in order:
        used = {color[w] for w in G.adj[v]}
        choices = [k for k in range(c) if k not in used]
        k = min(choices, key=lambda k: (sizes[k], k))
        color[v] = k
        sizes[k] += 1
    return color


def _balance(G: Graph, color: list[int], c: int, cap: int) -> bool:
    """Shift vertices along movable-class paths until sizes differ by at most one."""
    members = [set() for _ in range(c)]
    for v, k in enumerate(color):
        members[k].add(v)

    def movable(x: int, target: int) -> bool:
        return not (G.adj[x] & members[target])

    for _ in range(cap):
        sizes = [len(m) for m in members]
        if max(sizes) - min(sizes) <= 1:
            return True
        moved = False
        for src in sorted(range(c), key=lambda k: (-sizes[k], k)):
            if sizes[src] - min(sizes) < 2:
                break
            # BFS over classes: X -> Y when some vertex of X has no neighbor in Y
            parent: dict[int, tuple[int, int]] = {}
            queue = deque([src])
            seen = {src}
            sink = None
            while queue and sink is None:
                x = queue.popleft()
                for y in range(c):
                    if y in seen:
                        continue
                    mover = next((v for v in sorted(members[x]) if movable(v, y)), None)
                    if mover is None:
                        continue
                    seen.add(y)
                    parent[y] = (x, mover)
                    if sizes[src] - sizes[y] >= 2:
                        sink = y
                        break
                    queue.append(y)
            if sink is None:
                continue
            steps = []
            y = sink
            while y != src:
                x, v = parent[y]
                steps.append((v, x, y))
                y = x
            for v, x, y in steps:  # sink side first
                members[x].discard(v)
                members[y].add(v)
                color[v] = y
            moved = True
            break
        if not moved:
            return False
    sizes = [len(m) for m in members]
    return max(sizes) - min(sizes) <= 1


def hs_coloring(G: Graph, c: int, seed: int = 0, restarts: int = 50) -> EquitableColoring:
    """Equitable ``c``-coloring for ``c >= Δ(G) + 1``.

    A greedy proper coloring is balanced by moving vertices along paths of
    classes ``X -> Y`` where some vertex of ``X`` has no neighbor in ``Y``.
    If balancing stalls the greedy order is reshuffled (seeded) and retried.

    Raises
    ------
    InvalidInput
        If ``c <= Δ(G)``.
    ColoringDefect
        If every restart stalls.
    """
    if c < 1 or c <= G.max_degree():
        raise InvalidInput(f"need c >= Δ+1 = {G.max_degree() + 1}, got {c}")
    rng = random.Random(seed)
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    cap = G.n * c * c + 1
    for _ in range(restarts + 1):
        color = _greedy(G, c, order)
        if _balance(G, color, c, cap):
            f = make_coloring(color, c)
            chk = check_coloring(G, f)
            if chk.proper and chk.equitable:
                return f
            raise ColoringDefect("balancing produced an invalid coloring")
        order = list(range(G.n))
        rng.shuffle(order)
    raise ColoringDefect(f"could not balance a proper {c}-coloring of a graph with Δ={G.max_degree()}")


# exact search --------------------------------------------------------------


def iter_equitable_colorings(
    G: Graph,
    c: int,
    max_n: int = DEFAULT_COLORING_CAP,
    max_seconds: float | None = None,
    fixed: dict[int, int] | None = None,
) -> Iterator[EquitableColoring]:
    """Yield every equitable ``c``-coloring of ``G`` once per class partition.

    Backtracks vertex by vertex, always branching on the vertex with the
    fewest admissible classes; an empty class is only opened at the lowest
    free index, which removes color-permutation symmetry.  Classes must end
    with ``n // c`` or ``n // c + 1`` vertices.

    Raises
    ------
    OracleTooLarge
        If ``G.n > max_n`` or the time budget runs out.
    """
    n = G.n
    if n > max_n:
        raise OracleTooLarge(f"exact coloring capped at n={max_n}, got n={n}")
    if c < 1:
        if n == 0:
            yield EquitableColoring((), 0)
        return
    q, r = divmod(n, c)
    deadline = None if max_seconds is None else time.monotonic() + max_seconds
    color = [-1] * n
    members: list[set[int]] = [set() for _ in range(c)]
    state = {"big": 0, "opened": 0}
    adj = G.adj

    def capacity_ok(k: int) -> bool:
        s = len(members[k])
        if s < q:
            return True
        return s == q and state["big"] < r

    def options(v: int) -> list[int]:
        opts = [k for k in range(state["opened"]) if capacity_ok(k) and not (adj[v] & members[k])]
        if state["opened"] < c and capacity_ok(state["opened"]):
            opts.append(state["opened"])
        return opts

    def place(v: int, k: int):
        if len(members[k]) == q:
            state["big"] += 1
        members[k].add(v)
        color[v] = k
        if k == state["opened"]:
            state["opened"] += 1

    def unplace(v: int, k: int, opened_before: int):
        members[k].discard(v)
        color[v] = -1
        if len(members[k]) == q:
            state["big"] -= 1
        state["opened"] = opened_before

    def fillable(unassigned: list[int]) -> bool:
        # every class must still reach q vertices
        left = len(unassigned)
        need = 0
        for k in range(c):
            s = len(members[k])
            if s >= q:
                continue
            deficit = q - s
            need += deficit
            if k < state["opened"]:
                avail = sum(1 for u in unassigned if not (adj[u] & members[k]))
                if avail < deficit:
                    return False
        return need <= left

    if fixed:
        for v, k in sorted(fixed.items(), key=lambda kv: kv[1]):
            if k >= state["opened"]:
                state["opened"] = k + 1
            if len(members[k]) == q:
                state["big"] += 1
            members[k].add(v)
            color[v] = k

    def rec(unassigned: list[int]) -> Iterator[None]:
        if deadline is not None and time.monotonic() > deadline:
            raise OracleTooLarge("exact coloring exceeded its time budget")
        if not unassigned:
            yield None
            return
        if not fillable(unassigned):
            return
        best, best_opts, best_key = None, None, None
        for v in unassigned:
            opts = options(v)
            key = (len(opts), -len(adj[v]), v)
            if best_key is None or key < best_key:
                best, best_opts, best_key = v, opts, key
                if not opts:
                    return
        rest = [u for u in unassigned if u != best]
        for k in best_opts:
            opened_before = state["opened"]
            place(best, k)
            yield from rec(rest)
            unplace(best, k, opened_before)

    start = [v for v in range(n) if color[v] < 0]
    for _ in rec(start):
        yield EquitableColoring(tuple(color), c)


def equitable_exact(
    G: Graph,
    c: int,
    max_n: int = DEFAULT_COLORING_CAP,
    max_seconds: float | None = None,
) -> EquitableColoring | None:
    """First equitable ``c``-coloring in search order, or ``None`` if none exists."""
    for f in iter_equitable_colorings(G, c, max_n=max_n, max_seconds=max_seconds):
        return make_coloring(f.assignment, c)
    return None
