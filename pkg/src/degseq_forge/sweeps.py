"""Small-instance sweeps that check each construction against the oracle."""

from __future__ import annotations

import itertools
import random
import re
import time
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .coloring import check_coloring
from .connect import connect_target, edge_connectivity
from .errors import DegseqError, ForbiddenGraph, InvalidParams
from .graphcore import Edge, Graph, edge
from .oracle import OracleBudget, exists_realization_with_kfactor, has_k_factor
from .seqcore import FactorSpec, is_graphic, kfactor_condition

_PARAM = re.compile(r"^\s*([a-z_]+)\s*(<=|=)\s*(-?\d+)\s*$")


def parse_sweep(text: str | None) -> dict[str, int]:
    """``"n<=7,k<=2"`` -> ``{"n": 7, "k": 2}``."""
    out: dict[str, int] = {}
    if not text:
        return out
    for part in text.split(","):
        if not part.strip():
            continue
        m = _PARAM.match(part)
        if not m:
            raise InvalidParams(f"cannot parse sweep parameter {part!r}")
        out[m.group(1)] = int(m.group(3))
    return out


@dataclass
class SweepRow:
    instance: str
    passed: bool
    detail: str = ""


@dataclass
class SweepReport:
    theorem: int
    rows: list[SweepRow] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def failures(self) -> list[SweepRow]:
        return [r for r in self.rows if not r.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "theorem": self.theorem,
            "instances": len(self.rows),
            "failures": len(self.failures),
            "passed": self.passed,
        }


def nonincreasing_sequences(n: int, top: int | None = None, low: int = 0) -> Iterator[tuple[int, ...]]:
    """Every non-increasing sequence of length ``n`` with entries in ``[low, top]``."""
    top = n - 1 if top is None else min(top, n - 1)
    for combo in itertools.combinations_with_replacement(range(top, low - 1, -1), n):
        yield combo


def graphic_sequences(max_n: int, min_n: int = 1, positive: bool = False) -> Iterator[tuple[int, ...]]:
    for n in range(min_n, max_n + 1):
        for d in nonincreasing_sequences(n, low=1 if positive else 0):
            if is_graphic(d):
                yield d


def random_graphic(rng: random.Random, max_n: int, min_n: int = 2) -> tuple[int, ...]:
    """A positive graphic sequence drawn by rejection."""
    while True:
        n = rng.randint(min_n, max_n)
        d = tuple(sorted((rng.randint(1, n - 1) for _ in range(n)), reverse=True))
        if is_graphic(d):
            return d


def matching_union(rng: random.Random, n: int, k: int, extra: int) -> tuple[Graph, frozenset[Edge]] | None:
    """``k`` edge-disjoint random perfect matchings plus ``extra`` random edges."""
    used: set[Edge] = set()
    for _ in range(k):
        for _ in range(200):
            perm = list(range(n))
            rng.shuffle(perm)
            M = {edge(perm[i], perm[i + 1]) for i in range(0, n, 2)}
            if not M & used:
                used |= M
                break
        else:
            return None
    F = frozenset(used)
    edges = set(used)
    for _ in range(extra):
        a, b = rng.sample(range(n), 2)
        edges.add(edge(a, b))
    return Graph(n, edges), F


def thm1_instances(count: int, max_n: int, seed: int) -> Iterator[tuple[Graph, frozenset[Edge], int]]:
    """Seeded inputs for the first construction, forbidden shapes skipped."""
    from .construct.thm1 import _check_shape

    rng = random.Random(seed)
    made = 0
    while made < count:
        n = rng.choice(range(4, max_n + 1, 2))
        k = rng.randint(1, min(3, n - 1))
        got = matching_union(rng, n, k, rng.randint(0, 2 * n))
        if got is None:
            continue
        G, F = got
        try:
            _check_shape(G, k)
        except ForbiddenGraph:
            continue
        made += 1
        yield G, F, k


def _timed(theorem: int, rows: Iterator[SweepRow]) -> SweepReport:
    t0 = time.monotonic()
    rep = SweepReport(theorem, list(rows))
    rep.seconds = time.monotonic() - t0
    return rep


def _fmt(d) -> str:
    return ",".join(map(str, d))


def sweep_thm1(count: int = 50, max_n: int = 16, seed: int = 0) -> SweepReport:
    from .coloring import equitable_exact
    from .construct import thm1_construct

    def rows():
        for i, (G, F, k) in enumerate(thm1_instances(count, max_n, seed)):
            name = f"#{i} n={G.n} k={k} m={G.num_edges()}"
            try:
                res = thm1_construct(G, F, seed=seed + i)
            except DegseqError as exc:
                yield SweepRow(name, False, f"{type(exc).__name__}: {exc}")
                continue
            H = res.graph
            Z = G.difference(F)
            problems = []
            if H.degrees() != G.degrees():
                problems.append("degrees")
            if any(not H.has_edge(*e) for e in Z.edges()):
                problems.append("containment")
            if equitable_exact(H, G.max_degree()) is None:
                problems.append("equitable")
            if G.num_edges() >= G.n - 1:
                lam, _ = edge_connectivity(H)
                if lam < connect_target(G.min_degree()).target:
                    problems.append(f"λ={lam}")
            yield SweepRow(name, not problems, ";".join(problems) or res.provenance)

    return _timed(1, rows())


def sweep_thm2(count: int = 100, max_n: int = 10, seed: int = 0) -> SweepReport:
    from .construct import thm2_construct

    def rows():
        rng = random.Random(seed)
        for i in range(count):
            d = random_graphic(rng, max_n)
            name = f"#{i} ({_fmt(d)})"
            try:
                res = thm2_construct(d, seed=seed + i)
            except DegseqError as exc:
                yield SweepRow(name, False, f"{type(exc).__name__}: {exc}")
                continue
            chk = check_coloring(res.graph, res.coloring)
            moves = res.extras["moves"]
            monotone = all(m["after"] < m["before"] for m in moves)
            ok = chk.proper and chk.equitable and monotone and res.graph.degrees() == list(d)
            yield SweepRow(name, ok, f"γ={res.extras['gamma']} moves={len(moves)}")

    return _timed(2, rows())


def sweep_thm3(max_n: int = 7, max_k: int = 3, budget: OracleBudget | None = None) -> SweepReport:
    from .construct import thm3_construct

    budget = budget or OracleBudget()

    def rows():
        for d in graphic_sequences(max_n, min_n=2):
            n = len(d)
            for k in range(1, max_k + 1):
                if k > d[-1] or (k * n) % 2:
                    continue
                try:
                    if not kfactor_condition(d, FactorSpec(k, n)):
                        continue
                except DegseqError:
                    continue
                name = f"({_fmt(d)}) k={k}"
                try:
                    res = thm3_construct(d, k)
                except DegseqError as exc:
                    yield SweepRow(name, False, f"{type(exc).__name__}: {exc}")
                    continue
                ok = has_k_factor(res.graph, k, budget) and exists_realization_with_kfactor(d, k, budget)
                yield SweepRow(name, ok, res.provenance)

    return _timed(3, rows())


def sweep_thm4(max_n: int = 7) -> SweepReport:
    from .coloring import equitable_exact
    from .construct import thm4_pipeline
    from .construct.thm4 import _forbidden
    from .seqcore import normalize

    def rows():
        for d in graphic_sequences(max_n, min_n=2, positive=True):
            if _forbidden(normalize(d)):
                continue
            name = f"({_fmt(d)})"
            try:
                res = thm4_pipeline(d)
            except DegseqError as exc:
                yield SweepRow(name, False, f"{type(exc).__name__}: {exc}")
                continue
            ok = res.graph.degrees() == list(d) and equitable_exact(res.graph, d[0]) is not None
            yield SweepRow(name, ok, res.provenance)

    return _timed(4, rows())


SWEEPS: dict[int, Callable[..., SweepReport]] = {1: sweep_thm1, 2: sweep_thm2, 3: sweep_thm3, 4: sweep_thm4}


def run_sweep(theorem: int, params: dict[str, int], seed: int = 0) -> SweepReport:
    """Dispatch ``verify-theorem`` parameters (``n``, ``k``, ``count``) to a sweep."""
    if theorem not in SWEEPS:
        raise InvalidParams(f"unknown theorem {theorem}; choose 1-4")
    unknown = set(params) - {"n", "k", "count"}
    if unknown:
        raise InvalidParams(f"unknown sweep parameters {sorted(unknown)}")
    if theorem == 1:
        return sweep_thm1(params.get("count", 50), params.get("n", 16), seed)
    if theorem == 2:
        return sweep_thm2(params.get("count", 100), params.get("n", 10), seed)
    if theorem == 3:
        return sweep_thm3(params.get("n", 7), params.get("k", 3))
    return sweep_thm4(params.get("n", 7))
