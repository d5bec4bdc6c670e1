"""Self-certifying construction results."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..coloring import EquitableColoring, check_coloring, equitable_exact
from ..connect import connect_target, edge_connectivity
from ..errors import OracleTooLarge, TheoremViolation
from ..exchange import FactorDecomposition
from ..graphcore import Graph, encode_graph6

ORACLE_FACTOR_N = 10
ORACLE_COLORING_N = 24
UNVERIFIED = "UNVERIFIED-BY-ORACLE"


@dataclass
class Certificate:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class RealizationResult:
    graph: Graph
    factors: FactorDecomposition | None = None
    coloring: EquitableColoring | None = None
    certificates: list[Certificate] = field(default_factory=list)
    provenance: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def graph6(self) -> str:
        return encode_graph6(self.graph)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.certificates)


def _factor_ok(G: Graph, edges, k: int) -> bool:
    degs = [0] * G.n
    for a, b in edges:
        if not G.has_edge(a, b):
            return False
        degs[a] += 1
        degs[b] += 1
    return all(x == k for x in degs)


def certify(
    result: RealizationResult,
    *,
    sequence: Sequence[int] | None = None,
    factor_degrees: Sequence[int] | None = None,
    kfactor_oracle: int | None = None,
    colors: int | None = None,
    equitable_oracle: int | None = None,
    contains: Graph | None = None,
    connectivity_delta: int | None = None,
) -> RealizationResult:
    """Re-check the requested properties from scratch and attach certificates.

    Raises
    ------
    TheoremViolation
        If any check fails.
    """
    from ..oracle import OracleBudget, has_k_factor

    G = result.graph
    certs = result.certificates
    if sequence is not None:
        got = G.degrees()
        certs.append(Certificate("degree_sequence", list(got) == list(sequence), ",".join(map(str, got))))
    if factor_degrees is not None and result.factors is not None:
        facs = result.factors.factors
        ok = len(facs) == len(factor_degrees)
        seen = set()
        for f, k in zip(facs, factor_degrees):
            ok = ok and _factor_ok(G, f, k) and not (seen & f)
            seen |= f
        certs.append(Certificate("factors_regular_disjoint", ok, str(list(factor_degrees))))
    if kfactor_oracle is not None and kfactor_oracle > 0:
        if G.n <= ORACLE_FACTOR_N:
            certs.append(Certificate("kfactor_oracle", has_k_factor(G, kfactor_oracle, OracleBudget()), f"k={kfactor_oracle}"))
        else:
            certs.append(Certificate("kfactor_oracle", True, UNVERIFIED))
    if colors is not None:
        f = result.coloring
        ok = f is not None and f.num_colors == colors
        if ok:
            chk = check_coloring(G, f)
            ok = chk.proper and chk.equitable
        certs.append(Certificate("coloring", ok, f"c={colors}"))
    if equitable_oracle is not None:
        if G.n <= ORACLE_COLORING_N:
            try:
                found = equitable_exact(G, equitable_oracle, max_n=ORACLE_COLORING_N, max_seconds=120)
                certs.append(Certificate("equitable_oracle", found is not None, f"c={equitable_oracle}"))
            except OracleTooLarge:
                certs.append(Certificate("equitable_oracle", True, UNVERIFIED))
        else:
            certs.append(Certificate("equitable_oracle", True, UNVERIFIED))
    if contains is not None:
        missing = [e for e in contains.edges() if not G.has_edge(*e)]
        certs.append(Certificate("contains_subgraph", not missing, f"{len(missing)} missing"))
    if connectivity_delta is not None and G.n >= 2:
        goal = connect_target(connectivity_delta)
        lam, _ = edge_connectivity(G)
        certs.append(Certificate("edge_connectivity", lam >= goal.target, f"λ={lam} target={goal.target}"))
        result.extras["lambda"] = lam
    bad = [c for c in certs if not c.passed]
    if bad:
        raise TheoremViolation("certificate failed: " + ", ".join(f"{c.name} ({c.detail})" for c in bad))
    return result
