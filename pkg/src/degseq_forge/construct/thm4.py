"""Equitable d₁-colorable realizations carrying prescribed regular factors."""

from __future__ import annotations

from typing import Sequence

from ..coloring import equitable_exact
from ..connect import connectify_with_report
from ..errors import ForbiddenSequence, InvalidInput, NotGraphic, OracleTooLarge, SearchStalled
from ..exchange import FactorDecomposition
from ..seqcore import DegreeSequence, FactorSpec, is_graphic, normalize, strong_index
from .realize import build_factored_realization, thm3_construct
from .result import RealizationResult, certify
from .thm1 import thm1_construct
from .thm2 import thm2_construct


def _regularities(spec) -> list[int]:
    if spec is None:
        return []
    if isinstance(spec, (FactorSpec, int)):
        spec = [spec]
    ks = [s.k if isinstance(s, FactorSpec) else int(s) for s in spec]
    return [k for k in ks if k > 0]


def _forbidden(d: DegreeSequence) -> str | None:
    n = d.n
    if d.degrees[-1] == n - 1:
        return "complete graphs are excluded (d_n = n-1)"
    if d.degrees[0] == 1:
        return "perfect matchings are excluded (d_1 = 1)"
    if d.degrees[0] == d.degrees[-1] == 2 and n % 2:
        return "2-regular sequences need an even number of vertices"
    return None


def _oracle_fallback(d: DegreeSequence) -> RealizationResult:
    """Exhaustive search for an equitably d₁-colorable realization (small n only)."""
    from ..oracle import enumerate_realizations

    c = d.degrees[0]
    try:
        for G in enumerate_realizations(d):
            f = equitable_exact(G, c)
            if f is not None:
                if sum(d.degrees) >= 2 * (d.n - 1):
                    G = connectify_with_report(G, G, f, strict=False).graph
                res = RealizationResult(
                    graph=G,
                    factors=FactorDecomposition(G, ()),
                    coloring=f,
                    provenance="thm4/oracle-fallback",
                )
                return res
    except OracleTooLarge:
        pass
    raise SearchStalled(f"no regular factor is available for ({d}) and the oracle fallback found nothing")


def thm4_pipeline(pi, spec: FactorSpec | int | Sequence = None, seed: int = 0) -> RealizationResult:
    """Realization of ``pi`` with the given regular factors and an equitable ``d₁``-coloring.

    When ``m(pi) < d₁`` this is the potential descent with ``γ = d₁``.
    Otherwise a regular factor is built (the requested first factor, or the
    smallest one the factor criterion admits) and the factor-repacking
    construction keeps every other edge.

    Raises
    ------
    ForbiddenSequence
        For ``d_n = n-1``, ``d_1 = 1``, or ``d_1 = d_n = 2`` with ``n`` odd.
    """
    d = pi if isinstance(pi, DegreeSequence) else normalize(pi)
    why = _forbidden(d)
    if why:
        raise ForbiddenSequence(why)
    if not d.is_positive:
        raise InvalidInput("the sequence must be positive")
    if not is_graphic(d):
        raise NotGraphic(f"({d}) is not graphic")
    ks = _regularities(spec)
    n, d1, dn = d.n, d.degrees[0], d.degrees[-1]
    m = strong_index(d)
    connected = sum(d.degrees) >= 2 * (n - 1)

    if m < d1:
        res = thm2_construct(d, ks, gamma=d1, seed=seed)
        res.provenance = "thm4/thm2"
        return res

    if ks:
        D = build_factored_realization(d, ks, seed=seed)
    else:
        k = 1 if n % 2 == 0 else 2
        if k > dn:
            res = _oracle_fallback(d)
            return certify(res, sequence=d.degrees, colors=d1, connectivity_delta=dn if connected else None)
        base = thm3_construct(d, k, seed=seed)
        D = base.factors
    first, rest = D.factors[0], D.factors[1:]
    inner = thm1_construct(D.host, FactorDecomposition(D.host, (first,)), seed=seed)
    H = inner.graph
    factors = FactorDecomposition(H, (inner.factors.factors[0], *rest))
    res = RealizationResult(
        graph=H,
        factors=factors if ks else FactorDecomposition(H, ()),
        coloring=inner.coloring,
        provenance=f"thm4/thm3+thm1({inner.provenance})" if not ks else f"thm4/thm1({inner.provenance})",
        extras={k: v for k, v in inner.extras.items() if k != "lambda"},
    )
    if not ks:
        res.extras["helper_factor"] = D.regularities[0]
    return certify(
        res,
        sequence=d.degrees,
        factor_degrees=ks if ks else None,
        colors=d1,
        connectivity_delta=dn if connected else None,
    )
