"""Command-line front end.

Exit codes: 0 success, 1 negative decision, 2 input error, 3 budget
exceeded, 4 anomaly (a construction contradicted its guarantee or stalled).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .coloring import DEFAULT_COLORING_CAP, EquitableColoring, equitable_exact, hs_coloring
from .connect import connectify_with_report
from .errors import DegseqError, InvalidInput, OracleTooLarge
from .graphcore import Graph, encode_graph6, read_graph
from .oracle import OracleBudget, enumerate_realizations, find_k_factor, min_equitable_colors
from .seqcore import FactorSpec, gamma_bound, is_graphic, kfactor_condition, max_even_k, normalize, parse_sequences, strong_index

SCHEMA = "degseq-forge/1"

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_BUDGET, EXIT_ANOMALY = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    max_n: int | None = None
    timeout_s: float | None = None
    fmt: str = "json"
    verbose: int = 0

    def budget(self) -> OracleBudget:
        kw = {"max_seconds": self.timeout_s, "seed": self.seed}
        if self.max_n is not None:
            kw["max_n"] = self.max_n
        return OracleBudget(**kw)

    @property
    def coloring_cap(self) -> int:
        return self.max_n if self.max_n is not None else DEFAULT_COLORING_CAP


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None


def _graph(path: str) -> Graph:
    return read_graph(_read(path))


def _edges1(G: Graph) -> list[list[int]]:
    return [[a + 1, b + 1] for a, b in G.edges()]


def _emit(cfg: RunConfig, payload: dict) -> None:
    payload = {"schema": SCHEMA, **payload}
    if cfg.fmt == "json":
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
        return
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{key}:")
            for item in value:
                print("  " + "  ".join(f"{k}={item[k]}" for k in sorted(item)))
        else:
            print(f"{key}: {value}")


# commands ------------------------------------------------------------------


def cmd_check_graphic(args, cfg: RunConfig) -> int:
    rows = []
    for raw in parse_sequences(_read(args.seqfile)):
        d = normalize(raw)
        g = is_graphic(d)
        gm = gamma_bound(d) if d.is_positive else None
        rows.append({"sequence": list(d.degrees), "graphic": g, "m": strong_index(d), "gamma_min": gm})
    _emit(cfg, {"command": "check-graphic", "results": rows})
    return EXIT_OK if all(r["graphic"] for r in rows) else EXIT_NEGATIVE


def cmd_kfactor_cond(args, cfg: RunConfig) -> int:
    rows = []
    for raw in parse_sequences(_read(args.seqfile)):
        d = normalize(raw)
        row = {"sequence": list(d.degrees), "k": args.k, "applicable": True, "holds": None, "k_prime": None}
        try:
            row["holds"] = kfactor_condition(d, FactorSpec(args.k, d.n))
        except InvalidInput as exc:
            row.update(applicable=False, reason=str(exc))
        if row["holds"]:
            row["k_prime"] = max_even_k(d, args.k)
        rows.append(row)
    _emit(cfg, {"command": "kfactor-cond", "results": rows})
    return EXIT_OK if all(r["holds"] for r in rows) else EXIT_NEGATIVE


def cmd_realize(args, cfg: RunConfig) -> int:
    from .construct import havel_hakimi, thm3_construct

    rows = []
    negative = False
    for raw in parse_sequences(_read(args.seqfile)):
        d = normalize(raw)
        if not is_graphic(d):
            rows.append({"sequence": list(d.degrees), "graphic": False})
            negative = True
            continue
        if args.k is None:
            G = havel_hakimi(d)
            rows.append({"sequence": list(d.degrees), "graphic": True, "graph6": encode_graph6(G), "provenance": "havel-hakimi"})
            continue
        res = thm3_construct(d, args.k, seed=cfg.seed)
        fac = sorted(res.factors.factors[0]) if res.factors and res.factors.factors else []
        rows.append(
            {
                "sequence": list(d.degrees),
                "graphic": True,
                "graph6": res.graph6,
                "factor": [[a + 1, b + 1] for a, b in fac],
                "provenance": res.provenance,
                "certificates": [c.as_dict() for c in res.certificates],
            }
        )
    _emit(cfg, {"command": "realize", "results": rows})
    return EXIT_NEGATIVE if negative else EXIT_OK


def cmd_color(args, cfg: RunConfig) -> int:
    G = _graph(args.graphfile)
    if args.exact:
        f = equitable_exact(G, args.c, max_n=cfg.coloring_cap, max_seconds=cfg.timeout_s)
        method = "exact"
    else:
        f = hs_coloring(G, args.c, seed=cfg.seed)
        method = "hs"
    payload = {"command": "color", "c": args.c, "method": method, "coloring": None if f is None else [x + 1 for x in f.assignment]}
    if f is None:
        payload["result"] = "NONE"
    _emit(cfg, payload)
    return EXIT_NEGATIVE if f is None else EXIT_OK


def cmd_connectify(args, cfg: RunConfig) -> int:
    G0 = _graph(args.graphfile)
    Z0 = _graph(args.z0)
    text = args.coloring
    if not text.lstrip().startswith("["):
        text = _read(text)
    raw = EquitableColoring.from_json(text)
    f = EquitableColoring(raw.assignment, raw.num_colors)
    rep = connectify_with_report(G0, Z0, f)
    _emit(
        cfg,
        {
            "command": "connectify",
            "graph6": encode_graph6(rep.graph),
            "edges": _edges1(rep.graph),
            "lambda_before": rep.lambda_before,
            "lambda_after": rep.lambda_after,
            "target": rep.target.target,
            "steps": len(rep.steps),
        },
    )
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    from .sweeps import parse_sweep, run_sweep

    rep = run_sweep(args.theorem, parse_sweep(args.sweep), seed=cfg.seed)
    rows = [{"instance": r.instance, "passed": r.passed, "detail": r.detail} for r in rep.rows]
    _emit(cfg, {"command": "verify-theorem", **rep.summary(), "rows": rows})
    return EXIT_OK if rep.passed else EXIT_ANOMALY


def cmd_oracle(args, cfg: RunConfig) -> int:
    budget = cfg.budget()
    if args.query == "enumerate":
        rows = []
        for raw in parse_sequences(_read(args.input)):
            d = normalize(raw)
            graphs = [encode_graph6(G) for G in enumerate_realizations(d, budget)]
            rows.append({"sequence": list(d.degrees), "count": len(graphs), "graph6": graphs})
        _emit(cfg, {"command": "oracle enumerate", "results": rows})
        return EXIT_OK if all(r["count"] for r in rows) else EXIT_NEGATIVE
    G = _graph(args.input)
    if args.query == "kfactor":
        if args.k is None:
            raise InvalidInput("oracle kfactor needs --k")
        F = find_k_factor(G, args.k, budget)
        _emit(cfg, {"command": "oracle kfactor", "k": args.k, "has_k_factor": F is not None, "factor": None if F is None else [[a + 1, b + 1] for a, b in sorted(F)]})
        return EXIT_OK if F is not None else EXIT_NEGATIVE
    if args.c is None:
        c = min_equitable_colors(G, OracleBudget(max_coloring_n=cfg.coloring_cap, max_seconds=cfg.timeout_s))
        _emit(cfg, {"command": "oracle equitable", "min_colors": c})
        return EXIT_OK
    f = equitable_exact(G, args.c, max_n=cfg.coloring_cap, max_seconds=cfg.timeout_s)
    _emit(cfg, {"command": "oracle equitable", "c": args.c, "colorable": f is not None, "coloring": None if f is None else [x + 1 for x in f.assignment]})
    return EXIT_OK if f is not None else EXIT_NEGATIVE


# parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-n", type=int, default=None, help="oracle vertex cap")
    common.add_argument("--timeout-s", type=float, default=None, help="per-query oracle time budget")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="degseq-forge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check-graphic", parents=[common], help="graphicality, strong index and γ bound per line")
    s.add_argument("seqfile")
    s.set_defaults(func=cmd_check_graphic)

    s = sub.add_parser("kfactor-cond", parents=[common], help="evaluate the k-factor criterion")
    s.add_argument("seqfile")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_kfactor_cond)

    s = sub.add_parser("realize", parents=[common], help="build a realization, optionally with a k-factor")
    s.add_argument("seqfile")
    s.add_argument("--k", type=int, default=None)
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("color", parents=[common], help="equitable coloring of a graph")
    s.add_argument("graphfile")
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--exact", action="store_true", help="exhaustive search instead of the Δ+1 construction")
    s.set_defaults(func=cmd_color)

    s = sub.add_parser("connectify", parents=[common], help="raise edge connectivity keeping a coloring")
    s.add_argument("graphfile")
    s.add_argument("--z0", required=True, help="graph file holding the exchangeable edges")
    s.add_argument("--coloring", required=True, help="JSON list (1-based classes) or a file containing it")
    s.set_defaults(func=cmd_connectify)

    s = sub.add_parser("verify-theorem", parents=[common], help="run a small-instance sweep")
    s.add_argument("theorem", type=int, choices=(1, 2, 3, 4))
    s.add_argument("--sweep", default="", help='e.g. "n<=7,k<=2" or "count=50,n<=16"')
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", parents=[common], help="raw brute-force answers")
    s.add_argument("query", choices=("enumerate", "kfactor", "equitable"))
    s.add_argument("input", help="sequence file (enumerate) or graph file")
    s.add_argument("--k", type=int, default=None)
    s.add_argument("--c", type=int, default=None)
    s.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(args.seed, args.max_n, args.timeout_s, args.format, args.verbose)
    logging.basicConfig(level=logging.WARNING - 10 * min(cfg.verbose, 2), stream=sys.stderr)
    try:
        return args.func(args, cfg)
    except OracleTooLarge as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvalidInput as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegseqError as exc:
        print(f"anomaly: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ANOMALY


if __name__ == "__main__":
    sys.exit(main())
