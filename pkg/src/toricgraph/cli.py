"""``toricgraph`` command line.

Exit codes: 0 success, 1 a checked claim failed, 2 usage error, 3 resource cap hit.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import repro
from .algebra import ContextMismatchError
from .cache import GBCache, default_dir
from .graphs import FamilySpec, Graph, GraphError, ResourceLimitError, build_family, glue_even_cycle
from .groebner import initial_ideal
from .toric import AnalyzeOptions, BUDGET_CELLS, IntegrityError, analyze, verify_gluing_increment

EXIT_OK, EXIT_CLAIM, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

FAMILIES = ("K2t", "Gt", "C4r", "Cn", "Z", "C4", "Grd")


class UsageError(Exception):
    pass


def _add_graph_args(p: argparse.ArgumentParser):
    src = p.add_argument_group("graph source (exactly one)")
    src.add_argument("--family", choices=FAMILIES)
    src.add_argument("--graph", metavar="FILE", help="graph JSON file")
    src.add_argument("--t", type=int, default=0)
    src.add_argument("--r", type=int, default=0)
    src.add_argument("--n", type=int, default=0)
    src.add_argument("--d", type=int, default=0)
    p.add_argument("--order", default="grevlex",
                   help="grevlex (graph edge order), paper-gt, or a comma-separated edge ranking")
    p.add_argument("--dot", metavar="FILE", help="also write the graph in DOT format")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-walk-len", type=int, default=None, help="walk length cap for the primitive oracle")
    p.add_argument("--budget-cells", type=int, default=BUDGET_CELLS,
                   help="work cap for the Koszul oracle and the walk enumeration")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache", metavar="DIR", default=None, help="Groebner basis cache (default $TORICGRAPH_CACHE)")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toricgraph", description="Toric ideals of graphs and their invariants.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="build a graph and print it")
    _add_graph_args(p)
    _add_common(p)

    p = sub.add_parser("toric-gb", help="reduced Groebner basis of the toric ideal")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--primitive", action="store_true",
                   help="also list primitive walk binomials up to --max-walk-len")

    p = sub.add_parser("invariants", help="Hilbert series, Betti table, reg, pdim, depth, dim")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--modular", action="store_true", help="ranks mod a prime (results marked probabilistic)")

    p = sub.add_parser("glue", help="glue an even cycle C_2s along an edge and check the increments")
    _add_graph_args(p)
    _add_common(p)
    p.add_argument("--s", type=int, required=True, help="glue C_{2s}")
    p.add_argument("--edge", required=True, help="edge of the base graph")

    p = sub.add_parser("reproduce", help="recompute the numeric claims for a scope")
    p.add_argument("scope", nargs="?", default="all", choices=repro.SCOPES)
    _add_common(p)
    return ap


# --------------------------------------------------------------------------

def graph_from_args(args) -> Graph:
    if bool(args.family) == bool(args.graph):
        raise UsageError("give exactly one of --family or --graph")
    if args.graph:
        try:
            data = json.loads(Path(args.graph).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read graph file: {exc}") from exc
        return Graph.from_json(data, name=data.get("name") or Path(args.graph).stem)
    fam = args.family
    if fam == "C4":
        spec = FamilySpec("C4r", r=1)
    elif fam == "Grd":
        spec = FamilySpec("Grd", r=args.r, d=args.d)
    else:
        spec = FamilySpec(fam, t=args.t, r=args.r, n=args.n)
    return build_family(spec)


def order_from_args(g: Graph, args):
    if args.order in ("grevlex", "paper-gt"):
        return args.order
    names = [s.strip() for s in args.order.split(",") if s.strip()]
    if sorted(names) != sorted(g.edge_names):
        raise UsageError("--order must rank every edge exactly once")
    return names


def _cache(args) -> GBCache:
    return GBCache(args.cache or default_dir())


def _emit(args, text: str, data: dict):
    if args.format == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _write_dot(g: Graph, args):
    if getattr(args, "dot", None):
        Path(args.dot).write_text(g.to_dot())


def cmd_family(args) -> int:
    g = graph_from_args(args)
    _write_dot(g, args)
    lines = [f"graph {g.name}: {g.num_vertices} vertices, {g.num_edges} edges"]
    lines += [f"  {n}: {u} -- {v}" for n, (u, v) in g.edges]
    data = dict(g.to_json(), name=g.name)
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def cmd_toric_gb(args) -> int:
    g = graph_from_args(args)
    _write_dot(g, args)
    ring = g.ring(order_from_args(g, args))
    gb = _cache(args).toric_ideal(g, ring)
    ideal = initial_ideal(gb)
    gens = [str(p) for p in gb.generators]
    lines = [f"toric ideal of {g.name}: {len(gens)} generators (reduced Groebner basis)"]
    lines += [f"  {s}" for s in gens]
    lines.append(f"initial ideal: {len(ideal)} minimal generators")
    lines += [f"  {s}" for s in ideal.format()]
    data = {"graph": g.name, "order": [ring.variables[i] for i in ring.order.priority],
            "groebner_basis": gens, "initial_ideal": ideal.format()}
    if args.primitive:
        from .graphs import primitive_binomials_oracle
        cap = args.max_walk_len or 2 * g.num_edges
        prim, _ = primitive_binomials_oracle(g, cap, lambda a, b: gb.contains(ring.binomial(a, b)), ring,
                                             walk_limit=args.budget_cells)
        plist = sorted(str(b) for b in prim)
        lines.append(f"primitive walk binomials (walk length <= {cap}): {len(plist)}")
        lines += [f"  {s}" for s in plist]
        data["primitive"] = {"max_walk_len": cap, "binomials": plist}
    _emit(args, "\n".join(lines), data)
    return EXIT_OK


def _options(g: Graph, args) -> AnalyzeOptions:
    return AnalyzeOptions(order=order_from_args(g, args), budget_cells=args.budget_cells,
                          modular=getattr(args, "modular", False))


def report_text(rep) -> str:
    hd = rep.hilbert
    lines = [
        f"graph {rep.graph}: |V| = {rep.num_vertices}, |E| = {rep.num_edges}, "
        f"{'bipartite' if rep.bipartite else 'non-bipartite'}{'' if rep.connected else ', disconnected'}",
        f"Hilbert series: {hd.series_text()}",
        f"dim = {rep.dim}",
        f"deg h = {rep.deg_h}",
        f"reg = {rep.reg} ({rep.reg_provenance}, {rep.reg_source})",
        f"pdim = {rep.pdim}{'' if rep.pdim_exact else ' (upper bound from initial ideal)'}",
        f"depth = {rep.depth if rep.depth is not None else 'unknown'}",
        f"extremal Betti positions: {rep.extremal}",
        f"Betti table of K[G] ({'exact' if rep.betti_exact else 'partial'}):",
        rep.betti.diagram(),
    ]
    if not rep.betti_exact:
        lines += [f"Betti table of the initial ideal ({rep.initial_betti_source}):", rep.initial_betti.diagram()]
    lines += [f"check: {c}" for c in rep.checks]
    lines += [f"skipped: {s}" for s in rep.skipped]
    lines += [f"warning: {w}" for w in rep.warnings]
    return "\n".join(lines)


def cmd_invariants(args) -> int:
    g = graph_from_args(args)
    _write_dot(g, args)
    opt = _options(g, args)
    gb = _cache(args).toric_ideal(g, g.ring(opt.order))
    rep = analyze(g, opt, gb=gb)
    _emit(args, report_text(rep), rep.to_json())
    return EXIT_OK


def cmd_glue(args) -> int:
    g = graph_from_args(args)
    if args.edge not in g.edge_names:
        raise UsageError(f"no edge {args.edge!r} in {g.name}")
    _write_dot(glue_even_cycle(g, args.s, args.edge), args)
    res = verify_gluing_increment(g, args.s, args.edge, AnalyzeOptions(budget_cells=args.budget_cells))
    d = res.detail
    text = (f"{res.name}: deg h {d['deg_h'][0]} -> {d['deg_h'][1]}, reg {d['reg'][0]} -> {d['reg'][1]} "
            f"({d['reg_status']}); expected increment {args.s - 1}: {'ok' if res.passed else 'FAIL'}")
    _emit(args, text, {"check": res.name, "passed": res.passed, "exact": res.exact,
                       "deg_h": list(d["deg_h"]), "reg": list(d["reg"]), "reg_status": d["reg_status"]})
    return EXIT_OK if res.passed else EXIT_CLAIM


def cmd_reproduce(args) -> int:
    results = repro.reproduce(args.scope, jobs=args.jobs, budget_cells=args.budget_cells)
    summ = repro.summary(results)
    if args.format == "json":
        print(json.dumps(repro.results_json(args.scope, results), indent=2, sort_keys=True, default=str))
    else:
        for r in results:
            print(r.line())
        print(" ".join(f"{k}={v}" for k, v in summ.items()))
    return EXIT_CLAIM if summ["FAIL"] else EXIT_OK


COMMANDS = {"family": cmd_family, "toric-gb": cmd_toric_gb, "invariants": cmd_invariants,
            "glue": cmd_glue, "reproduce": cmd_reproduce}


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.budget_cells <= 0 or args.jobs <= 0:
        print("error: budgets must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, GraphError, ContextMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except IntegrityError as exc:
        print(f"integrity failure: {exc}", file=sys.stderr)
        return EXIT_CLAIM


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
