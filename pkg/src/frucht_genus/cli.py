"""Command-line entry point.

Exit codes: 0 success or pass, 1 verification failure, 2 usage error,
3 budget exceeded.  Diagnostics go to stderr; results to stdout or ``--out``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import figures
from .aut import BudgetExceeded, automorphism_group
from .construct import DEFAULT_VERTEX_BUDGET, BudgetError, ConstructionError, build_gamma_1, build_gamma_G
from .genus import bounds, exact_genus, heuristic_genus_upper
from .graph import GraphError
from .groups import GroupTableError, from_cayley_table, named_group
from .io import FormatError, format_dot, format_edge_list, format_graph6, format_rotation, read_graph
from .trees import FAMILIES, FamilyError, certify_family, get_family
from .verify import verify_lemma2, verify_theorem1

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _global_options(parser, suppress):
    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--seed", type=int, default=default(42), help="random seed (default 42)")
    parser.add_argument("--budget-vertices", type=int, default=default(DEFAULT_VERTEX_BUDGET),
                        help=f"construction vertex budget (default {DEFAULT_VERTEX_BUDGET})")
    parser.add_argument("--budget-nodes", type=int, default=default(10_000_000),
                        help="search node budget for automorphism and exact genus searches (default 10000000)")
    parser.add_argument("--out", default=default(None), help="write results to this path instead of stdout")


def _format_option(parser, suppress):
    parser.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS if suppress else "text",
                        help="output format (default text)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frucht-genus",
                                     description="Asymmetric gadget graphs, group-realising graphs, "
                                                 "automorphism groups and genus bounds.")
    _global_options(parser, suppress=False)
    _format_option(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    with_format = argparse.ArgumentParser(add_help=False)
    _format_option(with_format, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)
    families = sorted(FAMILIES)

    tree = sub.add_parser("tree", help="gadget tree families").add_subparsers(dest="action", required=True)
    p = tree.add_parser("gen", parents=[common, with_format], help="emit one gadget tree")
    p.add_argument("--family", choices=families, default="unary")
    p.add_argument("--m", type=int, required=True)
    p = tree.add_parser("certify", parents=[common, with_format], help="check conditions (a)-(e)")
    p.add_argument("--family", choices=families, default="unary")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--figures", metavar="DIR", help="also render figures into DIR")

    build = sub.add_parser("build", help="constructions").add_subparsers(dest="action", required=True)
    p = build.add_parser("asym", parents=[common, with_format], help="asymmetric graph over Q_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=families, default="unary")
    p = build.add_parser("group", parents=[common, with_format], help="graph with a prescribed automorphism group")
    p.add_argument("--group", required=True, help="named group spec or Cayley-table CSV path")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=families, default="unary")

    group = sub.add_parser("group", help="finite groups").add_subparsers(dest="action", required=True)
    p = group.add_parser("validate", parents=[common, with_format], help="validate a Cayley table")
    p.add_argument("--table", required=True)
    p.add_argument("--trust-table", action="store_true", help="skip the associativity check above order 256")

    p = sub.add_parser("aut", parents=[common, with_format], help="automorphism group of a graph file")
    p.add_argument("--in", dest="input", required=True)

    genus = sub.add_parser("genus", help="genus bounds").add_subparsers(dest="action", required=True)
    for name in ("bounds", "exact", "heuristic"):
        p = genus.add_parser(name, parents=[common, with_format])
        p.add_argument("--in", dest="input", required=True)
        if name == "heuristic":
            p.add_argument("--iters", type=int, default=100_000)

    verify = sub.add_parser("verify", help="end-to-end claim checks").add_subparsers(dest="action", required=True)
    p = verify.add_parser("lemma2", parents=[common, with_format])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=families, default="unary")
    p = verify.add_parser("theorem1", parents=[common, with_format])
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--family", choices=families, default="unary")
    for action in ("lemma2", "theorem1"):
        p = verify.choices[action]
        p.add_argument("--figures", metavar="DIR", help="also render figures into DIR")
        p.add_argument("--timings", action="store_true", help="include wall time in JSON output")

    p = sub.add_parser("export", parents=[common], help="convert a graph file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", dest="export_format", choices=("graph6", "dot", "edgelist"), required=True)
    return parser


def resolve_group(spec: str):
    """Named spec, or a Cayley-table file when the spec has a path separator or ends in .csv."""
    if "/" in spec or "\\" in spec or spec.endswith(".csv"):
        path = Path(spec)
        return from_cayley_table(path.read_text(), name=path.stem)
    return named_group(spec)


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _non_negative(value, name):
    if value is None or value < 0:
        raise UsageError(f"{name} must be a non-negative integer")


def cmd_tree(args):
    fam = get_family(args.family)
    if args.action == "gen":
        _non_negative(args.m, "--m")
        t = fam(args.m)
        if args.format == "json":
            _emit(args, _dump({"family": fam.name, "m": t.m, "d": t.d, "a_vertex": t.a_vertex,
                               "b_vertex": t.b_vertex, "vertices": t.vertex_count,
                               "edges": [list(e) for e in t.tree.edge_list]}))
        else:
            _emit(args, f"# family={fam.name} m={t.m} d={t.d} A={t.a_vertex} B={t.b_vertex}\n"
                        + format_edge_list(t.tree))
        return EXIT_OK
    _non_negative(args.max_m, "--max-m")
    # one engine run per index check and three per pair; each costs at least one search node
    runs = 3 * (args.max_m + 1) + 3 * args.max_m * (args.max_m + 1) // 2
    if runs > args.budget_nodes:
        raise BudgetError(f"certification up to m={args.max_m} needs {runs} engine runs, "
                          f"over the node budget of {args.budget_nodes}")
    report = certify_family(fam, args.max_m, args.budget_nodes)
    if args.format == "json":
        _emit(args, report.to_json() + "\n")
    else:
        kinds = {}
        for c in report.checks:
            ok, total = kinds.get(c["kind"], (0, 0))
            kinds[c["kind"]] = (ok + c["pass"], total + 1)
        lines = [f"family {report.family} (d={report.d}), m <= {report.max_m}: "
                 f"{'PASS' if report.all_pass else 'FAIL'}"]
        lines += [f"  ({k}) {ok}/{total} pass" for k, (ok, total) in sorted(kinds.items())]
        lines += [f"  failed: {json.dumps(c)}" for c in report.failures()]
        lines += [f"  note: {x}" for x in report.notes]
        _emit(args, "\n".join(lines) + "\n")
    if args.figures:
        figures.certification_figure(report, Path(args.figures) / f"certify_{fam.name}_{args.max_m}.png")
    return EXIT_OK if report.all_pass else EXIT_FAIL


def _write_construction(args, result):
    if args.out:
        Path(args.out).write_text(format_edge_list(result.graph))
        Path(str(args.out) + ".provenance.json").write_text(result.provenance_json())
        summary = _dump(result.summary) if args.format == "json" else \
            "".join(f"{k}: {v}\n" for k, v in result.summary.items())
        sys.stdout.write(summary)
        return
    if args.format == "json":
        sys.stdout.write(_dump({"summary": result.summary,
                                "edges": [list(e) for e in result.graph.edge_list],
                                "provenance": result.provenance_dict()}))
    else:
        sys.stdout.write(format_edge_list(result.graph))


def cmd_build(args):
    if args.n is None or args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.action == "asym":
        result = build_gamma_1(args.n, args.family, args.budget_vertices)
    else:
        result = build_gamma_G(args.n, resolve_group(args.group), args.family, args.budget_vertices)
    _write_construction(args, result)
    return EXIT_OK


def cmd_group(args):
    try:
        g = from_cayley_table(Path(args.table).read_text(), name=Path(args.table).stem,
                              trust_table=args.trust_table)
    except GroupTableError as exc:
        print(f"invalid Cayley table: {exc}", file=sys.stderr)
        if args.format == "json":
            _emit(args, _dump({"valid": False, "error": str(exc), "indices": list(exc.indices)}))
        return EXIT_FAIL
    info = {"valid": True, "order": g.order, "abelian": g.is_abelian(), "labels": list(g.labels),
            "element_orders": {g.labels[i]: g.element_order(i) for i in range(g.order)}}
    if args.format == "json":
        _emit(args, _dump(info))
    else:
        _emit(args, f"valid group of order {g.order} ({'abelian' if info['abelian'] else 'non-abelian'})\n"
                    + "".join(f"  {x}: order {o}\n" for x, o in info["element_orders"].items()))
    return EXIT_OK


def cmd_aut(args):
    g = read_graph(args.input)
    result = automorphism_group(g, node_limit=args.budget_nodes)
    if args.format == "json":
        _emit(args, result.to_json() + "\n")
    else:
        orbits = [o for o in result.orbits if len(o) > 1]
        _emit(args, f"order {result.order}\n"
                    + "".join(f"generator {i}: {x}\n" for i, x in enumerate(result.to_dict()["generators"]))
                    + f"non-trivial orbits: {orbits}\n")
    return EXIT_OK


def cmd_genus(args):
    g = read_graph(args.input)
    if args.action == "bounds":
        report = bounds(g)
    elif args.action == "exact":
        report = exact_genus(g, args.budget_nodes)
    else:
        report = heuristic_genus_upper(g, args.iters, args.seed)
    if args.format == "json":
        _emit(args, report.to_json() + "\n")
    else:
        lines = [f"lower {report.lower} ({report.lower_reason})"]
        if report.upper is not None:
            lines.append(f"upper {report.upper} ({report.upper_reason})")
        if report.exact is not None:
            lines.append(f"exact {report.exact}")
        lines += [f"note: {x}" for x in report.notes]
        text = "\n".join(lines) + "\n"
        if report.witness is not None:
            text += "witness rotation:\n" + format_rotation(report.witness)
        _emit(args, text)
    if args.action == "exact" and report.exact is None:
        print("exact genus search exceeded the node budget; bounds only", file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


def cmd_verify(args):
    if args.n is None or args.n < 2:
        raise UsageError("--n must be at least 2")
    if args.action == "lemma2":
        report = verify_lemma2(args.n, args.family, args.budget_vertices, args.budget_nodes)
    else:
        report = verify_theorem1(args.n, resolve_group(args.group), args.family,
                                 args.budget_vertices, args.budget_nodes)
    if args.format == "json":
        _emit(args, report.to_json(args.timings) + "\n")
    else:
        _emit(args, report.to_text())
    if args.figures:
        out = Path(args.figures)
        if args.action == "lemma2":
            figures.lemma2_figure(report, out / f"lemma2_n{args.n}.png")
        else:
            stem = report.parameters["group"].replace(":", "")
            figures.theorem1_figure(report, out / f"theorem1_{stem}_n{args.n}.png")
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_export(args):
    g = read_graph(args.input)
    writers = {"graph6": format_graph6, "dot": format_dot, "edgelist": format_edge_list}
    _emit(args, writers[args.export_format](g))
    return EXIT_OK


COMMANDS = {"tree": cmd_tree, "build": cmd_build, "group": cmd_group, "aut": cmd_aut,
            "genus": cmd_genus, "verify": cmd_verify, "export": cmd_export}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (BudgetExceeded, BudgetError) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, GraphError, GroupTableError, FamilyError, ConstructionError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
