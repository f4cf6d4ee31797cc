"""``psi-lab`` command line: graph6 in, JSON out.

Exit status: 0 success, 1 a verification check failed, 2 usage or input
error, 3 the node budget ran out before an exact answer.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from psilab import __version__
from psilab.constructions import join_coloring_lower, nabla_k_coloring, psi_of_join, structure_coloring
from psilab.corpus import embedded_corpus
from psilab.criticality import criticality, find_witness_not_critical, find_witness_not_weakly_critical, mpd, mpd_profile
from psilab.errors import (
    ContractViolation,
    DomainError,
    GraphFormatError,
    Inconclusive,
    UnsupportedSize,
)
from psilab.graph import Graph, clique_number, emit_graph6, join, nabla_k, parse_graph6, read_graph6_lines
from psilab.psi import DEFAULT_BUDGET, edge_count_bound, lemma2_bound, psi
from psilab.verify import check_ids, report, run_checks, scan_additive_pairs

SCHEMA_VERSION = 1
EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _schema(name: str) -> str:
    return f"psilab.{name}/{SCHEMA_VERSION}"


# -- graph input ---------------------------------------------------------------

def _graphs_from_text(text: str, source: str) -> list[Graph]:
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise UsageError(f"{source}: invalid JSON: {exc}") from None
        if "graph6" not in doc:
            raise UsageError(f"{source}: JSON input has no 'graph6' field")
        return [parse_graph6(doc["graph6"])]
    graphs = read_graph6_lines(text.splitlines())
    if not graphs:
        raise UsageError(f"{source}: no graphs found")
    return graphs


def read_inputs(specs: Sequence[str]) -> list[Graph]:
    """Resolve each argument as '-' (stdin), a file of graph6 lines, or a graph6 string."""
    graphs: list[Graph] = []
    for spec in specs:
        if spec == "-":
            graphs += _graphs_from_text(sys.stdin.read(), "stdin")
        elif os.path.isfile(spec):
            try:
                with open(spec, encoding="ascii") as fh:
                    text = fh.read()
            except (OSError, UnicodeDecodeError) as exc:
                raise UsageError(f"cannot read {spec}: {exc}") from None
            graphs += _graphs_from_text(text, spec)
        elif os.sep in spec and not os.path.exists(spec):
            raise UsageError(f"no such file: {spec}")
        else:
            graphs.append(parse_graph6(spec))
    return graphs


def _one(args, name: str = "graph") -> Graph:
    graphs = read_inputs(args.graphs)
    if len(graphs) != 1:
        raise UsageError(f"expected exactly one {name}, got {len(graphs)}")
    return graphs[0]


# -- subcommands ---------------------------------------------------------------

def _bounds(g: Graph) -> dict:
    return {"lemma2": lemma2_bound(g), "edge_count": edge_count_bound(g.num_edges),
            "omega": clique_number(g)[0]}


def _psi_doc(g: Graph, budget: int, seed: int | None) -> dict:
    r = psi(g, budget=budget, seed=seed)
    if not r.exact:
        raise Inconclusive(f"Ψ of {emit_graph6(g)} only bracketed in [{r.lower}, {r.upper}]", r.lower, r.upper)
    return {
        "schema": _schema("psi"),
        "graph6": emit_graph6(g),
        "n": g.n,
        "psi": r.value,
        "witness": list(r.witness.colors),
        "bounds": _bounds(g),
        "bound_trace": [list(step) for step in r.bound_trace],
        "search_nodes": r.nodes,
    }


def _many(name: str, docs: list[dict]) -> dict:
    if len(docs) == 1:
        return docs[0]
    return {"schema": _schema(name), "results": docs}


def cmd_psi(args) -> tuple[dict, int]:
    graphs = read_inputs(args.graphs)
    return _many("psi", [_psi_doc(g, args.budget, args.seed) for g in graphs]), EXIT_OK


def cmd_omega(args) -> tuple[dict, int]:
    docs = []
    for g in read_inputs(args.graphs):
        w, clique = clique_number(g)
        docs.append({"schema": _schema("omega"), "graph6": emit_graph6(g), "n": g.n,
                     "omega": w, "clique": list(clique)})
    return _many("omega", docs), EXIT_OK


def cmd_mpd(args) -> tuple[dict, int]:
    g = _one(args)
    doc = {"schema": _schema("mpd"), "graph6": emit_graph6(g), "n": g.n}
    if args.k is None:
        doc.update(mpd_profile(g, args.budget).to_json())
    else:
        value, realizer = mpd(g, args.k, args.budget)
        doc.update({"k": args.k, "mpd": value, "realizer": list(realizer)})
    return doc, EXIT_OK


def cmd_critical(args) -> tuple[dict, int]:
    docs = []
    for g in read_inputs(args.graphs):
        rep = criticality(g, args.budget)
        docs.append({"schema": _schema("critical"), "graph6": emit_graph6(g), **rep.to_json(),
                     "bounds": _bounds(g)})
    return _many("critical", docs), EXIT_OK


def cmd_join(args) -> tuple[dict, int]:
    graphs = read_inputs(args.graphs)
    if len(graphs) != 2:
        raise UsageError(f"join needs exactly two graphs, got {len(graphs)}")
    g, h = graphs
    gh = join(g, h)
    doc = {"schema": _schema("join"), "graph6": emit_graph6(gh), "n": gh.n,
           "operands": [emit_graph6(g), emit_graph6(h)]}
    if g.n and h.n:
        low = join_coloring_lower(g, h)
        doc["lower_coloring"] = low.to_json()
    if args.with_psi:
        r = psi_of_join(g, h, args.budget)
        doc["psi"] = r.require()
        doc["witness"] = list(r.witness.colors)
    return doc, EXIT_OK


def cmd_nabla(args) -> tuple[dict, int]:
    g = _one(args)
    if args.k is None:
        raise UsageError("nabla requires --k")
    gk = nabla_k(g, args.k)
    doc = {"schema": _schema("nabla"), "graph6": emit_graph6(gk), "n": gk.n, "k": args.k,
           "operand": emit_graph6(g)}
    if args.k >= 2:
        doc["coloring"] = nabla_k_coloring(g, args.k).to_json()
    return doc, EXIT_OK


def cmd_witness(args) -> tuple[dict, int]:
    g = _one(args)
    if args.kind == "not-critical":
        w = find_witness_not_critical(g, args.budget)
    else:
        w = find_witness_not_weakly_critical(g, args.budget)
    doc = {"schema": _schema("witness"), "graph6": emit_graph6(g), "kind": args.kind,
           "found": w is not None, "witness": None if w is None else w.to_json()}
    return doc, EXIT_OK


def cmd_structure(args) -> tuple[dict, int]:
    g = _one(args)
    s = structure_coloring(g, args.budget)
    return {"schema": _schema("structure"), "graph6": emit_graph6(g), "n": g.n, **s.to_json()}, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    corpus: list[Graph] = []
    if args.corpus:
        corpus += read_inputs([args.corpus])
    if args.graphs:
        corpus += read_inputs(args.graphs)
    if not corpus:
        corpus = embedded_corpus(args.max_order)
    if args.scan_additive:
        doc = scan_additive_pairs(corpus, args.budget, max_pair_order=args.max_pair_order)
        code = EXIT_CHECK_FAILED if doc["violations"] else EXIT_INCONCLUSIVE if doc["partial"] else EXIT_OK
        return doc, code
    ids = args.check or check_ids(include_extra=args.all)
    results = run_checks(ids, corpus, args.budget, max_pair_order=args.max_pair_order,
                         workers=args.threads)
    doc = report(results, corpus_size=len(corpus), budget=args.budget, seed=args.seed)
    if not doc["passed"]:
        return doc, EXIT_CHECK_FAILED
    return doc, EXIT_INCONCLUSIVE if doc["inconclusive"] else EXIT_OK


COMMANDS = {
    "psi": cmd_psi, "omega": cmd_omega, "mpd": cmd_mpd, "critical": cmd_critical, "join": cmd_join,
    "nabla": cmd_nabla, "witness": cmd_witness, "structure": cmd_structure, "verify": cmd_verify,
}


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET,
                        help="search node budget (default from PSILAB_BUDGET, else 1e8)")
    common.add_argument("--seed", type=int, default=None, help="seed for the vertex order tie-breaks")
    common.add_argument("--json-indent", type=int, default=None, metavar="N")
    common.add_argument("--output", "-o", default=None, help="write JSON here instead of stdout")
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1,
                        help="worker processes for verify")

    parser = argparse.ArgumentParser(prog="psi-lab", description="Pseudoachromatic number toolkit.")
    parser.add_argument("--version", action="version", version=f"psi-lab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, graphs: str = "+") -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("graphs", nargs=graphs, metavar="GRAPH",
                       help="graph6 string, file of graph6 lines, or - for stdin")
        return p

    add("psi", "exact Ψ with a witness coloring")
    add("omega", "clique number")
    add("mpd", "minimal psi-drop profile, or one value with --k").add_argument("--k", type=int)
    add("critical", "critical and weakly-critical verdicts")
    add("join", "join of two graphs").add_argument("--with-psi", action="store_true",
                                                    help="also compute Ψ of the join")
    add("nabla", "join of k copies of a graph").add_argument("--k", type=int)
    add("witness", "M1 ⊆ M2 witness pair").add_argument(
        "--kind", choices=("not-weakly-critical", "not-critical"), default="not-weakly-critical")
    add("structure", "maximum coloring with the critical / weakly-critical pattern")
    v = add("verify", "run the check catalog", graphs="*")
    v.add_argument("--check", action="append", choices=check_ids(include_extra=True), metavar="ID",
                   help="run only this check (repeatable)")
    v.add_argument("--all", action="store_true", help="include the checks of literal readings known to fail")
    v.add_argument("--corpus", default=None, help="file of graph6 lines to use as the corpus")
    v.add_argument("--max-order", type=_positive, default=6, help="order cap of the embedded corpus")
    v.add_argument("--max-pair-order", type=_positive, default=10)
    v.add_argument("--scan-additive", action="store_true",
                   help="classify all pairs by additivity instead of running checks")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    code = EXIT_OK
    try:
        doc, code = COMMANDS[args.command](args)
    except Inconclusive as exc:
        doc = {"schema": _schema("inconclusive"), "inconclusive": True, "message": str(exc),
               "lower": exc.lower, "upper": exc.upper}
        code = EXIT_INCONCLUSIVE
    except (UsageError, GraphFormatError, DomainError, UnsupportedSize, ContractViolation) as exc:
        print(f"psi-lab {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(doc, indent=args.json_indent)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"psi-lab: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
