"""Command-line front end: analyze expressions, check posets, run dimensions.

Subcommands: analyze, check-poset, dim (delta/bigd/fields/af-pair/af-general),
corpus (run/list), rules (list).  Exit codes: 0 ok, 1 expectation or check
failure, 2 contradiction, 3 parse/IO error.  Reports are deterministic for
a fixed input: facts are emitted in sorted order and JSON keys are sorted,
so two runs produce byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import corpus
from .algebra import (
    Atom,
    ContradictionError,
    FieldExt,
    KBConfig,
    Localization,
    Poly,
    PropertyKind,
    Tensor,
    new_kb,
)
from .dimension import (
    AFSummary,
    MissingLabel,
    NonAF,
    big_d,
    delta,
    dim_tensor_af_general,
    dim_tensor_af_pair,
    dim_tensor_fields,
)
from .dsl import ParseError, format_expr, parse_expr
from .numeric import ExtNat
from .poset import InvalidPoset, PosetProperty, SpectralPoset, UnknownNode
from .rules import collect_warnings, explain, infer, rules_catalog_json
from .tristate import TriState

SCHEMA = "spectra-kit/1"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONTRADICTION = 2
EXIT_BAD_INPUT = 3


def _node_kind(node) -> str:
    if isinstance(node, Atom):
        return "atom"
    if isinstance(node, FieldExt):
        return "field"
    if isinstance(node, Poly):
        return "poly"
    if isinstance(node, Localization):
        return "loc"
    if isinstance(node, Tensor):
        return "tensor"
    return "?"


def _af_summary(kb, path) -> Optional[AFSummary]:
    node = kb.nodes[path]
    if isinstance(node, FieldExt):
        return AFSummary(node.td, ExtNat(0)) if node.td.is_finite else None
    if kb.value(path, PropertyKind.AF_DOMAIN) is not TriState.TRUE:
        return None
    td = kb.interval(path, "td")
    dim = kb.interval(path, "dim")
    if td.is_exact and dim.is_exact and td.lo.is_finite:
        return AFSummary(td.exact_value(), dim.exact_value())
    return None


def _dimension_section(kb) -> dict:
    root = kb.nodes["$"]
    if not isinstance(root, Tensor):
        return {}
    left, right = kb.nodes["$.left"], kb.nodes["$.right"]
    if isinstance(left, FieldExt) and isinstance(right, FieldExt):
        value = dim_tensor_fields(left.td, right.td)
        return {
            "formula": "min of the transcendence degrees (two field extensions)",
            "value": value.to_json(),
            "citation": 'Lemma 4.2 proof, "\\dim(K\\otimes_kL)={\\rm min}(t.d.( K:k),t.d.( L:k))"',
        }
    a, b = _af_summary(kb, "$.left"), _af_summary(kb, "$.right")
    if a is not None and b is not None:
        value = dim_tensor_af_pair(a, b)
        return {
            "formula": "min(dim A + t.d. B, t.d. A + dim B) (two AF-domains)",
            "value": value.to_json(),
            "citation": '§5, "min(\\dim (A)+t.d.(R:k),t.d.(A:k)+\\dim(R))" [26, Theorem 3.8]',
        }
    return {}


def build_report(kb, *, trace: bool = False) -> dict:
    nodes = []
    for path in sorted(kb.nodes):
        node = kb.nodes[path]
        facts = {}
        for prop in PropertyKind:
            fact = kb.fact(path, prop)
            if fact is not None:
                facts[prop.name] = {
                    "value": fact.value.to_json(),
                    "rule_id": fact.provenance.rule_id,
                    "citation": fact.provenance.citation,
                }
        nodes.append(
            {
                "path": path,
                "kind": _node_kind(node),
                "expr": format_expr(node),
                "facts": facts,
                "numeric": {
                    name: kb.interval(path, name).to_json()
                    for name in ("dim", "td", "min_residue_td")
                },
            }
        )
    report = {
        "schema": SCHEMA,
        "input": format_expr(kb.expr),
        "base_field_algebraically_closed": kb.config.base_field_algebraically_closed.to_json(),
        "nodes": nodes,
        "dimension": _dimension_section(kb),
        "warnings": collect_warnings(kb),
    }
    if trace:
        traces = {}
        for prop in PropertyKind:
            if kb.fact("$", prop) is not None:
                traces[prop.name] = explain(kb, "$", prop)
        report["trace"] = traces
    return report


def analyze_text(
    text: str,
    *,
    base_field: TriState = TriState.UNKNOWN,
    trace: bool = False,
):
    expr, _ = parse_expr(text)
    kb = new_kb(expr, config=KBConfig(base_field_algebraically_closed=base_field))
    infer(kb)
    return build_report(kb, trace=trace), kb


def _print_json(data, out):
    out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")


def _print_report_text(report: dict, out):
    out.write(f"input: {report['input']}\n")
    out.write(
        "base field algebraically closed: "
        f"{report['base_field_algebraically_closed']}\n"
    )
    for node in report["nodes"]:
        out.write(f"\n{node['path']}  ({node['kind']})  {node['expr']}\n")
        for prop, entry in sorted(node["facts"].items()):
            out.write(
                f"  {prop} = {json.dumps(entry['value'])}"
                f"   [{entry['rule_id']}] {entry['citation']}\n"
            )
        numeric = node["numeric"]
        out.write(
            "  dim={} td={} min_residue_td={}\n".format(
                numeric["dim"], numeric["td"], numeric["min_residue_td"]
            )
        )
    if report["dimension"]:
        dim = report["dimension"]
        out.write(f"\ndimension: {dim['value']}  via {dim['formula']}\n")
        out.write(f"  {dim['citation']}\n")
    if report["warnings"]:
        out.write("\nwarnings:\n")
        for warning in report["warnings"]:
            out.write(f"  - {warning}\n")
    if "trace" in report:
        out.write("\ntraces:\n")
        _print_json(report["trace"], out)


def _tristate_arg(text: str) -> TriState:
    return TriState(text)


def _read_expression_arg(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            return fh.read()
    return arg


# -- subcommand handlers -------------------------------------------------------


def _cmd_analyze(args, out) -> int:
    text = _read_expression_arg(args.expression)
    report, _ = analyze_text(
        text,
        base_field=args.base_field_alg_closed,
        trace=args.trace,
    )
    if args.json:
        _print_json(report, out)
    else:
        _print_report_text(report, out)
    return EXIT_OK


def _cmd_check_poset(args, out) -> int:
    poset = SpectralPoset.load(args.file)
    if args.dot:
        out.write(poset.to_dot())
        return EXIT_OK
    result = {
        "schema": SCHEMA,
        "file": args.file,
        "nodes": len(poset.nodes),
        "krull_dim": poset.krull_dim().to_json(),
        "mpc": poset.is_mpc(),
        "heights": {n: poset.height(n).to_json() for n in sorted(poset.nodes)},
    }
    status = EXIT_OK
    if args.property:
        verdict = poset.check_property(args.property)
        result["property"] = {args.property: verdict.to_json()}
        if verdict is not TriState.TRUE:
            status = EXIT_CHECK_FAILED
    if args.json:
        _print_json(result, out)
    else:
        out.write(
            f"{args.file}: {result['nodes']} nodes, dim {result['krull_dim']}, "
            f"mpc {result['mpc']}\n"
        )
        for node, h in result["heights"].items():
            out.write(f"  ht({node}) = {h}\n")
        if args.property:
            out.write(f"  {args.property} = {result['property'][args.property]}\n")
    return status


def _cmd_dim(args, out) -> int:
    if args.dim_op == "delta":
        poset = SpectralPoset.load(args.file)
        value = delta(args.s, args.d, poset, args.node)
    elif args.dim_op == "bigd":
        poset = SpectralPoset.load(args.file)
        value = big_d(args.s, args.d, poset)
    elif args.dim_op == "fields":
        value = dim_tensor_fields(ExtNat.from_json(_num(args.td_k)), ExtNat.from_json(_num(args.td_l)))
    elif args.dim_op == "af-pair":
        value = dim_tensor_af_pair(
            AFSummary(ExtNat(args.td_a), ExtNat(args.dim_a)),
            AFSummary(ExtNat(args.td_b), ExtNat(args.dim_b)),
        )
    elif args.dim_op == "af-general":
        poset = SpectralPoset.load(args.file)
        value = dim_tensor_af_general(AFSummary(ExtNat(args.td), ExtNat(args.dim)), poset)
    else:  # pragma: no cover - argparse enforces choices
        raise ValueError(args.dim_op)
    if args.json:
        _print_json({"schema": SCHEMA, "value": value.to_json()}, out)
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def _num(text: str):
    return "inf" if text == "inf" else int(text)


def _cmd_corpus(args, out) -> int:
    if args.corpus_op == "list":
        for name in corpus.list_fixtures():
            out.write(name + "\n")
        return EXIT_OK
    names = [args.name] if args.name else None
    reports = corpus.run_all(names)
    if args.json:
        _print_json(
            {"schema": SCHEMA, "reports": [r.to_json() for r in reports]}, out
        )
    else:
        for report in reports:
            for res in report.results:
                if res.status == "pass":
                    label = "PASS      "
                elif res.status == "documented":
                    label = "DOCUMENTED"
                else:
                    label = "FAIL      "
                line = f"{label} {res.fixture}: {res.description}"
                if res.status == "documented":
                    line += f" (recorded {res.expected!r}; not derivable, engine says unknown)"
                elif res.status == "fail":
                    line += f" (expected {res.expected!r}, got {res.actual!r})"
                out.write(line + "\n")
        total = sum(len(r.results) for r in reports)
        failed = sum(1 for r in reports for res in r.results if res.status == "fail")
        documented = sum(
            1 for r in reports for res in r.results if res.status == "documented"
        )
        out.write(
            f"{total - failed - documented} passed, {documented} documented, "
            f"{failed} failed\n"
        )
    return EXIT_CHECK_FAILED if any(r.failed for r in reports) else EXIT_OK


def _cmd_rules(args, out) -> int:
    catalog = rules_catalog_json()
    if args.json:
        _print_json({"schema": SCHEMA, "rules": catalog}, out)
    else:
        for rule in catalog:
            out.write(f"{rule['rule_id']}: {rule['citation']}\n")
            out.write(f"    {rule['guard']}\n")
    return EXIT_OK


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spectra-kit",
        description="Decide and explain prime-spectrum properties and Krull "
        "dimensions of tensor-product algebra constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analyze = sub.add_parser("analyze", help="infer properties of a DSL expression")
    p_analyze.add_argument("expression", help="expression text or a file containing it")
    p_analyze.add_argument("--json", action="store_true")
    p_analyze.add_argument("--trace", action="store_true",
                           help="include derivation trees for the root node")
    p_analyze.add_argument(
        "--base-field-alg-closed",
        type=_tristate_arg,
        choices=list(TriState),
        default=TriState.UNKNOWN,
        metavar="{true,false,unknown}",
        help="whether the base field is algebraically closed",
    )
    p_analyze.set_defaults(fn=_cmd_analyze)

    p_check = sub.add_parser("check-poset", help="validate a poset file and run checkers")
    p_check.add_argument("file")
    p_check.add_argument("--property", choices=[p.value for p in PosetProperty])
    p_check.add_argument("--json", action="store_true")
    p_check.add_argument("--dot", action="store_true", help="emit DOT instead of checks")
    p_check.set_defaults(fn=_cmd_check_poset)

    p_dim = sub.add_parser("dim", help="dimension arithmetic")
    dim_sub = p_dim.add_subparsers(dest="dim_op", required=True)
    p_delta = dim_sub.add_parser("delta")
    p_delta.add_argument("file")
    p_delta.add_argument("--s", type=int, required=True)
    p_delta.add_argument("--d", type=int, required=True)
    p_delta.add_argument("--node", required=True)
    p_bigd = dim_sub.add_parser("bigd")
    p_bigd.add_argument("file")
    p_bigd.add_argument("--s", type=int, required=True)
    p_bigd.add_argument("--d", type=int, required=True)
    p_fields = dim_sub.add_parser("fields")
    p_fields.add_argument("--td-k", required=True, help="number or 'inf'")
    p_fields.add_argument("--td-l", required=True, help="number or 'inf'")
    p_afp = dim_sub.add_parser("af-pair")
    p_afp.add_argument("--td-a", type=int, required=True)
    p_afp.add_argument("--dim-a", type=int, required=True)
    p_afp.add_argument("--td-b", type=int, required=True)
    p_afp.add_argument("--dim-b", type=int, required=True)
    p_afg = dim_sub.add_parser("af-general")
    p_afg.add_argument("file")
    p_afg.add_argument("--td", type=int, required=True)
    p_afg.add_argument("--dim", type=int, required=True)
    for sp in (p_delta, p_bigd, p_fields, p_afp, p_afg):
        sp.add_argument("--json", action="store_true")
    p_dim.set_defaults(fn=_cmd_dim)

    p_corpus = sub.add_parser("corpus", help="run the bundled example fixtures")
    corpus_sub = p_corpus.add_subparsers(dest="corpus_op", required=True)
    p_run = corpus_sub.add_parser("run")
    p_run.add_argument("name", nargs="?", default=None)
    p_run.add_argument("--json", action="store_true")
    corpus_sub.add_parser("list")
    p_corpus.set_defaults(fn=_cmd_corpus)

    p_rules = sub.add_parser("rules", help="list the inference-rule catalog")
    rules_sub = p_rules.add_subparsers(dest="rules_op", required=True)
    p_rules_list = rules_sub.add_parser("list")
    p_rules_list.add_argument("--json", action="store_true")
    p_rules.set_defaults(fn=_cmd_rules)

    return parser


def main(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # bad flags are input errors (exit 3); --help exits 0
        return EXIT_OK if exc.code == 0 else EXIT_BAD_INPUT
    try:
        return args.fn(args, out)
    except ContradictionError as exc:
        out.write(f"contradiction: {exc}\n")
        existing = getattr(exc.existing, "provenance", None)
        incoming = getattr(exc.incoming, "provenance", None)
        if existing is not None:
            out.write(f"  first derivation:  [{existing.rule_id}] {existing.citation}\n")
        if incoming is not None:
            out.write(f"  second derivation: [{incoming.rule_id}] {incoming.citation}\n")
        return EXIT_CONTRADICTION
    except ParseError as exc:
        out.write(f"parse error: {exc}\n")
        return EXIT_BAD_INPUT
    except (InvalidPoset, UnknownNode, corpus.UnknownFixture, corpus.InvalidFixture) as exc:
        out.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT
    except (MissingLabel, NonAF) as exc:
        out.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        out.write(f"error: {exc}\n")
        return EXIT_BAD_INPUT


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
