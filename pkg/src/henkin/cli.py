"""Command-line front end.

Every command prints one machine-readable JSON report to stdout and a short
human summary to stderr.  Exit codes are a stable contract:

* 0 - true / holds / witness found / sweep clean
* 1 - false / fails / inconclusive
* 2 - error (I/O, syntax, arity, bad input)
* 3 - a resource cap was exceeded; the report is partial

Reports are deterministic given identical inputs and caps, except for the
``timing_s`` field.  ``HENKIN_CAP_TABLES`` overrides the default table cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import fraenkel, groups, schemas
from .evaluate import EvalError, saturate_with_report
from .parser import ParseError, parse
from .structures import (
    Assignment,
    CapExceeded,
    DEFAULT_TABLE_CAP,
    StructureError,
    assignment_from_dict,
    assignment_to_dict,
    load_structure,
    structure_to_dict,
)
from .syntax import FormulaError, depth as formula_depth, format_formula


@dataclass
class RunReport:
    """One command's outcome: echo, input digests, verdicts, and caveats."""

    command: str
    inputs: dict[str, str] = field(default_factory=dict)
    result: dict = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    stratum: int | None = None
    seed: int | None = None
    timing_s: float = 0.0

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "flags": self.flags,
            "stratum": self.stratum,
            "seed": self.seed,
            "timing_s": round(self.timing_s, 6),
        }
        return json.dumps(payload, indent=2, sort_keys=True)


def _digest(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _read_formula_file(path: str | Path) -> str:
    lines = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            lines.append(stripped)
    return " ".join(lines)


def _load_json(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _table_cap(args) -> int:
    if args.cap_tables is not None:
        return args.cap_tables
    env = os.environ.get("HENKIN_CAP_TABLES")
    return int(env) if env else DEFAULT_TABLE_CAP


def _emit(report: RunReport, summary: str, started: float) -> None:
    report.timing_s = time.perf_counter() - started
    print(report.to_json())
    print(summary, file=sys.stderr)


# ---------------------------------------------------------------------------
# Commands.
# ---------------------------------------------------------------------------


def _cmd_parse(args, report: RunReport, started: float) -> int:
    if args.formula:
        report.inputs[str(args.formula)] = _digest(args.formula)
        text = _read_formula_file(args.formula)
    else:
        text = args.text
    f = parse(text)
    report.result = {
        "formula": format_formula(f),
        "free_vars": sorted(str(v) for v in f.free_vars),
        "depth": formula_depth(f),
    }
    _emit(report, f"parsed: {format_formula(f)}", started)
    return 0


def _cmd_eval(args, report: RunReport, started: float) -> int:
    report.inputs[str(args.structure)] = _digest(args.structure)
    report.inputs[str(args.formula)] = _digest(args.formula)
    structure = load_structure(args.structure)
    formula = parse(_read_formula_file(args.formula))
    assignment = Assignment({})
    if args.assignment:
        report.inputs[str(args.assignment)] = _digest(args.assignment)
        assignment = assignment_from_dict(_load_json(args.assignment), structure)
    from .evaluate import evaluate

    truth = evaluate(structure, assignment, formula)
    report.result = {"truth": truth}
    _emit(report, f"evaluates {'true' if truth else 'false'}", started)
    return 0 if truth else 1


def _schema_id(args) -> schemas.SchemaId:
    payload = None
    if args.h:
        payload = parse(_read_formula_file(args.h))
    return schemas.SchemaId(args.schema, n=args.n, m=args.m, payload=payload)


def _cmd_check(args, report: RunReport, started: float) -> int:
    report.inputs[str(args.structure)] = _digest(args.structure)
    if args.h:
        report.inputs[str(args.h)] = _digest(args.h)
    structure = load_structure(args.structure)
    schema = _schema_id(args)
    check = schemas.check_schema(
        structure, schema, strict=not args.reflexive, assignment_cap=args.cap_assignments
    )
    counterexample = None
    if check.counterexample is not None:
        counterexample = assignment_to_dict(check.counterexample, structure)
    report.result = {
        "schema": args.schema,
        "n": args.n,
        "m": args.m,
        "holds": check.holds,
        "counterexample": counterexample,
        "matrix": format_formula(check.matrix),
        "searched": [str(v) for v in check.searched],
    }
    _emit(report, f"{args.schema}: {'holds' if check.holds else 'fails'}", started)
    return 0 if check.holds else 1


def _cmd_saturate(args, report: RunReport, started: float) -> int:
    report.inputs[str(args.structure)] = _digest(args.structure)
    structure = load_structure(args.structure)
    out, sat = saturate_with_report(
        structure, args.depth, table_cap=_table_cap(args), formula_cap=args.cap_formulas
    )
    report.result = {
        "structure": structure_to_dict(out),
        "rounds": sat.rounds,
        "formulas_used": sat.formulas_used,
        "added": {str(n): k for n, k in sat.added.items()},
        "depth_bound": sat.depth_bound,
    }
    added = sum(sat.added.values())
    _emit(report, f"saturated in {sat.rounds} rounds, {added} tables added", started)
    return 0


def _cmd_build_model(args, report: RunReport, started: float) -> int:
    report.inputs[str(args.structure)] = _digest(args.structure)
    data = _load_json(args.structure)
    spec = groups.model_spec_from_dict(data, group_cap=args.cap_group)
    structure = groups.build_permutation_model(
        spec.labels, spec.group, spec.filt, args.max_arity, table_cap=_table_cap(args)
    )
    degenerate = groups.filter_degenerate(spec.filt, spec.group)
    if degenerate:
        report.flags.append("filter admits every subgroup over this finite universe")
    report.result = {
        "structure": structure_to_dict(structure),
        "group_order": spec.group.order,
        "degenerate_filter": degenerate,
        "domain_sizes": {str(n): len(structure.domains[n]) for n in sorted(structure.domains)},
    }
    sizes = ", ".join(f"|J{n}|={len(structure.domains[n])}" for n in sorted(structure.domains))
    _emit(report, f"built model: {sizes}", started)
    return 0


def _cmd_fraenkel_sweep(args, report: RunReport, started: float) -> int:
    sweep = fraenkel.wellorder_counterexample_sweep(
        args.max_support, strict=not args.reflexive, cap=args.cap_preds
    )
    report.result = {
        "max_support": sweep.max_support,
        "total_predicates": sweep.total_predicates,
        "linear_orders_found": sweep.linear_orders_found,
        "all_swap_witnessed": sweep.all_swap_witnessed,
        "buckets": [
            {
                "support_size": b.support_size,
                "predicates": b.predicate_count,
                "failures": dict(sorted(b.failure_counts.items())),
            }
            for b in sweep.buckets
        ],
    }
    _emit(
        report,
        f"{sweep.linear_orders_found} linear orders found among "
        f"{sweep.total_predicates} predicates",
        started,
    )
    return 0 if sweep.linear_orders_found == 0 else 1


def _load_binding(path: str | Path) -> dict:
    from .parser import parse_var

    data = _load_json(path)
    binding = {}
    for name, atom in data.get("individuals", {}).items():
        binding[parse_var(name)] = atom
    for name, doc in data.get("predicates", {}).items():
        binding[parse_var(name)] = fraenkel.symbolic_from_dict(doc)
    return binding


def _cmd_fraenkel_eval(args, report: RunReport, started: float) -> int:
    report.inputs[str(args.formula)] = _digest(args.formula)
    formula = parse(_read_formula_file(args.formula))
    binding = {}
    if args.bind:
        report.inputs[str(args.bind)] = _digest(args.bind)
        binding = _load_binding(args.bind)
    verdict = fraenkel.symbolic_evaluate(
        formula, binding, args.strat, pred_cap=args.cap_preds
    )
    report.stratum = args.strat if verdict.stratified else None
    if verdict.stratified:
        report.flags.append("stratified: predicate quantifiers bounded by support size")
    report.result = {
        "truth": verdict.truth,
        "stratified": verdict.stratified,
        "support_bound": verdict.support_bound,
    }
    label = "true" if verdict.truth else "false"
    tag = f" (stratified at {args.strat})" if verdict.stratified else ""
    _emit(report, f"evaluates {label}{tag}", started)
    return 0 if verdict.truth else 1


def _cmd_fraenkel_choice(args, report: RunReport, started: float) -> int:
    report.inputs[str(args.h)] = _digest(args.h)
    payload = parse(_read_formula_file(args.h))
    outcome = fraenkel.check_choice_instance_sigma0(
        args.n, args.m, payload, args.strat, pred_cap=args.cap_preds
    )
    report.stratum = args.strat
    if outcome.cap_hit:
        report.flags.append("candidate cap hit before the search space was exhausted")
    report.result = {
        "status": outcome.status,
        "witness": fraenkel.symbolic_to_dict(outcome.witness) if outcome.witness else None,
        "candidates_tried": outcome.candidates_tried,
        "support_bound": outcome.support_bound,
    }
    summary = {
        "witnessed": "witness found",
        "vacuous": "antecedent fails at this stratum; instance holds vacuously",
        "inconclusive": "no witness within bounds (not a refutation)",
    }[outcome.status]
    _emit(report, summary, started)
    return 0 if outcome.status in ("witnessed", "vacuous") else 1


# ---------------------------------------------------------------------------
# Argument parsing.
# ---------------------------------------------------------------------------


def _build_argparser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="henkin",
        description="Second-order Henkin-semantics workbench",
    )
    top.add_argument("--seed", type=int, default=None, help="echoed in the report")
    sub = top.add_subparsers(dest="cmd", required=True)

    def common_caps(p):
        p.add_argument("--cap-tables", type=int, default=None)
        p.add_argument("--cap-group", type=int, default=groups.DEFAULT_GROUP_CAP)
        p.add_argument("--cap-preds", type=int, default=fraenkel.DEFAULT_PRED_CAP)
        p.add_argument("--cap-assignments", type=int, default=1_000_000)
        p.add_argument("--cap-formulas", type=int, default=200_000)

    p = sub.add_parser("parse", help="parse a formula and print its canonical form")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--formula", help="file with the formula text")
    group.add_argument("--text", help="formula text inline")
    common_caps(p)

    p = sub.add_parser("eval", help="evaluate a formula over a structure file")
    p.add_argument("--structure", required=True)
    p.add_argument("--formula", required=True)
    p.add_argument("--assignment", default=None)
    common_caps(p)

    p = sub.add_parser("check", help="check an axiom schema over a structure file")
    p.add_argument("--structure", required=True)
    p.add_argument("--schema", required=True, choices=schemas.FAMILIES)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--h", default=None, help="payload formula file")
    p.add_argument("--reflexive", action="store_true", help="reflexive order variant")
    common_caps(p)

    p = sub.add_parser("saturate", help="close a structure under depth-bounded definability")
    p.add_argument("--structure", required=True)
    p.add_argument("--depth", type=int, default=1)
    common_caps(p)

    p = sub.add_parser("build-model", help="build a permutation model from a model spec")
    p.add_argument("--structure", required=True, help="spec with individuals, group, filter")
    p.add_argument("--max-arity", type=int, default=2)
    common_caps(p)

    p = sub.add_parser("fraenkel", help="symbolic atom-universe commands")
    fsub = p.add_subparsers(dest="fraenkel_cmd", required=True)

    q = fsub.add_parser("sweep", help="exhaust small-support binary predicates for orders")
    q.add_argument("--max-support", type=int, default=3)
    q.add_argument("--reflexive", action="store_true")
    common_caps(q)

    q = fsub.add_parser("eval", help="stratified evaluation over the atom universe")
    q.add_argument("--formula", required=True)
    q.add_argument("--bind", default=None)
    q.add_argument("--strat", type=int, default=2)
    common_caps(q)

    q = fsub.add_parser("choice", help="search a uniform witness for a choice instance")
    q.add_argument("--n", type=int, default=1)
    q.add_argument("--m", type=int, default=1)
    q.add_argument("--h", required=True)
    q.add_argument("--strat", type=int, default=2)
    common_caps(q)

    return top


_HANDLERS = {
    "parse": _cmd_parse,
    "eval": _cmd_eval,
    "check": _cmd_check,
    "saturate": _cmd_saturate,
    "build-model": _cmd_build_model,
}

_FRAENKEL_HANDLERS = {
    "sweep": _cmd_fraenkel_sweep,
    "eval": _cmd_fraenkel_eval,
    "choice": _cmd_fraenkel_choice,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    started = time.perf_counter()
    try:
        args = _build_argparser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    report = RunReport(command=" ".join(["henkin", *argv]), seed=args.seed)
    try:
        if args.cmd == "fraenkel":
            handler = _FRAENKEL_HANDLERS[args.fraenkel_cmd]
        else:
            handler = _HANDLERS[args.cmd]
        return handler(args, report, started)
    except CapExceeded as exc:
        report.flags.append(f"cap exceeded: {exc}")
        report.result = {"error": str(exc), "cap": exc.cap, "needed": exc.needed}
        _emit(report, f"cap exceeded: {exc}", started)
        return 3
    except (
        ParseError,
        FormulaError,
        StructureError,
        EvalError,
        fraenkel.FraenkelError,
        OSError,
        json.JSONDecodeError,
        ValueError,
        KeyError,
    ) as exc:
        report.result = {"error": f"{type(exc).__name__}: {exc}"}
        _emit(report, f"error: {exc}", started)
        return 2


if __name__ == "__main__":
    sys.exit(main())
