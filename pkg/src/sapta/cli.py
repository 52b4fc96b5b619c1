"""Command-line front end: parse, eval, classify, scenario, corpus, exclusivity.

Output goes to stdout as JSON (default) or human-readable text; identical
inputs and seed produce byte-identical output.  Under ``--format json``
every exit path prints a JSON object, errors included.  Exit codes: 0 on
success, 1 on syntax/model errors, 2 on a corpus expectation mismatch, 64
on bad flags.  Set SAPTA_COLOR=0 to disable ANSI color in text output.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import trivalent
from .errors import ParseError, SaptaError
from .formulas import ast_to_dict, pretty
from .parser import parse_formula_file
from .predication import (
    SANSKRIT_NAMES,
    classify,
    judgments_from_json,
    mutual_exclusivity_certificate,
    schema_formula_for,
)
from .semantics import Model, evaluate
from .scenarios import (
    CORPUS_ORDER,
    SCENARIO_NAMES,
    run_corpus,
    scenario_cat,
    scenario_double_slit,
    scenario_epr,
    scenario_qcc,
    scenario_threshold,
    scenario_wigner,
)

__all__ = ["main", "entry", "build_parser"]

EX_OK = 0
EX_ERROR = 1
EX_MISMATCH = 2
EX_USAGE = 64


class _UsageError(Exception):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; route through EX_USAGE instead.
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="sapta", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("json", "text"), default="json", help="output format")

    p_parse = sub.add_parser("parse", help="parse formula files and dump ASTs")
    p_parse.add_argument("paths", nargs="+", help="formula files ('-' for stdin)")
    add_format(p_parse)

    p_eval = sub.add_parser("eval", help="evaluate formulas over a model")
    p_eval.add_argument("paths", nargs="+", help="formula files ('-' for stdin)")
    p_eval.add_argument("--model", required=True, help="model JSON file")
    p_eval.add_argument(
        "--incompat",
        choices=("relational", "extensional"),
        default="relational",
        help="reading of guard-incompatibility clauses",
    )
    add_format(p_eval)

    p_classify = sub.add_parser("classify", help="classify a judgment set")
    p_classify.add_argument(
        "judgments_path", nargs="?", help="judgment set JSON file ('-' for stdin)"
    )
    p_classify.add_argument("--judgments", help="judgment set JSON file (alternative spelling)")
    p_classify.add_argument("--model", required=True, help="model JSON file")
    p_classify.add_argument("--predicate", help="predicate to classify (inferred when unique)")
    add_format(p_classify)

    p_scenario = sub.add_parser("scenario", help="run one built-in scenario")
    p_scenario.add_argument("name", choices=SCENARIO_NAMES)
    p_scenario.add_argument("--seed", type=int, default=0, help="64-bit sampling seed")
    p_scenario.add_argument("--open", action="store_true", help="cat: open the box")
    p_scenario.add_argument("--trials", type=int, help="cat: sample this many outcomes")
    p_scenario.add_argument(
        "--perspective", choices=("friend", "wigner", "combined"), default="combined"
    )
    p_scenario.add_argument("--friend-outcome", choices=("up", "down"), default="up")
    p_scenario.add_argument("--basis", choices=("zero_one", "plus_minus"), default="zero_one")
    p_scenario.add_argument(
        "--levels", default="0.1,0.5,0.9", help="threshold: comma-separated intensities"
    )
    p_scenario.add_argument("--lower-cut", type=float, default=0.3)
    p_scenario.add_argument("--upper-cut", type=float, default=0.7)
    for flag in ("one-slit-observed", "one-slit-unobserved", "two-slits-unobserved"):
        p_scenario.add_argument(
            f"--{flag}", action=argparse.BooleanOptionalAction, default=True,
            help="double_slit: include this context",
        )
    add_format(p_scenario)

    p_corpus = sub.add_parser("corpus", help="run all scenarios against expected classes")
    p_corpus.add_argument("--seed", type=int, default=0)
    add_format(p_corpus)

    p_excl = sub.add_parser("exclusivity", help="21-row mutual exclusivity certificate")
    add_format(p_excl)

    return parser


# ---------------------------------------------------------------------------
# Output helpers.


def _color_enabled() -> bool:
    return os.environ.get("SAPTA_COLOR", "1") != "0" and sys.stdout.isatty()


_COLORS = {"T": "\x1b[32m", "F": "\x1b[31m", "U": "\x1b[33m"}


def _tv(text: str) -> str:
    if _color_enabled() and text in _COLORS:
        return f"{_COLORS[text]}{text}\x1b[0m"
    return text


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, ensure_ascii=False))


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_model(path: str) -> Model:
    return Model.from_json(json.loads(_read(path)))


def _model_metadata(model: Model) -> dict:
    return {
        "connectives": trivalent.CONNECTIVES,
        "implication": trivalent.IMPLICATION,
        "valuationDefault": "U",
        "defaultedValuationEntries": model.defaulted_valuations,
    }


def _class_text(cls) -> str:
    name = SANSKRIT_NAMES.get(cls.tag)
    return f"{cls.tag.value} ({name})" if name else cls.tag.value


# ---------------------------------------------------------------------------
# Commands.


def _cmd_parse(args) -> int:
    entries = []
    for path in args.paths:
        for nf in parse_formula_file(_read(path)):
            entries.append(
                {
                    "path": path,
                    "name": nf.name,
                    "line": nf.line,
                    "pretty": pretty(nf.formula),
                    "ast": ast_to_dict(nf.formula),
                }
            )
    if args.format == "json":
        _emit_json({"formulas": entries})
    else:
        for e in entries:
            label = e["name"] or f"{e['path']}:{e['line']}"
            print(f"{label}: {e['pretty']}")
    return EX_OK


def _cmd_eval(args) -> int:
    model = _load_model(args.model)
    results = []
    for path in args.paths:
        for nf in parse_formula_file(_read(path), contexts=model.contexts, require_closed=True):
            value = evaluate(nf.formula, model, incompat_mode=args.incompat)
            results.append(
                {
                    "path": path,
                    "name": nf.name,
                    "line": nf.line,
                    "pretty": pretty(nf.formula),
                    "value": value.value,
                }
            )
    if args.format == "json":
        metadata = _model_metadata(model)
        metadata["incompatibilityMode"] = args.incompat
        _emit_json({"results": results, "metadata": metadata})
    else:
        for r in results:
            label = r["name"] or f"{r['path']}:{r['line']}"
            print(f"{label}: {_tv(r['value'])}")
    return EX_OK


def _cmd_classify(args) -> int:
    path = args.judgments_path or args.judgments
    if path is None or (args.judgments_path and args.judgments):
        raise SaptaError("give the judgment file either positionally or via --judgments")
    model = _load_model(args.model)
    judgments = judgments_from_json(json.loads(_read(path)))
    predicate = args.predicate
    if predicate is None:
        names = sorted({j.predicate for j in judgments})
        if len(names) != 1:
            raise SaptaError(
                f"--predicate required: judgment set mentions {len(names)} predicates {names}"
            )
        predicate = names[0]
    cls = classify(judgments, model, predicate)
    formula = schema_formula_for(cls, predicate)
    out = cls.to_json()
    out["schemaFormula"] = pretty(formula) if formula is not None else None
    if args.format == "json":
        out["metadata"] = _model_metadata(model)
        _emit_json(out)
    else:
        print(_class_text(cls))
        if cls.contexts_used:
            print("contexts: " + ", ".join(cls.contexts_used))
        if out["schemaFormula"]:
            print("schema: " + out["schemaFormula"])
    return EX_OK


def _build_scenario(args):
    if args.name == "double_slit":
        return scenario_double_slit(
            args.one_slit_observed, args.one_slit_unobserved, args.two_slits_unobserved
        )
    if args.name == "cat":
        return scenario_cat(args.open, args.seed, args.trials)
    if args.name == "wigner":
        return scenario_wigner(args.perspective, args.friend_outcome)
    if args.name == "epr":
        return scenario_epr(args.basis)
    if args.name == "qcc":
        return scenario_qcc()
    levels = tuple(float(part) for part in args.levels.split(",") if part.strip())
    return scenario_threshold(levels, args.lower_cut, args.upper_cut)


def _cmd_scenario(args) -> int:
    report = _build_scenario(args)
    if args.format == "json":
        out = report.to_json()
        out["metadata"] = {"seed": args.seed}
        _emit_json(out)
    else:
        print(f"scenario: {report.scenario_name}")
        for j in report.judgments:
            print(f"  {j.context}: {j.predicate} = {_tv(j.value.value)}")
        print(f"expected: {_class_text(report.expected_class)}")
        for name, value in report.numeric_witness.items():
            print(f"  {name} = {value}")
    return EX_OK


def _cmd_corpus(args) -> int:
    results = run_corpus(args.seed)
    ok = all(r.match for r in results)
    if args.format == "json":
        _emit_json(
            {
                "results": [r.to_json() for r in results],
                "allMatch": ok,
                "metadata": {"seed": args.seed, "order": list(CORPUS_ORDER)},
            }
        )
    else:
        for r in results:
            verdict = "ok" if r.match else "MISMATCH"
            print(
                f"{r.name}: expected {_class_text(r.report.expected_class)}, "
                f"classified {_class_text(r.classified)}, {verdict}"
            )
        print(f"{sum(r.match for r in results)}/{len(results)} scenarios match")
    return EX_OK if ok else EX_MISMATCH


def _cmd_exclusivity(args) -> int:
    rows = mutual_exclusivity_certificate()
    distinct = sum(1 for r in rows if r.verdict == "distinct")
    if args.format == "json":
        _emit_json(
            {
                "rows": [r.to_json() for r in rows],
                "allDistinct": distinct == len(rows),
                "distinct": distinct,
                "total": len(rows),
            }
        )
    else:
        for r in rows:
            print(f"{r.first.value}/{r.second.value}: {r.verdict} ({r.reason})")
        print(f"{distinct}/{len(rows)} distinct")
    return EX_OK if distinct == len(rows) else EX_ERROR


_COMMANDS = {
    "parse": _cmd_parse,
    "eval": _cmd_eval,
    "classify": _cmd_classify,
    "scenario": _cmd_scenario,
    "corpus": _cmd_corpus,
    "exclusivity": _cmd_exclusivity,
}


def _error_payload(exc: Exception) -> dict:
    payload = {"kind": type(exc).__name__, "message": str(exc)}
    span = getattr(exc, "span", None)
    payload["span"] = span.to_dict() if span is not None else None
    if isinstance(exc, ParseError) and exc.expected:
        payload["expected"] = sorted(exc.expected)
    return payload


def _wants_json(argv: list[str], args=None) -> bool:
    if args is not None:
        return getattr(args, "format", "json") == "json"
    return "text" not in [argv[i + 1] for i, a in enumerate(argv[:-1]) if a == "--format"] and (
        "--format=text" not in argv
    )


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        if _wants_json(argv):
            _emit_json({"error": {"kind": "UsageError", "message": str(exc), "span": None}})
        print(f"usage error: {exc}", file=sys.stderr)
        return EX_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (SaptaError, OSError, json.JSONDecodeError, ValueError) as exc:
        if _wants_json(argv, args):
            _emit_json({"error": _error_payload(exc)})
        span = getattr(exc, "span", None)
        where = f"{span.line}:{span.column}: " if span is not None else ""
        print(f"{where}error: {exc}", file=sys.stderr)
        return EX_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
