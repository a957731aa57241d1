"""Command-line surface: thin wrappers over the library operations.

Exit codes: 0 success (for `verify`, overall pass), 1 verification
failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import (
    Algebra,
    Budget,
    BudgetExceededError,
    FiniteFunction,
    FunctionSet,
    InputError,
    RelationPair,
)
from .closure import GeneratorFamily, clonoid_slice, member
from .core import pol_slice
from .suites import SUITE_IDS, run_verification
from .terms import (
    ClassificationReport,
    classify_boolean,
    cube_term_blocker,
    majority_terms,
    malcev_terms,
    nu_terms,
)
from .textio import format_artifact, parse_artifact


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _load_algebra(path: str) -> Algebra:
    value = parse_artifact(_read(path))
    if not isinstance(value, Algebra):
        raise InputError(f"{path} does not contain an algebra")
    return value


def _load_function(path: str) -> FiniteFunction:
    value = parse_artifact(_read(path))
    if isinstance(value, FiniteFunction):
        return value
    raise InputError(f"{path} does not contain a single function")


def _load_functions(path: str) -> list[FiniteFunction]:
    value = parse_artifact(_read(path))
    if isinstance(value, FiniteFunction):
        return [value]
    if isinstance(value, list) and all(isinstance(v, FiniteFunction) for v in value):
        return value
    raise InputError(f"{path} does not contain functions")


def _load_pairs(path: str) -> list[RelationPair]:
    value = parse_artifact(_read(path))
    if isinstance(value, list) and all(isinstance(v, RelationPair) for v in value):
        return value
    raise InputError(f"{path} does not contain relation pairs")


def _table_text(fn: FiniteFunction) -> str:
    if fn.target_size <= 10:
        return "".join(str(v) for v in fn.table)
    return " ".join(str(v) for v in fn.table)


def _report_json(report: ClassificationReport) -> dict:
    def fn_json(fn):
        return None if fn is None else _table_text(fn)

    return {
        "verdict": report.verdict,
        "witness_majority": fn_json(report.witness_majority),
        "witness_malcev": fn_json(report.witness_malcev),
        "witness_nu": None
        if report.witness_nu is None
        else {"arity": report.witness_nu[0], "table": _table_text(report.witness_nu[1])},
        "nu_beyond_search_cap": report.nu_beyond_search_cap,
        "containing_maximal_clone": report.containing_maximal_clone,
        "blocker": None if report.blocker is None else list(report.blocker),
    }


def _report_text(report: ClassificationReport) -> str:
    lines = [f"verdict: {report.verdict}"]
    if report.witness_majority is not None:
        lines.append(f"witness_majority: {_table_text(report.witness_majority)}")
    if report.witness_malcev is not None:
        lines.append(f"witness_malcev: {_table_text(report.witness_malcev)}")
    if report.witness_nu is not None:
        arity, fn = report.witness_nu
        lines.append(f"witness_nu: arity {arity} table {_table_text(fn)}")
    if report.nu_beyond_search_cap:
        lines.append("witness_nu: exists beyond search cap")
    if report.containing_maximal_clone is not None:
        lines.append(f"containing_maximal_clone: {report.containing_maximal_clone}")
    if report.blocker is not None:
        lines.append("blocker: " + " ".join(str(v) for v in report.blocker))
    else:
        lines.append("blocker: none")
    return "\n".join(lines) + "\n"


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        sys.stdout.write(text)


def _set_json(fs: FunctionSet) -> dict:
    return {
        "source_size": fs.source_size,
        "target_size": fs.target_size,
        "arity": fs.arity,
        "count": len(fs),
        "tables": [_table_text(f) for f in fs],
    }


def _cmd_classify(args) -> int:
    algebra = _load_algebra(args.algebra)
    report = classify_boolean(algebra, nu_cap=args.nu_cap, budget=args.budget_obj)
    _emit(args, _report_text(report), _report_json(report))
    return 0


def _cmd_pol(args) -> int:
    pairs = _load_pairs(args.pairs)
    result = pol_slice(
        pairs, args.arity, source_size=args.source, target_size=args.target,
        budget=args.budget_obj,
    )
    _emit(args, format_artifact(result), _set_json(result))
    return 0


def _cmd_generate(args) -> int:
    algebra = _load_algebra(args.algebra)
    gens = _load_functions(args.generators)
    family = GeneratorFamily(gens[0].source_size, gens[0].target_size, tuple(gens))
    result = clonoid_slice(family, algebra, args.arity, args.budget_obj)
    _emit(args, format_artifact(result), _set_json(result))
    return 0


def _cmd_member(args) -> int:
    algebra = _load_algebra(args.algebra)
    f = _load_function(args.function)
    gens = _load_functions(args.generators)
    family = GeneratorFamily(gens[0].source_size, gens[0].target_size, tuple(gens))
    verdict = member(f, family, algebra, args.budget_obj)
    _emit(args, ("true" if verdict else "false") + "\n", {"member": verdict})
    return 0


def _cmd_blocker(args) -> int:
    algebra = _load_algebra(args.algebra)
    found = cube_term_blocker(algebra)
    text = ("V " + " ".join(str(v) for v in found)) if found is not None else "none"
    _emit(args, text + "\n", {"blocker": None if found is None else list(found)})
    return 0


def _cmd_terms(args) -> int:
    algebra = _load_algebra(args.algebra)
    if args.kind == "malcev":
        result = malcev_terms(algebra, args.budget_obj)
    elif args.kind == "majority":
        result = majority_terms(algebra, args.budget_obj)
    else:
        result = nu_terms(algebra, args.arity, args.budget_obj)
    _emit(args, format_artifact(result), _set_json(result))
    return 0


def _cmd_verify(args) -> int:
    params: dict = {}
    if args.max is not None:
        params["max"] = args.max
    if args.max_index is not None:
        params["max_index"] = args.max_index
    if args.window is not None:
        params["window_low"], params["window_high"] = args.window
    if args.families is not None:
        params["families"] = args.families
    if args.seed is not None:
        params["seed"] = args.seed
    if args.suite_algebra is not None:
        params["algebra"] = _load_algebra(args.suite_algebra)
    report = run_verification(args.suite, params, args.budget_obj)
    _emit(args, report.render_text(), report.to_json_dict())
    return 0 if report.overall else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clonoids",
        description="Compute with minor-closed function classes between finite sets.",
    )
    parser.add_argument("--budget", type=int, default=None, help="element cap for generated sets")
    parser.add_argument("--nu-cap", type=int, default=5, dest="nu_cap")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="cardinality trichotomy for a Boolean target algebra")
    p.add_argument("algebra", help="algebra file, or - for stdin")
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("pol", help="all functions of one arity preserving the given pairs")
    p.add_argument("--pairs", required=True)
    p.add_argument("--arity", type=int, required=True)
    p.add_argument("--source", type=int, default=None)
    p.add_argument("--target", type=int, default=None)
    p.set_defaults(fn=_cmd_pol)

    p = sub.add_parser("generate", help="one arity slice of the generated clonoid")
    p.add_argument("--generators", required=True, help="file with one or more fn lines")
    p.add_argument("--algebra", required=True)
    p.add_argument("--arity", type=int, required=True)
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("member", help="membership of a function in a generated clonoid")
    p.add_argument("--function", required=True)
    p.add_argument("--generators", required=True)
    p.add_argument("--algebra", required=True)
    p.set_defaults(fn=_cmd_member)

    p = sub.add_parser("blocker", help="first cube term blocker of an algebra, if any")
    p.add_argument("algebra")
    p.set_defaults(fn=_cmd_blocker)

    p = sub.add_parser("terms", help="term operations satisfying a named condition")
    p.add_argument("algebra")
    p.add_argument("--kind", choices=("malcev", "majority", "nu"), required=True)
    p.add_argument("--arity", type=int, default=3, help="arity for --kind nu")
    p.set_defaults(fn=_cmd_terms)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=SUITE_IDS)
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--max-index", type=int, default=None, dest="max_index")
    p.add_argument("--window", type=int, nargs=2, default=None, metavar=("LO", "HI"))
    p.add_argument("--families", type=int, default=None)
    p.add_argument("--algebra", default=None, dest="suite_algebra")
    p.set_defaults(fn=_cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    args.budget_obj = Budget(args.budget) if args.budget is not None else None
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
