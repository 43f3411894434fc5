"""Command-line front end.

Exit codes: 0 property holds / success, 1 property fails, 2 input error,
3 cap exceeded, 4 internal consistency failure.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import counting, family, monomial, squarefree
from .errors import CapExceeded, ConsistencyError, InputError, MethodDisagreement, TheoremViolation

EXIT_OK, EXIT_FAILS, EXIT_INPUT, EXIT_CAP, EXIT_INTERNAL = range(5)

ENV_MAX_SETS = "DOMFAM_MAX_SETS"
ENV_MAX_UNION = "DOMFAM_MAX_UNION"

_METHOD_ALIASES = {
    "brute": (counting.BRUTE,),
    "ie": (counting.INCLUSION_EXCLUSION,),
    "inclusion_exclusion": (counting.INCLUSION_EXCLUSION,),
    "both": counting.METHODS,
}


@dataclass
class CommandOutcome:
    exit_code: int
    report: dict

    def render(self, as_json: bool) -> str:
        if as_json:
            return json.dumps(self.report, indent=2, ensure_ascii=False) + "\n"
        return render_text(self.report)


def render_text(report: dict) -> str:
    rows = []

    def walk(prefix: str, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}.{k}" if prefix else k, v)
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            for i, v in enumerate(value, start=1):
                walk(f"{prefix}[{i}]", v)
        else:
            rows.append((prefix, _text_value(value)))

    walk("", report)
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _text_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        if not value:
            return "-"
        if isinstance(value[0], list):
            return " ".join("{" + " ".join(map(str, v)) + "}" for v in value)
        if any(" " in str(v) for v in value):
            return ", ".join(map(str, value))
        return " ".join(map(str, value))
    return str(value)


def _cap(flag: int | None, env: str) -> int | None:
    if flag is not None:
        return flag
    raw = os.environ.get(env)
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise InputError(f"{env}={raw!r} is not an integer") from None
    return None


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _names(F: family.SetFamily, mask: int) -> list[str]:
    return list(F.universe.names(mask))


def cmd_check(args) -> CommandOutcome:
    F = family.parse_family(_read(args.file))
    fast = family.is_dominant(F)
    direct = family.is_dominant_direct(F)
    if fast != direct:
        raise ConsistencyError("fast and direct dominance checks disagree")
    sets = [
        {"elements": _names(F, m), "private": _names(F, p)}
        for m, p in zip(F.members, family.private_elements(F))
    ]
    report = {"command": "check", "dominant": fast, "dominant_direct": direct, "agreement": True, "sets": sets}
    return CommandOutcome(EXIT_OK if fast else EXIT_FAILS, report)


def cmd_unions(args) -> CommandOutcome:
    F = family.parse_family(_read(args.file))
    check = family.subfamily_unions_distinct(F, _cap(args.max_sets, ENV_MAX_SETS))
    if check.distinct != family.is_dominant(F):
        raise TheoremViolation("union distinctness disagrees with dominance")
    collision = None
    if check.collision:
        first, second = check.collision
        collision = {
            "first": [_names(F, F.members[i]) for i in first],
            "second": [_names(F, F.members[i]) for i in second],
            "union": _names(F, family.subfamily_union(F, first)),
        }
    report = {"command": "unions", "members": len(F), "distinct": check.distinct, "collision": collision}
    return CommandOutcome(EXIT_OK if check.distinct else EXIT_FAILS, report)


def cmd_count(args) -> CommandOutcome:
    F = family.parse_family(_read(args.file))
    max_sets = _cap(args.max_sets, ENV_MAX_SETS)
    max_union = _cap(args.max_union, ENV_MAX_UNION)
    methods = []
    for name in args.method or ["ie"]:
        methods.extend(m for m in _METHOD_ALIASES[name] if m not in methods)
    result = counting.checked_count_report(F, methods, max_sets=max_sets, max_union=max_union)
    report = {"command": "count", "dominant": family.is_dominant(F), **result.to_dict()}
    if args.pairs:
        pairs = counting.grinberg_pair_count(F, max_sets, max_union)
        if pairs.via_subsets is not None and pairs.via_subsets != pairs.via_subfamilies:
            raise MethodDisagreement("the two pair counts disagree")
        if pairs.via_subfamilies % 2 != result.noncovering % 2:
            raise TheoremViolation("pair count parity differs from the noncovering parity")
        report["pairs"] = pairs.to_dict()
    if args.full_union:
        full = counting.full_union_subfamily_count(F, max_sets)
        if report["dominant"] and full != 1:
            raise TheoremViolation(f"dominant family has {full} full-union subfamilies")
        report["full_union_subfamilies"] = full
    return CommandOutcome(EXIT_OK, report)


def _parse_int(token: str) -> int:
    if not token.isdigit():
        raise InputError(f"{token!r} is not a positive decimal integer")
    return int(token)


def cmd_nt(args) -> CommandOutcome:
    inputs = [squarefree.squarefree_factorize(_parse_int(t)) for t in args.integers]
    cond = squarefree.condition_c(inputs)
    report = {
        "command": "nt",
        "inputs": [{"value": a.value, "primes": list(a.primes)} for a in inputs],
        "condition_c": cond.holds,
        "witnesses": None if cond.witnesses is None else list(cond.witnesses),
    }
    if len(inputs) <= squarefree.MAX_INPUTS:
        labeling = squarefree.multiface_labels(inputs)
        distinct = len(set(labeling.labels.values())) == len(labeling.labels)
        if distinct != cond.holds:
            raise TheoremViolation("label distinctness disagrees with condition C")
        report["labels_distinct"] = distinct
        if args.labels:
            report["labels"] = labeling.to_dict()["labels"]
    elif args.labels:
        raise squarefree.TooManyInputs(f"label table needs at most {squarefree.MAX_INPUTS} inputs")
    divided = squarefree.count_dominated_divisors(inputs, _cap(args.max_sets, ENV_MAX_SETS))
    report["N"] = {"n_size": divided.n_size, "parity": divided.parity, "direct_count": divided.direct}
    return CommandOutcome(EXIT_OK if cond.holds else EXIT_FAILS, report)


def _multidegree(M: monomial.MonomialIdeal, spec: Sequence[str]):
    m = monomial.parse_monomial(" ".join(spec))
    gens = monomial.minimal_monomial_generators(M).generators
    A = tuple(g for g in gens if monomial.divides(g, m))
    if not A or monomial.lcm_all(A) != m:
        raise monomial.NotATaylorMultidegree(f"{m} is not the lcm of any set of minimal generators")
    return m, A


def cmd_ideal(args) -> CommandOutcome:
    M = monomial.parse_ideal(_read(args.file))
    cap = _cap(args.max_sets, ENV_MAX_SETS)
    if args.action == "dominant":
        result = monomial.is_dominant_ideal(M)
        minimal = monomial.minimal_monomial_generators(M)
        report = {
            "command": "ideal dominant",
            "minimal_generators": [str(g) for g in minimal.generators],
            "dominant": result.dominant,
            "witnesses": None if result.witnesses is None else list(result.witnesses),
        }
        return CommandOutcome(EXIT_OK if result.dominant else EXIT_FAILS, report)
    if args.action == "certificate":
        m, _ = _multidegree(M, args.m)
        cert = monomial.taylor_parity_certificate(M, m, cap)
        report = {"command": "ideal certificate", **cert.to_dict()}
        return CommandOutcome(EXIT_OK if cert.certified else EXIT_FAILS, report)
    m, A = _multidegree(M, args.m)
    result = monomial.generators_of_m(A, m, list_subsets=args.list, cap=cap)
    report = {
        "command": "ideal generators",
        "m": str(m),
        "A": [str(a) for a in A],
        "count": result.count,
        "parity": counting.parity(result.count),
    }
    if result.subsets is not None:
        report["generators"] = [list(S) for S in result.subsets]
    return CommandOutcome(EXIT_OK, report)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-sets", type=int, metavar="N", help=f"subfamily enumeration cap (env {ENV_MAX_SETS})")

    parser = argparse.ArgumentParser(prog="domfam", description="Dominant families of sets and their applications.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="test dominance of a family file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("unions", parents=[common], help="test that all subfamily unions are distinct")
    p.add_argument("file")
    p.set_defaults(func=cmd_unions)

    p = sub.add_parser("count", parents=[common], help="count subsets of the union containing a member")
    p.add_argument("file")
    p.add_argument("--method", action="append", choices=sorted(_METHOD_ALIASES), help="repeatable; default ie")
    p.add_argument("--max-union", type=int, metavar="N", help=f"brute-force cap on |A| (env {ENV_MAX_UNION})")
    p.add_argument("--pairs", action="store_true", help="also count (X, J) pairs both ways")
    p.add_argument("--full-union", action="store_true", help="also count subfamilies whose union is A")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("nt", parents=[common], help="condition C and divisor parity for squarefree integers")
    p.add_argument("integers", nargs="+")
    p.add_argument("--labels", action="store_true", help="include the lcm label of every subset")
    p.set_defaults(func=cmd_nt)

    p = sub.add_parser("ideal", help="monomial ideal commands")
    p.add_argument("file")
    actions = p.add_subparsers(dest="action", required=True)
    a = actions.add_parser("dominant", parents=[common])
    a.set_defaults(func=cmd_ideal)
    a = actions.add_parser("certificate", parents=[common])
    a.add_argument("m", nargs="+", help="multidegree, e.g. 'x1 x2^2'")
    a.set_defaults(func=cmd_ideal)
    a = actions.add_parser("generators", parents=[common])
    a.add_argument("m", nargs="+")
    a.add_argument("--list", action="store_true", help="list every generator")
    a.set_defaults(func=cmd_ideal)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err), contextlib.redirect_stdout(out):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    handler: Callable[[argparse.Namespace], CommandOutcome] = args.func
    try:
        outcome = handler(args)
    except ConsistencyError as exc:
        print(f"domfam: internal error: {exc}", file=err)
        return EXIT_INTERNAL
    except CapExceeded as exc:
        print(f"domfam: {exc}", file=err)
        return EXIT_CAP
    except (InputError, ValueError) as exc:
        print(f"domfam: {exc}", file=err)
        return EXIT_INPUT
    out.write(outcome.render(args.json))
    return outcome.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
