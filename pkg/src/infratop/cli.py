"""Command-line front end: ``infratop <command> ...``.

Exit codes: 0 success, 1 parse/validation/usage error, 2 when ``check
--strict`` sees a failing verdict, 3 when a FORCED claim fails (engine bug).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path
from typing import Iterable, Iterator, Sequence, TextIO

from . import classes as cl
from . import space as sp
from .classes import CLOSED_CLASSES, OPEN_CLASSES, ClassId
from .enumeration import (
    EnumConfig,
    MAX_N,
    count_spaces,
    enumerate_encodings,
    enumerate_spaces,
    hunt,
    implication_matrix,
    to_dot,
    universe,
)
from .genops import FamilyView, f_boundary, f_closure, f_derived, f_exterior, f_interior
from .setcore import GroundSet, decode_family
from .space import InfraSpace, ValidationError
from .theorems import (
    Expectation,
    ForcedInvariantViolated,
    check_all,
    cross_reference,
    get_entry,
    registry,
)

OPERATORS = (
    "interior", "closure", "derived", "exterior", "boundary",
    "delta-interior", "delta-closure", "delta-frontier",
)


class UsageError(Exception):
    """Bad flags or input; reported on stderr with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


class Output:
    """Collects printed lines so ``--report`` can echo them."""

    def __init__(self, stream: TextIO) -> None:
        self.stream = stream
        self.lines: list[str] = []

    def __call__(self, line: str = "") -> None:
        self.lines.append(line)
        print(line, file=self.stream)


# -- input helpers ----------------------------------------------------------

def load_space_file(path: str | Path, *, complete: bool = False) -> tuple[InfraSpace, tuple[int, ...]]:
    """Read a JSON space file; returns (space, sets added by --complete)."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict) or set(data) != {"ground", "opens"}:
        raise UsageError(f"{path}: expected an object with exactly the keys 'ground' and 'opens'")
    ground, opens = data["ground"], data["opens"]
    if not isinstance(ground, list) or not all(isinstance(x, str) for x in ground):
        raise UsageError(f"{path}: 'ground' must be a list of strings")
    if not isinstance(opens, list) or not all(
        isinstance(o, list) and all(isinstance(x, str) for x in o) for o in opens
    ):
        raise UsageError(f"{path}: 'opens' must be a list of lists of strings")
    try:
        g = GroundSet(tuple(ground))
        masks = [g.mask(o) for o in opens]
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if complete:
        return sp.complete(g, masks)
    return sp.validate(g, masks), ()


def space_to_json(s: InfraSpace) -> dict:
    """Canonically ordered file content for ``s``."""
    return {"ground": list(s.ground.elements), "opens": [s.ground.names(o) for o in s.opens]}


def parse_set(g: GroundSet, text: str) -> int:
    text = text.strip()
    if text.startswith("{") and text.endswith("}"):
        text = text[1:-1]
    names = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return g.mask(names)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_class(name: str) -> ClassId:
    try:
        return ClassId.parse(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_shard(text: str) -> tuple[int, int]:
    try:
        i, total = (int(x) for x in text.split("/"))
    except ValueError:
        raise UsageError(f"invalid --shard {text!r}; expected INDEX/TOTAL") from None
    if total < 1 or not 0 <= i < total:
        raise UsageError(f"invalid --shard {text!r}; need 0 <= INDEX < TOTAL")
    return i, total


def _check_n(n: int) -> int:
    if not 1 <= n <= MAX_N:
        raise UsageError(f"n must be in 1..{MAX_N}, got {n}")
    return n


def _spaces_from(args: argparse.Namespace, *, at_most: bool) -> Iterable[InfraSpace]:
    """Either the single space of FILE or an enumerated universe."""
    n = getattr(args, "n", None)
    if args.file is not None and n is not None:
        raise UsageError("give either FILE or --n, not both")
    if args.file is not None:
        return [load_space_file(args.file)[0]]
    if n is None:
        raise UsageError("need FILE or --n")
    _check_n(n)
    if at_most:
        return universe(n)
    return enumerate_spaces(EnumConfig(n))


# -- commands ---------------------------------------------------------------

def cmd_validate(args: argparse.Namespace, out: Output) -> int:
    s, added = load_space_file(args.file, complete=args.complete)
    if args.complete:
        out("added: " + (", ".join(s.fmt(a) for a in added) if added else "(none)"))
        out(json.dumps(space_to_json(s)))
    out(f"valid infra topology: {len(s.opens)} open sets on {s.n} points")
    return 0


def _apply_operator(s: InfraSpace, which: str, a: int, family: ClassId | None, literal: bool) -> int:
    if which.startswith("delta-"):
        if family is not None:
            raise UsageError("--family does not apply to delta operators")
        fn = {"delta-interior": lambda: cl.delta_interior(s, a),
              "delta-closure": lambda: cl.delta_closure(s, a, literal=literal),
              "delta-frontier": lambda: cl.delta_frontier(s, a, literal=literal)}[which]
        return fn()
    fam = s.opens if family is None else cl.family_of(s, family, literal=literal)
    view = FamilyView(s.ground, fam)
    ops = {"interior": f_interior, "closure": f_closure, "derived": f_derived,
           "exterior": f_exterior, "boundary": f_boundary}
    return ops[which](view, a)


def cmd_op(args: argparse.Namespace, out: Output) -> int:
    s, _ = load_space_file(args.file)
    a = parse_set(s.ground, args.set)
    family = parse_class(args.family) if args.family else None
    out(s.fmt(_apply_operator(s, args.which, a, family, args.literal_delta_closure)))
    return 0


def cmd_classify(args: argparse.Namespace, out: Output) -> int:
    s, _ = load_space_file(args.file)
    a = parse_set(s.ground, args.set)
    found = cl.classify(s, a, literal=args.literal_delta_closure, duals=args.duals)
    out(", ".join(c.value for c in found) if found else "(none)")
    return 0


def cmd_families(args: argparse.Namespace, out: Output) -> int:
    s, _ = load_space_file(args.file)
    c = parse_class(args.class_)
    fam = cl.family_of(s, c, literal=args.literal_delta_closure)
    out("{" + ", ".join(s.fmt(m) for m in fam) + "}")
    return 0


def cmd_check(args: argparse.Namespace, out: Output) -> int:
    if args.file is not None and args.enumerated is not None:
        raise UsageError("give either FILE or --enumerated, not both")
    if args.file is not None:
        spaces: Iterable[InfraSpace] = [load_space_file(args.file)[0]]
    elif args.enumerated is not None:
        spaces = enumerate_spaces(EnumConfig(_check_n(args.enumerated)))
    else:
        raise UsageError("need FILE or --enumerated N")
    if args.theorem:
        try:
            entries = [get_entry(t) for t in args.theorem]
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    else:
        entries = registry()
    literal = args.literal_delta_closure
    report = check_all(spaces, entries, literal=literal, jobs=args.jobs, keep_verdicts=bool(args.jsonl))
    if args.jsonl:
        lines = [json.dumps(v.to_json(), ensure_ascii=False) for v in report.verdicts or []]
        if args.jsonl == "-":
            for line in lines:
                out(line)
        else:
            Path(args.jsonl).write_text("".join(line + "\n" for line in lines))
            out(report.table())
    else:
        out(report.table())
    out(f"spaces checked: {report.spaces}")
    if args.strict:
        explicit = bool(args.theorem)
        for s in report.summaries:
            counts = s.expectation is not Expectation.KNOWN_FAIL or explicit
            if counts and s.spaces_failed:
                return 2
    return 0


def _enum_lines(cfg: EnumConfig, jsonl: bool) -> Iterator[str]:
    g = GroundSet.of_size(cfg.n)
    for code in enumerate_encodings(cfg):
        fam = decode_family(code)
        if jsonl:
            yield json.dumps({"n": cfg.n, "opens": [g.names(o) for o in fam]}, separators=(",", ":"))
        else:
            yield "{" + ", ".join(g.format(o) for o in fam) + "}"


def cmd_enumerate(args: argparse.Namespace, out: Output) -> int:
    n = _check_n(args.n)
    shard = parse_shard(args.shard) if args.shard else (0, 1)
    cfg = EnumConfig(n, up_to_iso=args.up_to_iso, count_only=args.count_only, shard=shard)
    if args.count_only:
        out(str(count_spaces(n, jobs=args.jobs, shard=shard, up_to_iso=args.up_to_iso)))
        return 0
    for line in _enum_lines(cfg, args.jsonl):
        out(line)
    return 0


def cmd_hunt(args: argparse.Namespace, out: Output) -> int:
    source, target = parse_class(args.from_), parse_class(args.not_to)
    if source == target:
        raise UsageError("--from and --not-to must differ")
    found = hunt(_spaces_from(args, at_most=True), source, target, literal=args.literal_delta_closure)
    if found is None:
        out("none")
    else:
        s, a = found
        out(f"witness: {s.fmt(a)} in ({s.ground.format(s.full)}, {s.describe()})")
    return 0


def cmd_implications(args: argparse.Namespace, out: Output) -> int:
    pool = OPEN_CLASSES + (CLOSED_CLASSES if args.duals else ())
    matrix = implication_matrix(_spaces_from(args, at_most=True), pool, literal=args.literal_delta_closure)
    if args.dot:
        out(to_dot(matrix).rstrip("\n"))
    elif args.json:
        out(json.dumps(matrix.to_json(), ensure_ascii=False))
    else:
        width = max(len(c.value) for c in pool)
        for c1 in pool:
            holds = [c2.value for c2 in pool if c2 != c1 and matrix.holds(c1, c2)]
            out(f"{c1.value:<{width}} -> {', '.join(holds) if holds else '(nothing else)'}")
        out(f"spaces: {matrix.spaces}")
    return 0


def cmd_xref(args: argparse.Namespace, out: Output) -> int:
    for x in cross_reference():
        target = ", ".join(x.ids) if x.ids else ""
        note = f"  [{x.note}]" if x.note else ""
        out(f"{x.item}: {target}{note}")
    return 0


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="infratop", description="Explore finite infra-topological spaces.")
    p.add_argument("--report", metavar="PATH", help="also write a JSON run report")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def literal_flag(q: argparse.ArgumentParser) -> None:
        q.add_argument("--literal-delta-closure", action="store_true",
                       help="use the meet of regular-open supersets as the delta-closure")

    q = sub.add_parser("validate", help="check that a space file is an infra topology")
    q.add_argument("file")
    q.add_argument("--complete", action="store_true", help="close the family under meets first")
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("op", help="evaluate an operator on a subset")
    q.add_argument("file")
    q.add_argument("--set", required=True, help="comma-separated element names ('' for the empty set)")
    q.add_argument("--which", required=True, choices=OPERATORS)
    q.add_argument("--family", help="use this class's family in place of the opens")
    literal_flag(q)
    q.set_defaults(func=cmd_op)

    q = sub.add_parser("classify", help="list the classes containing a subset")
    q.add_argument("file")
    q.add_argument("--set", required=True)
    q.add_argument("--duals", action="store_true", help="include the closed classes")
    literal_flag(q)
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("families", help="list all members of a class")
    q.add_argument("file")
    q.add_argument("--class", dest="class_", required=True)
    literal_flag(q)
    q.set_defaults(func=cmd_families)

    q = sub.add_parser("check", help="run the theorem registry")
    q.add_argument("file", nargs="?")
    q.add_argument("--enumerated", type=int, metavar="N", help="all labeled spaces on N points")
    q.add_argument("--theorem", action="append", metavar="ID", help="restrict to these ids (repeatable)")
    q.add_argument("--strict", action="store_true", help="exit 2 on any failing verdict")
    q.add_argument("--jsonl", metavar="PATH", help="write one verdict per line ('-' for stdout)")
    q.add_argument("--jobs", type=int, default=1)
    literal_flag(q)
    q.set_defaults(func=cmd_check)

    q = sub.add_parser("enumerate", help="enumerate infra topologies")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--up-to-iso", action="store_true")
    q.add_argument("--count-only", action="store_true")
    q.add_argument("--jsonl", action="store_true")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--shard", metavar="INDEX/TOTAL")
    q.set_defaults(func=cmd_enumerate)

    q = sub.add_parser("hunt", help="find the least witness that one class does not imply another")
    q.add_argument("file", nargs="?")
    q.add_argument("--n", type=int, help="search all spaces with at most N points")
    q.add_argument("--from", dest="from_", required=True)
    q.add_argument("--not-to", required=True)
    literal_flag(q)
    q.set_defaults(func=cmd_hunt)

    q = sub.add_parser("implications", help="empirical implication matrix")
    q.add_argument("file", nargs="?")
    q.add_argument("--n", type=int, help="all spaces with at most N points")
    q.add_argument("--dot", action="store_true", help="emit a DOT digraph")
    q.add_argument("--json", action="store_true", help="emit the matrix as JSON")
    q.add_argument("--duals", action="store_true", help="include the closed classes")
    literal_flag(q)
    q.set_defaults(func=cmd_implications)

    q = sub.add_parser("xref", help="print the theorem cross-reference table")
    q.set_defaults(func=cmd_xref)
    return p


def _echo(argv: list[str]) -> list[str]:
    """The command line without the report destination."""
    out, skip = [], False
    for a in argv:
        if skip:
            skip = False
        elif a == "--report":
            skip = True
        elif not a.startswith("--report="):
            out.append(a)
    return out


def _input_digest(args: argparse.Namespace) -> str:
    h = hashlib.sha256()
    f = getattr(args, "file", None)
    if f is not None and Path(f).is_file():
        h.update(Path(f).read_bytes())
    return h.hexdigest()


def main(argv: Sequence[str] | None = None, *, stdout: TextIO | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "jobs") and args.jobs < 1:
        print("infratop: error: --jobs must be at least 1", file=sys.stderr)
        return 1
    out = Output(stdout or sys.stdout)
    start = time.perf_counter()
    try:
        code = args.func(args, out)
    except (UsageError, ValidationError) as exc:
        print(f"infratop: error: {exc}", file=sys.stderr)
        code = 1
    except ForcedInvariantViolated as exc:
        print(f"infratop: internal error: {exc}", file=sys.stderr)
        code = 3
    if args.report:
        report = {
            "stable": {
                "command": _echo(argv),
                "input_digest": _input_digest(args),
                "exit_code": code,
                "results": out.lines,
            },
            "timing": {"seconds": round(time.perf_counter() - start, 6)},
        }
        Path(args.report).write_text(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
