"""Command line: validate, classify, convert, generate and compare structure documents.

Exit codes: 0 success, 1 negative result (invalid structure, not a groupoid,
no induced morphism), 2 unusable input document, 64 usage error, 66 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .algebra import (
    AlgebraError,
    FinGroup,
    FinInverseSemigroup,
    FinMonoid,
    GroupAction,
    OpenCover,
    brandt_semigroup,
    chain_semilattice,
    cyclic_group,
    free_semilattice,
    symmetric_group,
    symmetric_inverse_monoid,
)
from .bridge import NotAGroupoid, classify, induce_functor_images, to_groupoid, to_link
from .document import (
    DocumentError,
    Structure,
    decode,
    encode,
    parse,
    read_text,
    serialize,
)
from .examples import (
    InvolutiveMagma,
    MagmaConditionError,
    MagmaHypothesisError,
    RelationAction,
    cech,
    codiscrete,
    discrete,
    from_equivalence_relation,
    from_group,
    from_group_action,
    from_inverse_semigroup,
    minimal_non_groupoid,
    relation_action_link,
    relation_action_of_action,
    relation_action_of_group,
    relation_action_of_inverse_semigroup,
    relation_action_of_monoid_hom,
)
from .finset import FinMap, FinSet
from .groupoid import InternalGroupoid, validate_groupoid
from .inv2link import Inv2Link, NoInducedMap, induce_fbar, validate_link
from .verdicts import Report

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_BAD_INPUT = 2
EXIT_USAGE = 64
EXIT_IO = 66


class UsageError(Exception):
    pass


class BadInput(Exception):
    """The input parsed but cannot be used; ``report`` explains why when available."""

    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Output:
    def __init__(self, quiet: bool):
        self.quiet = quiet

    def report(self, report: Report) -> None:
        if not self.quiet:
            sys.stdout.write(report.render())

    def line(self, text: str) -> None:
        if not self.quiet:
            print(text)


def _load(path: str) -> Structure:
    text = read_text(path)
    try:
        return decode(parse(text))
    except (DocumentError, ValueError) as exc:
        raise BadInput(f"{path}: {exc}") from None


def structure_report(obj: Structure) -> Report:
    """The validity report appropriate to the kind of ``obj``."""
    if isinstance(obj, Inv2Link):
        return validate_link(obj)
    if isinstance(obj, InternalGroupoid):
        return validate_groupoid(obj)
    return obj.report()


def as_link(obj: Structure) -> Inv2Link:
    """The link of a structure, validating algebraic inputs on the way."""
    if isinstance(obj, Inv2Link):
        return obj
    if isinstance(obj, InternalGroupoid):
        report = validate_groupoid(obj)
        if not report.ok:
            raise BadInput("groupoid fails its axioms", report)
        return to_link(obj)
    if isinstance(obj, FinMonoid):
        raise BadInput("a monoid alone has no associated link")
    report = obj.report()
    if not report.ok:
        raise BadInput(f"input {type(obj).__name__} is invalid", report)
    try:
        if isinstance(obj, FinGroup):
            return from_group(obj)
        if isinstance(obj, FinInverseSemigroup):
            return from_inverse_semigroup(obj)
        if isinstance(obj, OpenCover):
            return cech(obj)
        if isinstance(obj, GroupAction):
            return from_group_action(obj)
        if isinstance(obj, RelationAction):
            return relation_action_link(obj)
        if isinstance(obj, InvolutiveMagma):
            return obj.link()
    except (AlgebraError, MagmaHypothesisError, MagmaConditionError) as exc:
        raise BadInput(str(exc)) from None
    raise BadInput(f"cannot build a link from {type(obj).__name__}")  # pragma: no cover


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


# Commands

def cmd_validate(args, out: _Output) -> int:
    report = structure_report(_load(args.file))
    out.report(report)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_classify(args, out: _Output) -> int:
    link = as_link(_load(args.file))
    link_report = validate_link(link)
    if not link_report.ok:
        raise BadInput("not an involutive-2-link", link_report)
    report = classify(link)
    out.report(report)
    return EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_convert(args, out: _Output) -> int:
    obj = _load(args.file)
    if args.to == "groupoid" and isinstance(obj, InternalGroupoid):
        result: Structure = obj
    else:
        link = as_link(obj)
        if args.to == "link":
            result = link
        else:
            link_report = validate_link(link)
            if not link_report.ok:
                raise BadInput("not an involutive-2-link", link_report)
            try:
                result = to_groupoid(link)
            except NotAGroupoid as exc:
                out.report(exc.report)
                return EXIT_NEGATIVE
    _emit(serialize(encode(result)), args.output)
    return EXIT_OK


def _read_map(path: str) -> list[int]:
    try:
        data = json.loads(read_text(path))
    except json.JSONDecodeError as exc:
        raise BadInput(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(data, dict) and set(data) == {"table"}:
        data = data["table"]
    if not isinstance(data, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in data):
        raise BadInput(f"{path}: expected a list of indices or {{\"table\": [...]}}")
    return data


def cmd_morphism(args, out: _Output) -> int:
    src, dst = _load(args.src), _load(args.dst)
    table = _read_map(args.map)
    both_groupoids = isinstance(src, InternalGroupoid) and isinstance(dst, InternalGroupoid)
    if both_groupoids:
        for name, G in (("source", src), ("target", dst)):
            r = validate_groupoid(G)
            if not r.ok:
                raise BadInput(f"{name} groupoid fails its axioms", r)
        try:
            f1 = FinMap(src.c1, dst.c1, table)
        except ValueError as exc:
            raise BadInput(f"map: {exc}") from None
        F = induce_functor_images(src, dst, f1)
        if F is None:
            out.line("functor FAIL  # no link morphism over the given arrow map")
            return EXIT_NEGATIVE
        out.line("functor PASS")
        out.line("f0 " + json.dumps(list(F.f0.table)))
        out.line("f1 " + json.dumps(list(F.f1.table)))
        return EXIT_OK
    L1, L2 = as_link(src), as_link(dst)
    for name, L in (("source", L1), ("target", L2)):
        r = validate_link(L)
        if not r.ok:
            raise BadInput(f"{name} is not an involutive-2-link", r)
    try:
        f = FinMap(L1.c1, L2.c1, table)
    except ValueError as exc:
        raise BadInput(f"map: {exc}") from None
    try:
        fbar = induce_fbar(L1, L2, f)
    except NoInducedMap as exc:
        witness = "" if exc.witness is None else f" {L1.c2.label(exc.witness)}"
        out.line(f"link_morphism FAIL{witness}  # {exc}")
        return EXIT_NEGATIVE
    out.line("link_morphism PASS")
    out.line("fbar " + json.dumps(list(fbar.table)))
    return EXIT_OK


# Generators

def _int_list(text: str) -> list[int]:
    text = text.strip()
    return [int(x) for x in text.split(",")] if text else []


def _blocks(text: str) -> list[list[int]]:
    """``"0,1;2"`` -> ``[[0, 1], [2]]``."""
    return [_int_list(part) for part in text.split(";")] if text else []


def _read_table(path: str) -> list[list[int]]:
    """A square table as JSON rows or whitespace-separated text rows."""
    text = read_text(path)
    try:
        rows = json.loads(text)
    except json.JSONDecodeError:
        rows = [[int(x) for x in line.split()] for line in text.splitlines() if line.strip()]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise BadInput(f"{path}: expected a table of rows")
    n = len(rows)
    if any(len(r) != n for r in rows) or any(not isinstance(x, int) or not 0 <= x < n for r in rows for x in r):
        raise BadInput(f"{path}: table must be square with entries in 0..{n - 1}")
    return rows


def group_from_cayley(op: list[list[int]]) -> FinGroup:
    """A group document from a table; missing units or inverses default to 0 and fail validation."""
    n = len(op)
    rn = range(n)
    unit = next((u for u in rn if all(op[u][x] == x == op[x][u] for x in rn)), 0)
    inv = [next((y for y in rn if op[x][y] == unit == op[y][x]), 0) for x in rn]
    return FinGroup(FinSet(n), op, unit, inv)


def _group(args) -> FinGroup:
    if args.cayley:
        return group_from_cayley(_read_table(args.cayley))
    if args.symmetric is not None:
        return symmetric_group(args.symmetric)
    return cyclic_group(args.cyclic)


def _monoid(text: str) -> FinMonoid:
    kind, _, size = text.partition(":")
    try:
        n = int(size)
    except ValueError:
        raise UsageError(f"bad monoid {text!r}; use cyclic:N or chain:N") from None
    if kind == "cyclic":
        return cyclic_group(n).as_monoid()
    if kind == "chain":
        S = chain_semilattice(n)
        return FinMonoid(S.carrier, S.op, n - 1)
    raise UsageError(f"bad monoid {text!r}; use cyclic:N or chain:N")


def _inverse_semigroup(args) -> FinInverseSemigroup:
    if args.symmetric_inverse is not None:
        return symmetric_inverse_monoid(args.symmetric_inverse)
    if args.chain is not None:
        return chain_semilattice(args.chain)
    if args.free_semilattice is not None:
        return free_semilattice(args.free_semilattice)
    if args.brandt is not None:
        return brandt_semigroup(args.brandt)
    if args.cayley:
        op = _read_table(args.cayley)
        n = len(op)
        inv = [next((y for y in range(n) if op[op[x][y]][x] == x and op[op[y][x]][y] == y), 0)
               for x in range(n)]
        return FinInverseSemigroup(FinSet(n), op, inv)
    return cyclic_group(args.cyclic).as_inverse_semigroup()


def _generate(args) -> Structure:
    fam = args.family
    if fam == "discrete":
        return discrete(args.size)
    if fam == "codiscrete":
        return codiscrete(args.size)
    if fam == "minimal-non-groupoid":
        return minimal_non_groupoid()
    if fam == "equivalence-relation":
        blocks = _blocks(args.blocks)
        points = sorted(x for b in blocks for x in b)
        size = args.size if args.size is not None else len(points)
        R = {(x, y) for b in blocks for x in b for y in b}
        R |= {(x, x) for x in range(size)}
        return from_equivalence_relation(size, R)
    if fam == "cech":
        return OpenCover(FinSet(args.base), tuple(frozenset(p) for p in _blocks(args.parts)))
    if fam == "group":
        return _group(args)
    if fam == "action":
        G = cyclic_group(args.cyclic)
        p = _int_list(args.generator) if args.generator else list(range(args.size))
        if len(p) != args.size or any(not 0 <= x < args.size for x in p):
            raise UsageError("--generator must list the image of each point")
        xi, row = [], list(range(args.size))
        for _ in range(G.order):
            xi.append(row)
            row = [p[x] for x in row]
        return GroupAction(G, FinSet(args.size), xi)
    if fam == "group-monoid-hom":
        G = cyclic_group(args.cyclic)
        M = _monoid(args.monoid)
        h = _int_list(args.hom) if args.hom else [M.unit] * G.order
        if len(h) != G.order or any(not 0 <= x < M.order for x in h):
            raise UsageError("--hom must list one monoid element per group element")
        return relation_action_of_monoid_hom(G, M, h)
    if fam == "inverse-semigroup":
        return _inverse_semigroup(args)
    if fam == "relation-action":
        base = _load(args.of)
        if isinstance(base, FinGroup):
            return relation_action_of_group(base)
        if isinstance(base, GroupAction):
            return relation_action_of_action(base)
        if isinstance(base, FinInverseSemigroup):
            return relation_action_of_inverse_semigroup(base)
        if isinstance(base, RelationAction):
            return base
        raise BadInput("--of must be a group, action or inverse_semigroup document")
    if fam == "magma":
        if args.cayley:
            op = _read_table(args.cayley)
            inv = _int_list(args.inv) if args.inv else list(range(len(op)))
            if len(inv) != len(op) or any(not 0 <= x < len(op) for x in inv):
                raise UsageError("--inv must list one element per carrier element")
            return InvolutiveMagma(FinSet(len(op)), op, inv)
        G = cyclic_group(args.cyclic)
        return InvolutiveMagma(G.carrier, G.op, G.inv)
    raise UsageError(f"unknown family {fam!r}")  # pragma: no cover


def cmd_gen(args, out: _Output) -> int:
    obj = _generate(args)
    if args.link:
        obj = as_link(obj)
    _emit(serialize(encode(obj)), args.output)
    return EXIT_OK


FAMILIES = ("discrete", "codiscrete", "equivalence-relation", "cech", "group", "action",
            "group-monoid-hom", "inverse-semigroup", "relation-action", "magma",
            "minimal-non-groupoid")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="invlink", description=__doc__.splitlines()[0])
    parser.add_argument("--quiet", action="store_true", help="print no report, only set the exit code")
    common = _Parser(add_help=False)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS,
                        help="print no report, only set the exit code")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check a document against the laws of its kind")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("classify", parents=[common], help="decide whether a link comes from a groupoid")
    p.add_argument("file")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("convert", parents=[common], help="convert to a link or a groupoid")
    p.add_argument("--to", choices=("link", "groupoid"), required=True)
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_convert)

    p = sub.add_parser("gen", parents=[common], help="generate a document for a standard family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--size", type=int, default=None)
    p.add_argument("--blocks", default="", help='partition blocks, e.g. "0,1;2"')
    p.add_argument("--base", type=int, default=0, help="size of the cover's base set")
    p.add_argument("--parts", default="", help='cover parts, e.g. "0,1;1,2"')
    p.add_argument("--cyclic", type=int, default=2, help="order of a cyclic group")
    p.add_argument("--symmetric", type=int, default=None, help="degree of a symmetric group")
    p.add_argument("--cayley", help="file holding a square operation table")
    p.add_argument("--generator", help="permutation by which 1 acts, e.g. \"1,0\"")
    p.add_argument("--monoid", default="chain:2", help="cyclic:N or chain:N")
    p.add_argument("--hom", help="images of the group elements in the monoid")
    p.add_argument("--symmetric-inverse", type=int, default=None)
    p.add_argument("--chain", type=int, default=None)
    p.add_argument("--free-semilattice", type=int, default=None)
    p.add_argument("--brandt", type=int, default=None)
    p.add_argument("--of", help="group, action or inverse_semigroup document to specialise")
    p.add_argument("--inv", help="involution table for a magma")
    p.add_argument("--link", action="store_true", help="emit the associated link instead")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("morphism", parents=[common], help="induce a morphism from a map on arrows")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--map", required=True, help="JSON list of arrow images")
    p.set_defaults(run=cmd_morphism)
    return parser


def _check_gen_args(args) -> None:
    if args.command != "gen":
        return
    if args.family in ("discrete", "codiscrete", "action") and args.size is None:
        raise UsageError(f"gen {args.family} needs --size")
    if args.family == "relation-action" and not args.of:
        raise UsageError("gen relation-action needs --of")
    if args.size is not None and args.size < 0:
        raise UsageError("--size must be non-negative")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = _Output(args.quiet)
    try:
        _check_gen_args(args)
        return args.run(args, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"invlink: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BadInput as exc:
        print(f"invlink: {exc}", file=sys.stderr)
        if exc.report is not None:
            out.report(exc.report)
        return EXIT_BAD_INPUT
    except (AlgebraError, MagmaHypothesisError, MagmaConditionError) as exc:
        print(f"invlink: {exc}", file=sys.stderr)
        if getattr(exc, "report", None) is not None:
            out.report(exc.report)
        return EXIT_BAD_INPUT
    except OSError as exc:
        print(f"invlink: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
