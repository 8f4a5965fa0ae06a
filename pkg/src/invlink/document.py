"""A self-describing JSON document format for every structure the package handles.

A document declares named finite sets (``size`` and optional ``labels``),
named maps between them (zero-based index ``table``) and a ``structure``
object binding the fields of its ``kind`` to those names.  Binary operations
are maps out of a declared set of size ``n*n`` read row-major, cover parts are
injective inclusion maps, and a relation is a set with two projection maps.

The canonical text is ``json.dumps(..., sort_keys=True, indent=2)`` plus a
trailing newline, so ``serialize(parse(t))`` is a normal form of ``t``.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Union

from .algebra import FinGroup, FinInverseSemigroup, FinMonoid, GroupAction, OpenCover
from .examples import InvolutiveMagma, RelationAction
from .finset import FinMap, FinSet, ShapeError
from .groupoid import InternalGroupoid
from .inv2link import Inv2Link

FORMAT_VERSION = "1"

# field kinds: "set" and "map" name declarations, "elem" is an index, "maps" a list of map names
SCHEMAS: dict[str, dict[str, str]] = {
    "link": {"m": "map", "theta": "map", "phi": "map"},
    "groupoid": {k: "map" for k in ("d", "c", "e", "i", "pi1", "pi2", "m")},
    "group": {"carrier": "set", "op": "map", "unit": "elem", "inv": "map"},
    "monoid": {"carrier": "set", "op": "map", "unit": "elem"},
    "inverse_semigroup": {"carrier": "set", "op": "map", "inv": "map"},
    "cover": {"base": "set", "parts": "maps"},
    "action": {"carrier": "set", "op": "map", "unit": "elem", "inv": "map",
               "space": "set", "act": "map"},
    "relation_action": {"carrier": "set", "op": "map", "inv": "map", "space": "set",
                        "base": "set", "g": "map", "act": "map", "relation": "set",
                        "relation_s": "map", "relation_x": "map"},
    "magma": {"carrier": "set", "op": "map", "inv": "map"},
}
KINDS = tuple(SCHEMAS)

Structure = Union[Inv2Link, InternalGroupoid, FinGroup, FinMonoid, FinInverseSemigroup,
                  OpenCover, GroupAction, RelationAction, InvolutiveMagma]


class DocumentError(ValueError):
    pass


class DocumentSyntaxError(DocumentError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DocumentSemanticError(DocumentError):
    """``name`` is the offending set, map or structure field."""

    def __init__(self, name: str, message: str):
        super().__init__(f"{name}: {message}")
        self.name = name


@dataclass(frozen=True)
class SetDecl:
    size: int
    labels: tuple[str, ...] | None = None


@dataclass(frozen=True)
class MapDecl:
    dom: str
    cod: str
    table: tuple[int, ...]


@dataclass(frozen=True)
class StructureDocument:
    kind: str
    sets: dict[str, SetDecl]
    maps: dict[str, MapDecl]
    structure: dict[str, Any]
    format_version: str = field(default=FORMAT_VERSION)

    def finset(self, name: str) -> FinSet:
        s = self.sets[name]
        return FinSet(s.size, s.labels)

    def finmap(self, name: str) -> FinMap:
        f = self.maps[name]
        return FinMap(self.finset(f.dom), self.finset(f.cod), f.table)

    def to_object(self) -> dict:
        sets = {}
        for name, s in self.sets.items():
            sets[name] = {"size": s.size}
            if s.labels is not None:
                sets[name]["labels"] = list(s.labels)
        maps = {name: {"dom": f.dom, "cod": f.cod, "table": list(f.table)}
                for name, f in self.maps.items()}
        structure = {k: list(v) if isinstance(v, tuple) else v for k, v in self.structure.items()}
        return {"format_version": self.format_version, "kind": self.kind,
                "sets": sets, "maps": maps, "structure": structure}


def _no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _keys(obj, name: str, required: set[str], optional: set[str] = frozenset()) -> None:
    if not isinstance(obj, dict):
        raise DocumentSemanticError(name, "expected an object")
    missing = required - obj.keys()
    if missing:
        raise DocumentSemanticError(name, f"missing field {sorted(missing)[0]!r}")
    unknown = obj.keys() - required - optional
    if unknown:
        raise DocumentSemanticError(name, f"unknown field {sorted(unknown)[0]!r}")


def from_object(obj: Any) -> StructureDocument:
    _keys(obj, "document", {"format_version", "kind", "sets", "maps", "structure"})
    if obj["format_version"] != FORMAT_VERSION:
        raise DocumentSemanticError("format_version", f"unsupported version {obj['format_version']!r}")
    kind = obj["kind"]
    if kind not in SCHEMAS:
        raise DocumentSemanticError("kind", f"unknown kind {kind!r}")
    if not isinstance(obj["sets"], dict):
        raise DocumentSemanticError("sets", "expected an object")
    if not isinstance(obj["maps"], dict):
        raise DocumentSemanticError("maps", "expected an object")

    sets = {}
    for name, s in obj["sets"].items():
        _keys(s, name, {"size"}, {"labels"})
        if not _is_int(s["size"]) or s["size"] < 0:
            raise DocumentSemanticError(name, "size must be a non-negative integer")
        labels = s.get("labels")
        if labels is not None:
            if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
                raise DocumentSemanticError(name, "labels must be a list of strings")
            if len(labels) != s["size"] or len(set(labels)) != len(labels):
                raise DocumentSemanticError(name, "labels must be distinct and match the size")
            labels = tuple(labels)
        sets[name] = SetDecl(s["size"], labels)

    maps = {}
    for name, f in obj["maps"].items():
        _keys(f, name, {"dom", "cod", "table"})
        for end in ("dom", "cod"):
            if not isinstance(f[end], str) or f[end] not in sets:
                raise DocumentSemanticError(name, f"{end} {f[end]!r} is not a declared set")
        table = f["table"]
        if not isinstance(table, list) or not all(_is_int(x) for x in table):
            raise DocumentSemanticError(name, "table must be a list of integers")
        if len(table) != sets[f["dom"]].size:
            raise DocumentSemanticError(
                name, f"table has {len(table)} entries, domain {f['dom']} has {sets[f['dom']].size}")
        n = sets[f["cod"]].size
        bad = next((k for k, x in enumerate(table) if not 0 <= x < n), None)
        if bad is not None:
            raise DocumentSemanticError(name, f"entry {bad} = {table[bad]} is out of range for {f['cod']}")
        maps[name] = MapDecl(f["dom"], f["cod"], tuple(table))

    schema = SCHEMAS[kind]
    _keys(obj["structure"], "structure", set(schema))
    structure: dict[str, Any] = {}
    for key, what in schema.items():
        ref = obj["structure"][key]
        where = f"structure.{key}"
        if what == "set":
            if not isinstance(ref, str) or ref not in sets:
                raise DocumentSemanticError(where, f"{ref!r} is not a declared set")
        elif what == "map":
            if not isinstance(ref, str) or ref not in maps:
                raise DocumentSemanticError(where, f"{ref!r} is not a declared map")
        elif what == "maps":
            if not isinstance(ref, list) or any(not isinstance(r, str) or r not in maps for r in ref):
                raise DocumentSemanticError(where, "expected a list of declared maps")
            ref = tuple(ref)
        elif what == "elem" and not _is_int(ref):
            raise DocumentSemanticError(where, "expected an element index")
        structure[key] = ref
    return StructureDocument(kind, sets, maps, structure, obj["format_version"])


def parse(text: str) -> StructureDocument:
    try:
        obj = json.loads(text, object_pairs_hook=_no_duplicates)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise DocumentSyntaxError(str(exc), 1, 1) from None
    return from_object(obj)


def serialize(doc: StructureDocument) -> str:
    return json.dumps(doc.to_object(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def canonical(text: str) -> str:
    return serialize(parse(text))


def read_text(path: str) -> str:
    """Read ``path``, or standard input for ``-``."""
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def load(path: str) -> StructureDocument:
    return parse(read_text(path))


# Encoding structures as documents.

class _Builder:
    def __init__(self):
        self.sets: dict[str, SetDecl] = {}
        self.maps: dict[str, MapDecl] = {}

    def set(self, name: str, X: FinSet) -> str:
        self.sets[name] = SetDecl(X.size, X.labels)
        return name

    def map(self, name: str, f: FinMap, dom: str, cod: str) -> str:
        self.maps[name] = MapDecl(dom, cod, f.table)
        return name

    def raw(self, name: str, table, dom: str, cod: str) -> str:
        self.maps[name] = MapDecl(dom, cod, tuple(int(x) for x in table))
        return name

    def binop(self, name: str, op, carrier: str) -> str:
        n = self.sets[carrier].size
        pairs = self.set(f"{carrier}x{carrier}", FinSet(n * n))
        return self.raw(name, [x for row in op for x in row], pairs, carrier)

    def doc(self, kind: str, structure: dict) -> StructureDocument:
        return StructureDocument(kind, self.sets, self.maps, structure)


def encode(obj: Structure) -> StructureDocument:
    b = _Builder()
    if isinstance(obj, Inv2Link):
        b.set("C1", obj.c1)
        b.set("C2", obj.c2)
        return b.doc("link", {"m": b.map("m", obj.m, "C2", "C1"),
                              "theta": b.map("theta", obj.theta, "C2", "C2"),
                              "phi": b.map("phi", obj.phi, "C2", "C2")})
    if isinstance(obj, InternalGroupoid):
        for name, X in (("C0", obj.c0), ("C1", obj.c1), ("C2", obj.c2)):
            b.set(name, X)
        ends = {"d": ("C1", "C0"), "c": ("C1", "C0"), "e": ("C0", "C1"), "i": ("C1", "C1"),
                "pi1": ("C2", "C1"), "pi2": ("C2", "C1"), "m": ("C2", "C1")}
        return b.doc("groupoid", {k: b.map(k, getattr(obj, k), *ends[k]) for k in ends})
    if isinstance(obj, FinGroup):
        b.set("G", obj.carrier)
        return b.doc("group", {"carrier": "G", "op": b.binop("op", obj.op, "G"), "unit": obj.unit,
                               "inv": b.raw("inv", obj.inv, "G", "G")})
    if isinstance(obj, FinMonoid):
        b.set("M", obj.carrier)
        return b.doc("monoid", {"carrier": "M", "op": b.binop("op", obj.op, "M"), "unit": obj.unit})
    if isinstance(obj, FinInverseSemigroup):
        b.set("S", obj.carrier)
        return b.doc("inverse_semigroup", {"carrier": "S", "op": b.binop("op", obj.op, "S"),
                                           "inv": b.raw("inv", obj.inv, "S", "S")})
    if isinstance(obj, InvolutiveMagma):
        b.set("X", obj.carrier)
        return b.doc("magma", {"carrier": "X", "op": b.binop("op", obj.op, "X"),
                               "inv": b.raw("inv", obj.inv, "X", "X")})
    if isinstance(obj, OpenCover):
        b.set("X", obj.base)
        parts = []
        for k, part in enumerate(obj.parts):
            U = b.set(f"U{k}", FinSet(len(part)))
            parts.append(b.raw(f"u{k}", sorted(part), U, "X"))
        return b.doc("cover", {"base": "X", "parts": tuple(parts)})
    if isinstance(obj, GroupAction):
        G = obj.group
        b.set("G", G.carrier)
        b.set("X", obj.carrier)
        b.set("GxX", FinSet(G.order * obj.carrier.size))
        return b.doc("action", {
            "carrier": "G", "op": b.binop("op", G.op, "G"), "unit": G.unit,
            "inv": b.raw("inv", G.inv, "G", "G"), "space": "X",
            "act": b.raw("act", [x for row in obj.xi for x in row], "GxX", "X")})
    if isinstance(obj, RelationAction):
        S = obj.S
        b.set("S", S.carrier)
        b.set("X", obj.X)
        b.set("B", obj.B)
        b.set("BxX", FinSet(obj.B.size * obj.X.size))
        pairs = sorted(obj.R)
        b.set("R", FinSet(len(pairs)))
        return b.doc("relation_action", {
            "carrier": "S", "op": b.binop("op", S.op, "S"), "inv": b.raw("inv", S.inv, "S", "S"),
            "space": "X", "base": "B", "g": b.raw("g", obj.g, "S", "B"),
            "act": b.raw("act", [x for row in obj.phi for x in row], "BxX", "X"),
            "relation": "R",
            "relation_s": b.raw("relation_s", [s for s, _ in pairs], "R", "S"),
            "relation_x": b.raw("relation_x", [x for _, x in pairs], "R", "X")})
    raise TypeError(f"cannot encode {type(obj).__name__}")


# Decoding documents into structures.

def _expect(doc: StructureDocument, field_: str, dom: str | None = None, cod: str | None = None,
            dom_size: int | None = None) -> MapDecl:
    name = doc.structure[field_]
    f = doc.maps[name]
    if dom is not None and f.dom != dom:
        raise DocumentSemanticError(name, f"domain must be {dom}, not {f.dom}")
    if cod is not None and f.cod != cod:
        raise DocumentSemanticError(name, f"codomain must be {cod}, not {f.cod}")
    if dom_size is not None and doc.sets[f.dom].size != dom_size:
        raise DocumentSemanticError(name, f"domain must have {dom_size} elements")
    return f


def _rows(table: tuple[int, ...], width: int) -> tuple[tuple[int, ...], ...]:
    if width == 0:
        return ()
    return tuple(table[k:k + width] for k in range(0, len(table), width))


def _binop(doc: StructureDocument, carrier: str):
    n = doc.sets[carrier].size
    return _rows(_expect(doc, "op", cod=carrier, dom_size=n * n).table, n)


def _unary(doc: StructureDocument, field_: str, carrier: str) -> tuple[int, ...]:
    return _expect(doc, field_, dom=carrier, cod=carrier).table


def _unit(doc: StructureDocument, carrier: str) -> int:
    u = doc.structure["unit"]
    if not 0 <= u < doc.sets[carrier].size:
        raise DocumentSemanticError("structure.unit", f"{u} is not an element of {carrier}")
    return u


def decode(doc: StructureDocument) -> Structure:
    """Build the structure a document describes; shape problems name the offending map."""
    s, kind = doc.structure, doc.kind
    try:
        if kind == "link":
            return Inv2Link(doc.finmap(s["m"]), doc.finmap(s["theta"]), doc.finmap(s["phi"]))
        if kind == "groupoid":
            return InternalGroupoid(*(doc.finmap(s[k]) for k in ("d", "c", "e", "i", "pi1", "pi2", "m")))
    except ShapeError as exc:
        raise DocumentSemanticError("structure", str(exc)) from None
    if kind == "cover":
        base = s["base"]
        parts = []
        for name in s["parts"]:
            f = doc.maps[name]
            if f.cod != base:
                raise DocumentSemanticError(name, f"part inclusion must land in {base}")
            if len(set(f.table)) != len(f.table):
                raise DocumentSemanticError(name, "part inclusion is not injective")
            parts.append(frozenset(f.table))
        return OpenCover(doc.finset(base), tuple(parts))

    carrier = s["carrier"]
    X = doc.finset(carrier)
    op = _binop(doc, carrier)
    if kind == "group":
        return FinGroup(X, op, _unit(doc, carrier), _unary(doc, "inv", carrier))
    if kind == "monoid":
        return FinMonoid(X, op, _unit(doc, carrier))
    if kind == "inverse_semigroup":
        return FinInverseSemigroup(X, op, _unary(doc, "inv", carrier))
    if kind == "magma":
        return InvolutiveMagma(X, op, _unary(doc, "inv", carrier))
    if kind == "action":
        G = FinGroup(X, op, _unit(doc, carrier), _unary(doc, "inv", carrier))
        space = s["space"]
        n = doc.sets[space].size
        xi = _expect(doc, "act", cod=space, dom_size=G.order * n).table
        return GroupAction(G, doc.finset(space), _rows(xi, n) if n else ((),) * G.order)
    if kind == "relation_action":
        S = FinInverseSemigroup(X, op, _unary(doc, "inv", carrier))
        space, base, rel = s["space"], s["base"], s["relation"]
        n, nb = doc.sets[space].size, doc.sets[base].size
        g = _expect(doc, "g", dom=carrier, cod=base).table
        act = _expect(doc, "act", cod=space, dom_size=nb * n).table
        rs = _expect(doc, "relation_s", dom=rel, cod=carrier).table
        rx = _expect(doc, "relation_x", dom=rel, cod=space).table
        R = list(zip(rs, rx))
        if len(set(R)) != len(R):
            raise DocumentSemanticError(rel, "relation has repeated pairs")
        phi = _rows(act, n) if n else ((),) * nb
        return RelationAction(S, doc.finset(space), doc.finset(base), g, phi, frozenset(R))
    raise DocumentSemanticError("kind", f"unknown kind {kind!r}")  # pragma: no cover


def fixture_paths() -> list[Path]:
    """The documents shipped with the package."""
    return sorted((Path(__file__).parent / "fixtures").glob("*.json"))


def load_fixture(name: str) -> StructureDocument:
    return parse((Path(__file__).parent / "fixtures" / name).read_text(encoding="utf-8"))
