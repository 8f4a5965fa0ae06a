from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invlink.algebra import (
    GroupAction,
    OpenCover,
    cyclic_group,
    small_monoids,
    symmetric_inverse_monoid,
)
from invlink.document import (
    KINDS,
    DocumentSemanticError,
    DocumentSyntaxError,
    canonical,
    decode,
    encode,
    fixture_paths,
    load,
    load_fixture,
    parse,
    serialize,
)
from invlink.examples import (
    InvolutiveMagma,
    group_groupoid,
    minimal_non_groupoid,
    relation_action_of_action,
    relation_action_of_inverse_semigroup,
)
from invlink.finset import FinSet
from invlink.groupoid import discrete_groupoid
from suite_instances import suite

LINK_TEXT = """{
  "format_version": "1",
  "kind": "link",
  "sets": {"C1": {"size": 2}, "C2": {"size": 3, "labels": ["1", "2", "3"]}},
  "maps": {
    "m": {"dom": "C2", "cod": "C1", "table": [0, 1, 0]},
    "theta": {"dom": "C2", "cod": "C2", "table": [1, 0, 2]},
    "phi": {"dom": "C2", "cod": "C2", "table": [0, 2, 1]}
  },
  "structure": {"m": "m", "theta": "theta", "phi": "phi"}
}
"""


def edited(text: str, fn) -> str:
    obj = json.loads(text)
    fn(obj)
    return json.dumps(obj)


def test_parse_and_decode_a_link():
    doc = parse(LINK_TEXT)
    assert doc.kind == "link"
    assert doc.sets["C2"].labels == ("1", "2", "3")
    assert decode(doc) == minimal_non_groupoid()


def test_canonical_form_is_stable():
    text = canonical(LINK_TEXT)
    assert text == serialize(parse(text))
    assert text.endswith("}\n")
    assert json.loads(text) == json.loads(LINK_TEXT)
    assert text == serialize(encode(minimal_non_groupoid()))


def test_syntax_errors_carry_a_position():
    with pytest.raises(DocumentSyntaxError) as info:
        parse('{\n  "kind": "link",\n  "sets": {,}\n}')
    assert (info.value.line, info.value.column) == (3, 12)
    assert str(info.value).startswith("line 3, column 12")


def test_duplicate_keys_are_rejected():
    with pytest.raises(DocumentSyntaxError, match="duplicate key 'kind'"):
        parse('{"kind": "link", "kind": "group"}')


def test_out_of_range_entry_names_the_map():
    text = edited(LINK_TEXT, lambda o: o["maps"]["theta"].update(table=[1, 0, 3]))
    with pytest.raises(DocumentSemanticError) as info:
        parse(text)
    assert info.value.name == "theta"
    assert "entry 2 = 3" in str(info.value)


@pytest.mark.parametrize("change,name", [
    (lambda o: o["maps"]["m"].update(extra=1), "m"),
    (lambda o: o.update(colour="red"), "document"),
    (lambda o: o["maps"]["m"].update(cod="C9"), "m"),
    (lambda o: o["structure"].update(theta="nope"), "structure.theta"),
    (lambda o: o["structure"].pop("phi"), "structure"),
    (lambda o: o.update(kind="ring"), "kind"),
    (lambda o: o.update(format_version="2"), "format_version"),
    (lambda o: o["sets"]["C1"].update(size=-1), "C1"),
    (lambda o: o["sets"]["C2"].update(labels=["1", "1", "3"]), "C2"),
    (lambda o: o["maps"]["m"].update(table=[0, 1]), "m"),
    (lambda o: o["structure"].update(m=3), "structure.m"),
])
def test_semantic_errors_name_the_culprit(change, name):
    with pytest.raises(DocumentSemanticError) as info:
        parse(edited(LINK_TEXT, change))
    assert info.value.name == name


def test_decode_checks_shapes():
    text = edited(LINK_TEXT, lambda o: o["maps"]["theta"].update(cod="C1", table=[1, 0, 1]))
    with pytest.raises(DocumentSemanticError) as info:
        decode(parse(text))
    assert info.value.name == "structure"


def test_group_document_shape_errors_name_the_map():
    doc = encode(cyclic_group(2)).to_object()
    doc["maps"]["inv"]["dom"] = "GxG"
    doc["maps"]["inv"]["table"] = [0, 1, 1, 0]
    with pytest.raises(DocumentSemanticError) as info:
        decode(parse(json.dumps(doc)))
    assert info.value.name == "inv"
    doc = encode(cyclic_group(2)).to_object()
    doc["structure"]["unit"] = 5
    with pytest.raises(DocumentSemanticError, match="unit"):
        decode(parse(json.dumps(doc)))


def test_cover_parts_must_be_injective():
    doc = encode(OpenCover(FinSet(3), ({0, 1},))).to_object()
    doc["maps"]["u0"]["table"] = [1, 1]
    with pytest.raises(DocumentSemanticError) as info:
        decode(parse(json.dumps(doc)))
    assert info.value.name == "u0"


@pytest.mark.parametrize("path", fixture_paths(), ids=lambda p: p.name)
def test_fixtures_are_canonical(path):
    text = path.read_text(encoding="utf-8")
    assert canonical(text) == text
    decode(load(str(path)))


def test_fixture_lookup():
    assert decode(load_fixture("minimal_non_groupoid.json")) == minimal_non_groupoid()


STRUCTURES = [
    minimal_non_groupoid(),
    group_groupoid(cyclic_group(3)),
    discrete_groupoid(2),
    cyclic_group(3),
    small_monoids(2)[1],
    symmetric_inverse_monoid(2),
    InvolutiveMagma(FinSet(2), ((0, 1), (1, 0)), (0, 1)),
    OpenCover(FinSet(3), ({0, 1}, {1, 2}, set())),
    GroupAction(cyclic_group(2), FinSet(2), ((0, 1), (1, 0))),
    GroupAction(cyclic_group(2), FinSet(0), ((), ())),
    relation_action_of_action(GroupAction(cyclic_group(2), FinSet(2), ((0, 1), (1, 0)))),
    relation_action_of_inverse_semigroup(symmetric_inverse_monoid(2)),
]


@pytest.mark.parametrize("obj", STRUCTURES, ids=lambda o: type(o).__name__)
def test_encode_decode_round_trip(obj):
    doc = encode(obj)
    assert doc.kind in KINDS
    again = parse(serialize(doc))
    assert again == doc
    assert decode(again) == obj


def test_every_kind_is_covered():
    assert {encode(o).kind for o in STRUCTURES} == set(KINDS)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(suite()))
def test_suite_links_round_trip(inst):
    assert decode(parse(serialize(encode(inst.link)))) == inst.link
