import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ddfdesign.designs import develop, make_design
from ddfdesign.families import build_family, davis_family
from ddfdesign.serialize import (
    FormatError,
    design_from_json,
    design_to_json,
    dumps,
    family_from_json,
    family_to_json,
    load_schema,
    read_json,
)

from test_families import SWEEP

jsonschema = pytest.importorskip("jsonschema")


@pytest.mark.parametrize("kind,kw,shape", SWEEP[::3])
def test_family_round_trip(kind, kw, shape):
    fam = build_family(kind, **kw)
    data = json.loads(dumps(family_to_json(fam)))
    jsonschema.validate(data, load_schema("family"))
    back = family_from_json(data)
    assert back.blocks == fam.blocks
    assert back.group.describe() == fam.group.describe()
    assert dumps(family_to_json(back)) == dumps(family_to_json(fam))


def test_design_round_trip():
    d = develop(davis_family(2, 2))
    data = json.loads(dumps(design_to_json(d, 2)))
    jsonschema.validate(data, load_schema("design"))
    back = design_from_json(data)
    assert back.blocks == d.blocks and back.v == d.v
    assert back.group is not None and back.group.order == 16


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 12).flatmap(
    lambda v: st.tuples(st.just(v), st.lists(st.sets(st.integers(0, v - 1), min_size=2, max_size=2), max_size=10))
))
def test_plain_design_round_trip(case):
    v, blocks = case
    d = make_design(v, [tuple(sorted(b)) for b in blocks])
    back = design_from_json(json.loads(dumps(design_to_json(d))))
    assert back.blocks == d.blocks and back.group is None


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}\n'


def test_rejects_bad_documents(tmp_path):
    fam = family_to_json(davis_family(2, 2))
    with pytest.raises(FormatError):
        family_from_json(dict(fam, type="design"))
    with pytest.raises(FormatError):
        family_from_json(dict(fam, blocks=[[0, 99]]))
    bad_mod = json.loads(json.dumps(fam))
    bad_mod["group"]["modulus"] = [3, 3, 1]
    with pytest.raises(FormatError):
        family_from_json(bad_mod)
    d = design_to_json(develop(davis_family(2, 2)))
    with pytest.raises(FormatError):
        design_from_json(dict(d, v=15))
    with pytest.raises(FormatError):
        design_from_json({"type": "family"})
    path = tmp_path / "x.json"
    path.write_text("{not json")
    with pytest.raises(FormatError):
        read_json(path)
    with pytest.raises(FormatError):
        read_json(tmp_path / "missing.json")


@pytest.mark.parametrize("name", ["family", "design", "verify", "profile", "rank", "iso", "witness", "aut", "reproduce"])
def test_schemas_are_valid(name):
    jsonschema.Draft202012Validator.check_schema(load_schema(name))
