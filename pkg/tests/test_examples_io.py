import json
import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from tambara.examples_io import (InvalidInput, InvalidTruncation, ParseError, SchemaError, builtin_bundles,
                                 bundle_from_json, bundle_to_json, bundles_equal, check_group, fmt_q,
                                 gen_commutative_algebra, gen_truncated_module, linearize, load_bundle,
                                 load_fixture, loads_bundle, parse_q, random_bundle, save_bundle, truncated_bundle)
from tambara.fincat import validate_bundle

DATA = Path(__file__).parent / "data"
FIXTURES = ["Z02", "Z03", "kZ02", "Z2", "unit", "max2", "dual"]


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_matches_generator(name):
    assert bundles_equal(load_fixture(f"{name}.json"), builtin_bundles()[name])


def test_hand_written_fixture_matches_generator():
    hand = load_fixture("Z02_Z1_hand.json")
    gen = truncated_bundle(2, [1])
    assert validate_bundle(hand).ok
    a, b = hand.modules["Z1"], gen.modules["Z1"]
    assert hand.category.dims == gen.category.dims
    assert hand.monoidal.tensor_obj == gen.monoidal.tensor_obj
    assert a.act_obj == b.act_obj and a.cat.dims == b.cat.dims
    assert hand.generators["Z1"] == [0]


@pytest.mark.parametrize("name", FIXTURES)
def test_json_round_trip(name, tmp_path):
    b = builtin_bundles()[name]
    save_bundle(b, tmp_path / "b.json")
    assert bundles_equal(load_bundle(tmp_path / "b.json"), b)
    assert bundle_to_json(bundle_from_json(bundle_to_json(b))) == bundle_to_json(b)


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_random_bundle_round_trip(seed):
    b = random_bundle(random.Random(seed))
    assert bundles_equal(loads_bundle(json.dumps(bundle_to_json(b))), b)


def test_missing_composition_entry():
    with pytest.raises(SchemaError) as e:
        load_bundle(DATA / "corrupt_missing_comp.json")
    assert "[0, 1, 2]" in str(e.value) and e.value.pointer == "/comp"


def test_syntax_error_has_position():
    with pytest.raises(ParseError) as e:
        load_bundle(DATA / "bad_syntax.json")
    assert e.value.line is not None


def test_corrupt_associativity_loads_but_fails_validation():
    b = load_bundle(DATA / "corrupt_assoc.json")
    rep = validate_bundle(b)
    assert not rep.ok
    assert any(f.witness == (0, 1, 2, 3) for f in rep.failures)


def test_schema_rejects_wrong_base():
    data = bundle_to_json(builtin_bundles()["Z02"])
    data["base"] = "Int"
    with pytest.raises(SchemaError):
        bundle_from_json(data)


def test_rationals_round_trip():
    for x in [Fraction(0), Fraction(3), Fraction(-7, 4), Fraction(1, 3)]:
        assert parse_q(fmt_q(x), "/x") == x
    with pytest.raises((ParseError, SchemaError)):
        parse_q("one half", "/x")


def test_truncation_guards():
    with pytest.raises(InvalidTruncation):
        gen_truncated_module(2, 3)
    with pytest.raises(InvalidTruncation):
        truncated_bundle(-1, [0])


def test_non_commutative_algebra_rejected():
    # basis 1, a, b with ab = a, ba = 0
    mult = [[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [0, 0, 0], [0, 1, 0]],
            [[0, 0, 1], [0, 0, 0], [0, 0, 0]]]
    with pytest.raises(InvalidInput):
        gen_commutative_algebra(mult, [1, 0, 0])


def test_group_check():
    els = [0, 1]
    assert check_group(els, {(a, b): (a + b) % 2 for a in els for b in els}) == 0
    with pytest.raises(InvalidInput):
        check_group(els, {(a, b): 0 for a in els for b in els})


def test_linearize_only_bool():
    b = linearize(truncated_bundle(1, [0]))
    assert b.base == "Rat" and validate_bundle(b).ok
    with pytest.raises(InvalidInput):
        linearize(b)
