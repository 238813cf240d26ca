import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from tambara.base import BOOL, RAT, eye, mat, same
from tambara.examples_io import builtin_bundles, linearize, random_bundle, truncated_bundle
from tambara.fincat import (MissingStructure, categories_equal, evaluation_functor, find_dual, identity_functor,
                            is_rigid, modules_equal, monoidals_equal, opp_monoidal, opposite_category,
                            product_category, regular_module, rev_monoidal, reverse_and_opposite, validate_bundle,
                            validate_category, validate_module, validate_module_functor, validate_monoidal)


def test_builtins_validate(bundles):
    for name, b in bundles.items():
        rep = validate_bundle(b)
        assert rep.ok, (name, str(rep))


def test_composition_of_poset_is_order(z02):
    cat = z02.category
    for a, b in product(cat.objects, cat.objects):
        assert cat.dims[(a, b)] == int(a <= b)
    assert z02.monoidal.t(1, 2) == 2 and z02.monoidal.t(1, 1) == 2 and z02.monoidal.unit == 0


def test_compose_identity_law(kz02):
    cat = kz02.category
    for a, b in product(cat.objects, cat.objects):
        for f in cat.hom_basis(a, b):
            assert same(cat.compose(a, b, b, cat.ident[b], f), f)
            assert same(cat.compose(a, a, b, f, cat.ident[a]), f)


def test_broken_associativity_detected():
    b = linearize(truncated_bundle(3, [1]))
    cat = b.category
    cat.comp[(0, 1, 2)] = mat([[2]])
    rep = validate_category(cat)
    assert not rep.ok and "associativity" in rep.laws_failed()


def test_broken_identity_detected(kz02):
    cat = kz02.category
    bad = type(cat)(RAT, cat.objects, cat.dims, cat.comp, dict(cat.ident), "bad")
    bad.ident[0] = mat([[2]])
    assert not validate_category(bad).ok


def test_broken_module_action_detected(z02):
    M = z02.modules["Z1"]
    act = dict(M.act_obj)
    act[(1, 1)] = 0           # 1 + 1 should land in 1
    broken = type(M)(M.C, M.cat, act, M.act_mor, "broken")
    assert not validate_module(broken).ok


@pytest.mark.parametrize("name,rigid", [("Z2", True), ("unit", True), ("Z02", False), ("max2", False)])
def test_rigidity(bundles, name, rigid):
    assert is_rigid(bundles[name].monoidal) is rigid


def test_dual_in_z2(z2):
    d = find_dual(z2.monoidal, "g")
    assert d is not None and d[0] == "g"


def test_no_dual_for_positive_truncated(z02):
    assert find_dual(z02.monoidal, 1) is None
    assert find_dual(z02.monoidal, 0) is not None


def test_opp_and_rev_are_involutions(bundles):
    for b in bundles.values():
        C = b.monoidal
        assert monoidals_equal(opp_monoidal(opp_monoidal(C)), C)
        assert monoidals_equal(rev_monoidal(rev_monoidal(C)), C)
        assert validate_monoidal(opp_monoidal(C)).ok
        assert validate_monoidal(rev_monoidal(C)).ok


def test_reverse_and_opposite_modes(z02):
    assert categories_equal(reverse_and_opposite(z02, "op").category, opposite_category(z02.category))
    assert validate_bundle(reverse_and_opposite(z02, "opp")).ok
    with pytest.raises(MissingStructure):
        reverse_and_opposite(z02.category, "rev")
    with pytest.raises(ValueError):
        reverse_and_opposite(z02, "sideways")


def test_opposite_reverses_homs(z03):
    op = opposite_category(z03.category)
    assert op.dims[(2, 1)] == 1 and op.dims[(1, 2)] == 0
    assert validate_category(op).ok


def test_product_category(z02, kz02):
    p = product_category(z02.category, z02.category)
    assert len(p.objects) == 9 and validate_category(p).ok
    assert p.dims[((0, 1), (1, 1))] == 1 and p.dims[((1, 0), (0, 1))] == 0


def test_regular_module_and_functors(bundles):
    for b in bundles.values():
        R = regular_module(b.monoidal)
        assert validate_module(R).ok
        for mn, gens in b.generators.items():
            M = b.module(mn)
            assert validate_module_functor(identity_functor(M)).ok
            for X in gens:
                assert validate_module_functor(evaluation_functor(M, X)).ok


def test_modules_equal_reflexive(z02):
    M = z02.modules["Z2"]
    assert modules_equal(M, M)
    assert not modules_equal(M, z02.modules["Z1"])


def test_inverse_element_over_rat():
    b = builtin_bundles()["dual"]
    cat = b.category
    o = cat.objects[0]
    one_plus_x = mat([[1], [1]])
    x = mat([[0], [1]])
    inv = cat.inverse_element(o, o, one_plus_x)
    assert inv is not None and same(cat.compose(o, o, o, inv, one_plus_x), cat.ident[o])
    assert cat.inverse_element(o, o, x) is None


@given(st.integers(0, 10_000))
def test_random_bundles_validate(seed):
    b = random_bundle(random.Random(seed))
    assert validate_bundle(b).ok


@given(st.integers(0, 10_000))
def test_random_bundle_opp_validates(seed):
    b = random_bundle(random.Random(seed))
    assert validate_monoidal(opp_monoidal(b.monoidal)).ok


def test_bool_identity_is_one_by_one(z02):
    assert all(same(z02.category.ident[a], eye(1)) for a in z02.category.objects)
    assert z02.base == BOOL
