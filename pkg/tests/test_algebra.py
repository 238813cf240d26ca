import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from tambara.algebra import (MonoidObject, MoritaWitness, SubBimodule, all_bool_subbimodules, balanced_tensor,
                             bool_bimodule, check_subbimodule, enumerate_bool_morita, find_bimodule_iso,
                             find_invertible, free_left_module, hom_monoid, ideal_lattice, invert_components, is_simple, principal_ideal,
                             regular_bimodule, relational_composite, support, transport_modules_along_monoid_iso,
                             validate_bimodule, validate_left_module, validate_monoid, validate_monoid_morphism,
                             verify_morita_witness)
from tambara.base import BOOL, eye, mat
from tambara.examples_io import random_bundle, truncated_bundle
from tambara.na import end_monoid, generator_context


def test_hom_monoid_and_regular_bimodule(bundles):
    for name, b in bundles.items():
        A = hom_monoid(b.monoidal)
        assert validate_monoid(A).ok, name
        assert validate_bimodule(regular_bimodule(A)).ok, name


def test_mutated_multiplication_fails(kz02):
    A = hom_monoid(kz02.monoidal)
    mult = dict(A.mult)
    k = next(k for k, m in mult.items() if m.shape[0] and m.shape[1])
    mult[k] = mult[k] * 2
    assert not validate_monoid(MonoidObject(A.carrier, A.unit, mult)).ok


@pytest.mark.parametrize("name", ["Z02", "kZ02", "Z2", "unit", "dual"])
def test_regular_is_tensor_unit(bundles, name):
    A = hom_monoid(bundles[name].monoidal)
    R = regular_bimodule(A)
    RR = balanced_tensor(R, R)
    assert validate_bimodule(RR).ok
    assert find_bimodule_iso(RR, R).status == "found"


@pytest.mark.parametrize("name", ["Z02", "kZ02", "Z2"])
def test_self_morita_witness(bundles, name):
    A = hom_monoid(bundles[name].monoidal)
    R = regular_bimodule(A)
    assert verify_morita_witness(MoritaWitness(A, A, R, R)).ok


def test_find_invertible_cases():
    shapes = {"a": (2, 2)}
    assert find_invertible([{"a": eye(2)}], shapes).status == "found"
    singular = [{"a": mat([[1, 0], [0, 0]])}, {"a": mat([[0, 1], [0, 0]])}]
    assert find_invertible(singular, shapes).status == "none"
    swap_basis = [{"a": mat([[1, 0], [0, 0]])}, {"a": mat([[0, 0], [0, 1]])}]
    assert find_invertible(swap_basis, shapes).status == "found"
    assert find_invertible([], {"a": (0, 0)}).status == "found"
    assert find_invertible([{"a": mat([[1, 0]])}], {"a": (1, 2)}).status == "none"


def _bool_end_monoids():
    for N in range(0, 4):
        b = truncated_bundle(N, list(range(N + 1)))
        for k in range(N + 1):
            yield end_monoid(generator_context(b.modules[f"Z{k}"], 0))


def test_lattice_matches_brute_force():
    for A in _bool_end_monoids():
        assert set(ideal_lattice(A)) == set(all_bool_subbimodules(regular_bimodule(A)))


def test_simplicity_pattern():
    b = truncated_bundle(2, [0, 1, 2])
    A = {k: end_monoid(generator_context(b.modules[f"Z{k}"], 0)) for k in range(3)}
    assert is_simple(A[0])
    assert not is_simple(A[1]) and not is_simple(A[2])
    assert len(ideal_lattice(A[1])) == 3


def test_principal_ideals_are_subbimodules(z02):
    A = end_monoid(generator_context(z02.modules["Z1"], 0))
    R = regular_bimodule(A)
    for seed in support(A.carrier):
        sub = principal_ideal(R, seed)
        assert seed in sub.relation
        assert check_subbimodule(R, sub).ok


def test_non_closed_relation_rejected(z02):
    A = end_monoid(generator_context(z02.modules["Z1"], 0))
    R = regular_bimodule(A)
    assert not check_subbimodule(R, SubBimodule(R, relation=frozenset({(0, 1)}))).ok


def test_bool_balanced_tensor_is_relational_composite():
    for A in _bool_end_monoids():
        objs = A.C.objects
        lat = ideal_lattice(A)
        for I, J in product(lat, lat):
            X, Y = bool_bimodule(A, A, I), bool_bimodule(A, A, J)
            got = support(balanced_tensor(X, Y).carrier)
            assert got == relational_composite(I, J, objs)


def test_monoid_morphism_and_transport(kz02):
    A = hom_monoid(kz02.monoidal)
    ident = {k: eye(n) for k, n in A.carrier.prof.dims.items()}
    assert validate_monoid_morphism(ident, A, A).ok
    Mfree = free_left_module(A)
    assert validate_left_module(Mfree).ok
    moved = transport_modules_along_monoid_iso(invert_components(ident, A.base), A, A, Mfree)
    assert validate_left_module(moved).ok


@settings(max_examples=10)
@given(st.integers(0, 10_000))
def test_fuzzed_end_monoids(seed):
    b = random_bundle(random.Random(seed))
    for mn, gens in b.generators.items():
        M = b.module(mn)
        for X in gens:
            A = end_monoid(generator_context(M, X))
            assert validate_monoid(A).ok
            if A.base == BOOL and len(support(A.carrier)) <= 10:
                assert set(ideal_lattice(A)) == set(all_bool_subbimodules(regular_bimodule(A)))


def test_morita_prefilter_matches_full_validation():
    b = truncated_bundle(2, [0, 1])
    A0 = end_monoid(generator_context(b.modules["Z0"], 0))
    A1 = end_monoid(generator_context(b.modules["Z1"], 0))
    pairs = sorted(product(A0.C.objects, A0.C.objects), key=repr)
    subsets = [frozenset(p for i, p in enumerate(pairs) if m >> i & 1) for m in range(1 << len(pairs))]
    full_ba = sum(validate_bimodule(bool_bimodule(A1, A0, S)).ok for S in subsets)
    full_ab = sum(validate_bimodule(bool_bimodule(A0, A1, S)).ok for S in subsets)
    res = enumerate_bool_morita(A0, A1)
    assert (res["bimodules_BA"], res["bimodules_AB"]) == (full_ba, full_ab) == (2, 3)
    assert res["witnesses"] == []
