import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from tambara.algebra import hom_monoid, validate_bimodule, validate_monoid
from tambara.base import eye, same
from tambara.examples_io import random_tambara, truncated_bundle
from tambara.fincat import regular_module
from tambara.na import (NotCyclic, bimodule_roundtrip_iso, check_right_unitality, coherence_map_c, end_monoid,
                        generator_change_witness, generator_context, hom_bimodule, hom_morphism, monoid_iso_T_TT,
                        require_very_cyclic, t_plus_category, t_plus_dimension_check, tambara_from_bimodule,
                        tambara_roundtrip, two_cell_bijection, validate_bimodule_morphism)
from tambara.profunctor import TambaraMorphism, identity_tambara, validate_tambara


def _reached(ctx):
    return {y: sorted(r.F for r in ctx.reach[y]) for y in ctx.module.objects}


def test_generator_context_table(z02):
    # independent hand enumeration: F.0 = min(F, k) in Z_{0,k}
    for k in range(3):
        ctx = generator_context(z02.modules[f"Z{k}"], 0)
        expect = {y: sorted(F for F in range(3) if min(F, k) == y) for y in range(k + 1)}
        assert _reached(ctx) == expect
        assert ctx.very_cyclic and ctx.cyclic


def test_top_object_is_not_a_generator(z02):
    ctx = generator_context(z02.modules["Z1"], 1)
    assert not ctx.very_cyclic and not ctx.cyclic
    assert _reached(ctx) == {0: [], 1: [0, 1, 2]}
    with pytest.raises(NotCyclic):
        require_very_cyclic(ctx)
    with pytest.raises(NotCyclic):
        ctx.rep(0)


def test_group_orbit_reaches_everything(z2):
    ctx = generator_context(z2.modules["S"], "g")
    assert ctx.very_cyclic
    assert ctx.rep("e").F == "g" and ctx.rep("g").F == "e"


def test_end_monoid_values(z02):
    # [0,0]_k(F, G) = [min(F,k) <= min(G,k)]
    for k in range(3):
        A = end_monoid(generator_context(z02.modules[f"Z{k}"], 0))
        assert validate_monoid(A).ok
        for F, G in product(range(3), range(3)):
            assert A.dim(F, G) == int(min(F, k) <= min(G, k))


def test_end_monoid_of_regular_is_hom_monoid(bundles):
    for b in bundles.values():
        C = b.monoidal
        A = end_monoid(generator_context(regular_module(C), C.unit))
        H = hom_monoid(C)
        assert A.carrier.prof.dims == H.carrier.prof.dims
        assert all(same(A.mult[k], H.mult[k]) for k in H.mult)


def test_coherence_iso_at_generators(bundles):
    for b in bundles.values():
        for mn, gens in b.generators.items():
            M = b.module(mn)
            I = identity_tambara(M)
            for X in gens:
                r = coherence_map_c(I, I, X, X, X)
                assert r.report.ok and r.is_iso


def test_coherence_fails_through_non_generator(z02):
    I = identity_tambara(z02.modules["Z1"])
    r = coherence_map_c(I, I, 0, 1, 0)
    assert r.report.ok and not r.is_iso
    assert [k for k, v in r.iso.items() if not v] == [(0, 0)]


def test_coherence_for_composite_of_distinct_modules(kz02):
    C = kz02.monoidal
    rng = random.Random(4)
    S, T = random_tambara(C, rng), random_tambara(C, rng)
    r = coherence_map_c(S, T, 0, 0, 0)
    assert r.report.ok and r.is_iso


@pytest.mark.parametrize("name", ["Z02", "kZ02", "Z2", "dual"])
def test_right_unitality(bundles, name):
    b = bundles[name]
    mn = next(iter(b.modules))
    X = b.generators[mn][0]
    assert check_right_unitality(identity_tambara(b.modules[mn]), X, X).ok


def test_roundtrip_through_bimodule(bundles):
    for b in bundles.values():
        for mn, gens in b.generators.items():
            I = identity_tambara(b.module(mn))
            for X in gens:
                hat, rep = tambara_roundtrip(I, X, X)
                assert rep.ok


def test_bimodule_roundtrip_components_invertible(z03):
    M = z03.modules["Z2"]
    ctx = generator_context(M, 0)
    Bm = hom_bimodule(identity_tambara(M), 0, 0)
    hat = tambara_from_bimodule(Bm, ctx, ctx)
    assert validate_tambara(hat).ok
    back, comps, rep = bimodule_roundtrip_iso(Bm, ctx, ctx, hat)
    assert rep.ok and validate_bimodule(back).ok


def test_two_cell_bijection(bundles):
    for name in ["Z02", "kZ02", "Z2", "dual"]:
        b = bundles[name]
        C = b.monoidal
        rng = random.Random(8)
        S, T = random_tambara(C, rng), random_tambara(C, rng)
        assert two_cell_bijection(S, T, C.unit, C.unit).ok


def test_hom_morphism_of_identity(kz02):
    M = kz02.modules["Z2"]
    I = identity_tambara(M)
    ident = {k: eye(n) for k, n in I.dims.items()}
    t = TambaraMorphism(I, I, ident)
    Bm = hom_bimodule(I, 0, 0)
    assert validate_bimodule_morphism(Bm, Bm, hom_morphism(t, 0, 0)).ok


def test_generator_change(kz02, z2):
    w, rep = generator_change_witness(z2.modules["S"], "e", "g")
    assert rep.ok
    w, rep = generator_change_witness(kz02.modules["Z1"], 0, 0)
    assert rep.ok


def test_t_plus(bundles):
    A1 = end_monoid(generator_context(bundles["Z02"].modules["Z1"], 0))
    for T in (hom_monoid(bundles["kZ02"].monoidal), A1, hom_monoid(bundles["dual"].monoidal)):
        assert t_plus_dimension_check(T).ok
        assert monoid_iso_T_TT(T).report.ok
        assert t_plus_category(T).cat.dims == T.carrier.prof.dims


@settings(max_examples=15)
@given(st.integers(0, 3), st.data())
def test_truncated_end_monoid_property(N, data):
    k = data.draw(st.integers(0, N))
    M = truncated_bundle(N, [k]).modules[f"Z{k}"]
    A = end_monoid(generator_context(M, 0))
    assert validate_monoid(A).ok
    Bm = hom_bimodule(identity_tambara(M), 0, 0, A, A)
    assert validate_bimodule(Bm).ok
    I = identity_tambara(M)
    assert coherence_map_c(I, I, 0, 0, 0).is_iso
