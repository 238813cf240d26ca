import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from tambara.base import BOOL, RAT, col, eye, is_isomorphism, mat, same, zeros
from tambara.examples_io import builtin_bundles, random_tambara
from tambara.fincat import evaluation_functor, identity_functor, regular_module
from tambara.profunctor import (InvalidComposite, TambaraModule, TambaraMorphism, check_triangles, compose_tambara,
                                coequalizer_tambara, direct_sum, free_tambara, free_unit_naturality, hom_profunctor,
                                identity_tambara, is_representable, morphism_space_dim, representable_tambara,
                                restrict, shifted_hom, tambara_equal, tambara_morphism_space, theta, theta_to_shifted,
                                theta_transpose, theta_universal, validate_profunctor, validate_tambara,
                                validate_tambara_morphism, yoneda_unitor, zero_tambara)

RAT_BUNDLES = ["kZ02", "Z2", "unit", "dual"]


def test_hom_profunctor_validates(bundles):
    for b in bundles.values():
        assert validate_profunctor(hom_profunctor(b.category)).ok


def test_identity_and_zero_tambara(bundles):
    for b in bundles.values():
        for M in b.modules.values():
            assert validate_tambara(identity_tambara(M)).ok
            assert validate_tambara(zero_tambara(M, M)).ok


@pytest.mark.parametrize("name", ["Z02", "kZ02", "Z2", "dual"])
@pytest.mark.parametrize("side", ["left", "right"])
def test_yoneda_unitor_is_iso(bundles, name, side):
    b = bundles[name]
    T = identity_tambara(next(iter(b.modules.values())))
    comp, u, inv = yoneda_unitor(T, side)
    assert validate_tambara_morphism(u).ok
    for k, m in u.comps.items():
        assert is_isomorphism(m, T.base)
        if T.base == RAT:
            assert same(m * inv[k], eye(m.shape[0]))


def test_compose_dims_associative(kz02):
    rng = random.Random(11)
    C = kz02.monoidal
    A, B, D = (random_tambara(C, rng) for _ in range(3))
    left = compose_tambara(compose_tambara(A, B), D)
    right = compose_tambara(A, compose_tambara(B, D))
    assert left.dims == right.dims
    assert validate_tambara(left).ok and validate_tambara(right).ok


def test_mutated_zeta_fails(kz02):
    T = identity_tambara(kz02.modules["Z2"])
    zeta = dict(T.zeta)
    zeta[(0, 1, 1)] = zeta[(0, 1, 1)] * 3
    bad = TambaraModule(T.prof, T.src, T.tgt, zeta, name="bad")
    assert not validate_tambara(bad).ok


def test_map_out_rejects_non_extranatural(kz02):
    C = kz02.monoidal
    Th = theta(C, 0, 0)
    co = Th.prof.coends[(0, 2)]
    assert co.q.relations.shape[1] > 0
    fam = {H: mat([[1] * (co.ldim[H] * co.rdim[H])], co.ldim[H] * co.rdim[H]) for H in co.middle}
    co.map_out(fam, check=True)
    fam[0] = fam[0] * 5
    with pytest.raises(InvalidComposite):
        co.map_out(fam, check=True)


@pytest.mark.parametrize("name", ["Z02", "kZ02", "Z2", "unit", "max2", "dual"])
def test_theta_transpose_hits_universal(bundles, name):
    C = bundles[name].monoidal
    rng = random.Random(2)
    R = random_tambara(C, rng)
    for K, L in product(C.objects, C.objects):
        Th = theta(C, K, L)
        assert validate_tambara(Th).ok
        n = R.dims[(L, K)]
        if n == 0:
            continue
        r = col([1] + [rng.randint(-2, 2) for _ in range(n - 1)]) if C.base == RAT else col([1])
        t = theta_transpose(C, Th, K, L, R, r)
        assert validate_tambara_morphism(t).ok
        u = theta_universal(C, Th, K, L)
        assert same(t.comps[(L, K)] * u, r)


@pytest.mark.parametrize("name", RAT_BUNDLES)
def test_theta_one_is_shifted_hom(bundles, name):
    C = bundles[name].monoidal
    for L in C.objects:
        Th, S, t = theta_to_shifted(C, L)
        assert validate_tambara_morphism(t).ok
        assert all(is_isomorphism(m) for m in t.comps.values())


def test_shifted_hom_by_unit_is_hom(bundles):
    for b in bundles.values():
        C = b.monoidal
        assert tambara_equal(shifted_hom(C, C.unit), identity_tambara(regular_module(C)))


@pytest.mark.parametrize("name", ["Z02", "kZ02", "Z2", "dual"])
def test_representable_adjunction_triangles(bundles, name):
    b = bundles[name]
    mn = next(iter(b.modules))
    M = b.modules[mn]
    Phi = evaluation_functor(M, b.generators[mn][0])
    adj = representable_tambara(Phi)
    assert validate_tambara(adj.P).ok and validate_tambara(adj.Q).ok
    assert validate_tambara_morphism(adj.counit).ok and validate_tambara_morphism(adj.unit).ok
    assert check_triangles(adj, Phi).ok


def test_identity_is_representable(bundles):
    for b in bundles.values():
        M = next(iter(b.modules.values()))
        rep = is_representable(identity_tambara(M))
        assert rep is not None and rep.strong
        assert all(rep.functor(x) == x for x in M.objects)


def test_restrict_along_identity(bundles):
    for b in bundles.values():
        M = next(iter(b.modules.values()))
        I = identity_tambara(M)
        assert tambara_equal(restrict(I, identity_functor(M)), I)


@pytest.mark.parametrize("name", ["Z02", "kZ02", "unit"])
def test_free_tambara_on_hom(bundles, name):
    C = bundles[name].monoidal
    Sigma = hom_profunctor(C.cat)
    fr = free_tambara(C, Sigma)
    assert validate_tambara(fr.module).ok
    assert free_unit_naturality(C, Sigma, fr).ok


def test_direct_sum_dims(kz02):
    C = kz02.monoidal
    A, B = theta(C, 0, 1), shifted_hom(C, 1)
    S = direct_sum(A, B)
    assert validate_tambara(S).ok
    assert all(S.dims[k] == A.dims[k] + B.dims[k] for k in S.dims)


def test_coequalizer_of_equal_maps_is_identity(kz02):
    T = identity_tambara(kz02.modules["Z2"])
    ident = {k: mat([[1 if i == j else 0 for j in range(n)] for i in range(n)], n) for k, n in T.dims.items()}
    p = TambaraMorphism(T, T, ident)
    q = coequalizer_tambara(p, p)
    assert q.module.dims == T.dims
    assert validate_tambara(q.module).ok


def test_coequalizer_with_zero_kills_everything(kz02):
    T = identity_tambara(kz02.modules["Z2"])
    ident = {k: mat([[1 if i == j else 0 for j in range(n)] for i in range(n)], n) for k, n in T.dims.items()}
    zero = {k: zeros(n, n) for k, n in T.dims.items()}
    q = coequalizer_tambara(TambaraMorphism(T, T, ident), TambaraMorphism(T, T, zero))
    assert all(v == 0 for v in q.module.dims.values())


@given(st.integers(0, 5000), st.sampled_from(["Z02", "kZ02", "Z2", "unit", "max2", "dual"]))
def test_random_tambara_valid(seed, name):
    C = builtin_bundles()[name].monoidal
    R = random_tambara(C, random.Random(seed))
    assert validate_tambara(R).ok


@given(st.integers(0, 5000), st.sampled_from(["Z02", "kZ02", "Z2", "max2"]))
def test_free_transposition_property(seed, name):
    """Hom(Theta_{K,L}, R) has the dimension of R(L, K)."""
    C = builtin_bundles()[name].monoidal
    rng = random.Random(seed)
    R = random_tambara(C, rng)
    K, L = rng.choice(C.objects), rng.choice(C.objects)
    got = morphism_space_dim(tambara_morphism_space(theta(C, K, L), R))
    want = R.dims[(L, K)] if C.base != BOOL else int(R.dims[(L, K)] > 0)
    assert got == want
