"""Categories enriched in Tambara modules C -> C, and the passage to and from module categories.

Composition is stored as ambient families: comp[(X, Y, Z, F, H, G)] sends
kron(a, b) with a in hom(X,Y)(F,H) and b in hom(Y,Z)(H,G) to hom(X,Z)(F,G).
The first leg hom(X, Y) sits on the left of the composite coend.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Hashable, List, Tuple

from .base import BOOL, Matrix, bool_map_ok, canon, eye, kron, same, swap
from .fincat import FinCategory, ModuleFunctor, ModuleStructure, validate_module
from .presheaf import bracket
from .profunctor import (InvalidComposite, TambaraModule, TambaraMorphism, compose_tambara, validate_tambara,
                         validate_tambara_morphism)
from .report import ValidationReport


@dataclass
class TambEnrichedCategory:
    C: object                                     # MonoidalStructure
    objects: List[Hashable]
    hom: Dict[Tuple, TambaraModule]
    comp: Dict[Tuple, Matrix]
    unit: Dict[Tuple, Matrix]                     # unit[(X, F, G)]: C(F, G) -> hom(X,X)(F,G)
    name: str = ""
    meta: Dict = field(default_factory=dict)

    @property
    def base(self):
        return self.C.base


def enrich_S(M: ModuleStructure) -> TambEnrichedCategory:
    C = M.C
    objs = C.objects
    hom = {(X, Y): bracket(M, X, Y) for X, Y in product(M.objects, M.objects)}
    comp, unit = {}, {}
    for X, Y, Z in product(M.objects, repeat=3):
        for F, H, G in product(objs, repeat=3):
            FX, HY, GZ = M.act(F, X), M.act(H, Y), M.act(G, Z)
            da, db = M.cat.dims[(FX, HY)], M.cat.dims[(HY, GZ)]
            comp[(X, Y, Z, F, H, G)] = M.cat.comp[(FX, HY, GZ)] * swap(da, db)
    for X in M.objects:
        for F, G in product(objs, objs):
            unit[(X, F, G)] = M.act_on(F, G, X)
    return TambEnrichedCategory(C, list(M.objects), hom, comp, unit, name=f"S({M.name})")


def enrich_functor(Phi: ModuleFunctor) -> Dict[Tuple, TambaraMorphism]:
    """S(Phi): [X, Y] -> [Phi X, Phi Y], m |-> phi^-1 o Phi(m) o phi."""
    M, N = Phi.source, Phi.target
    C = M.C
    out = {}
    for X, Y in product(M.objects, M.objects):
        src, tgt = bracket(M, X, Y), bracket(N, Phi(X), Phi(Y))
        comps = {}
        for F, G in product(C.objects, C.objects):
            FX, GY = M.act(F, X), M.act(G, Y)
            a, b = N.act(F, Phi(X)), N.act(G, Phi(Y))
            m = Phi.mor[(FX, GY)]
            step = N.cat.comp[(a, Phi(FX), Phi(GY))] * kron(m, Phi.phi[(F, X)])
            comps[(F, G)] = canon(M.base, N.cat.comp[(a, Phi(GY), b)] * kron(Phi.phi_inverse(G, Y), step))
        out[(X, Y)] = TambaraMorphism(src, tgt, comps, name=f"S({Phi.name})[{X},{Y}]")
    return out


def validate_enriched(A: TambEnrichedCategory) -> ValidationReport:
    C = A.C
    objs = C.objects
    base = A.base
    rep = ValidationReport(f"enriched category {A.name}")
    for k, h in A.hom.items():
        rep.merge(validate_tambara(h), f"hom{k}: ")
    if not rep.ok:
        return rep
    cat = C.cat

    def d(X, Y, F, G):
        return A.hom[(X, Y)].dims[(F, G)]

    for X, Y, Z in product(A.objects, repeat=3):
        comp_prof = compose_tambara(A.hom[(X, Y)], A.hom[(Y, Z)])
        comps = {}
        for F, G in product(objs, objs):
            fam = {H: A.comp[(X, Y, Z, F, H, G)] for H in objs}
            for H in objs:
                ok = fam[H].shape == (d(X, Z, F, G), d(X, Y, F, H) * d(Y, Z, H, G))
                rep.check(ok and (base != BOOL or bool_map_ok(fam[H])), "composition shape", (X, Y, Z, F, H, G))
            if not rep.ok:
                return rep
            try:
                comps[(F, G)] = comp_prof.prof.coends[(F, G)].map_out(fam, check=True)
            except InvalidComposite:
                rep.check(False, "composition extranatural", (X, Y, Z, F, G))
                return rep
        rep.merge(validate_tambara_morphism(TambaraMorphism(comp_prof, A.hom[(X, Z)], comps)), "composition: ")
    for X in A.objects:
        for F, G in product(objs, objs):
            rep.check(A.unit[(X, F, G)].shape == (d(X, X, F, G), cat.dims[(F, G)]), "unit shape", (X, F, G))
    if not rep.ok or base == BOOL:
        return rep
    from .profunctor import identity_tambara
    from .fincat import regular_module
    reg = identity_tambara(regular_module(C))
    for X in A.objects:
        e = {(F, G): A.unit[(X, F, G)] for F, G in product(objs, objs)}
        rep.merge(validate_tambara_morphism(TambaraMorphism(reg, A.hom[(X, X)], e)), f"unit {X}: ")

    def eq(a, b):
        return same(canon(base, a), canon(base, b))

    for X, Y, Z, W in product(A.objects, repeat=4):
        for F, H, K, G in product(objs, repeat=4):
            dc = d(Z, W, K, G)
            da = d(X, Y, F, H)
            lhs = A.comp[(X, Z, W, F, K, G)] * kron(A.comp[(X, Y, Z, F, H, K)], eye(dc))
            rhs = A.comp[(X, Y, W, F, H, G)] * kron(eye(da), A.comp[(Y, Z, W, H, K, G)])
            rep.check(eq(lhs, rhs), "associativity", (X, Y, Z, W, F, H, K, G))
    for X, Y in product(A.objects, A.objects):
        P = A.hom[(X, Y)].prof
        for F, H, G in product(objs, repeat=3):
            df, db = cat.dims[(F, H)], d(X, Y, H, G)
            lhs = A.comp[(X, X, Y, F, H, G)] * kron(A.unit[(X, F, H)], eye(db))
            rep.check(eq(lhs, P.pre[(F, H, G)] * swap(df, db)), "left unit", (X, Y, F, H, G))
            da, dg = d(X, Y, F, H), cat.dims[(H, G)]
            rhs = A.comp[(X, Y, Y, F, H, G)] * kron(eye(da), A.unit[(Y, H, G)])
            rep.check(eq(rhs, P.post[(F, H, G)] * swap(da, dg)), "right unit", (X, Y, F, H, G))
    return rep


def realize_R(A: TambEnrichedCategory) -> ModuleStructure:
    """Objects (X, F); hom((X,F),(Y,G)) = hom(X,Y)(F,G); H acts by zeta_H, C-morphisms through units."""
    C = A.C
    cobjs = C.objects
    base = A.base
    T = C.tensor_obj
    obs = [(X, F) for X in A.objects for F in cobjs]
    dims = {(a, b): A.hom[(a[0], b[0])].dims[(a[1], b[1])] for a, b in product(obs, obs)}
    comp = {}
    for a, b, c in product(obs, repeat=3):
        (X, F), (Y, H), (Z, G) = a, b, c
        comp[(a, b, c)] = canon(base, A.comp[(X, Y, Z, F, H, G)] * swap(dims[(b, c)], dims[(a, b)]))
    ident = {(X, F): canon(base, A.unit[(X, F, F)] * C.cat.ident[F]) for X, F in obs}
    cat = FinCategory(base, obs, dims, comp, ident, name=f"R({A.name})")
    act_obj = {(H, (X, F)): (X, T[H, F]) for H in cobjs for X, F in obs}
    act_mor = {}
    for H, H2 in product(cobjs, cobjs):
        dh = C.cat.dims[(H, H2)]
        for a, b in product(obs, obs):
            (X, F), (Y, G) = a, b
            HF, HG, H2G = T[H, F], T[H, G], T[H2, G]
            z = A.hom[(X, Y)].zeta[(H, F, G)]
            e = A.unit[(Y, HG, H2G)] * C.right_whisker(H, H2, G)
            m = A.comp[(X, Y, Y, HF, HG, H2G)] * kron(z, e) * swap(dh, dims[(a, b)])
            act_mor[(H, H2, a, b)] = canon(base, m)
    return ModuleStructure(C, cat, act_obj, act_mor, name=f"R({A.name})")


@dataclass
class IsoCertificate:
    source: Tuple
    target: Tuple
    forward: Matrix
    backward: Matrix


def verify_enrichment_units(M: ModuleStructure) -> Tuple[ValidationReport, List[IsoCertificate]]:
    C = M.C
    base = M.base
    one = C.unit
    A = enrich_S(M)
    rep = ValidationReport(f"enrichment units for {M.name}")
    rep.merge(validate_enriched(A), "S(M): ")
    R = realize_R(A)
    rep.merge(validate_module(R), "RS(M): ")
    # u_M is full and faithful: hom tables agree bit-exactly
    for X, Y in product(M.objects, M.objects):
        rep.check(R.cat.dims[((X, one), (Y, one))] == M.cat.dims[(X, Y)], "u hom dimension", (X, Y))
    for X, Y, Z in product(M.objects, repeat=3):
        rep.check(same(R.cat.comp[((X, one), (Y, one), (Z, one))], M.cat.comp[(X, Y, Z)]), "u composition", (X, Y, Z))
    # essential surjectivity through (X, F) = (F X, 1)
    certs = []
    for X in M.objects:
        for F in C.objects:
            a, b = (X, F), (M.act(F, X), one)
            fwd = M.cat.ident[M.act(F, X)]
            rep.check(R.cat.dims[(a, b)] == fwd.shape[0] and R.cat.dims[(b, a)] == fwd.shape[0], "iso hom shape", (a, b))
            back_first = R.cat.compose(a, b, a, fwd, fwd)
            first_back = R.cat.compose(b, a, b, fwd, fwd)
            ok1 = same(back_first, R.cat.ident[a])
            ok2 = same(first_back, R.cat.ident[b])
            rep.check(ok1 and ok2, "iso certificate composes to identities", (a, b))
            if ok1 and ok2:
                certs.append(IsoCertificate(a, b, fwd, fwd))
    # n for S(M): hom((X,F),(Y,G))(K,L) = hom(X,Y)(K F, L G)
    T = C.tensor_obj
    for X, Y in product(M.objects, M.objects):
        h = A.hom[(X, Y)]
        for F, G in product(C.objects, C.objects):
            h2 = bracket(R, (X, F), (Y, G))
            for K, L in product(C.objects, C.objects):
                rep.check(h2.dims[(K, L)] == h.dims[(T[K, F], T[L, G])], "n hom dimension", (X, F, Y, G, K, L))
            if base == BOOL:
                continue
            for K, L, L2 in product(C.objects, repeat=3):
                rhs = h.prof.post[(T[K, F], T[L, G], T[L2, G])] * kron(C.right_whisker(L, L2, G), eye(h.dims[(T[K, F], T[L, G])]))
                rep.check(same(h2.prof.post[(K, L, L2)], canon(base, rhs)), "n post action", (X, F, Y, G, K, L, L2))
    return rep, certs
