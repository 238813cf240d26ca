"""Monoid and bimodule objects among Tambara modules C -> C.

Multiplication and actions are extranatural families over a middle
object H, acting on kron(a, b):

* ``mult[(H, F, G)]``: T(F, H) (x) T(H, G) -> T(F, G);
* ``la[(H, F, G)]``:   B(F, H) (x) Psi(H, G) -> Psi(F, G);
* ``ra[(H, F, G)]``:   Psi(F, H) (x) A(H, G) -> Psi(F, G).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import sympy

from .base import (BOOL, RAT, LinearSystem, Matrix, UnsupportedBase, canon, combine, eye, hstack, inverse,
                   is_isomorphism, kron, permute_tensor, quotient, rank, same, solve_map_space, swap,
                   to_lists, vec_kron_left, vec_kron_right, vec_lxr, zeros)
from .fincat import MonoidalStructure
from .profunctor import (CoendPresentation, Profunctor, TambaraModule, TambaraMorphism, composite_coend,
                         identity_tambara, morphism_system, validate_tambara, validate_tambara_morphism)
from .report import ValidationReport


class InvalidTensor(ValueError):
    pass


class InvalidMorphism(ValueError):
    pass


@dataclass
class MonoidObject:
    carrier: TambaraModule
    unit: Dict[Tuple, Matrix]          # C(F, G) -> T(F, G)
    mult: Dict[Tuple, Matrix]
    name: str = ""

    @property
    def C(self) -> MonoidalStructure:
        return self.carrier.C

    @property
    def base(self):
        return self.carrier.base

    def dim(self, F, G) -> int:
        return self.carrier.prof.dims[(F, G)]


@dataclass
class BimoduleObject:
    left: MonoidObject
    right: MonoidObject
    carrier: TambaraModule
    la: Dict[Tuple, Matrix]
    ra: Dict[Tuple, Matrix]
    name: str = ""
    coends: Optional[Dict[Tuple, CoendPresentation]] = field(default=None, repr=False)

    @property
    def C(self):
        return self.carrier.C

    @property
    def base(self):
        return self.carrier.base


def _eq(base, a, b) -> bool:
    return same(canon(base, a), canon(base, b))


def hom_monoid(C: MonoidalStructure) -> MonoidObject:
    """C(-, -) with composition."""
    from .fincat import regular_module
    I = identity_tambara(regular_module(C))
    cat = C.cat
    objs = cat.objects
    unit = {(F, G): eye(cat.dims[(F, G)]) for F, G in product(objs, objs)}
    mult = {(H, F, G): canon(cat.base, cat.comp[(F, H, G)] * swap(cat.dims[(F, H)], cat.dims[(H, G)]))
            for H, F, G in product(objs, repeat=3)}
    return MonoidObject(I, unit, mult, name="C(-,-)")


def validate_monoid(A: MonoidObject) -> ValidationReport:
    T = A.carrier
    P = T.prof
    C = A.C
    cat = C.cat
    objs = cat.objects
    base = A.base
    d, c = P.dims, cat.dims
    rep = ValidationReport(f"monoid {A.name}")
    rep.merge(validate_tambara(T), "carrier: ")
    if not rep.ok:
        return rep
    for H, F, G in product(objs, repeat=3):
        m = A.mult.get((H, F, G))
        rep.check(m is not None and m.shape == (d[(F, G)], d[(F, H)] * d[(H, G)]), "mult shape", (H, F, G))
    for F, G in product(objs, objs):
        u = A.unit.get((F, G))
        rep.check(u is not None and u.shape == (d[(F, G)], c[(F, G)]), "unit shape", (F, G))
    if not rep.ok:
        return rep
    C_mod = identity_tambara(T.src)
    rep.merge(validate_tambara_morphism(TambaraMorphism(C_mod, T, A.unit)), "unit: ")
    if base == BOOL:
        from .base import bool_map_ok
        for k, m in A.mult.items():
            rep.check(bool_map_ok(m), "mult defined (transitivity)", k)
        return rep
    rep.merge(_family_laws(A.mult, T, T, T, "mult"))
    m = A.mult
    for F, H, K, G in product(objs, repeat=4):
        lhs = m[(K, F, G)] * kron(m[(H, F, K)], eye(d[(K, G)]))
        rhs = m[(H, F, G)] * kron(eye(d[(F, H)]), m[(K, H, G)])
        rep.check(_eq(base, lhs, rhs), "associativity", (F, H, K, G))
    for H, F, G in product(objs, repeat=3):
        lhs = m[(H, F, G)] * kron(A.unit[(F, H)], eye(d[(H, G)]))
        rhs = P.pre[(F, H, G)] * swap(c[(F, H)], d[(H, G)])
        rep.check(_eq(base, lhs, rhs), "left unit", (H, F, G))
        lhs = m[(H, F, G)] * kron(eye(d[(F, H)]), A.unit[(H, G)])
        rhs = P.post[(F, H, G)] * swap(d[(F, H)], c[(H, G)])
        rep.check(_eq(base, lhs, rhs), "right unit", (H, F, G))
    return rep


def _family_laws(fam: Dict, L: TambaraModule, R: TambaraModule, out: TambaraModule, label: str) -> ValidationReport:
    """Extranaturality in H, naturality in F and G, and the Tambara property of
    a family L(F, H) (x) R(H, G) -> out(F, G)."""
    rep = ValidationReport(label)
    C = out.C
    cat = C.cat
    objs = cat.objects
    base = out.base
    Lp, Rp, Op = L.prof, R.prof, out.prof
    c = cat.dims
    T = C.tensor_obj
    for H, H2 in product(objs, objs):
        k = c[(H, H2)]
        if k == 0:
            continue
        for F, G in product(objs, objs):
            a, b = Lp.dims[(F, H)], Rp.dims[(H2, G)]
            lhs = fam[(H2, F, G)] * kron(Lp.post[(F, H, H2)], eye(b))
            rhs = fam[(H, F, G)] * kron(eye(a), Rp.pre[(H, H2, G)]) * permute_tensor([k, a, b], [1, 2, 0])
            rep.check(_eq(base, lhs, rhs), f"{label} extranatural", (H, H2, F, G))
    for H, G in product(objs, objs):
        for F2, F in product(objs, objs):
            k = c[(F2, F)]
            a, b = Lp.dims[(F, H)], Rp.dims[(H, G)]
            lhs = fam[(H, F2, G)] * kron(Lp.pre[(F2, F, H)], eye(b)) * permute_tensor([a, b, k], [0, 2, 1])
            rhs = Op.pre[(F2, F, G)] * kron(fam[(H, F, G)], eye(k))
            rep.check(_eq(base, lhs, rhs), f"{label} natural in F", (H, F2, F, G))
        for F in objs:
            for G2 in objs:
                k = c[(G, G2)]
                a, b = Lp.dims[(F, H)], Rp.dims[(H, G)]
                lhs = Op.post[(F, G, G2)] * kron(eye(k), fam[(H, F, G)])
                rhs = fam[(H, F, G2)] * kron(eye(a), Rp.post[(H, G, G2)]) * permute_tensor([k, a, b], [1, 0, 2])
                rep.check(_eq(base, lhs, rhs), f"{label} natural in G", (H, F, G, G2))
    for D in objs:
        for H, F, G in product(objs, repeat=3):
            lhs = out.zeta[(D, F, G)] * fam[(H, F, G)]
            rhs = fam[(T[D, H], T[D, F], T[D, G])] * kron(L.zeta[(D, F, H)], R.zeta[(D, H, G)])
            rep.check(_eq(base, lhs, rhs), f"{label} Tambara", (D, H, F, G))
    return rep


def regular_bimodule(A: MonoidObject) -> BimoduleObject:
    return BimoduleObject(A, A, A.carrier, dict(A.mult), dict(A.mult), name=f"reg({A.name})")


def validate_bimodule(Mb: BimoduleObject) -> ValidationReport:
    B, A, Psi = Mb.left, Mb.right, Mb.carrier
    P = Psi.prof
    C = Psi.C
    objs = C.objects
    base = Psi.base
    d, bd, ad = P.dims, B.carrier.prof.dims, A.carrier.prof.dims
    c = C.cat.dims
    rep = ValidationReport(f"bimodule {Mb.name}")
    rep.merge(validate_tambara(Psi), "carrier: ")
    if not rep.ok:
        return rep
    for H, F, G in product(objs, repeat=3):
        la, ra = Mb.la.get((H, F, G)), Mb.ra.get((H, F, G))
        rep.check(la is not None and la.shape == (d[(F, G)], bd[(F, H)] * d[(H, G)]), "left action shape", (H, F, G))
        rep.check(ra is not None and ra.shape == (d[(F, G)], d[(F, H)] * ad[(H, G)]), "right action shape", (H, F, G))
    if not rep.ok:
        return rep
    if base == BOOL:
        from .base import bool_map_ok
        for k in Mb.la:
            rep.check(bool_map_ok(Mb.la[k]), "left action defined", k)
            rep.check(bool_map_ok(Mb.ra[k]), "right action defined", k)
        return rep
    rep.merge(_family_laws(Mb.la, B.carrier, Psi, Psi, "left action"))
    rep.merge(_family_laws(Mb.ra, Psi, A.carrier, Psi, "right action"))
    la, ra = Mb.la, Mb.ra
    for F, H, K, G in product(objs, repeat=4):
        lhs = la[(K, F, G)] * kron(B.mult[(H, F, K)], eye(d[(K, G)]))
        rhs = la[(H, F, G)] * kron(eye(bd[(F, H)]), la[(K, H, G)])
        rep.check(_eq(base, lhs, rhs), "left action associative", (F, H, K, G))
        lhs = ra[(K, F, G)] * kron(ra[(H, F, K)], eye(ad[(K, G)]))
        rhs = ra[(H, F, G)] * kron(eye(d[(F, H)]), A.mult[(K, H, G)])
        rep.check(_eq(base, lhs, rhs), "right action associative", (F, H, K, G))
        lhs = ra[(K, F, G)] * kron(la[(H, F, K)], eye(ad[(K, G)]))
        rhs = la[(H, F, G)] * kron(eye(bd[(F, H)]), ra[(K, H, G)])
        rep.check(_eq(base, lhs, rhs), "actions commute", (F, H, K, G))
    for H, F, G in product(objs, repeat=3):
        lhs = la[(H, F, G)] * kron(B.unit[(F, H)], eye(d[(H, G)]))
        rhs = P.pre[(F, H, G)] * swap(c[(F, H)], d[(H, G)])
        rep.check(_eq(base, lhs, rhs), "left action unital", (H, F, G))
        lhs = ra[(H, F, G)] * kron(eye(d[(F, H)]), A.unit[(H, G)])
        rhs = P.post[(F, H, G)] * swap(d[(F, H)], c[(H, G)])
        rep.check(_eq(base, lhs, rhs), "right action unital", (H, F, G))
    return rep


# ---------------------------------------------------------------------------
# balanced tensor products

def balanced_tensor(Mb: BimoduleObject, Nb: BimoduleObject) -> BimoduleObject:
    """M (x)_A N as a quotient of the sum over H of M(F, H) (x) N(H, G)."""
    if Mb.right is not Nb.left:
        raise InvalidTensor("right monoid of M differs from left monoid of N")
    A = Mb.right
    C = Mb.C
    cat = C.cat
    objs = cat.objects
    base = Mb.base
    T = C.tensor_obj
    Mp, Np = Mb.carrier.prof, Nb.carrier.prof
    ad = A.carrier.prof.dims
    co = {}
    for F, G in product(objs, objs):
        plain = composite_coend(Mp, Np, F, G)
        if base == RAT:
            cols = []
            for H, K in product(objs, objs):
                p, a, n = Mp.dims[(F, H)], ad[(H, K)], Np.dims[(K, G)]
                if p * a * n == 0:
                    continue
                part1 = kron(Mb.ra[(H, F, K)], eye(n))
                part2 = kron(eye(p), Nb.la[(K, H, G)])
                cols.append(_place(plain, K, part1) - _place(plain, H, part2))
            rel = hstack([plain.q.relations] + cols, rows=plain.q.ambient)
            plain = CoendPresentation(base, plain.middle, plain.ldim, plain.rdim, plain.offsets,
                                      quotient(RAT, plain.q.ambient, rel))
        co[(F, G)] = plain
    dims = {k: v.dim for k, v in co.items()}
    post, pre, zeta = {}, {}, {}
    for F in objs:
        for G, G2 in product(objs, objs):
            k = cat.dims[(G, G2)]
            fam = {H: co[(F, G2)].inj(H) * kron(eye(Mp.dims[(F, H)]), Np.post[(H, G, G2)])
                   * permute_tensor([k, Mp.dims[(F, H)], Np.dims[(H, G)]], [1, 0, 2]) for H in objs}
            post[(F, G, G2)] = co[(F, G)].map_out(fam, left=k)
    for F2, F in product(objs, objs):
        for G in objs:
            k = cat.dims[(F2, F)]
            fam = {H: co[(F2, G)].inj(H) * kron(Mp.pre[(F2, F, H)], eye(Np.dims[(H, G)]))
                   * permute_tensor([Mp.dims[(F, H)], Np.dims[(H, G)], k], [0, 2, 1]) for H in objs}
            pre[(F2, F, G)] = co[(F, G)].map_out(fam, right=k)
    for D in objs:
        for F, G in product(objs, objs):
            tgt = co[(T[D, F], T[D, G])]
            fam = {H: tgt.inj(T[D, H]) * kron(Mb.carrier.zeta[(D, F, H)], Nb.carrier.zeta[(D, H, G)]) for H in objs}
            zeta[(D, F, G)] = co[(F, G)].map_out(fam)
    P = Profunctor(cat, cat, dims, post, pre, name=f"{Mb.name}(x){Nb.name}", coends=co)
    carrier = TambaraModule(P, Mb.carrier.src, Mb.carrier.tgt, zeta, name=P.name)
    bd, dd = Mb.left.carrier.prof.dims, Nb.right.carrier.prof.dims
    la, ra = {}, {}
    for H, F, G in product(objs, repeat=3):
        # b (x) [v (x) w] |-> [la(b (x) v) (x) w], b in B(F, H), v in M(H, K), w in N(K, G)
        b = bd[(F, H)]
        fam = {K: co[(F, G)].inj(K) * kron(Mb.la[(H, F, K)], eye(Np.dims[(K, G)])) for K in objs}
        la[(H, F, G)] = co[(H, G)].map_out(fam, left=b)
        e = dd[(H, G)]
        fam = {K: co[(F, G)].inj(K) * kron(eye(Mp.dims[(F, K)]), Nb.ra[(H, K, G)]) for K in objs}
        ra[(H, F, G)] = co[(F, H)].map_out(fam, right=e)
    return BimoduleObject(Mb.left, Nb.right, carrier, la, ra, name=P.name, coends=co)


def _place(co: CoendPresentation, b, m: Matrix) -> Matrix:
    """Embed a map into block b of the ambient sum."""
    from .base import _sdm
    off = co.offsets[b]
    d = {off + i: dict(r) for i, r in m.to_sparse().rep.items()}
    return _sdm(d, (co.q.ambient, m.shape[1]))


# ---------------------------------------------------------------------------
# bimodule morphisms and Morita witnesses

def bimodule_morphism_system(X: BimoduleObject, Y: BimoduleObject) -> LinearSystem:
    sys = morphism_system(X.carrier.prof, Y.carrier.prof, (X.carrier, Y.carrier))
    objs = X.C.objects
    Xd, Yd = X.carrier.prof.dims, Y.carrier.prof.dims
    bd, ad = X.left.carrier.prof.dims, X.right.carrier.prof.dims
    for H, F, G in product(objs, repeat=3):
        k = bd[(F, H)]
        a = vec_lxr(eye(Yd[(F, G)]), X.la[(H, F, G)])
        b = vec_lxr(Y.la[(H, F, G)], eye(k * Xd[(H, G)])) * vec_kron_left(k, Yd[(H, G)], Xd[(H, G)])
        sys.add_linear([((F, G), a), ((H, G), -b)])
        k = ad[(H, G)]
        a = vec_lxr(eye(Yd[(F, G)]), X.ra[(H, F, G)])
        b = vec_lxr(Y.ra[(H, F, G)], eye(Xd[(F, H)] * k)) * vec_kron_right(k, Yd[(F, H)], Xd[(F, H)])
        sys.add_linear([((F, G), a), ((F, H), -b)])
    return sys


def bimodule_morphism_space(X: BimoduleObject, Y: BimoduleObject):
    return solve_map_space(bimodule_morphism_system(X, Y))


@dataclass
class IsoSearch:
    status: str                     # "found", "none", "inconclusive"
    comps: Optional[Dict] = None
    detail: str = ""


def find_invertible(basis: List[Dict], shapes: Dict[Tuple, Tuple[int, int]], bound: int = 12,
                    symbolic_limit: int = 8) -> IsoSearch:
    """Search a solution space for an element with every component invertible."""
    if any(r != c for r, c in shapes.values()):
        return IsoSearch("none", detail="non-square component")
    if not basis:
        ok = all(r == 0 for r, _ in shapes.values())
        return IsoSearch("found", {k: zeros(0, 0) for k in shapes}) if ok else IsoSearch("none", detail="no morphisms")
    r = len(basis)
    for t in range(1, bound + 1):
        coeffs = [t ** i for i in range(r)]
        cand = combine(basis, coeffs)
        if all(is_isomorphism(m) for m in cand.values()):
            return IsoSearch("found", cand, detail=f"moment point t={t}")
    for i in range(r):
        cand = basis[i]
        if all(is_isomorphism(m) for m in cand.values()):
            return IsoSearch("found", cand, detail=f"basis element {i}")
    if max(n for n, _ in shapes.values()) > symbolic_limit:
        return IsoSearch("inconclusive", detail="sweep exhausted, components too large for symbolic fallback")
    xs = sympy.symbols(f"c0:{r}")
    total = sympy.Integer(1)
    for key in shapes:
        n = shapes[key][0]
        if n == 0:
            continue
        M = sympy.zeros(n, n)
        for b, x in zip(basis, xs):
            M += x * sympy.Matrix(to_lists(b[key]))
        det = sympy.expand(M.det())
        if det == 0:
            return IsoSearch("none", detail=f"determinant vanishes identically at {key}")
        total = sympy.expand(total * det)
    deg = sympy.Poly(total, *xs).total_degree()
    # Kronecker substitution turns the nonzero polynomial into a nonzero univariate one
    sub = {x: sympy.Symbol("t") ** ((deg + 1) ** i) for i, x in enumerate(xs)}
    uni = sympy.Poly(sympy.expand(total.subs(sub)), sympy.Symbol("t"))
    for t in range(0, uni.degree() + 2):
        if uni.eval(t) != 0:
            coeffs = [t ** ((deg + 1) ** i) for i in range(r)]
            cand = combine(basis, coeffs)
            if all(is_isomorphism(m) for m in cand.values()):
                return IsoSearch("found", cand, detail="symbolic determinant")
    return IsoSearch("inconclusive", detail="symbolic search failed")


def find_bimodule_iso(X: BimoduleObject, Y: BimoduleObject) -> IsoSearch:
    if X.base == BOOL:
        Xd, Yd = X.carrier.prof.dims, Y.carrier.prof.dims
        if Xd == Yd:
            return IsoSearch("found", {k: eye(v) for k, v in Xd.items()}, detail="equal relations")
        diff = next(k for k in Xd if Xd[k] != Yd[k])
        return IsoSearch("none", detail=f"relations differ at {diff}")
    sys = bimodule_morphism_system(X, Y)
    return find_invertible(solve_map_space(sys), sys.unknowns)


@dataclass
class MoritaWitness:
    A: MonoidObject
    B: MonoidObject
    M: BimoduleObject   # B-A
    N: BimoduleObject   # A-B


def verify_morita_witness(w: MoritaWitness) -> ValidationReport:
    rep = ValidationReport("Morita witness")
    for label, X in (("M", w.M), ("N", w.N)):
        rep.merge(validate_bimodule(X), f"{label}: ")
    if w.M.left is not w.B or w.M.right is not w.A or w.N.left is not w.A or w.N.right is not w.B:
        rep.check(False, "bimodule monoids do not match", ())
    if not rep.ok:
        return rep
    MN = balanced_tensor(w.M, w.N)
    NM = balanced_tensor(w.N, w.M)
    s1 = find_bimodule_iso(MN, regular_bimodule(w.B))
    s2 = find_bimodule_iso(NM, regular_bimodule(w.A))
    rep.status = "inconclusive" if "inconclusive" in (s1.status, s2.status) else None
    rep.check(s1.status == "found", "M (x)_A N iso to B", (s1.status, s1.detail))
    rep.check(s2.status == "found", "N (x)_B M iso to A", (s2.status, s2.detail))
    return rep


# ---------------------------------------------------------------------------
# Bool ideals

Relation = FrozenSet[Tuple]


def support(T: TambaraModule) -> Relation:
    return frozenset(k for k, v in T.prof.dims.items() if v)


def bool_closure(Mb: BimoduleObject, seeds: Sequence[Tuple]) -> Relation:
    """Least sub-bimodule of a Bool bimodule containing the seeds."""
    if Mb.base != BOOL:
        raise UnsupportedBase("closure enumeration needs the Bool base")
    C = Mb.C
    c = C.cat.dims
    objs = C.objects
    T = C.tensor_obj
    bsup, asup = support(Mb.left.carrier), support(Mb.right.carrier)
    S = set(seeds)
    todo = list(S)
    while todo:
        F, G = todo.pop()
        new = []
        new += [(F2, G) for F2 in objs if c[(F2, F)]]
        new += [(F, G2) for G2 in objs if c[(G, G2)]]
        new += [(T[D, F], T[D, G]) for D in objs]
        new += [(F2, G) for F2 in objs if (F2, F) in bsup]
        new += [(F, G2) for G2 in objs if (G, G2) in asup]
        for p in new:
            if p not in S:
                S.add(p)
                todo.append(p)
    return frozenset(S)


def is_closed(Mb: BimoduleObject, S: Relation) -> bool:
    return bool_closure(Mb, list(S)) == S


@dataclass
class SubBimodule:
    parent: BimoduleObject
    relation: Optional[Relation] = None            # Bool
    spaces: Optional[Dict[Tuple, Matrix]] = None   # Rat, columns span the subspace


def principal_ideal(Mb: BimoduleObject, seed: Tuple) -> SubBimodule:
    if Mb.base != BOOL:
        raise UnsupportedBase("principal ideals are enumerated in the Bool base only")
    if seed not in support(Mb.carrier):
        raise ValueError(f"seed {seed} is not an element of the bimodule")
    return SubBimodule(Mb, relation=bool_closure(Mb, [seed]))


def ideal_lattice(A: MonoidObject) -> List[Relation]:
    """All sub-bimodules of the regular bimodule, as unions of principal ideals."""
    if A.base != BOOL:
        raise UnsupportedBase("ideal lattices are enumerated in the Bool base only")
    R = regular_bimodule(A)
    principal = {bool_closure(R, [s]) for s in sorted(support(A.carrier), key=repr)}
    lattice = {frozenset()}
    for p in sorted(principal, key=lambda s: (len(s), sorted(map(repr, s)))):
        lattice |= {s | p for s in lattice}
    return sorted(lattice, key=lambda s: (len(s), sorted(map(repr, s))))


def is_simple(A: MonoidObject) -> bool:
    return set(ideal_lattice(A)) == {frozenset(), support(A.carrier)}


def check_subbimodule(Mb: BimoduleObject, cand: SubBimodule) -> ValidationReport:
    rep = ValidationReport("sub-bimodule")
    if Mb.base == BOOL:
        S = cand.relation
        rep.check(S <= support(Mb.carrier), "contained in the bimodule", ())
        closed = bool_closure(Mb, list(S))
        for p in sorted(closed - S, key=repr):
            rep.check(False, "closed under actions and zeta", p)
        return rep
    V = cand.spaces
    P = Mb.carrier.prof
    objs = Mb.C.objects
    c = Mb.C.cat.dims
    T = Mb.C.tensor_obj

    def inside(img: Matrix, key) -> bool:
        return rank(hstack([V[key], img])) == rank(V[key])

    for F, G in product(objs, objs):
        for G2 in objs:
            img = P.post[(F, G, G2)] * kron(eye(c[(G, G2)]), V[(F, G)])
            rep.check(inside(img, (F, G2)), "closed under post", (F, G, G2))
        for F2 in objs:
            img = P.pre[(F2, F, G)] * kron(V[(F, G)], eye(c[(F2, F)]))
            rep.check(inside(img, (F2, G)), "closed under pre", (F2, F, G))
        for D in objs:
            rep.check(inside(Mb.carrier.zeta[(D, F, G)] * V[(F, G)], (T[D, F], T[D, G])), "closed under zeta", (D, F, G))
    bd, ad = Mb.left.carrier.prof.dims, Mb.right.carrier.prof.dims
    for H, F, G in product(objs, repeat=3):
        img = Mb.la[(H, F, G)] * kron(eye(bd[(F, H)]), V[(H, G)])
        rep.check(inside(img, (F, G)), "closed under left action", (H, F, G))
        img = Mb.ra[(H, F, G)] * kron(V[(F, H)], eye(ad[(H, G)]))
        rep.check(inside(img, (F, G)), "closed under right action", (H, F, G))
    return rep


def all_bool_subbimodules(Mb: BimoduleObject) -> List[Relation]:
    """Brute force over every sub-relation; used as an oracle for the lattice."""
    sup = sorted(support(Mb.carrier), key=repr)
    out = []
    for mask in range(1 << len(sup)):
        S = frozenset(p for i, p in enumerate(sup) if mask >> i & 1)
        if is_closed(Mb, S):
            out.append(S)
    return out


# ---------------------------------------------------------------------------
# Bool bimodules from relations

def bool_tambara(C: MonoidalStructure, rel: Relation, name: str = "") -> TambaraModule:
    """The Bool Tambara module C -> C with the given support; laws are checked by validation."""
    from .examples_io import bool_map
    from .fincat import regular_module
    reg = regular_module(C)
    objs = C.objects
    c = C.cat.dims
    T = C.tensor_obj
    dims = {(F, G): int((F, G) in rel) for F, G in product(objs, objs)}
    post = {(y, x, x2): bool_map(dims[(y, x2)], c[(x, x2)] * dims[(y, x)]) for y in objs for x, x2 in product(objs, objs)}
    pre = {(y2, y, x): bool_map(dims[(y2, x)], dims[(y, x)] * c[(y2, y)]) for y2, y in product(objs, objs) for x in objs}
    zeta = {(H, y, x): bool_map(dims[(T[H, y], T[H, x])], dims[(y, x)]) for H in objs for y, x in product(objs, objs)}
    return TambaraModule(Profunctor(C.cat, C.cat, dims, post, pre, name=name), reg, reg, zeta, name=name)


def bool_bimodule(B: MonoidObject, A: MonoidObject, rel: Relation, name: str = "") -> BimoduleObject:
    from .examples_io import bool_map
    C = A.C
    objs = C.objects
    Psi = bool_tambara(C, rel, name)
    d = Psi.prof.dims
    bd, ad = B.carrier.prof.dims, A.carrier.prof.dims
    la = {(H, F, G): bool_map(d[(F, G)], bd[(F, H)] * d[(H, G)]) for H, F, G in product(objs, repeat=3)}
    ra = {(H, F, G): bool_map(d[(F, G)], d[(F, H)] * ad[(H, G)]) for H, F, G in product(objs, repeat=3)}
    return BimoduleObject(B, A, Psi, la, ra, name=name)


def relational_composite(R: Relation, S: Relation, objs) -> Relation:
    return frozenset((F, G) for F, G in product(objs, objs) if any((F, H) in R and (H, G) in S for H in objs))


def _relation_closed(C: MonoidalStructure, lsup: Relation, rsup: Relation, S: Relation) -> bool:
    c, T, objs = C.cat.dims, C.tensor_obj, C.objects
    for F, G in S:
        for H in objs:
            if ((c[(H, F)] or (H, F) in lsup) and (H, G) not in S) or \
                    ((c[(G, H)] or (G, H) in rsup) and (F, H) not in S) or (T[H, F], T[H, G]) not in S:
                return False
    return True


def enumerate_bool_morita(A: MonoidObject, B: MonoidObject) -> Dict:
    """Every pair of Bool bimodules (M: B-A, N: A-B), tested as Morita witnesses."""
    objs = A.C.objects
    pairs = sorted(product(objs, objs), key=repr)
    sa, sb = support(A.carrier), support(B.carrier)
    cands_M, cands_N = [], []
    for mask in range(1 << len(pairs)):
        S = frozenset(p for i, p in enumerate(pairs) if mask >> i & 1)
        # closure is necessary for validity; the validator stays the authority
        if _relation_closed(A.C, sb, sa, S) and validate_bimodule(bool_bimodule(B, A, S)).ok:
            cands_M.append(S)
        if _relation_closed(A.C, sa, sb, S) and validate_bimodule(bool_bimodule(A, B, S)).ok:
            cands_N.append(S)
    witnesses = [(M, N) for M in cands_M for N in cands_N
                 if relational_composite(M, N, objs) == sb and relational_composite(N, M, objs) == sa]
    return {"bimodules_BA": len(cands_M), "bimodules_AB": len(cands_N), "witnesses": witnesses}


# ---------------------------------------------------------------------------
# monoid morphisms and transport of modules

def validate_monoid_morphism(f: Dict[Tuple, Matrix], A: MonoidObject, B: MonoidObject) -> ValidationReport:
    rep = ValidationReport("monoid morphism")
    rep.merge(validate_tambara_morphism(TambaraMorphism(A.carrier, B.carrier, f)))
    if not rep.ok or A.base == BOOL:
        return rep
    objs = A.C.objects
    for F, G in product(objs, objs):
        rep.check(same(f[(F, G)] * A.unit[(F, G)], B.unit[(F, G)]), "preserves unit", (F, G))
    for H, F, G in product(objs, repeat=3):
        lhs = f[(F, G)] * A.mult[(H, F, G)]
        rhs = B.mult[(H, F, G)] * kron(f[(F, H)], f[(H, G)])
        rep.check(same(lhs, rhs), "preserves multiplication", (H, F, G))
    return rep


@dataclass
class LeftModule:
    monoid: MonoidObject
    carrier: TambaraModule
    act: Dict[Tuple, Matrix]       # B(F, H) (x) X(H, G) -> X(F, G)
    name: str = ""


def validate_left_module(X: LeftModule) -> ValidationReport:
    B = X.monoid
    rep = ValidationReport(f"left module {X.name}")
    rep.merge(validate_tambara(X.carrier))
    if not rep.ok or X.carrier.base == BOOL:
        return rep
    rep.merge(_family_laws(X.act, B.carrier, X.carrier, X.carrier, "action"))
    objs = B.C.objects
    d, bd, c = X.carrier.prof.dims, B.carrier.prof.dims, B.C.cat.dims
    a = X.act
    for F, H, K, G in product(objs, repeat=4):
        lhs = a[(K, F, G)] * kron(B.mult[(H, F, K)], eye(d[(K, G)]))
        rhs = a[(H, F, G)] * kron(eye(bd[(F, H)]), a[(K, H, G)])
        rep.check(same(lhs, rhs), "associative", (F, H, K, G))
    for H, F, G in product(objs, repeat=3):
        lhs = a[(H, F, G)] * kron(B.unit[(F, H)], eye(d[(H, G)]))
        rhs = X.carrier.prof.pre[(F, H, G)] * swap(c[(F, H)], d[(H, G)])
        rep.check(same(lhs, rhs), "unital", (H, F, G))
    return rep


def transport_modules_along_monoid_iso(f: Dict[Tuple, Matrix], A: MonoidObject, B: MonoidObject,
                                       X: LeftModule) -> LeftModule:
    """f*: a left B-module becomes a left A-module with action a (x) v |-> act(f(a) (x) v)."""
    if X.monoid is not B:
        raise InvalidMorphism("module is not over the target monoid")
    if not validate_monoid_morphism(f, A, B).ok:
        raise InvalidMorphism("not a monoid morphism")
    if not all(is_isomorphism(m, A.base) for m in f.values()):
        raise InvalidMorphism("not invertible")
    objs = A.C.objects
    d = X.carrier.prof.dims
    act = {(H, F, G): canon(A.base, X.act[(H, F, G)] * kron(f[(F, H)], eye(d[(H, G)])))
           for H, F, G in product(objs, repeat=3)}
    return LeftModule(A, X.carrier, act, name=f"f*{X.name}")


def free_left_module(B: MonoidObject) -> LeftModule:
    return LeftModule(B, B.carrier, dict(B.mult), name=f"free({B.name})")


def invert_components(f: Dict[Tuple, Matrix], base: str) -> Dict[Tuple, Matrix]:
    return {k: (inverse(m) if base == RAT else m) for k, m in f.items()}
