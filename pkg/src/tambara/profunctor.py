"""Profunctors, coends and Tambara modules over finite strict module categories.

A profunctor P from M to N has values P(y, x) for y in N and x in M,
contravariant in y and covariant in x.  Action tables:

* ``post[(y, x, x2)]``: M(x, x2) (x) P(y, x) -> P(y, x2), on kron(f, v);
* ``pre[(y2, y, x)]``:  P(y, x) (x) N(y2, y) -> P(y2, x), on kron(v, g).

A Tambara module adds ``zeta[(H, y, x)]``: P(y, x) -> P(H.y, H.x).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .base import (BOOL, RAT, LinearSystem, _sdm, Matrix, NotInvertible, QuotientPresentation, bool_map_ok,
                   canon, eye, hstack, inverse, is_isomorphism, is_zero, kron, permute_tensor, quotient,
                   same, solve_map_space, submatrix, swap, vec_kron_left,
                   vec_kron_right, vec_lxr, zeros)
from .fincat import (FinCategory, InvalidFunctor, ModuleFunctor, ModuleStructure, MonoidalStructure,
                     opposite_category, product_category, regular_module, sweep_vectors)
from .report import ValidationReport


class InvalidComposite(ValueError):
    pass


class MissingGenerator(ValueError):
    pass


class InvalidRestriction(ValueError):
    pass


# ---------------------------------------------------------------------------
# profunctors

@dataclass
class Profunctor:
    src: FinCategory
    tgt: FinCategory
    dims: Dict[Tuple, int]
    post: Dict[Tuple, Matrix]
    pre: Dict[Tuple, Matrix]
    name: str = ""
    coends: Optional[Dict[Tuple, "CoendPresentation"]] = field(default=None, repr=False)

    @property
    def base(self):
        return self.src.base

    def post_by(self, y, x, x2, f: Matrix) -> Matrix:
        """v |-> P(y, f)(v) for f in M(x, x2)."""
        return canon(self.base, self.post[(y, x, x2)] * kron(f, eye(self.dims[(y, x)])))

    def pre_by(self, y2, y, x, g: Matrix) -> Matrix:
        """v |-> P(g, x)(v) for g in N(y2, y)."""
        return canon(self.base, self.pre[(y2, y, x)] * kron(eye(self.dims[(y, x)]), g))


def hom_profunctor(cat: FinCategory) -> Profunctor:
    objs = cat.objects
    return Profunctor(cat, cat, dict(cat.dims),
                      {(y, x, x2): cat.comp[(y, x, x2)] for y, x, x2 in product(objs, repeat=3)},
                      {(y2, y, x): cat.comp[(y2, y, x)] for y2, y, x in product(objs, repeat=3)},
                      name=f"Hom({cat.name})")


def zero_profunctor(src: FinCategory, tgt: FinCategory) -> Profunctor:
    dims = {(y, x): 0 for y in tgt.objects for x in src.objects}
    post = {(y, x, x2): zeros(0, 0) for y in tgt.objects for x, x2 in product(src.objects, src.objects)}
    pre = {(y2, y, x): zeros(0, 0) for y2, y in product(tgt.objects, tgt.objects) for x in src.objects}
    return Profunctor(src, tgt, dims, post, pre, name="0")


def validate_profunctor(P: Profunctor) -> ValidationReport:
    rep = ValidationReport(f"profunctor {P.name}")
    M, N = P.src, P.tgt
    d, base = P.dims, P.base
    for y, x, x2 in product(N.objects, M.objects, M.objects):
        m = P.post.get((y, x, x2))
        rep.check(m is not None and m.shape == (d[(y, x2)], M.dims[(x, x2)] * d[(y, x)]), "post shape", (y, x, x2))
    for y2, y, x in product(N.objects, N.objects, M.objects):
        m = P.pre.get((y2, y, x))
        rep.check(m is not None and m.shape == (d[(y2, x)], d[(y, x)] * N.dims[(y2, y)]), "pre shape", (y2, y, x))
    if not rep.ok:
        return rep
    if base == BOOL:
        for key, m in list(P.post.items()) + list(P.pre.items()):
            rep.check(bool_map_ok(m), "action defined (closure)", key)
        return rep

    def eq(a, b):
        return same(canon(base, a), canon(base, b))

    for y in N.objects:
        for x in M.objects:
            n = d[(y, x)]
            rep.check(eq(P.post_by(y, x, x, M.ident[x]), eye(n)), "post unit", (y, x))
            rep.check(eq(P.pre_by(y, y, x, N.ident[y]), eye(n)), "pre unit", (y, x))
        for x, x2, x3 in product(M.objects, repeat=3):
            lhs = P.post[(y, x, x3)] * kron(M.comp[(x, x2, x3)], eye(d[(y, x)]))
            rhs = P.post[(y, x2, x3)] * kron(eye(M.dims[(x2, x3)]), P.post[(y, x, x2)])
            rep.check(eq(lhs, rhs), "post associativity", (y, x, x2, x3))
    for x in M.objects:
        for y, y2, y3 in product(N.objects, repeat=3):
            lhs = P.pre[(y3, y2, x)] * kron(P.pre[(y2, y, x)], eye(N.dims[(y3, y2)]))
            rhs = P.pre[(y3, y, x)] * kron(eye(d[(y, x)]), N.comp[(y3, y2, y)])
            rep.check(eq(lhs, rhs), "pre associativity", (y3, y2, y, x))
    for y, y2 in product(N.objects, N.objects):
        for x, x2 in product(M.objects, M.objects):
            lhs = P.post[(y2, x, x2)] * kron(eye(M.dims[(x, x2)]), P.pre[(y2, y, x)])
            rhs = P.pre[(y2, y, x2)] * kron(P.post[(y, x, x2)], eye(N.dims[(y2, y)]))
            rep.check(eq(lhs, rhs), "actions commute", (y2, y, x, x2))
    return rep


# ---------------------------------------------------------------------------
# coends

@dataclass
class CoendPresentation:
    """Quotient of the direct sum over middle objects b of L(b) (x) R(b)."""
    base: str
    middle: List[Hashable]
    ldim: Dict[Hashable, int]
    rdim: Dict[Hashable, int]
    offsets: Dict[Hashable, int]
    q: QuotientPresentation

    @property
    def dim(self) -> int:
        return self.q.dim

    def block(self, b) -> List[int]:
        o = self.offsets[b]
        return list(range(o, o + self.ldim[b] * self.rdim[b]))

    def inj(self, b) -> Matrix:
        """L(b) (x) R(b) -> coend."""
        return submatrix(self.q.proj, range(self.q.dim), self.block(b))

    def section_block(self, b) -> Matrix:
        return submatrix(self.q.section, self.block(b), range(self.q.dim))

    def map_out(self, family: Dict[Hashable, Matrix], left: int = 1, right: int = 1,
                check: bool = False) -> Matrix:
        """The map kron(I_left, coend, I_right) -> E induced by an extranatural family.

        ``family[b]`` acts on kron(e_left, l, r, e_right) for b in the middle.
        """
        out = None
        for b in self.middle:
            f = family.get(b)
            if f is None or self.ldim[b] * self.rdim[b] == 0:
                continue
            term = f * kron(kron(eye(left), self.section_block(b)), eye(right))
            out = term if out is None else out + term
        if out is None:
            rows = next((f.shape[0] for f in family.values() if f is not None), 0)
            out = zeros(rows, left * self.dim * right)
        if check and self.base == RAT:
            amb = hstack([family[b] if b in family else zeros(out.shape[0], left * self.ldim[b] * self.rdim[b] * right)
                          for b in self.middle], rows=out.shape[0])
            rel = kron(kron(eye(left), self.q.relations), eye(right))
            if not is_zero(_reorder_blocks(self, amb, left, right) * rel):
                raise InvalidComposite("family is not extranatural")
        return canon(self.base, out)


def _reorder_blocks(co: CoendPresentation, amb: Matrix, left: int, right: int) -> Matrix:
    """Columns of a blockwise family rearranged to match kron(I_left, ambient, I_right)."""
    if left == 1 and right == 1:
        return amb
    n = co.q.ambient
    cols = []
    widths = [co.ldim[b] * co.rdim[b] for b in co.middle]
    starts = []
    s = 0
    for w in widths:
        starts.append(s)
        s += left * w * right
    for i in range(left):
        for a in range(n):
            bi = next(k for k, b in enumerate(co.middle)
                      if co.offsets[b] <= a < co.offsets[b] + widths[k])
            local = a - co.offsets[co.middle[bi]]
            for j in range(right):
                cols.append(starts[bi] + (i * widths[bi] + local) * right + j)
    return submatrix(amb, range(amb.shape[0]), cols)


def coend(base: str, middle: FinCategory, ldim: Dict, rdim: Dict, lpost, rpre,
          objects: Optional[Sequence] = None) -> CoendPresentation:
    """Coend of L (x) R over ``middle`` (or its full subcategory on ``objects``).

    lpost(b, b2): N(b, b2) (x) L(b) -> L(b2) on kron(g, l).
    rpre(b, b2):  R(b2) (x) N(b, b2) -> R(b) on kron(r, g).
    """
    objs = list(objects) if objects is not None else list(middle.objects)
    offsets = {}
    total = 0
    for b in objs:
        offsets[b] = total
        total += ldim[b] * rdim[b]
    if base == BOOL:
        return CoendPresentation(base, objs, dict(ldim), dict(rdim), offsets, quotient(BOOL, total))
    cols = []
    for b, b2 in product(objs, objs):
        n = middle.dims[(b, b2)]
        lb, rb2 = ldim[b], rdim[b2]
        if n * lb * rb2 == 0:
            continue
        width = n * lb * rb2
        part1 = kron(lpost(b, b2), eye(rb2))
        part2 = kron(eye(lb), rpre(b, b2)) * permute_tensor([n, lb, rb2], [1, 2, 0])
        d: dict = {}
        for i, row in part1.to_sparse().rep.items():
            d.setdefault(offsets[b2] + i, {}).update(row)
        for i, row in part2.to_sparse().rep.items():
            tgt = d.setdefault(offsets[b] + i, {})
            for j, v in row.items():
                nv = tgt.get(j, 0) - v
                if nv:
                    tgt[j] = nv
                else:
                    tgt.pop(j, None)
        cols.append(_sdm({i: r for i, r in d.items() if r}, (total, width)))
    rel = hstack(cols, rows=total) if cols else zeros(total, 0)
    return CoendPresentation(base, objs, dict(ldim), dict(rdim), offsets, quotient(RAT, total, rel))


def composite_coend(P: Profunctor, Q: Profunctor, z, x, objects=None) -> CoendPresentation:
    """(P o Q)(z, x) = coend over y of P(z, y) (x) Q(y, x)."""
    mid = P.src
    return coend(P.base, mid,
                 {y: P.dims[(z, y)] for y in mid.objects},
                 {y: Q.dims[(y, x)] for y in mid.objects},
                 lambda b, b2: P.post[(z, b, b2)],
                 lambda b, b2: Q.pre[(b, b2, x)],
                 objects)


def _check_composable(P: Profunctor, Q: Profunctor):
    if P.base != Q.base:
        raise InvalidComposite("different bases")
    if list(Q.tgt.objects) != list(P.src.objects) or Q.tgt.dims != P.src.dims:
        raise InvalidComposite("middle categories differ")


def materialize_coend(P: Profunctor, Q: Profunctor, z, x, strategy: str = "full",
                      generators: Optional[Sequence] = None) -> CoendPresentation:
    _check_composable(P, Q)
    if strategy == "full":
        return composite_coend(P, Q, z, x)
    if strategy == "generator":
        if not generators:
            raise MissingGenerator("generator strategy needs a declared generator")
        return composite_coend(P, Q, z, x, objects=list(generators))
    raise ValueError(f"unknown strategy {strategy!r}")


def generator_comparison(P: Profunctor, Q: Profunctor, z, x, generators) -> Matrix:
    """The map from the coend over the generators to the full coend."""
    small = materialize_coend(P, Q, z, x, "generator", generators)
    full = materialize_coend(P, Q, z, x, "full")
    return small.map_out({b: full.inj(b) for b in small.middle})


def compose_profunctors(P: Profunctor, Q: Profunctor) -> Profunctor:
    """P o Q with (P o Q)(z, x) = coend_y P(z, y) (x) Q(y, x)."""
    _check_composable(P, Q)
    N, M, K = P.tgt, P.src, Q.src
    co = {(z, x): composite_coend(P, Q, z, x) for z in N.objects for x in K.objects}
    dims = {k: c.dim for k, c in co.items()}
    post = {}
    for z in N.objects:
        for x, x2 in product(K.objects, K.objects):
            src, tgt = co[(z, x)], co[(z, x2)]
            k = K.dims[(x, x2)]
            fam = {}
            for y in M.objects:
                a, b = P.dims[(z, y)], Q.dims[(y, x)]
                fam[y] = tgt.inj(y) * kron(eye(a), Q.post[(y, x, x2)]) * permute_tensor([k, a, b], [1, 0, 2])
            post[(z, x, x2)] = src.map_out(fam, left=k)
    pre = {}
    for z2, z in product(N.objects, N.objects):
        for x in K.objects:
            src, tgt = co[(z, x)], co[(z2, x)]
            n = N.dims[(z2, z)]
            fam = {}
            for y in M.objects:
                a, b = P.dims[(z, y)], Q.dims[(y, x)]
                fam[y] = tgt.inj(y) * kron(P.pre[(z2, z, y)], eye(b)) * permute_tensor([a, b, n], [0, 2, 1])
            pre[(z2, z, x)] = src.map_out(fam, right=n)
    return Profunctor(K, N, dims, post, pre, name=f"({P.name}o{Q.name})", coends=co)


# ---------------------------------------------------------------------------
# Tambara modules

@dataclass
class TambaraModule:
    prof: Profunctor
    src: ModuleStructure
    tgt: ModuleStructure
    zeta: Dict[Tuple, Matrix]
    name: str = ""

    @property
    def base(self):
        return self.prof.base

    @property
    def C(self) -> MonoidalStructure:
        return self.src.C

    @property
    def dims(self):
        return self.prof.dims

    def value(self, y, x) -> int:
        return self.prof.dims[(y, x)]


@dataclass
class TambaraMorphism:
    source: TambaraModule
    target: TambaraModule
    comps: Dict[Tuple, Matrix]
    name: str = ""

    def is_iso(self) -> bool:
        return all(is_isomorphism(m, self.source.base) for m in self.comps.values())


def identity_tambara(M: ModuleStructure) -> TambaraModule:
    P = hom_profunctor(M.cat)
    zeta = {(H, y, x): M.whisker(H, y, x) for H in M.C.objects for y, x in product(M.objects, M.objects)}
    return TambaraModule(P, M, M, zeta, name=f"Hom({M.name})")


def zero_tambara(M: ModuleStructure, N: ModuleStructure) -> TambaraModule:
    P = zero_profunctor(M.cat, N.cat)
    zeta = {(H, y, x): zeros(0, 0) for H in M.C.objects for y in N.objects for x in M.objects}
    return TambaraModule(P, M, N, zeta, name="0")


def validate_tambara(T: TambaraModule) -> ValidationReport:
    P, Ms, Ns = T.prof, T.src, T.tgt
    rep = ValidationReport(f"tambara {T.name}")
    rep.merge(validate_profunctor(P))
    if not rep.ok:
        return rep
    C = Ms.C
    d, base = P.dims, P.base
    for H in C.objects:
        for y, x in product(Ns.objects, Ms.objects):
            z = T.zeta.get((H, y, x))
            ok = z is not None and z.shape == (d[(Ns.act(H, y), Ms.act(H, x))], d[(y, x)])
            rep.check(ok, "zeta shape", (H, y, x))
    if not rep.ok:
        return rep
    if base == BOOL:
        for key, m in T.zeta.items():
            rep.check(bool_map_ok(m), "zeta defined (action closure)", key)
        return rep

    def eq(a, b):
        return same(canon(base, a), canon(base, b))

    Z = T.zeta
    for H in C.objects:
        for y in Ns.objects:
            Hy = Ns.act(H, y)
            for x, x2 in product(Ms.objects, Ms.objects):
                Hx, Hx2 = Ms.act(H, x), Ms.act(H, x2)
                lhs = Z[(H, y, x2)] * P.post[(y, x, x2)]
                rhs = P.post[(Hy, Hx, Hx2)] * kron(Ms.whisker(H, x, x2), Z[(H, y, x)])
                rep.check(eq(lhs, rhs), "zeta natural in x", (H, y, x, x2))
        for x in Ms.objects:
            Hx = Ms.act(H, x)
            for y2, y in product(Ns.objects, Ns.objects):
                lhs = Z[(H, y2, x)] * P.pre[(y2, y, x)]
                rhs = P.pre[(Ns.act(H, y2), Ns.act(H, y), Hx)] * kron(Z[(H, y, x)], Ns.whisker(H, y2, y))
                rep.check(eq(lhs, rhs), "zeta natural in y", (H, y2, y, x))
    for H, H2 in product(C.objects, C.objects):
        c = C.cat.dims[(H, H2)]
        if c == 0:
            continue
        for y, x in product(Ns.objects, Ms.objects):
            Hy, H2y, Hx, H2x = Ns.act(H, y), Ns.act(H2, y), Ms.act(H, x), Ms.act(H2, x)
            lhs = P.post[(Hy, Hx, H2x)] * kron(Ms.act_on(H, H2, x), Z[(H, y, x)])
            rhs = P.pre[(Hy, H2y, H2x)] * kron(Z[(H2, y, x)], Ns.act_on(H, H2, y)) * swap(c, d[(y, x)])
            rep.check(eq(lhs, rhs), "zeta extranatural in H", (H, H2, y, x))
    T_ = C.tensor_obj
    for G, F in product(C.objects, C.objects):
        for y, x in product(Ns.objects, Ms.objects):
            Fy, Fx = Ns.act(F, y), Ms.act(F, x)
            rep.check(eq(Z[(T_[G, F], y, x)], Z[(G, Fy, Fx)] * Z[(F, y, x)]), "zeta multiplicative", (G, F, y, x))
    for y, x in product(Ns.objects, Ms.objects):
        rep.check(eq(Z[(C.unit, y, x)], eye(d[(y, x)])), "zeta unital", (y, x))
    return rep


def validate_tambara_morphism(t: TambaraMorphism, tambara: bool = True) -> ValidationReport:
    S, T = t.source, t.target
    rep = ValidationReport(f"tambara morphism {t.name}")
    Ps, Pt = S.prof, T.prof
    M, N = Ps.src, Ps.tgt
    base = Ps.base
    for y, x in product(N.objects, M.objects):
        m = t.comps.get((y, x))
        rep.check(m is not None and m.shape == (Pt.dims[(y, x)], Ps.dims[(y, x)]), "component shape", (y, x))
    if not rep.ok:
        return rep
    if base == BOOL:
        for k, m in t.comps.items():
            rep.check(bool_map_ok(m), "inclusion of relations", k)
        return rep

    def eq(a, b):
        return same(canon(base, a), canon(base, b))

    c = t.comps
    for y in N.objects:
        for x, x2 in product(M.objects, M.objects):
            lhs = c[(y, x2)] * Ps.post[(y, x, x2)]
            rhs = Pt.post[(y, x, x2)] * kron(eye(M.dims[(x, x2)]), c[(y, x)])
            rep.check(eq(lhs, rhs), "natural in x", (y, x, x2))
    for y2, y in product(N.objects, N.objects):
        for x in M.objects:
            lhs = c[(y2, x)] * Ps.pre[(y2, y, x)]
            rhs = Pt.pre[(y2, y, x)] * kron(c[(y, x)], eye(N.dims[(y2, y)]))
            rep.check(eq(lhs, rhs), "natural in y", (y2, y, x))
    if tambara:
        for H in S.C.objects:
            for y, x in product(N.objects, M.objects):
                Hy, Hx = S.tgt.act(H, y), S.src.act(H, x)
                rep.check(eq(T.zeta[(H, y, x)] * c[(y, x)], c[(Hy, Hx)] * S.zeta[(H, y, x)]),
                          "Tambara axiom", (H, y, x))
    return rep


def morphism_system(S: Profunctor, T: Profunctor, zetas=None) -> LinearSystem:
    M, N = S.src, S.tgt
    sys = LinearSystem(S.base)
    for y, x in product(N.objects, M.objects):
        sys.add_unknown((y, x), T.dims[(y, x)], S.dims[(y, x)])
    for y in N.objects:
        for x, x2 in product(M.objects, M.objects):
            k = M.dims[(x, x2)]
            a = vec_lxr(eye(T.dims[(y, x2)]), S.post[(y, x, x2)])
            b = vec_lxr(T.post[(y, x, x2)], eye(k * S.dims[(y, x)])) * vec_kron_left(k, T.dims[(y, x)], S.dims[(y, x)])
            sys.add_linear([((y, x2), a), ((y, x), -b)])
    for y2, y in product(N.objects, N.objects):
        for x in M.objects:
            k = N.dims[(y2, y)]
            a = vec_lxr(eye(T.dims[(y2, x)]), S.pre[(y2, y, x)])
            b = vec_lxr(T.pre[(y2, y, x)], eye(S.dims[(y, x)] * k)) * vec_kron_right(k, T.dims[(y, x)], S.dims[(y, x)])
            sys.add_linear([((y2, x), a), ((y, x), -b)])
    if zetas is not None:
        (Sm, Tm) = zetas
        for H in Sm.C.objects:
            for y, x in product(N.objects, M.objects):
                Hy, Hx = Sm.tgt.act(H, y), Sm.src.act(H, x)
                sys.add([(Tm.zeta[(H, y, x)], (y, x), eye(S.dims[(y, x)])),
                         (-eye(T.dims[(Hy, Hx)]), (Hy, Hx), Sm.zeta[(H, y, x)])])
    return sys


def tambara_morphism_space(S: TambaraModule, T: TambaraModule):
    """Basis of Tambara morphisms S -> T (Rat) or the truth of S <= T (Bool)."""
    return solve_map_space(morphism_system(S.prof, T.prof, (S, T)))


def profunctor_morphism_space(S: Profunctor, T: Profunctor):
    return solve_map_space(morphism_system(S, T))


def morphism_space_dim(space) -> int:
    if isinstance(space, bool):
        return int(space)
    return len(space)


# ---------------------------------------------------------------------------
# composition of Tambara modules

def compose_tambara(S: TambaraModule, T: TambaraModule) -> TambaraModule:
    """S o T for T: K -> M and S: M -> N, zeta induced blockwise by zeta^S (x) zeta^T."""
    if S.src.C.objects != T.src.C.objects:
        raise InvalidComposite("different acting categories")
    P = compose_profunctors(S.prof, T.prof)
    Ms, K, N = S.src, T.src, S.tgt
    zeta = {}
    for H in Ms.C.objects:
        for z, x in product(N.objects, K.objects):
            src = P.coends[(z, x)]
            tgt = P.coends[(N.act(H, z), K.act(H, x))]
            fam = {y: tgt.inj(Ms.act(H, y)) * kron(S.zeta[(H, z, y)], T.zeta[(H, y, x)]) for y in Ms.objects}
            zeta[(H, z, x)] = src.map_out(fam)
    return TambaraModule(P, K, N, zeta, name=f"({S.name}o{T.name})")


def yoneda_unitor(T: TambaraModule, side: str = "left") -> Tuple[TambaraModule, TambaraMorphism, Dict]:
    """The composite with a hom module, the unitor onto T, and its inverse components.

    left: Hom_N o T -> T, n (x) v |-> T(n, -)(v).
    right: T o Hom_M -> T, v (x) m |-> T(-, m)(v).
    """
    P = T.prof
    if side == "left":
        comp = compose_tambara(identity_tambara(T.tgt), T)
    elif side == "right":
        comp = compose_tambara(T, identity_tambara(T.src))
    else:
        raise ValueError(side)
    comps, inv = {}, {}
    for z, x in product(T.tgt.objects, T.src.objects):
        co = comp.prof.coends[(z, x)]
        if side == "left":
            fam = {y: P.pre[(z, y, x)] * swap(T.tgt.cat.dims[(z, y)], P.dims[(y, x)]) for y in T.tgt.objects}
            inv[(z, x)] = canon(P.base, co.inj(z) * kron(T.tgt.cat.ident[z], eye(P.dims[(z, x)])))
        else:
            fam = {y: P.post[(z, y, x)] * swap(P.dims[(z, y)], T.src.cat.dims[(y, x)]) for y in T.src.objects}
            inv[(z, x)] = canon(P.base, co.inj(x) * kron(eye(P.dims[(z, x)]), T.src.cat.ident[x]))
        comps[(z, x)] = co.map_out(fam)
    return comp, TambaraMorphism(comp, T, comps, name=f"unitor-{side}"), inv


# ---------------------------------------------------------------------------
# restriction along module functors

def _same_objects(a: FinCategory, b: FinCategory) -> bool:
    return list(a.objects) == list(b.objects) and a.dims == b.dims


def restrict(Psi: TambaraModule, Phi: ModuleFunctor, side: str = "restrict") -> TambaraModule:
    """Restriction (Psi(y, Phi l)) or corestriction (Psi(Phi l, x)) along a module functor."""
    P = Psi.prof
    base = P.base
    L = Phi.source
    if side == "restrict":
        if not _same_objects(Phi.target.cat, Psi.src.cat):
            raise InvalidRestriction("functor target is not the source leg")
        N = Psi.tgt
        F = Phi.obj
        dims = {(y, l): P.dims[(y, F[l])] for y in N.objects for l in L.objects}
        post = {(y, l, l2): canon(base, P.post[(y, F[l], F[l2])] * kron(Phi.mor[(l, l2)], eye(dims[(y, l)])))
                for y in N.objects for l, l2 in product(L.objects, L.objects)}
        pre = {(y2, y, l): P.pre[(y2, y, F[l])] for y2, y in product(N.objects, N.objects) for l in L.objects}
        zeta = {}
        for H in L.C.objects:
            for y, l in product(N.objects, L.objects):
                Hy = N.act(H, y)
                HPl = Psi.src.act(H, F[l])
                Phl = F[L.act(H, l)]
                step = P.post_by(Hy, HPl, Phl, Phi.phi[(H, l)])
                zeta[(H, y, l)] = canon(base, step * Psi.zeta[(H, y, F[l])])
        Q = Profunctor(L.cat, N.cat, dims, post, pre, name=f"{P.name}|{Phi.name}")
        return TambaraModule(Q, L, N, zeta, name=f"{Psi.name}|{Phi.name}")
    if side == "corestrict":
        if not _same_objects(Phi.target.cat, Psi.tgt.cat):
            raise InvalidRestriction("functor target is not the target leg")
        M = Psi.src
        F = Phi.obj
        dims = {(l, x): P.dims[(F[l], x)] for l in L.objects for x in M.objects}
        post = {(l, x, x2): P.post[(F[l], x, x2)] for l in L.objects for x, x2 in product(M.objects, M.objects)}
        pre = {(l2, l, x): canon(base, P.pre[(F[l2], F[l], x)] * kron(eye(dims[(l, x)]), Phi.mor[(l2, l)]))
               for l2, l in product(L.objects, L.objects) for x in M.objects}
        zeta = {}
        for H in L.C.objects:
            for l, x in product(L.objects, M.objects):
                Hx = M.act(H, x)
                HPl = Psi.tgt.act(H, F[l])
                Phl = F[L.act(H, l)]
                step = P.pre_by(Phl, HPl, Hx, Phi.phi_inverse(H, l))
                zeta[(H, l, x)] = canon(base, step * Psi.zeta[(H, F[l], x)])
        Q = Profunctor(M.cat, L.cat, dims, post, pre, name=f"{Phi.name}|{P.name}")
        return TambaraModule(Q, M, L, zeta, name=f"{Phi.name}|{Psi.name}")
    raise ValueError(side)


def tambara_equal(A: TambaraModule, B: TambaraModule) -> bool:
    """Bit-exact equality of all tables."""
    if A.prof.dims != B.prof.dims:
        return False
    for tab_a, tab_b in ((A.prof.post, B.prof.post), (A.prof.pre, B.prof.pre), (A.zeta, B.zeta)):
        if set(tab_a) != set(tab_b) or not all(same(tab_a[k], tab_b[k]) for k in tab_a):
            return False
    return True


# ---------------------------------------------------------------------------
# representable modules and the adjunction

@dataclass
class Adjunction:
    P: TambaraModule          # Hom(-, Phi -)
    Q: TambaraModule          # Hom(Phi -, -)
    PQ: TambaraModule
    QP: TambaraModule
    counit: TambaraMorphism   # P o Q -> Hom_N
    unit: TambaraMorphism     # Hom_M -> Q o P


def representable_tambara(Phi: ModuleFunctor) -> Adjunction:
    M, N = Phi.source, Phi.target
    idN = identity_tambara(N)
    P = restrict(idN, Phi, "restrict")
    Q = restrict(idN, Phi, "corestrict")
    PQ = compose_tambara(P, Q)
    QP = compose_tambara(Q, P)
    base = N.base
    F = Phi.obj
    eps = {}
    for z, x in product(N.objects, N.objects):
        co = PQ.prof.coends[(z, x)]
        fam = {m: N.cat.comp[(z, F[m], x)] * swap(N.cat.dims[(z, F[m])], N.cat.dims[(F[m], x)]) for m in M.objects}
        eps[(z, x)] = co.map_out(fam, check=True)
    counit = TambaraMorphism(PQ, idN, eps, name="counit")
    eta = {}
    for m, m2 in product(M.objects, M.objects):
        co = QP.prof.coends[(m, m2)]
        eta[(m, m2)] = canon(base, co.inj(F[m]) * kron(N.cat.ident[F[m]], Phi.mor[(m, m2)]))
    unit = TambaraMorphism(identity_tambara(M), QP, eta, name="unit")
    return Adjunction(P, Q, PQ, QP, counit, unit)


def check_triangles(adj: Adjunction, Phi: ModuleFunctor) -> ValidationReport:
    """Both triangle identities, evaluated through extranatural families.

    First: v (x) u goes to (eps o P)(v (x) eta(u)); the family
    q (x) p (x) v |-> p o q o v out of the inner coend must give post_u v.
    Second: u (x) q goes to (Q o eps)(eta(u) (x) q); the family
    q' (x) p' (x) q |-> q o p' o q' must give pre_u q.
    """
    rep = ValidationReport("adjunction triangles")
    M, N = Phi.source, Phi.target
    Nc = N.cat
    base = Nc.base
    F = Phi.obj
    P, Q = adj.P.prof, adj.Q.prof
    for y in N.objects:
        for m, m2 in product(M.objects, M.objects):
            inner = adj.QP.prof.coends[(m, m2)]
            k = P.dims[(y, m)]
            fam = {}
            for z in N.objects:
                a, b = Nc.dims[(F[m], z)], Nc.dims[(z, F[m2])]
                fam[z] = (Nc.comp[(y, z, F[m2])] * kron(eye(b), Nc.comp[(y, F[m], z)])
                          * permute_tensor([a, b, k], [1, 0, 2]))
            G = inner.map_out(fam, right=k)
            lhs = canon(base, G * kron(adj.unit.comps[(m, m2)], eye(k)))
            rep.check(same(lhs, canon(base, P.post[(y, m, m2)])), "first triangle", (y, m, m2))
    for m2, m in product(M.objects, M.objects):
        inner = adj.QP.prof.coends[(m2, m)]
        u = M.cat.dims[(m2, m)]
        for x in N.objects:
            k = Q.dims[(m, x)]
            fam = {}
            for z in N.objects:
                a, b = Nc.dims[(F[m2], z)], Nc.dims[(z, F[m])]
                fam[z] = (Nc.comp[(F[m2], z, x)] * kron(Nc.comp[(z, F[m], x)], eye(a))
                          * permute_tensor([a, b, k], [2, 1, 0]))
            G = inner.map_out(fam, right=k)
            lhs = canon(base, G * kron(adj.unit.comps[(m2, m)], eye(k)))
            rhs = canon(base, Q.pre[(m2, m, x)] * swap(u, k))
            rep.check(same(lhs, rhs), "second triangle", (m2, m, x))
    return rep


# ---------------------------------------------------------------------------
# representability

@dataclass
class Representation:
    functor: ModuleFunctor
    elements: Dict[Hashable, Matrix]
    strong: bool


def is_representable(Psi: TambaraModule, sweep: int = 16) -> Optional[Representation]:
    """Search, for each x, an object y and u in Psi(y, x) with n |-> Psi(n, x)(u) iso for all z."""
    P = Psi.prof
    M, N = Psi.src, Psi.tgt
    Nc = N.cat
    base = P.base
    chosen, elems = {}, {}
    for x in M.objects:
        found = None
        for y in N.objects:
            if P.dims[(y, x)] == 0:
                continue
            for u in sweep_vectors(P.dims[(y, x)], sweep):
                if all(_yoneda_map_iso(P, Nc, z, y, x, u) for z in N.objects):
                    found = (y, u)
                    break
            if found:
                break
        if found is None:
            return None
        chosen[x], elems[x] = found
        if base == BOOL:
            elems[x] = eye(1)
    mor = {}
    for x, x2 in product(M.objects, M.objects):
        y, y2 = chosen[x], chosen[x2]
        A = _yoneda_matrix(P, Nc, y, y2, x2, elems[x2])
        rhs = canon(base, P.post[(y, x, x2)] * kron(eye(M.cat.dims[(x, x2)]), elems[x]))
        mor[(x, x2)] = canon(base, inverse(A) * rhs) if base == RAT else canon(base, zeros(Nc.dims[(y, y2)], M.cat.dims[(x, x2)]))
    phi = {}
    for F in M.C.objects:
        for x in M.objects:
            y = chosen[x]
            Fy, Fx = N.act(F, y), M.act(F, x)
            A = _yoneda_matrix(P, Nc, Fy, chosen[Fx], Fx, elems[Fx])
            target = canon(base, Psi.zeta[(F, y, x)] * elems[x])
            phi[(F, x)] = canon(base, inverse(A) * target) if base == RAT else canon(base, zeros(Nc.dims[(Fy, chosen[Fx])], 1))
    Phi = ModuleFunctor(M, N, chosen, mor, phi, name=f"rep({Psi.name})")
    strong = all(Nc.inverse_element(N.act(F, chosen[x]), chosen[M.act(F, x)], phi[(F, x)]) is not None
                 for F in M.C.objects for x in M.objects)
    return Representation(Phi, elems, strong)


def _yoneda_matrix(P: Profunctor, Nc: FinCategory, z, y, x, u: Matrix) -> Matrix:
    """n |-> P(n, x)(u), N(z, y) -> P(z, x)."""
    return canon(P.base, P.pre[(z, y, x)] * kron(u, eye(Nc.dims[(z, y)])))


def _yoneda_map_iso(P, Nc, z, y, x, u) -> bool:
    if P.base == BOOL:
        return Nc.dims[(z, y)] == P.dims[(z, x)]
    return is_isomorphism(_yoneda_matrix(P, Nc, z, y, x, u))


# ---------------------------------------------------------------------------
# free Tambara modules

def theta(C: MonoidalStructure, K, L) -> TambaraModule:
    """Theta_{K,L}(F, G) = coend_H C(F, H L) (x) C(H K, G)."""
    cat = C.cat
    T = C.tensor_obj
    objs = cat.objects
    d = cat.dims
    base = cat.base

    def pres(F, G):
        return coend(base, cat,
                     {H: d[(F, T[H, L])] for H in objs},
                     {H: d[(T[H, K], G)] for H in objs},
                     lambda H, H2: cat.comp[(F, T[H, L], T[H2, L])] * kron(C.right_whisker(H, H2, L), eye(d[(F, T[H, L])])),
                     lambda H, H2: cat.comp[(T[H, K], T[H2, K], G)] * kron(eye(d[(T[H2, K], G)]), C.right_whisker(H, H2, K)))

    co = {(F, G): pres(F, G) for F, G in product(objs, objs)}
    dims = {k: c.dim for k, c in co.items()}
    post, pre, zeta = {}, {}, {}
    for F in objs:
        for G, G2 in product(objs, objs):
            k = d[(G, G2)]
            fam = {}
            for H in objs:
                a, b = d[(F, T[H, L])], d[(T[H, K], G)]
                fam[H] = co[(F, G2)].inj(H) * kron(eye(a), cat.comp[(T[H, K], G, G2)]) * permute_tensor([k, a, b], [1, 0, 2])
            post[(F, G, G2)] = co[(F, G)].map_out(fam, left=k)
    for F2, F in product(objs, objs):
        for G in objs:
            k = d[(F2, F)]
            fam = {}
            for H in objs:
                a, b = d[(F, T[H, L])], d[(T[H, K], G)]
                fam[H] = co[(F2, G)].inj(H) * kron(cat.comp[(F2, F, T[H, L])], eye(b)) * permute_tensor([a, b, k], [0, 2, 1])
            pre[(F2, F, G)] = co[(F, G)].map_out(fam, right=k)
    for D in objs:
        for F, G in product(objs, objs):
            tgt = co[(T[D, F], T[D, G])]
            fam = {H: tgt.inj(T[D, H]) * kron(C.left_whisker(D, F, T[H, L]), C.left_whisker(D, T[H, K], G)) for H in objs}
            zeta[(D, F, G)] = co[(F, G)].map_out(fam)
    reg = regular_module(C)
    P = Profunctor(cat, cat, dims, post, pre, name=f"Theta[{K},{L}]", coends=co)
    return TambaraModule(P, reg, reg, zeta, name=f"Theta[{K},{L}]")


def theta_universal(C: MonoidalStructure, Th: TambaraModule, K, L) -> Matrix:
    """The class of id_L (x) id_K at H = 1 in Theta_{K,L}(L, K)."""
    co = Th.prof.coends[(L, K)]
    return canon(C.base, co.inj(C.unit) * kron(C.cat.ident[L], C.cat.ident[K]))


def theta_transpose(C: MonoidalStructure, Th: TambaraModule, K, L, R: TambaraModule, r: Matrix) -> TambaraMorphism:
    """The Tambara morphism Theta_{K,L} -> R sending the universal class to r in R(L, K).

    [f (x) g] with f: F -> H L and g: H K -> G goes to R(f, g)(zeta_H r).
    """
    cat, T = C.cat, C.tensor_obj
    d = cat.dims
    Rp = R.prof
    comps = {}
    for F, G in product(cat.objects, cat.objects):
        co = Th.prof.coends[(F, G)]
        fam = {}
        for H in cat.objects:
            HL, HK = T[H, L], T[H, K]
            a, b = d[(F, HL)], d[(HK, G)]
            v = canon(Rp.base, R.zeta[(H, L, K)] * r)
            w = Rp.pre[(F, HL, HK)] * kron(v, eye(a))
            fam[H] = Rp.post[(F, HK, G)] * kron(eye(b), w) * swap(a, b)
        comps[(F, G)] = co.map_out(fam, check=True)
    return TambaraMorphism(Th, R, comps, name="transpose")


def shifted_hom(C: MonoidalStructure, K) -> TambaraModule:
    """C(-, - K), the restriction of the hom module along G |-> G K."""
    return restrict(identity_tambara(regular_module(C)), right_multiplication(C, K), "restrict")


def right_multiplication(C: MonoidalStructure, K) -> ModuleFunctor:
    reg = regular_module(C)
    objs = C.objects
    T = C.tensor_obj
    return ModuleFunctor(reg, reg, {G: T[G, K] for G in objs},
                         {(G, G2): C.right_whisker(G, G2, K) for G, G2 in product(objs, objs)},
                         {(F, G): C.cat.ident[T[T[F, G], K]] for F, G in product(objs, objs)},
                         name=f"-{K}")


def theta_to_shifted(C: MonoidalStructure, L) -> Tuple[TambaraModule, TambaraModule, TambaraMorphism]:
    """Theta_{1,L} -> C(-, - L), [f (x) g] |-> (g L) o f."""
    Th = theta(C, C.unit, L)
    S = shifted_hom(C, L)
    cat, T = C.cat, C.tensor_obj
    d = cat.dims
    comps = {}
    for F, G in product(cat.objects, cat.objects):
        co = Th.prof.coends[(F, G)]
        fam = {}
        for H in cat.objects:
            a, b = d[(F, T[H, L])], d[(H, G)]
            fam[H] = cat.comp[(F, T[H, L], T[G, L])] * kron(C.right_whisker(H, G, L), eye(a)) * swap(a, b)
        comps[(F, G)] = co.map_out(fam, check=True)
    return Th, S, TambaraMorphism(Th, S, comps, name="theta-to-shifted")


@dataclass
class FreeTambara:
    module: TambaraModule
    unit: Dict[Tuple, Matrix]      # Sigma(F, G) -> F_l Sigma(F, G)


def free_tambara(C: MonoidalStructure, Sigma: Profunctor) -> FreeTambara:
    """F_l Sigma(F, G) = coend over (B, C') in C x C^op of Theta_{C',B}(F, G) (x) Sigma(B, C')."""
    cat = C.cat
    objs = cat.objects
    base = cat.base
    T = C.tensor_obj
    d = cat.dims
    thetas = {(Kp, B): theta(C, Kp, B) for Kp, B in product(objs, objs)}
    mid = product_category(cat, opposite_category(cat))

    def theta_map(F, G, B, Kp, B2, Kp2) -> Matrix:
        """C(B, B2) (x) C(Kp2, Kp) (x) Theta_{Kp,B}(F,G) -> Theta_{Kp2,B2}(F,G)."""
        src = thetas[(Kp, B)].prof.coends[(F, G)]
        tgt = thetas[(Kp2, B2)].prof.coends[(F, G)]
        nb, nk = d[(B, B2)], d[(Kp2, Kp)]
        fam = {}
        for H in objs:
            a, b = d[(F, T[H, B])], d[(T[H, Kp], G)]
            left = cat.comp[(F, T[H, B], T[H, B2])] * kron(C.left_whisker(H, B, B2), eye(a))
            right = cat.comp[(T[H, Kp2], T[H, Kp], G)] * kron(eye(b), C.left_whisker(H, Kp2, Kp))
            fam[H] = tgt.inj(H) * kron(left, right) * permute_tensor([nb, nk, a, b], [0, 2, 3, 1])
        return src.map_out(fam, left=nb * nk)

    co = {}
    for F, G in product(objs, objs):
        ldim = {(B, Kp): thetas[(Kp, B)].prof.dims[(F, G)] for B, Kp in mid.objects}
        rdim = {(B, Kp): Sigma.dims[(B, Kp)] for B, Kp in mid.objects}
        co[(F, G)] = coend(base, mid, ldim, rdim,
                           lambda b, b2, F=F, G=G: theta_map(F, G, b[0], b[1], b2[0], b2[1]),
                           lambda b, b2: _sigma_pre_post(Sigma, b, b2, cat))
    dims = {k: c.dim for k, c in co.items()}

    def blockwise(key_src, key_tgt, inner, left=1, right=1):
        """Apply Theta-level maps block by block."""
        src, tgt = co[key_src], co[key_tgt]
        fam = {}
        for B, Kp in mid.objects:
            s = Sigma.dims[(B, Kp)]
            m = inner(thetas[(Kp, B)])
            fam[(B, Kp)] = tgt.inj((B, Kp)) * _with_sigma(m, thetas[(Kp, B)].prof.dims[key_src], s, left, right)
        return src.map_out(fam, left=left, right=right)

    post, pre, zeta = {}, {}, {}
    for F in objs:
        for G, G2 in product(objs, objs):
            post[(F, G, G2)] = blockwise((F, G), (F, G2), lambda Th: Th.prof.post[(F, G, G2)], left=d[(G, G2)])
    for F2, F in product(objs, objs):
        for G in objs:
            pre[(F2, F, G)] = blockwise((F, G), (F2, G), lambda Th: Th.prof.pre[(F2, F, G)], right=d[(F2, F)])
    for D in objs:
        for F, G in product(objs, objs):
            zeta[(D, F, G)] = blockwise((F, G), (T[D, F], T[D, G]), lambda Th: Th.zeta[(D, F, G)])
    reg = regular_module(C)
    P = Profunctor(cat, cat, dims, post, pre, name=f"F({Sigma.name})", coends=co)
    mod = TambaraModule(P, reg, reg, zeta, name=f"F({Sigma.name})")
    unit = {}
    for F, G in product(objs, objs):
        u = theta_universal(C, thetas[(G, F)], G, F)
        unit[(F, G)] = canon(base, co[(F, G)].inj((F, G)) * kron(u, eye(Sigma.dims[(F, G)])))
    return FreeTambara(mod, unit)


def _sigma_pre_post(Sigma: Profunctor, b, b2, cat: FinCategory) -> Matrix:
    """Sigma(B2, C2') (x) (C(B, B2) (x) C(C2', C')) -> Sigma(B, C')."""
    (B, Kp), (B2, Kp2) = b, b2
    s = Sigma.dims[(B2, Kp2)]
    nb, nk = cat.dims[(B, B2)], cat.dims[(Kp2, Kp)]
    # pre along beta: Sigma(B2, C2') -> Sigma(B, C2'), then post along kappa
    pre = Sigma.pre[(B, B2, Kp2)]                      # on kron(s, beta)
    post = Sigma.post[(B, Kp2, Kp)]                    # on kron(kappa, s')
    step = post * kron(eye(nk), pre)                   # on kron(kappa, s, beta)
    return step * permute_tensor([s, nb, nk], [2, 0, 1])


def _with_sigma(m: Matrix, th: int, s: int, left: int, right: int) -> Matrix:
    """kron(e_l, theta, sigma, e_r) |-> kron(m(e_l, theta, e_r), sigma)."""
    p = permute_tensor([left, th, s, right], [0, 1, 3, 2])
    return kron(m, eye(s)) * p


def free_unit_naturality(C: MonoidalStructure, Sigma: Profunctor, fr: FreeTambara) -> ValidationReport:
    """The unit Sigma -> F_l Sigma is a morphism of profunctors."""
    rep = ValidationReport("free unit")
    dummy_src = TambaraModule(Sigma, fr.module.src, fr.module.tgt, {}, "Sigma")
    t = TambaraMorphism(dummy_src, fr.module, fr.unit)
    return rep.merge(validate_tambara_morphism(t, tambara=False))


# ---------------------------------------------------------------------------
# transport, change of acting category, coequalizers

def transport_tambara_structure(T: TambaraModule, P2: Profunctor, s: Dict[Tuple, Matrix]) -> TambaraModule:
    """Given a profunctor iso s: P2 -> T.prof, the structure zeta' = s^-1 zeta s on P2."""
    base = T.base
    inv = {}
    for k, m in s.items():
        if not is_isomorphism(m, base):
            raise NotInvertible(f"component {k} is not invertible")
        inv[k] = inverse(m) if base == RAT else m
    zeta = {}
    for (H, y, x), z in T.zeta.items():
        Hy, Hx = T.tgt.act(H, y), T.src.act(H, x)
        zeta[(H, y, x)] = canon(base, inv[(Hy, Hx)] * z * s[(y, x)])
    return TambaraModule(P2, T.src, T.tgt, zeta, name=f"{P2.name}~")


@dataclass
class MonoidalFunctor:
    source: MonoidalStructure
    target: MonoidalStructure
    obj: Dict
    mor: Dict[Tuple, Matrix]


def validate_monoidal_functor(Fn: MonoidalFunctor) -> ValidationReport:
    rep = ValidationReport("strict monoidal functor")
    C, D = Fn.source, Fn.target
    Cc, Dc = C.cat, D.cat
    base = Cc.base
    F = Fn.obj
    rep.check(F.get(C.unit) == D.unit, "preserves unit", (C.unit,))
    for a, b in product(Cc.objects, Cc.objects):
        rep.check(F[C.t(a, b)] == D.t(F[a], F[b]), "preserves tensor on objects", (a, b))
    if not rep.ok:
        return rep
    for a, b in product(Cc.objects, Cc.objects):
        m = Fn.mor[(a, b)]
        rep.check(m.shape == (Dc.dims[(F[a], F[b])], Cc.dims[(a, b)]) and (base == RAT or bool_map_ok(m)),
                  "morphism map shape", (a, b))
    if not rep.ok:
        return rep
    for a in Cc.objects:
        rep.check(same(canon(base, Fn.mor[(a, a)] * Cc.ident[a]), Dc.ident[F[a]]), "preserves identities", (a,))
    for a, b, c in product(Cc.objects, repeat=3):
        lhs = Fn.mor[(a, c)] * Cc.comp[(a, b, c)]
        rhs = Dc.comp[(F[a], F[b], F[c])] * kron(Fn.mor[(b, c)], Fn.mor[(a, b)])
        rep.check(same(canon(base, lhs), canon(base, rhs)), "preserves composition", (a, b, c))
    for a, b, a2, b2 in product(Cc.objects, repeat=4):
        lhs = Fn.mor[(C.t(a, b), C.t(a2, b2))] * C.tensor_mor[(a, b, a2, b2)]
        rhs = D.tensor_mor[(F[a], F[b], F[a2], F[b2])] * kron(Fn.mor[(a, a2)], Fn.mor[(b, b2)])
        rep.check(same(canon(base, lhs), canon(base, rhs)), "preserves tensor on morphisms", (a, b, a2, b2))
    return rep


def restrict_module(Fn: MonoidalFunctor, M: ModuleStructure) -> ModuleStructure:
    C = Fn.source
    F = Fn.obj
    base = M.base
    ao = {(c, x): M.act(F[c], x) for c in C.objects for x in M.objects}
    am = {(c, c2, x, y): canon(base, M.act_mor[(F[c], F[c2], x, y)] * kron(Fn.mor[(c, c2)], eye(M.cat.dims[(x, y)])))
          for c, c2 in product(C.objects, C.objects) for x, y in product(M.objects, M.objects)}
    return ModuleStructure(C, M.cat, ao, am, name=f"F*{M.name}")


def restrict_along_monoidal_functor(Fn: MonoidalFunctor, T: TambaraModule,
                                    modules: Optional[Dict[int, ModuleStructure]] = None) -> TambaraModule:
    if not validate_monoidal_functor(Fn).ok:
        raise InvalidFunctor("not a strict monoidal functor")
    modules = modules if modules is not None else {}
    src = modules.get(id(T.src)) or restrict_module(Fn, T.src)
    modules[id(T.src)] = src
    tgt = modules.get(id(T.tgt)) or restrict_module(Fn, T.tgt)
    modules[id(T.tgt)] = tgt
    zeta = {(H, y, x): T.zeta[(Fn.obj[H], y, x)] for H in Fn.source.objects
            for y in T.tgt.objects for x in T.src.objects}
    return TambaraModule(T.prof, src, tgt, zeta, name=f"F*{T.name}")


@dataclass
class TambaraQuotient:
    module: TambaraModule
    proj: TambaraMorphism
    quotients: Dict[Tuple, QuotientPresentation]

    def factor(self, h: TambaraMorphism) -> TambaraMorphism:
        """The unique morphism out of the quotient through which h factors."""
        comps = {}
        for k, q in self.quotients.items():
            if self.module.base == RAT and not is_zero(h.comps[k] * q.relations):
                raise InvalidComposite(f"morphism does not coequalize at {k}")
            comps[k] = canon(self.module.base, h.comps[k] * q.section)
        return TambaraMorphism(self.module, h.target, comps, name="factor")


def coequalizer_tambara(p: TambaraMorphism, b: TambaraMorphism) -> TambaraQuotient:
    T = p.target
    P = T.prof
    base = P.base
    qs = {}
    for k in P.dims:
        rel = (p.comps[k] - b.comps[k]) if base == RAT else None
        qs[k] = quotient(base, P.dims[k], rel)
    return quotient_tambara(T, qs)


def quotient_tambara(T: TambaraModule, qs: Dict[Tuple, QuotientPresentation]) -> TambaraQuotient:
    """Pointwise quotient of T; the relation spans must be stable under all structure maps."""
    P = T.prof
    base = P.base
    M, N = P.src, P.tgt
    dims = {k: q.dim for k, q in qs.items()}

    def induced(m, src_q, tgt_q, left=1, right=1):
        if base == RAT:
            rel = kron(kron(eye(left), src_q.relations), eye(right))
            if not is_zero(tgt_q.proj * m * rel):
                raise InvalidComposite("relations are not stable")
        return canon(base, tgt_q.proj * m * kron(kron(eye(left), src_q.section), eye(right)))

    post = {(y, x, x2): induced(P.post[(y, x, x2)], qs[(y, x)], qs[(y, x2)], left=M.dims[(x, x2)])
            for y in N.objects for x, x2 in product(M.objects, M.objects)}
    pre = {(y2, y, x): induced(P.pre[(y2, y, x)], qs[(y, x)], qs[(y2, x)], right=N.dims[(y2, y)])
           for y2, y in product(N.objects, N.objects) for x in M.objects}
    zeta = {(H, y, x): induced(z, qs[(y, x)], qs[(T.tgt.act(H, y), T.src.act(H, x))])
            for (H, y, x), z in T.zeta.items()}
    Q = Profunctor(M, N, dims, post, pre, name=f"{P.name}/~")
    mod = TambaraModule(Q, T.src, T.tgt, zeta, name=f"{T.name}/~")
    proj = TambaraMorphism(T, mod, {k: canon(base, q.proj) for k, q in qs.items()}, name="quotient")
    return TambaraQuotient(mod, proj, qs)


def direct_sum(A: TambaraModule, B: TambaraModule) -> TambaraModule:
    from .base import block_diag
    Pa, Pb = A.prof, B.prof
    M, N = Pa.src, Pa.tgt
    dims = {k: Pa.dims[k] + Pb.dims[k] for k in Pa.dims}

    def split(ma, mb, a_in, b_in, left=1, right=1):
        """Blockwise map on kron(I_left, A (+) B, I_right)."""
        da, db = a_in, b_in
        pa = _embed(left, da, db, right, first=True)
        pb = _embed(left, da, db, right, first=False)
        out_a = ma.shape[0]
        out_b = mb.shape[0]
        ia = _inc(out_a, out_b, True)
        ib = _inc(out_a, out_b, False)
        return ia * ma * pa + ib * mb * pb

    post = {(y, x, x2): split(Pa.post[(y, x, x2)], Pb.post[(y, x, x2)], Pa.dims[(y, x)], Pb.dims[(y, x)],
                              left=M.dims[(x, x2)])
            for y in N.objects for x, x2 in product(M.objects, M.objects)}
    pre = {(y2, y, x): split(Pa.pre[(y2, y, x)], Pb.pre[(y2, y, x)], Pa.dims[(y, x)], Pb.dims[(y, x)],
                             right=N.dims[(y2, y)])
           for y2, y in product(N.objects, N.objects) for x in M.objects}
    zeta = {k: block_diag([A.zeta[k], B.zeta[k]]) for k in A.zeta}
    P = Profunctor(M, N, dims, post, pre, name=f"({Pa.name}+{Pb.name})")
    return TambaraModule(P, A.src, A.tgt, zeta, name=f"({A.name}+{B.name})")


def _inc(a: int, b: int, first: bool) -> Matrix:
    one = eye(1).rep[0][0]
    if first:
        return _sdm({i: {i: one} for i in range(a)}, (a + b, a))
    return _sdm({a + i: {i: one} for i in range(b)}, (a + b, b))


def _embed(left: int, da: int, db: int, right: int, first: bool) -> Matrix:
    """Projection kron(e_l, A (+) B, e_r) -> kron(e_l, A or B, e_r)."""
    inner = _inc(da, db, first).transpose()
    return kron(kron(eye(left), inner), eye(right))
