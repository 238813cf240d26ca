"""Finite enriched categories with strict monoidal and module structure.

Composition tables act on kron(g, f) for g: b -> c, f: a -> b.  Tensor
tables act on kron(f, g) and module actions on kron(c, m) with c a
morphism of the acting category.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Hashable, List, Optional, Tuple

from .base import (BOOL, RAT, Matrix, bool_map_ok, canon, eye, kron,
                   permute_tensor, same, solve_particular, swap, unit_vector, vstack)
from .report import ValidationReport

Obj = Hashable


class MissingStructure(ValueError):
    pass


class InvalidFunctor(ValueError):
    pass


@dataclass
class FinCategory:
    base: str
    objects: List[Obj]
    dims: Dict[Tuple[Obj, Obj], int]
    comp: Dict[Tuple[Obj, Obj, Obj], Matrix]
    ident: Dict[Obj, Matrix]
    name: str = ""

    def hom(self, a: Obj, b: Obj) -> int:
        return self.dims[(a, b)]

    def compose(self, a, b, c, g: Matrix, f: Matrix) -> Matrix:
        """g o f for f: a -> b and g: b -> c, as a vector in hom(a, c)."""
        return canon(self.base, self.comp[(a, b, c)] * kron(g, f))

    def post(self, a, b, c, g: Matrix) -> Matrix:
        """Matrix of f |-> g o f, hom(a, b) -> hom(a, c)."""
        return canon(self.base, self.comp[(a, b, c)] * kron(g, eye(self.dims[(a, b)])))

    def pre(self, a, b, c, f: Matrix) -> Matrix:
        """Matrix of g |-> g o f, hom(b, c) -> hom(a, c)."""
        return canon(self.base, self.comp[(a, b, c)] * kron(eye(self.dims[(b, c)]), f))

    def hom_basis(self, a, b) -> List[Matrix]:
        n = self.dims[(a, b)]
        return [_unit(n, i) for i in range(n)]

    def inverse_element(self, a, b, f: Matrix) -> Optional[Matrix]:
        """Some g: b -> a with g o f = id_a and f o g = id_b, or None."""
        if self.base == BOOL:
            if self.dims[(a, b)] and self.dims[(b, a)]:
                return eye(1)
            return None
        lhs = self.pre(a, b, a, f)
        rhs = self.post(b, a, b, f)
        sys = vstack([lhs, rhs])
        target = vstack([self.ident[a], self.ident[b]])
        g = solve_particular(sys, target)
        return g

    def is_iso_element(self, a, b, f: Matrix) -> bool:
        return self.inverse_element(a, b, f) is not None

    def isomorphic(self, a, b) -> bool:
        return self.find_iso(a, b) is not None

    def find_iso(self, a, b) -> Optional[Matrix]:
        """An invertible element of hom(a, b), searched deterministically."""
        if a == b:
            return self.ident[a]
        n = self.dims[(a, b)]
        if n == 0 or self.dims[(b, a)] != n and self.base == RAT:
            return None
        if self.base == BOOL:
            return eye(1) if self.dims[(b, a)] else None
        for f in sweep_vectors(n):
            if self.is_iso_element(a, b, f):
                return f
        return None


def _unit(n: int, i: int) -> Matrix:
    return unit_vector(n, i)


def sweep_vectors(n: int, limit: int = 64):
    """Deterministic candidate vectors: basis vectors, then moment-curve points."""
    from .base import col
    for i in range(n):
        yield _unit(n, i)
    for t in range(1, limit + 1):
        yield col([t ** k for k in range(n)])


# ---------------------------------------------------------------------------
# validation helpers

def _bool_shapes(rep: ValidationReport, base: str, table: dict, law: str) -> None:
    if base != BOOL:
        return
    for key, m in table.items():
        rep.check(bool_map_ok(m), law, key if isinstance(key, tuple) else (key,))


def validate_category(cat: FinCategory) -> ValidationReport:
    rep = ValidationReport(f"category {cat.name}")
    objs = cat.objects
    for a, b in product(objs, objs):
        rep.check((a, b) in cat.dims, "hom table total", (a, b))
    for a, b, c in product(objs, objs, objs):
        m = cat.comp.get((a, b, c))
        ok = m is not None and m.shape == (cat.dims[(a, c)], cat.dims[(b, c)] * cat.dims[(a, b)])
        rep.check(ok, "composition shape", (a, b, c))
    for a in objs:
        i = cat.ident.get(a)
        rep.check(i is not None and i.shape == (cat.dims[(a, a)], 1), "identity shape", (a,))
    if not rep.ok:
        return rep
    _bool_shapes(rep, cat.base, cat.comp, "composition defined (transitivity)")
    _bool_shapes(rep, cat.base, cat.ident, "identity defined (reflexivity)")
    if not rep.ok:
        return rep
    for a, b in product(objs, objs):
        n = cat.dims[(a, b)]
        rep.check(same(cat.pre(a, a, b, cat.ident[a]), eye(n)), "right unit", (a, b))
        rep.check(same(cat.post(a, b, b, cat.ident[b]), eye(n)), "left unit", (a, b))
    for a, b, c, d in product(objs, objs, objs, objs):
        lhs = cat.comp[(a, b, d)] * kron(cat.comp[(b, c, d)], eye(cat.dims[(a, b)]))
        rhs = cat.comp[(a, c, d)] * kron(eye(cat.dims[(c, d)]), cat.comp[(a, b, c)])
        rep.check(same(canon(cat.base, lhs), canon(cat.base, rhs)), "associativity", (a, b, c, d))
    return rep


def opposite_category(cat: FinCategory) -> FinCategory:
    objs = list(cat.objects)
    dims = {(a, b): cat.dims[(b, a)] for a, b in product(objs, objs)}
    comp = {(a, b, c): canon(cat.base, cat.comp[(c, b, a)] * swap(cat.dims[(c, b)], cat.dims[(b, a)]))
            for a, b, c in product(objs, objs, objs)}
    return FinCategory(cat.base, objs, dims, comp, dict(cat.ident), cat.name + "^op")


def product_category(c1: FinCategory, c2: FinCategory) -> FinCategory:
    """Objects are pairs; hom((a,b),(a2,b2)) = hom(a,a2) (x) hom(b,b2)."""
    objs = [(a, b) for a in c1.objects for b in c2.objects]
    dims = {(x, y): c1.dims[(x[0], y[0])] * c2.dims[(x[1], y[1])] for x, y in product(objs, objs)}
    comp = {}
    for x, y, z in product(objs, objs, objs):
        g1, g2 = c1.dims[(y[0], z[0])], c2.dims[(y[1], z[1])]
        f1, f2 = c1.dims[(x[0], y[0])], c2.dims[(x[1], y[1])]
        p = permute_tensor([g1, g2, f1, f2], [0, 2, 1, 3])
        comp[(x, y, z)] = canon(c1.base, kron(c1.comp[(x[0], y[0], z[0])], c2.comp[(x[1], y[1], z[1])]) * p)
    ident = {x: kron(c1.ident[x[0]], c2.ident[x[1]]) for x in objs}
    return FinCategory(c1.base, objs, dims, comp, ident, f"{c1.name}x{c2.name}")


# ---------------------------------------------------------------------------
# strict monoidal structure

@dataclass
class MonoidalStructure:
    cat: FinCategory
    tensor_obj: Dict[Tuple[Obj, Obj], Obj]
    tensor_mor: Dict[Tuple[Obj, Obj, Obj, Obj], Matrix]
    unit: Obj

    @property
    def base(self):
        return self.cat.base

    @property
    def objects(self):
        return self.cat.objects

    def t(self, a, b):
        return self.tensor_obj[(a, b)]

    def tensor_el(self, a, b, a2, b2, f: Matrix, g: Matrix) -> Matrix:
        return canon(self.base, self.tensor_mor[(a, b, a2, b2)] * kron(f, g))

    def right_whisker(self, a, a2, b) -> Matrix:
        """f |-> f (x) id_b, hom(a, a2) -> hom(ab, a2 b)."""
        return canon(self.base, self.tensor_mor[(a, b, a2, b)] * kron(eye(self.cat.dims[(a, a2)]), self.cat.ident[b]))

    def left_whisker(self, b, a, a2) -> Matrix:
        """f |-> id_b (x) f, hom(a, a2) -> hom(ba, b a2)."""
        return canon(self.base, self.tensor_mor[(b, a, b, a2)] * kron(self.cat.ident[b], eye(self.cat.dims[(a, a2)])))


def validate_monoidal(mon: MonoidalStructure) -> ValidationReport:
    cat = mon.cat
    rep = ValidationReport("monoidal structure")
    objs = cat.objects
    for a, b in product(objs, objs):
        rep.check(mon.tensor_obj.get((a, b)) in objs, "tensor total on objects", (a, b))
    rep.check(mon.unit in objs, "unit is an object", (mon.unit,))
    if not rep.ok:
        return rep
    T = mon.tensor_obj
    d = cat.dims
    for a, b, a2, b2 in product(objs, repeat=4):
        m = mon.tensor_mor.get((a, b, a2, b2))
        ok = m is not None and m.shape == (d[(T[a, b], T[a2, b2])], d[(a, a2)] * d[(b, b2)])
        rep.check(ok, "tensor morphism shape", (a, b, a2, b2))
    if not rep.ok:
        return rep
    _bool_shapes(rep, cat.base, mon.tensor_mor, "tensor defined (monotone)")
    for a in objs:
        rep.check(T[mon.unit, a] == a and T[a, mon.unit] == a, "strict unit on objects", (a,))
    for a, b, c in product(objs, repeat=3):
        rep.check(T[T[a, b], c] == T[a, T[b, c]], "strict associativity on objects", (a, b, c))
    if not rep.ok:
        return rep
    base = cat.base
    for a, b in product(objs, objs):
        v = canon(base, mon.tensor_mor[(a, b, a, b)] * kron(cat.ident[a], cat.ident[b]))
        rep.check(same(v, cat.ident[T[a, b]]), "tensor preserves identities", (a, b))
    u = mon.unit
    for a, a2 in product(objs, objs):
        n = d[(a, a2)]
        lu = canon(base, mon.tensor_mor[(u, a, u, a2)] * kron(cat.ident[u], eye(n)))
        ru = canon(base, mon.tensor_mor[(a, u, a2, u)] * kron(eye(n), cat.ident[u]))
        rep.check(same(lu, eye(n)), "left unit on morphisms", (a, a2))
        rep.check(same(ru, eye(n)), "right unit on morphisms", (a, a2))
    for a, a2, a3 in product(objs, repeat=3):
        for b, b2, b3 in product(objs, repeat=3):
            lhs = mon.tensor_mor[(a, b, a3, b3)] * kron(cat.comp[(a, a2, a3)], cat.comp[(b, b2, b3)])
            p = permute_tensor([d[(a2, a3)], d[(a, a2)], d[(b2, b3)], d[(b, b2)]], [0, 2, 1, 3])
            rhs = cat.comp[(T[a, b], T[a2, b2], T[a3, b3])] * kron(
                mon.tensor_mor[(a2, b2, a3, b3)], mon.tensor_mor[(a, b, a2, b2)]) * p
            rep.check(same(canon(base, lhs), canon(base, rhs)), "interchange", (a, a2, a3, b, b2, b3))
    for a, b, c in product(objs, repeat=3):
        for a2, b2, c2 in product(objs, repeat=3):
            lhs = mon.tensor_mor[(T[a, b], c, T[a2, b2], c2)] * kron(mon.tensor_mor[(a, b, a2, b2)], eye(d[(c, c2)]))
            rhs = mon.tensor_mor[(a, T[b, c], a2, T[b2, c2])] * kron(eye(d[(a, a2)]), mon.tensor_mor[(b, c, b2, c2)])
            rep.check(same(canon(base, lhs), canon(base, rhs)), "strict associativity on morphisms",
                      (a, b, c, a2, b2, c2))
    return rep


def find_dual(mon: MonoidalStructure, a) -> Optional[Tuple]:
    """A right dual (b, ev: ab -> 1, coev: 1 -> ba) with both zigzags, if any."""
    cat = mon.cat
    T, u, d = mon.tensor_obj, mon.unit, cat.dims
    for b in cat.objects:
        if d[(T[a, b], u)] == 0 or d[(u, T[b, a])] == 0:
            continue
        for ev in sweep_vectors(d[(T[a, b], u)], 8):
            for coev in sweep_vectors(d[(u, T[b, a])], 8):
                if zigzags_hold(mon, a, b, ev, coev):
                    return b, ev, coev
    return None


def zigzags_hold(mon: MonoidalStructure, a, b, ev: Matrix, coev: Matrix) -> bool:
    """(ev (x) a) o (a (x) coev) = id_a and (b (x) ev) o (coev (x) b) = id_b."""
    cat = mon.cat
    T, u = mon.tensor_obj, mon.unit
    aba = T[T[a, b], a]
    s1 = mon.tensor_el(a, u, a, T[b, a], cat.ident[a], coev)
    s2 = mon.tensor_el(T[a, b], a, u, a, ev, cat.ident[a])
    z1 = cat.compose(a, aba, a, s2, s1)
    bab = T[T[b, a], b]
    t1 = mon.tensor_el(u, b, T[b, a], b, coev, cat.ident[b])
    t2 = mon.tensor_el(b, T[a, b], b, u, cat.ident[b], ev)
    z2 = cat.compose(b, bab, b, t2, t1)
    return same(z1, cat.ident[a]) and same(z2, cat.ident[b])


def is_rigid(mon: MonoidalStructure) -> bool:
    return all(find_dual(mon, a) is not None for a in mon.cat.objects)


# ---------------------------------------------------------------------------
# strict module categories

@dataclass
class ModuleStructure:
    C: MonoidalStructure
    cat: FinCategory
    act_obj: Dict[Tuple[Obj, Obj], Obj]
    act_mor: Dict[Tuple[Obj, Obj, Obj, Obj], Matrix]
    name: str = ""

    @property
    def base(self):
        return self.cat.base

    @property
    def objects(self):
        return self.cat.objects

    def act(self, F, x):
        return self.act_obj[(F, x)]

    def whisker(self, H, x, y) -> Matrix:
        """m |-> H.m, hom(x, y) -> hom(Hx, Hy)."""
        return canon(self.base, self.act_mor[(H, H, x, y)] * kron(self.C.cat.ident[H], eye(self.cat.dims[(x, y)])))

    def act_on(self, F, G, x) -> Matrix:
        """c |-> c.x, C(F, G) -> M(Fx, Gx)."""
        return canon(self.base, self.act_mor[(F, G, x, x)] * kron(eye(self.C.cat.dims[(F, G)]), self.cat.ident[x]))


def regular_module(C: MonoidalStructure) -> ModuleStructure:
    objs = C.objects
    am = {(F, G, x, y): C.tensor_mor[(F, x, G, y)] for F, G, x, y in product(objs, repeat=4)}
    return ModuleStructure(C, C.cat, dict(C.tensor_obj), am, name="regular")


def validate_module(mod: ModuleStructure) -> ValidationReport:
    C, M = mod.C, mod.cat
    rep = ValidationReport(f"module {mod.name}")
    cobjs, mobjs = C.cat.objects, M.objects
    dc, dm = C.cat.dims, M.dims
    for F, x in product(cobjs, mobjs):
        rep.check(mod.act_obj.get((F, x)) in mobjs, "action total on objects", (F, x))
    if not rep.ok:
        return rep
    A = mod.act_obj
    for F, G, x, y in product(cobjs, cobjs, mobjs, mobjs):
        m = mod.act_mor.get((F, G, x, y))
        ok = m is not None and m.shape == (dm[(A[F, x], A[G, y])], dc[(F, G)] * dm[(x, y)])
        rep.check(ok, "action morphism shape", (F, G, x, y))
    if not rep.ok:
        return rep
    _bool_shapes(rep, M.base, mod.act_mor, "action defined (monotone)")
    u, T = C.unit, C.tensor_obj
    for x in mobjs:
        rep.check(A[u, x] == x, "unit acts trivially on objects", (x,))
    for F, G, x in product(cobjs, cobjs, mobjs):
        rep.check(A[T[G, F], x] == A[G, A[F, x]], "strict action on objects", (G, F, x))
    if not rep.ok:
        return rep
    base = M.base
    for F, x in product(cobjs, mobjs):
        v = canon(base, mod.act_mor[(F, F, x, x)] * kron(C.cat.ident[F], M.ident[x]))
        rep.check(same(v, M.ident[A[F, x]]), "action preserves identities", (F, x))
    for x, y in product(mobjs, mobjs):
        rep.check(same(mod.whisker(u, x, y), eye(dm[(x, y)])), "unit acts trivially on morphisms", (x, y))
    for F, F2, F3 in product(cobjs, repeat=3):
        for x, x2, x3 in product(mobjs, repeat=3):
            lhs = mod.act_mor[(F, F3, x, x3)] * kron(C.cat.comp[(F, F2, F3)], M.comp[(x, x2, x3)])
            p = permute_tensor([dc[(F2, F3)], dc[(F, F2)], dm[(x2, x3)], dm[(x, x2)]], [0, 2, 1, 3])
            rhs = M.comp[(A[F, x], A[F2, x2], A[F3, x3])] * kron(
                mod.act_mor[(F2, F3, x2, x3)], mod.act_mor[(F, F2, x, x2)]) * p
            rep.check(same(canon(base, lhs), canon(base, rhs)), "action interchange", (F, F2, F3, x, x2, x3))
    for G, F, G2, F2 in product(cobjs, repeat=4):
        for x, y in product(mobjs, mobjs):
            lhs = mod.act_mor[(T[G, F], T[G2, F2], x, y)] * kron(C.tensor_mor[(G, F, G2, F2)], eye(dm[(x, y)]))
            rhs = mod.act_mor[(G, G2, A[F, x], A[F2, y])] * kron(eye(dc[(G, G2)]), mod.act_mor[(F, F2, x, y)])
            rep.check(same(canon(base, lhs), canon(base, rhs)), "strict action on morphisms", (G, F, G2, F2, x, y))
    return rep


# ---------------------------------------------------------------------------
# module functors

@dataclass
class ModuleFunctor:
    source: ModuleStructure
    target: ModuleStructure
    obj: Dict[Obj, Obj]
    mor: Dict[Tuple[Obj, Obj], Matrix]
    phi: Dict[Tuple[Obj, Obj], Matrix]
    name: str = ""

    def __call__(self, x):
        return self.obj[x]

    def phi_inverse(self, F, x) -> Matrix:
        N, S = self.target, self.source
        a, b = N.act(F, self.obj[x]), self.obj[S.act(F, x)]
        g = N.cat.inverse_element(a, b, self.phi[(F, x)])
        if g is None:
            raise InvalidFunctor(f"phi at {(F, x)} is not invertible")
        return g


def identity_functor(M: ModuleStructure) -> ModuleFunctor:
    objs = M.objects
    return ModuleFunctor(M, M, {x: x for x in objs},
                         {(x, y): eye(M.cat.dims[(x, y)]) for x, y in product(objs, objs)},
                         {(F, x): M.cat.ident[M.act(F, x)] for F in M.C.objects for x in objs},
                         name="id")


def evaluation_functor(M: ModuleStructure, X) -> ModuleFunctor:
    """F |-> F.X from the regular module, with identity coherence."""
    C = M.C
    reg = regular_module(C)
    objs = C.objects
    return ModuleFunctor(reg, M, {F: M.act(F, X) for F in objs},
                         {(F, G): M.act_on(F, G, X) for F, G in product(objs, objs)},
                         {(K, F): M.cat.ident[M.act(C.t(K, F), X)] for K in objs for F in objs},
                         name=f"ev_{X}")


def compose_functors(Phi: ModuleFunctor, Om: ModuleFunctor) -> ModuleFunctor:
    """Phi o Om with phi^{Phi Om}_{F,x} = Phi(phi^Om_{F,x}) o phi^Phi_{F,Om x}."""
    if Om.target is not Phi.source and Om.target.objects != Phi.source.objects:
        raise InvalidFunctor("functors are not composable")
    K, N = Om.source, Phi.target
    base = N.base
    obj = {x: Phi.obj[Om.obj[x]] for x in K.objects}
    mor = {(x, y): canon(base, Phi.mor[(Om.obj[x], Om.obj[y])] * Om.mor[(x, y)])
           for x, y in product(K.objects, K.objects)}
    phi = {}
    for F in K.C.objects:
        for x in K.objects:
            a = N.act(F, obj[x])
            b = Phi.obj[Phi.source.act(F, Om.obj[x])]
            c = obj[K.act(F, x)]
            first = Phi.phi[(F, Om.obj[x])]
            second = canon(base, Phi.mor[(Phi.source.act(F, Om.obj[x]), Om.obj[K.act(F, x)])] * Om.phi[(F, x)])
            phi[(F, x)] = N.cat.compose(a, b, c, second, first)
    return ModuleFunctor(K, N, obj, mor, phi, name=f"{Phi.name}.{Om.name}")


def validate_module_functor(Phi: ModuleFunctor) -> ValidationReport:
    S, N = Phi.source, Phi.target
    rep = ValidationReport(f"module functor {Phi.name}")
    Mc, Nc = S.cat, N.cat
    base = Nc.base
    P = Phi.obj
    for x in Mc.objects:
        rep.check(P.get(x) in Nc.objects, "object map total", (x,))
    if not rep.ok:
        return rep
    for x, y in product(Mc.objects, Mc.objects):
        m = Phi.mor.get((x, y))
        rep.check(m is not None and m.shape == (Nc.dims[(P[x], P[y])], Mc.dims[(x, y)]),
                  "morphism map shape", (x, y))
    for F, x in product(S.C.objects, Mc.objects):
        v = Phi.phi.get((F, x))
        rep.check(v is not None and v.shape == (Nc.dims[(N.act(F, P[x]), P[S.act(F, x)])], 1),
                  "phi shape", (F, x))
    if not rep.ok:
        return rep
    _bool_shapes(rep, base, Phi.mor, "morphism map defined")
    _bool_shapes(rep, base, Phi.phi, "phi defined")
    if not rep.ok:
        return rep
    for x in Mc.objects:
        rep.check(same(canon(base, Phi.mor[(x, x)] * Mc.ident[x]), Nc.ident[P[x]]), "preserves identities", (x,))
    for x, y, z in product(Mc.objects, repeat=3):
        lhs = Phi.mor[(x, z)] * Mc.comp[(x, y, z)]
        rhs = Nc.comp[(P[x], P[y], P[z])] * kron(Phi.mor[(y, z)], Phi.mor[(x, y)])
        rep.check(same(canon(base, lhs), canon(base, rhs)), "preserves composition", (x, y, z))
    for F, x in product(S.C.objects, Mc.objects):
        rep.check(Nc.inverse_element(N.act(F, P[x]), P[S.act(F, x)], Phi.phi[(F, x)]) is not None,
                  "phi invertible", (F, x))
    for F in S.C.objects:
        for x, y in product(Mc.objects, Mc.objects):
            Fx, Fy = S.act(F, x), S.act(F, y)
            a, b = N.act(F, P[x]), N.act(F, P[y])
            lhs = Nc.comp[(a, P[Fx], P[Fy])] * kron(Phi.mor[(Fx, Fy)] * S.whisker(F, x, y), Phi.phi[(F, x)])
            rhs = Nc.comp[(a, b, P[Fy])] * kron(Phi.phi[(F, y)], N.whisker(F, P[x], P[y]) * Phi.mor[(x, y)])
            rep.check(same(canon(base, lhs), canon(base, rhs)), "phi natural in x", (F, x, y))
    for F, G in product(S.C.objects, S.C.objects):
        for x in Mc.objects:
            Fx, Gx = S.act(F, x), S.act(G, x)
            a, b = N.act(F, P[x]), N.act(G, P[x])
            lhs = Nc.comp[(a, b, P[Gx])] * kron(Phi.phi[(G, x)], N.act_on(F, G, P[x]))
            rhs = Nc.comp[(a, P[Fx], P[Gx])] * kron(Phi.mor[(Fx, Gx)] * S.act_on(F, G, x), Phi.phi[(F, x)])
            rep.check(same(canon(base, lhs), canon(base, rhs)), "phi natural in F", (F, G, x))
    T = S.C.tensor_obj
    for G, F, x in product(S.C.objects, S.C.objects, Mc.objects):
        Fx = S.act(F, x)
        a = N.act(T[G, F], P[x])
        b = N.act(G, P[Fx])
        c = P[S.act(G, Fx)]
        inner = canon(base, N.whisker(G, N.act(F, P[x]), P[Fx]) * Phi.phi[(F, x)])
        rhs = Nc.compose(a, b, c, Phi.phi[(G, Fx)], inner)
        rep.check(same(Phi.phi[(T[G, F], x)], rhs), "phi multiplicative", (G, F, x))
    for x in Mc.objects:
        rep.check(same(Phi.phi[(S.C.unit, x)], Nc.ident[P[x]]), "phi unital", (x,))
    return rep


# ---------------------------------------------------------------------------
# reversal and opposites

def opp_monoidal(mon: MonoidalStructure) -> MonoidalStructure:
    """Morphism-opposite keeping the tensor."""
    cat = opposite_category(mon.cat)
    objs = cat.objects
    tm = {(a, b, a2, b2): mon.tensor_mor[(a2, b2, a, b)] for a, b, a2, b2 in product(objs, repeat=4)}
    return MonoidalStructure(cat, dict(mon.tensor_obj), tm, mon.unit)


def rev_monoidal(mon: MonoidalStructure) -> MonoidalStructure:
    """Same category with the tensor order reversed."""
    objs = mon.cat.objects
    d = mon.cat.dims
    to = {(a, b): mon.tensor_obj[(b, a)] for a, b in product(objs, objs)}
    tm = {(a, b, a2, b2): canon(mon.base, mon.tensor_mor[(b, a, b2, a2)] * swap(d[(a, a2)], d[(b, b2)]))
          for a, b, a2, b2 in product(objs, repeat=4)}
    return MonoidalStructure(mon.cat, to, tm, mon.unit)


def reverse_and_opposite(bundle, mode: str):
    """Apply opp / rev / op to a bundle (or a bare category / monoidal structure)."""
    from .examples_io import CategoryBundle
    if isinstance(bundle, FinCategory):
        bundle = CategoryBundle(category=bundle)
    elif isinstance(bundle, MonoidalStructure):
        bundle = CategoryBundle(category=bundle.cat, monoidal=bundle)
    if mode == "opp":
        if bundle.monoidal is None:
            return CategoryBundle(category=opposite_category(bundle.category), meta=dict(bundle.meta))
        mon = opp_monoidal(bundle.monoidal)
        return CategoryBundle(category=mon.cat, monoidal=mon, meta=dict(bundle.meta))
    if mode == "rev":
        if bundle.monoidal is None:
            raise MissingStructure("rev needs a monoidal structure")
        mon = rev_monoidal(bundle.monoidal)
        return CategoryBundle(category=mon.cat, monoidal=mon, meta=dict(bundle.meta))
    if mode == "op":
        return CategoryBundle(category=opposite_category(bundle.category), meta=dict(bundle.meta))
    raise ValueError(f"unknown mode {mode!r}")


def categories_equal(c1: FinCategory, c2: FinCategory) -> bool:
    if list(c1.objects) != list(c2.objects) or c1.base != c2.base or c1.dims != c2.dims:
        return False
    return (all(same(c1.comp[k], c2.comp[k]) for k in c1.comp) and set(c1.comp) == set(c2.comp)
            and all(same(c1.ident[a], c2.ident[a]) for a in c1.objects))


def monoidals_equal(m1: MonoidalStructure, m2: MonoidalStructure) -> bool:
    return (categories_equal(m1.cat, m2.cat) and m1.tensor_obj == m2.tensor_obj and m1.unit == m2.unit
            and set(m1.tensor_mor) == set(m2.tensor_mor)
            and all(same(m1.tensor_mor[k], m2.tensor_mor[k]) for k in m1.tensor_mor))


def modules_equal(a: ModuleStructure, b: ModuleStructure) -> bool:
    return (categories_equal(a.cat, b.cat) and a.act_obj == b.act_obj and set(a.act_mor) == set(b.act_mor)
            and all(same(a.act_mor[k], b.act_mor[k]) for k in a.act_mor))


def identity_tambara(M: ModuleStructure):
    from .profunctor import identity_tambara as _it
    return _it(M)


def validate_bundle(bundle) -> ValidationReport:
    rep = ValidationReport(f"bundle {bundle.meta.get('name', '')}")
    rep.merge(validate_category(bundle.category), "category: ")
    if not rep.ok:
        return rep
    if bundle.monoidal is not None:
        rep.merge(validate_monoidal(bundle.monoidal), "monoidal: ")
    for name, mod in bundle.modules.items():
        if bundle.monoidal is None:
            rep.check(False, "module without monoidal structure", (name,))
            continue
        r = validate_category(mod.cat)
        rep.merge(r, f"module {name} category: ")
        if r.ok:
            rep.merge(validate_module(mod), f"module {name}: ")
    for name, Phi in bundle.functors.items():
        rep.merge(validate_module_functor(Phi), f"functor {name}: ")
    for name, gens in bundle.generators.items():
        cat = bundle.modules[name].cat if name in bundle.modules else bundle.category
        for g in gens:
            rep.check(g in cat.objects, "declared generator is an object", (name, g))
    return rep
