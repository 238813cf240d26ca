"""Projective abelianization: arrows P1 -> P0 between formal direct sums, the box tensor,
homotopy classes of morphisms, and the cokernel comparison with Day convolution.

A formal sum is a tuple of objects.  A morphism between sums has blocks[(i, j)],
a column vector in hom(src[j], tgt[i]); its coordinates are the blocks
concatenated in row-major (i, j) order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, Sequence, Tuple

from .base import (RAT, Matrix, QuotientPresentation, UnsupportedBase, hstack, is_isomorphism, nullspace,
                   quotient, same, solve_particular, unit_vector, vstack, zeros)
from .fincat import MonoidalStructure, opp_monoidal
from .presheaf import (FinPresheaf, day_convolution, presheaf_hom_space, presheaf_morphism_ok, validate_presheaf)
from .report import ValidationReport

Sum = Tuple


@dataclass
class SumMorphism:
    src: Sum
    tgt: Sum
    blocks: Dict[Tuple[int, int], Matrix]


@dataclass
class ArrowObject:
    P1: Sum
    P0: Sum
    p: SumMorphism


def _require_rat(C: MonoidalStructure) -> None:
    if C.base != RAT:
        raise UnsupportedBase("formal direct sums need a Rat bundle")


def matrix_of(fn: Callable[[Matrix], Matrix], n_in: int, n_out: int) -> Matrix:
    """Matrix of a linear map given as a function on column vectors."""
    if n_in == 0:
        return zeros(n_out, 0)
    return hstack([fn(unit_vector(n_in, i)) for i in range(n_in)], rows=n_out)


def _split(v: Matrix, sizes: Sequence[int]) -> List[Matrix]:
    out, o = [], 0
    for s in sizes:
        out.append(v.extract(list(range(o, o + s)), [0]) if s else zeros(0, 1))
        o += s
    return out


def _stack(parts: List[Matrix]) -> Matrix:
    parts = [p for p in parts if p.shape[0]]
    return vstack(parts, cols=1) if parts else zeros(0, 1)


# ---------------------------------------------------------------------------
# morphisms between formal sums

def block_dims(C: MonoidalStructure, src: Sum, tgt: Sum) -> List[int]:
    d = C.cat.dims
    return [d[(src[j], tgt[i])] for i, j in product(range(len(tgt)), range(len(src)))]


def sum_hom_dim(C: MonoidalStructure, src: Sum, tgt: Sum) -> int:
    return sum(block_dims(C, src, tgt))


def to_vec(C: MonoidalStructure, f: SumMorphism) -> Matrix:
    return _stack([f.blocks[(i, j)] for i, j in product(range(len(f.tgt)), range(len(f.src)))])


def from_vec(C: MonoidalStructure, src: Sum, tgt: Sum, v: Matrix) -> SumMorphism:
    parts = _split(v, block_dims(C, src, tgt))
    keys = list(product(range(len(tgt)), range(len(src))))
    return SumMorphism(tuple(src), tuple(tgt), dict(zip(keys, parts)))


def sum_matrix(C: MonoidalStructure, src: Sum, tgt: Sum, rows) -> SumMorphism:
    """A morphism from a nested list of hom-space coordinates, rows[i][j] in hom(src[j], tgt[i])."""
    from .base import col
    blocks = {}
    for i, j in product(range(len(tgt)), range(len(src))):
        n = C.cat.dims[(src[j], tgt[i])]
        entry = rows[i][j]
        entry = [entry] if not isinstance(entry, (list, tuple)) else list(entry)
        blocks[(i, j)] = col(entry) if n else zeros(0, 1)
        if blocks[(i, j)].shape[0] != n:
            raise ValueError(f"entry ({i}, {j}) has the wrong length")
    return SumMorphism(tuple(src), tuple(tgt), blocks)


def sum_identity(C: MonoidalStructure, P: Sum) -> SumMorphism:
    blocks = {}
    for i, j in product(range(len(P)), range(len(P))):
        blocks[(i, j)] = C.cat.ident[P[i]] if i == j else zeros(C.cat.dims[(P[j], P[i])], 1)
    return SumMorphism(tuple(P), tuple(P), blocks)


def sum_zero(C: MonoidalStructure, src: Sum, tgt: Sum) -> SumMorphism:
    return from_vec(C, src, tgt, zeros(sum_hom_dim(C, src, tgt), 1))


def sum_compose(C: MonoidalStructure, g: SumMorphism, f: SumMorphism) -> SumMorphism:
    cat = C.cat
    blocks = {}
    for i, k in product(range(len(g.tgt)), range(len(f.src))):
        acc = zeros(cat.dims[(f.src[k], g.tgt[i])], 1)
        for j in range(len(f.tgt)):
            acc = acc + cat.compose(f.src[k], f.tgt[j], g.tgt[i], g.blocks[(i, j)], f.blocks[(j, k)])
        blocks[(i, k)] = acc
    return SumMorphism(f.src, g.tgt, blocks)


def sum_add(f: SumMorphism, g: SumMorphism, scale=1) -> SumMorphism:
    from .base import to_qq
    s = to_qq(scale)
    return SumMorphism(f.src, f.tgt, {k: f.blocks[k] + g.blocks[k] * s for k in f.blocks})


def tensor_sum(C: MonoidalStructure, P: Sum, Q: Sum) -> Sum:
    return tuple(C.t(a, b) for a, b in product(P, Q))


def sum_tensor(C: MonoidalStructure, f: SumMorphism, g: SumMorphism) -> SumMorphism:
    blocks = {}
    nq, nq2 = len(g.src), len(g.tgt)
    for (i, k), (j, l) in product(product(range(len(f.tgt)), range(nq2)), product(range(len(f.src)), range(nq))):
        blocks[(i * nq2 + k, j * nq + l)] = C.tensor_el(f.src[j], g.src[l], f.tgt[i], g.tgt[k],
                                                        f.blocks[(i, j)], g.blocks[(k, l)])
    return SumMorphism(tensor_sum(C, f.src, g.src), tensor_sum(C, f.tgt, g.tgt), blocks)


def sum_direct(C: MonoidalStructure, f: SumMorphism, g: SumMorphism) -> SumMorphism:
    src, tgt = f.src + g.src, f.tgt + g.tgt
    a, b = len(f.tgt), len(f.src)
    blocks = {}
    for i, j in product(range(len(tgt)), range(len(src))):
        if i < a and j < b:
            blocks[(i, j)] = f.blocks[(i, j)]
        elif i >= a and j >= b:
            blocks[(i, j)] = g.blocks[(i - a, j - b)]
        else:
            blocks[(i, j)] = zeros(C.cat.dims[(src[j], tgt[i])], 1)
    return SumMorphism(src, tgt, blocks)


def sum_row(C: MonoidalStructure, f: SumMorphism, g: SumMorphism) -> SumMorphism:
    """(f, g): f.src + g.src -> tgt."""
    blocks = {}
    for i in range(len(f.tgt)):
        for j in range(len(f.src)):
            blocks[(i, j)] = f.blocks[(i, j)]
        for j in range(len(g.src)):
            blocks[(i, len(f.src) + j)] = g.blocks[(i, j)]
    return SumMorphism(f.src + g.src, f.tgt, blocks)


def sums_equal(f: SumMorphism, g: SumMorphism) -> bool:
    return f.src == g.src and f.tgt == g.tgt and all(same(f.blocks[k], g.blocks[k]) for k in f.blocks)


# ---------------------------------------------------------------------------
# arrows

def embed(C: MonoidalStructure, F) -> ArrowObject:
    """0 -> F."""
    return ArrowObject((), (F,), SumMorphism((), (F,), {}))


def box_tensor(C: MonoidalStructure, A: ArrowObject, B: ArrowObject) -> ArrowObject:
    _require_rat(C)
    left = sum_tensor(C, A.p, sum_identity(C, B.P0))
    right = sum_tensor(C, sum_identity(C, A.P0), B.p)
    p = sum_row(C, left, right)
    return ArrowObject(p.src, p.tgt, p)


@dataclass
class ArrowMorphism:
    t1: SumMorphism
    t0: SumMorphism


def is_arrow_morphism(C: MonoidalStructure, A: ArrowObject, B: ArrowObject, t: ArrowMorphism) -> bool:
    return sums_equal(sum_compose(C, t.t0, A.p), sum_compose(C, B.p, t.t1))


def box_tensor_morphism(C: MonoidalStructure, t: ArrowMorphism, s: ArrowMorphism) -> ArrowMorphism:
    t1 = sum_direct(C, sum_tensor(C, t.t1, s.t0), sum_tensor(C, t.t0, s.t1))
    return ArrowMorphism(t1, sum_tensor(C, t.t0, s.t0))


def is_nullhomotopic(C: MonoidalStructure, B: ArrowObject, t: ArrowMorphism) -> bool:
    """t0 = p' o h for some h: P0 -> P1'."""
    src = t.t0.src
    n = sum_hom_dim(C, src, B.P1)
    m = sum_hom_dim(C, src, B.P0)
    post = matrix_of(lambda v: to_vec(C, sum_compose(C, B.p, from_vec(C, src, B.P1, v))), n, m)
    return solve_particular(post, to_vec(C, t.t0)) is not None


@dataclass
class HomotopyQuotient:
    pairs: Matrix                 # columns: basis of commuting pairs, coordinates (t1, t0)
    quotient: QuotientPresentation

    @property
    def dim(self) -> int:
        return self.quotient.dim


def _pair_coords(C, A, B):
    n1 = sum_hom_dim(C, A.P1, B.P1)
    n0 = sum_hom_dim(C, A.P0, B.P0)
    return n1, n0


def hom_mod_homotopy(C: MonoidalStructure, A: ArrowObject, B: ArrowObject) -> HomotopyQuotient:
    _require_rat(C)
    n1, n0 = _pair_coords(C, A, B)
    target = sum_hom_dim(C, A.P1, B.P0)

    def square(v):
        t1, t0 = _split(v, [n1, n0])
        a = sum_compose(C, from_vec(C, A.P0, B.P0, t0), A.p)
        b = sum_compose(C, B.p, from_vec(C, A.P1, B.P1, t1))
        return to_vec(C, a) - to_vec(C, b)

    K = nullspace(matrix_of(square, n1 + n0, target))
    null = []
    nh = sum_hom_dim(C, A.P0, B.P1)
    for i in range(nh):
        h = from_vec(C, A.P0, B.P1, unit_vector(nh, i))
        null.append(_stack([to_vec(C, sum_compose(C, h, A.p)), to_vec(C, sum_compose(C, B.p, h))]))
    post = matrix_of(lambda v: to_vec(C, sum_compose(C, B.p, from_vec(C, A.P1, B.P1, v))), n1, sum_hom_dim(C, A.P1, B.P0))
    ker = nullspace(post)
    for j in range(ker.shape[1]):
        null.append(_stack([ker.extract(list(range(n1)), [j]), zeros(n0, 1)]))
    rels = []
    for v in null:
        x = solve_particular(K, v)
        if x is None:
            raise ArithmeticError("nullhomotopy outside the commuting pairs")
        rels.append(x)
    R = hstack(rels, rows=K.shape[1]) if rels else zeros(K.shape[1], 0)
    return HomotopyQuotient(K, quotient(RAT, K.shape[1], R))


# ---------------------------------------------------------------------------
# cokernel presheaves

@dataclass
class CokerPresheaf:
    presheaf: FinPresheaf
    quotients: Dict
    sizes: Dict                   # sizes[F]: dims of C(F, P0_i)


def coker(C: MonoidalStructure, A: ArrowObject) -> CokerPresheaf:
    """F |-> C(F, P0) / p o C(F, P1)."""
    _require_rat(C)
    cat = C.cat
    objs = C.objects
    qs, sizes = {}, {}
    for F in objs:
        n1 = [cat.dims[(F, x)] for x in A.P1]
        n0 = [cat.dims[(F, x)] for x in A.P0]
        sizes[F] = n0

        def post(v, F=F, n1=n1):
            u = _split(v, n1)
            out = []
            for i, x in enumerate(A.P0):
                acc = zeros(cat.dims[(F, x)], 1)
                for j, w in enumerate(A.P1):
                    acc = acc + cat.compose(F, w, x, A.p.blocks[(i, j)], u[j])
                out.append(acc)
            return _stack(out)

        qs[F] = quotient(RAT, sum(n0), matrix_of(post, sum(n1), sum(n0)))
    act = {}
    for F, F2 in product(objs, objs):
        k = cat.dims[(F, F2)]
        q2 = qs[F2]

        def fn(v, F=F, F2=F2, k=k, q2=q2):
            idx = _index(v)
            fi, vi = divmod(idx, q2.dim)
            f = unit_vector(k, fi)
            u = _split(q2.section * unit_vector(q2.dim, vi), sizes[F2])
            out = [cat.compose(F, F2, x, u[i], f) for i, x in enumerate(A.P0)]
            return qs[F].proj * _stack(out)

        act[(F, F2)] = matrix_of(fn, k * q2.dim, qs[F].dim)
    P = FinPresheaf(C, {F: qs[F].dim for F in objs}, act, name="Coker")
    return CokerPresheaf(P, qs, sizes)


def _index(v: Matrix) -> int:
    for i, row in v.to_sparse().rep.items():
        if row:
            return i
    raise ValueError("zero vector")


@dataclass
class CokerComparison:
    report: ValidationReport
    comps: Dict
    day: FinPresheaf
    boxed: FinPresheaf


def coker_compare(C: MonoidalStructure, A: ArrowObject, B: ArrowObject) -> CokerComparison:
    """Coker(A) * Coker(B) -> Coker(A box B), [u] (x) [v] (x) f |-> [(u (x) v) o f]."""
    _require_rat(C)
    cat = C.cat
    objs = C.objects
    T = C.tensor_obj
    ca, cb = coker(C, A), coker(C, B)
    AB = box_tensor(C, A, B)
    cab = coker(C, AB)
    D = day_convolution(ca.presheaf, cb.presheaf)
    rep = ValidationReport("coker comparison")
    rep.merge(validate_presheaf(ca.presheaf), "Coker(A): ")
    rep.merge(validate_presheaf(cb.presheaf), "Coker(B): ")
    rep.merge(validate_presheaf(cab.presheaf), "Coker(AB): ")
    comps = {}
    for F in objs:
        fam = {}
        for H, K in product(objs, objs):
            HK = T[H, K]
            qa, qb = ca.quotients[H], cb.quotients[K]
            k = cat.dims[(F, HK)]

            def fn(v, H=H, K=K, HK=HK, qa=qa, qb=qb):
                idx = _index(v)
                fi, rest = divmod(idx, qa.dim * qb.dim)
                ai, bi = divmod(rest, qb.dim)
                f = unit_vector(cat.dims[(F, HK)], fi)
                u = _split(qa.section * unit_vector(qa.dim, ai), ca.sizes[H])
                w = _split(qb.section * unit_vector(qb.dim, bi), cb.sizes[K])
                out = []
                for (i, x), (j, y) in product(enumerate(A.P0), enumerate(B.P0)):
                    uv = C.tensor_el(H, K, x, y, u[i], w[j])
                    out.append(cat.compose(F, HK, T[x, y], uv, f))
                return cab.quotients[F].proj * _stack(out)

            fam[(H, K)] = matrix_of(fn, k * qa.dim * qb.dim, cab.quotients[F].dim)
        try:
            comps[F] = D.coends[F].map_out(fam, check=True)
        except Exception:
            rep.check(False, "comparison family extranatural", (F,))
            return CokerComparison(rep, comps, D, cab.presheaf)
        rep.check(is_isomorphism(comps[F]), "comparison invertible", (F,))
    rep.merge(presheaf_morphism_ok(D, cab.presheaf, comps), "comparison: ")
    return CokerComparison(rep, comps, D, cab.presheaf)


def homotopy_matches_presheaf_hom(C: MonoidalStructure, A: ArrowObject, B: ArrowObject) -> Tuple[int, int]:
    """(dim hom(A, B) modulo homotopy, dim Hom(Coker A, Coker B))."""
    hq = hom_mod_homotopy(C, A, B)
    return hq.dim, len(presheaf_hom_space(coker(C, A).presheaf, coker(C, B).presheaf))


# ---------------------------------------------------------------------------
# injective side by duality

def opposite_arrow(A: ArrowObject) -> ArrowObject:
    """An arrow I0 -> I1 in C read as I1 -> I0 in the opposite category."""
    p = A.p
    blocks = {(j, i): v for (i, j), v in p.blocks.items()}
    q = SumMorphism(p.tgt, p.src, blocks)
    return ArrowObject(q.src, q.tgt, q)


def ker_compare(C: MonoidalStructure, A: ArrowObject, B: ArrowObject) -> CokerComparison:
    """Kernel comparison for arrows A, B given as I0 -> I1 (stored with P1 = I0, P0 = I1)."""
    return coker_compare(opp_monoidal(C), opposite_arrow(A), opposite_arrow(B))


# ---------------------------------------------------------------------------
# enumeration for the vector-space skeleton

def normal_form_arrows(C: MonoidalStructure, obj, max_total: int) -> List[ArrowObject]:
    """Arrows obj^a -> obj^b in rank normal form, a + b <= max_total, for a one-object C with End = Q."""
    out = []
    for a in range(max_total + 1):
        for b in range(max_total + 1 - a):
            for r in range(min(a, b) + 1):
                rows = [[1 if (i == j and i < r) else 0 for j in range(a)] for i in range(b)]
                p = sum_matrix(C, (obj,) * a, (obj,) * b, rows)
                out.append(ArrowObject(p.src, p.tgt, p))
    return out


def arrow_total_dim(A: ArrowObject) -> int:
    return len(A.P1) + len(A.P0)


def random_arrow(C: MonoidalStructure, rng, max_len: int = 2, entries=(-1, 0, 1, 2)) -> ArrowObject:
    objs = C.objects
    P1 = tuple(rng.choice(objs) for _ in range(rng.randint(0, max_len)))
    P0 = tuple(rng.choice(objs) for _ in range(rng.randint(0, max_len)))
    rows = [[[rng.choice(entries) for _ in range(C.cat.dims[(x, y)])] for x in P1] for y in P0]
    p = sum_matrix(C, P1, P0, rows)
    return ArrowObject(P1, P0, p)
