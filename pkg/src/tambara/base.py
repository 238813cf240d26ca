"""Exact enrichment bases.

Two bases share one representation.  A value is a finite-dimensional
space over QQ given by its dimension, and a map is a sparse DomainMatrix
acting on column vectors.

* ``Rat``: ordinary finite-dimensional rational vector spaces.
* ``Bool``: truth values, embedded as dimension 0 (false) or 1 (true).
  The only nonzero Bool map is the 1x1 matrix ``[[1]]``.  A map
  true -> false has shape (0, 1) and is never valid.

Tensor products are Kronecker products with a row-major basis, so the
basis vector ``e_i (x) e_j`` of ``V (x) W`` has index ``i * dim W + j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

BOOL = "Bool"
RAT = "Rat"
BASES = (BOOL, RAT)

Matrix = DomainMatrix


class InvalidShape(ValueError):
    pass


class NotInvertible(ValueError):
    pass


class UnsupportedBase(ValueError):
    pass


def check_base(base: str) -> str:
    if base not in BASES:
        raise UnsupportedBase(f"unknown base {base!r}")
    return base


# ---------------------------------------------------------------------------
# matrix helpers

def _sdm(rows: dict, shape) -> Matrix:
    return DomainMatrix(rows, shape, QQ)


def zeros(m: int, n: int) -> Matrix:
    return _sdm({}, (m, n))


def eye(n: int) -> Matrix:
    return _sdm({i: {i: QQ(1)} for i in range(n)}, (n, n))


def to_qq(x) -> object:
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, str):
        f = Fraction(x)
        return QQ(f.numerator, f.denominator)
    return QQ(x)


def mat(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Build a matrix from nested lists of ints, Fractions or strings."""
    m = len(rows)
    n = len(rows[0]) if m else (ncols or 0)
    d = {}
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InvalidShape("ragged rows")
        r = {j: to_qq(v) for j, v in enumerate(row) if v != 0}
        if r:
            d[i] = r
    return _sdm(d, (m, n))


def col(entries: Sequence) -> Matrix:
    return mat([[e] for e in entries], 1)


def unit_vector(n: int, i: int) -> Matrix:
    return _sdm({i: {0: QQ(1)}}, (n, 1))


def to_lists(a: Matrix) -> List[List[Fraction]]:
    m, n = a.shape
    out = [[Fraction(0)] * n for _ in range(m)]
    for i, row in a.rep.items():
        for j, v in row.items():
            out[i][j] = Fraction(int(v.numerator), int(v.denominator))
    return out


def entries(a: Matrix) -> Dict[int, Dict[int, object]]:
    return a.to_sparse().rep


def is_zero(a: Matrix) -> bool:
    return not entries(a)


def same(a: Matrix, b: Matrix) -> bool:
    """Exact equality including shape."""
    return a.shape == b.shape and entries(a) == entries(b)


def kron(a: Matrix, b: Matrix) -> Matrix:
    (m, n), (p, q) = a.shape, b.shape
    ra, rb = entries(a), entries(b)
    d = {}
    for i, row_a in ra.items():
        for k, row_b in rb.items():
            d[i * p + k] = {j * q + l: x * y for j, x in row_a.items() for l, y in row_b.items()}
    return _sdm(d, (m * p, n * q))


def kron_all(ms: Iterable[Matrix]) -> Matrix:
    out = eye(1)
    for m in ms:
        out = kron(out, m)
    return out


def hstack(blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    if not blocks:
        return zeros(rows or 0, 0)
    m = blocks[0].shape[0]
    d: dict = {}
    off = 0
    for b in blocks:
        if b.shape[0] != m:
            raise InvalidShape("hstack row mismatch")
        for i, row in entries(b).items():
            d.setdefault(i, {}).update({off + j: v for j, v in row.items()})
        off += b.shape[1]
    return _sdm(d, (m, off))


def vstack(blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if not blocks:
        return zeros(0, cols or 0)
    n = blocks[0].shape[1]
    d = {}
    off = 0
    for b in blocks:
        if b.shape[1] != n:
            raise InvalidShape("vstack column mismatch")
        for i, row in entries(b).items():
            d[off + i] = dict(row)
        off += b.shape[0]
    return _sdm(d, (off, n))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    d = {}
    r = c = 0
    for b in blocks:
        for i, row in entries(b).items():
            d[r + i] = {c + j: v for j, v in row.items()}
        r += b.shape[0]
        c += b.shape[1]
    return _sdm(d, (r, c))


def submatrix(a: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
    ra = entries(a)
    cpos = {c: k for k, c in enumerate(cols)}
    d = {}
    for k, i in enumerate(rows):
        row = ra.get(i)
        if row:
            r = {cpos[j]: v for j, v in row.items() if j in cpos}
            if r:
                d[k] = r
    return _sdm(d, (len(rows), len(cols)))


def permute_tensor(dims: Sequence[int], perm: Sequence[int]) -> Matrix:
    """Matrix P with P kron(v_0, ..., v_k) = kron(v_perm[0], ..., v_perm[k])."""
    dims = list(dims)
    k = len(dims)
    out_dims = [dims[p] for p in perm]

    def flat(idx, ds):
        n = 0
        for i, d in zip(idx, ds):
            n = n * d + i
        return n

    total = 1
    for x in dims:
        total *= x
    d = {}
    for idx in product(*[range(x) for x in dims]):
        out_idx = [idx[p] for p in perm]
        d[flat(out_idx, out_dims)] = {flat(idx, dims): QQ(1)}
    if k == 0:
        return eye(1)
    return _sdm(d, (total, total))


def swap(m: int, n: int) -> Matrix:
    """kron(v, w) -> kron(w, v) for dim v = m, dim w = n."""
    return permute_tensor([m, n], [1, 0])


# ---------------------------------------------------------------------------
# hand-rolled row reduction

def rref(a: Matrix) -> Tuple[List[Dict[int, object]], List[int]]:
    """Reduced row echelon form as (sparse rows, pivot columns), pivots ascending."""
    pivots: Dict[int, Dict[int, object]] = {}
    for _, row in sorted(entries(a).items()):
        r = dict(row)
        for p in [c for c in r if c in pivots]:
            c = r.get(p)
            if not c:
                continue
            for j, v in pivots[p].items():
                nv = r.get(j, 0) - c * v
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
        if not r:
            continue
        p = min(r)
        inv = 1 / r[p]
        r = {j: v * inv for j, v in r.items()}
        for q, prow in pivots.items():
            c = prow.get(p)
            if c:
                for j, v in r.items():
                    nv = prow.get(j, 0) - c * v
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        pivots[p] = r
    order = sorted(pivots)
    return [pivots[p] for p in order], order


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix) -> Matrix:
    """Columns form a basis of {x : a x = 0}, one per non-pivot column."""
    n = a.shape[1]
    rows, piv = rref(a)
    pset = set(piv)
    free = [j for j in range(n) if j not in pset]
    d: dict = {}
    for k, f in enumerate(free):
        d.setdefault(f, {})[k] = QQ(1)
        for p, row in zip(piv, rows):
            v = row.get(f)
            if v:
                d.setdefault(p, {})[k] = -v
    return _sdm(d, (n, len(free)))


def inverse(a: Matrix) -> Matrix:
    m, n = a.shape
    if m != n:
        raise NotInvertible(f"non-square {a.shape}")
    aug = hstack([a, eye(n)])
    rows, piv = rref(aug)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise NotInvertible("singular matrix")
    d = {}
    for i, row in enumerate(rows[:n]):
        r = {j - n: v for j, v in row.items() if j >= n}
        if r:
            d[i] = r
    return _sdm(d, (n, n))


def solve_particular(a: Matrix, b: Matrix) -> Matrix | None:
    """Some x with a x = b (b a column), or None."""
    m, n = a.shape
    rows, piv = rref(hstack([a, b]))
    if piv and piv[-1] == n:
        return None
    d = {}
    for p, row in zip(piv, rows):
        v = row.get(n)
        if v:
            d[p] = {0: v}
    return _sdm(d, (n, 1))


# ---------------------------------------------------------------------------
# base objects and maps

@dataclass(frozen=True)
class BaseObject:
    base: str
    dim: int

    def __post_init__(self):
        check_base(self.base)
        if self.dim < 0 or (self.base == BOOL and self.dim > 1):
            raise InvalidShape(f"bad {self.base} dimension {self.dim}")

    @property
    def truth(self) -> bool:
        return self.dim > 0

    @classmethod
    def of_truth(cls, v: bool) -> "BaseObject":
        return cls(BOOL, int(bool(v)))


@dataclass(frozen=True)
class BaseMap:
    domain: BaseObject
    codomain: BaseObject
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.codomain.dim, self.domain.dim):
            raise InvalidShape("matrix shape does not match objects")
        if self.domain.base == BOOL and self.domain.dim > self.codomain.dim:
            raise InvalidShape("Bool map true -> false")

    def __matmul__(self, other: "BaseMap") -> "BaseMap":
        if other.codomain != self.domain:
            raise InvalidShape("non-composable maps")
        return BaseMap(other.domain, self.codomain,
                       canon(self.domain.base, self.matrix * other.matrix))

    @classmethod
    def identity(cls, obj: BaseObject) -> "BaseMap":
        return cls(obj, obj, eye(obj.dim))


def canon(base: str, a: Matrix) -> Matrix:
    """Bool maps are unique: a 1x1 becomes [[1]], anything else zero."""
    if base == RAT:
        return a
    m, n = a.shape
    if m == 1 and n == 1:
        return eye(1)
    return zeros(m, n)


def bool_map_ok(a: Matrix) -> bool:
    """A Bool structure map must not point from true to false."""
    m, n = a.shape
    return not (m == 0 and n > 0)


def is_isomorphism(m: BaseMap | Matrix, base: str = RAT) -> bool:
    if isinstance(m, BaseMap):
        base, a = m.domain.base, m.matrix
    else:
        a = m
    r, c = a.shape
    if base == BOOL:
        return r == c
    return r == c and rank(a) == r


# ---------------------------------------------------------------------------
# quotients

@dataclass
class QuotientPresentation:
    base: str
    ambient: int
    dim: int
    proj: Matrix
    section: Matrix
    relations: Matrix = field(repr=False)

    def check(self) -> List[str]:
        errs = []
        if not same(self.proj * self.section, eye(self.dim)):
            errs.append("projection o section != id")
        if self.base == RAT:
            if not is_zero(self.proj * self.relations):
                errs.append("projection does not kill relations")
            if self.ambient != self.dim + rank(self.relations):
                errs.append("rank-nullity")
        return errs


def quotient(base: str, ambient: int, relations: Matrix | None = None) -> QuotientPresentation:
    """Quotient of QQ^ambient by the column span of ``relations``.

    Rat: the basis of the quotient is the standard vectors at the
    non-pivot coordinates of the RREF of the relation span; the section
    is that inclusion.  Bool: the posetal collapse, dimension min(1, ambient).
    """
    if relations is None:
        relations = zeros(ambient, 0)
    if relations.shape[0] != ambient:
        raise InvalidShape("relations live in a different ambient")
    if base == BOOL:
        dim = min(1, ambient)
        proj = _sdm({0: {j: QQ(1) for j in range(ambient)}} if dim else {}, (dim, ambient))
        sec = _sdm({0: {0: QQ(1)}} if dim else {}, (ambient, dim))
        return QuotientPresentation(base, ambient, dim, proj, sec, relations)
    rows, piv = rref(relations.transpose())
    pset = set(piv)
    keep = [j for j in range(ambient) if j not in pset]
    pos = {j: k for k, j in enumerate(keep)}
    d: dict = {}
    for j in keep:
        d.setdefault(pos[j], {})[j] = QQ(1)
    for p, row in zip(piv, rows):
        for j, v in row.items():
            if j != p:
                d.setdefault(pos[j], {})[p] = -v
    proj = _sdm(d, (len(keep), ambient))
    sec = _sdm({j: {pos[j]: QQ(1)} for j in keep}, (ambient, len(keep)))
    return QuotientPresentation(base, ambient, len(keep), proj, sec, relations)


def coequalizer_presentation(f: BaseMap, g: BaseMap) -> QuotientPresentation:
    if f.domain != g.domain or f.codomain != g.codomain:
        raise InvalidShape("coequalizer of maps with different shapes")
    base = f.domain.base
    if base == BOOL:
        return quotient(BOOL, f.codomain.dim)
    return quotient(RAT, f.codomain.dim, f.matrix - g.matrix)


# ---------------------------------------------------------------------------
# linear systems over unknown families of maps

def vec_lxr(l: Matrix, r: Matrix) -> Matrix:
    """vec(L X R) = vec_lxr(L, R) vec(X), row-major vectorization."""
    return kron(l, r.transpose())


def vec_kron_left(k: int, m: int, n: int) -> Matrix:
    """vec(X) |-> vec(kron(I_k, X)) for X of shape (m, n)."""
    d = {}
    for i in range(k):
        for a in range(m):
            for b in range(n):
                d[(i * m + a) * (k * n) + i * n + b] = {a * n + b: QQ(1)}
    return _sdm(d, (k * m * k * n, m * n))


def vec_kron_right(k: int, m: int, n: int) -> Matrix:
    """vec(X) |-> vec(kron(X, I_k)) for X of shape (m, n)."""
    d = {}
    for a in range(m):
        for b in range(n):
            for i in range(k):
                d[(a * k + i) * (n * k) + b * k + i] = {a * n + b: QQ(1)}
    return _sdm(d, (m * k * n * k, m * n))


@dataclass
class LinearSystem:
    """Homogeneous linear equations in a family of unknown matrices.

    Each equation is a list of terms (key, A) meaning sum A vec(X_key) = 0,
    with vec the row-major vectorization.  ``add`` takes the common form
    of terms (L, key, R) standing for L X_key R.
    """
    base: str
    unknowns: Dict[Hashable, Tuple[int, int]] = field(default_factory=dict)
    equations: List[List[Tuple[Hashable, Matrix]]] = field(default_factory=list)

    def add_unknown(self, key: Hashable, rows: int, cols: int) -> None:
        self.unknowns[key] = (rows, cols)

    def add_linear(self, terms: List[Tuple[Hashable, Matrix]]) -> None:
        heights = set()
        for key, a in terms:
            m, n = self.unknowns[key]
            if a.shape[1] != m * n:
                raise InvalidShape(f"term shape mismatch for unknown {key!r}")
            heights.add(a.shape[0])
        if len(heights) > 1:
            raise InvalidShape("equation terms of different shapes")
        if heights and heights != {0}:
            self.equations.append(terms)

    def add(self, terms: List[Tuple[Matrix, Hashable, Matrix]]) -> None:
        lin = []
        for l, key, r in terms:
            m, n = self.unknowns[key]
            if l.shape[1] != m or r.shape[0] != n:
                raise InvalidShape(f"term shape mismatch for unknown {key!r}")
            lin.append((key, vec_lxr(l, r)))
        self.add_linear(lin)


def solve_map_space(system: LinearSystem):
    """Basis of solutions (list of dicts key -> matrix), or a truth value for Bool."""
    if system.base == BOOL:
        return all(bool_map_ok(zeros(m, n)) for m, n in system.unknowns.values())
    offsets = {}
    total = 0
    for key, (m, n) in system.unknowns.items():
        offsets[key] = total
        total += m * n
    d: dict = {}
    row_off = 0
    for terms in system.equations:
        height = terms[0][1].shape[0]
        for key, block in terms:
            off = offsets[key]
            for i, row in entries(block).items():
                tgt = d.setdefault(row_off + i, {})
                for j, v in row.items():
                    nv = tgt.get(off + j, 0) + v
                    if nv:
                        tgt[off + j] = nv
                    else:
                        tgt.pop(off + j, None)
        row_off += height
    big = _sdm({i: r for i, r in d.items() if r}, (row_off, total))
    ns = nullspace(big)
    basis = []
    cols = {}
    for i, row in entries(ns).items():
        for k, v in row.items():
            cols.setdefault(k, {})[i] = v
    for k in range(ns.shape[1]):
        vec = cols.get(k, {})
        sol = {}
        for key, (m, n) in system.unknowns.items():
            off = offsets[key]
            md: dict = {}
            for i in range(m):
                for j in range(n):
                    v = vec.get(off + i * n + j)
                    if v:
                        md.setdefault(i, {})[j] = v
            sol[key] = _sdm(md, (m, n))
        basis.append(sol)
    return basis


def combine(basis: List[Dict[Hashable, Matrix]], coeffs: Sequence) -> Dict[Hashable, Matrix]:
    out = {}
    for key in basis[0]:
        acc = zeros(*basis[0][key].shape)
        for b, c in zip(basis, coeffs):
            if c:
                acc = acc + b[key] * to_qq(c)
        out[key] = acc
    return out
