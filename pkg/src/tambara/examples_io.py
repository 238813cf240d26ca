"""Built-in example bundles and the JSON bundle format."""
from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import jsonschema

from .base import BOOL, RAT, Matrix, canon, eye, mat, to_lists, zeros
from .fincat import (FinCategory, ModuleFunctor, ModuleStructure, MonoidalStructure, categories_equal,
                     modules_equal, monoidals_equal, regular_module, same)

SCHEMA_VERSION = "1.0"
FIXTURE_ENV = "TAMBARA_FIXTURES"


class InvalidTruncation(ValueError):
    pass


class InvalidInput(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None, col: Optional[int] = None,
                 pointer: Optional[str] = None):
        where = []
        if line is not None:
            where.append(f"line {line} col {col}")
        if pointer is not None:
            where.append(f"at {pointer}")
        super().__init__(f"{msg} ({', '.join(where)})" if where else msg)
        self.line, self.col, self.pointer = line, col, pointer


class SchemaError(ValueError):
    def __init__(self, msg: str, pointer: str):
        super().__init__(f"{msg} at {pointer}")
        self.pointer = pointer


@dataclass
class CategoryBundle:
    category: FinCategory
    monoidal: Optional[MonoidalStructure] = None
    modules: Dict[str, ModuleStructure] = field(default_factory=dict)
    generators: Dict[str, List] = field(default_factory=dict)
    functors: Dict[str, ModuleFunctor] = field(default_factory=dict)
    meta: Dict = field(default_factory=dict)

    @property
    def base(self):
        return self.category.base

    @property
    def name(self):
        return self.meta.get("name", "")

    def module(self, name: str) -> ModuleStructure:
        if name == "regular" and name not in self.modules:
            return regular_module(self.monoidal)
        return self.modules[name]


def bundles_equal(a: CategoryBundle, b: CategoryBundle) -> bool:
    if not categories_equal(a.category, b.category):
        return False
    if (a.monoidal is None) != (b.monoidal is None):
        return False
    if a.monoidal is not None and not monoidals_equal(a.monoidal, b.monoidal):
        return False
    if set(a.modules) != set(b.modules) or a.generators != b.generators or set(a.functors) != set(b.functors):
        return False
    if not all(modules_equal(a.modules[k], b.modules[k]) for k in a.modules):
        return False
    for k, f in a.functors.items():
        g = b.functors[k]
        if f.obj != g.obj or set(f.mor) != set(g.mor) or set(f.phi) != set(g.phi):
            return False
        if not all(same(f.mor[x], g.mor[x]) for x in f.mor) or not all(same(f.phi[x], g.phi[x]) for x in f.phi):
            return False
    return a.meta == b.meta


# ---------------------------------------------------------------------------
# constructors

def bool_map(m: int, n: int) -> Matrix:
    return canon(BOOL, zeros(m, n))


def poset_category(objects: Sequence, leq, name: str = "") -> FinCategory:
    objs = list(objects)
    dims = {(a, b): int(bool(leq(a, b))) for a, b in product(objs, objs)}
    comp = {(a, b, c): bool_map(dims[(a, c)], dims[(b, c)] * dims[(a, b)]) for a, b, c in product(objs, objs, objs)}
    ident = {a: bool_map(dims[(a, a)], 1) for a in objs}
    return FinCategory(BOOL, objs, dims, comp, ident, name)


def bool_monoidal(cat: FinCategory, tensor, unit) -> MonoidalStructure:
    objs, d = cat.objects, cat.dims
    to = {(a, b): tensor(a, b) for a, b in product(objs, objs)}
    tm = {(a, b, a2, b2): bool_map(d[(to[a, b], to[a2, b2])], d[(a, a2)] * d[(b, b2)])
          for a, b, a2, b2 in product(objs, repeat=4)}
    return MonoidalStructure(cat, to, tm, unit)


def bool_module(C: MonoidalStructure, cat: FinCategory, act, name: str = "") -> ModuleStructure:
    cd, md = C.cat.dims, cat.dims
    ao = {(F, x): act(F, x) for F, x in product(C.objects, cat.objects)}
    am = {(F, G, x, y): bool_map(md[(ao[F, x], ao[G, y])], cd[(F, G)] * md[(x, y)])
          for F, G, x, y in product(C.objects, C.objects, cat.objects, cat.objects)}
    return ModuleStructure(C, cat, ao, am, name)


def truncated_monoidal(N: int) -> MonoidalStructure:
    if N < 0:
        raise InvalidTruncation("N must be non-negative")
    cat = poset_category(range(N + 1), lambda a, b: a <= b, f"Z_0,{N}")
    return bool_monoidal(cat, lambda a, b: min(a + b, N), 0)


def gen_truncated_addition(N: int) -> CategoryBundle:
    mon = truncated_monoidal(N)
    return CategoryBundle(mon.cat, mon, generators={"regular": [0]},
                          meta={"name": f"Z_0,{N}", "version": SCHEMA_VERSION})


def gen_truncated_module(N: int, k: int, C: Optional[MonoidalStructure] = None) -> ModuleStructure:
    if k > N or k < 0:
        raise InvalidTruncation(f"need 0 <= k <= N, got k={k}, N={N}")
    C = C or truncated_monoidal(N)
    cat = poset_category(range(k + 1), lambda a, b: a <= b, f"Z_0,{k}")
    return bool_module(C, cat, lambda c, s: min(c + s, k), f"Z_0,{k}")


def truncated_bundle(N: int, ks: Sequence[int]) -> CategoryBundle:
    """Z_{0,N} together with the modules Z_{0,k}, each generated by 0."""
    b = gen_truncated_addition(N)
    for k in ks:
        b.modules[f"Z{k}"] = gen_truncated_module(N, k, b.monoidal)
        b.generators[f"Z{k}"] = [0]
    b.meta["name"] = f"Z_0,{N}" + "".join(f"+Z_0,{k}" for k in ks)
    return b


def max_bundle(N: int, k: int) -> CategoryBundle:
    """The poset 0..N under max, acting on 0..k by min(max(c, s), k)."""
    cat = poset_category(range(N + 1), lambda a, b: a <= b, f"max_{N}")
    mon = bool_monoidal(cat, max, 0)
    mcat = poset_category(range(k + 1), lambda a, b: a <= b, f"max_{k}")
    mod = bool_module(mon, mcat, lambda c, s: min(max(c, s), k), f"max_{k}")
    return CategoryBundle(cat, mon, {"M": mod}, {"regular": [0], "M": [0]},
                          meta={"name": f"max_{N}+{k}", "version": SCHEMA_VERSION})


def discrete_category(objects: Sequence, name: str = "") -> FinCategory:
    objs = list(objects)
    dims = {(a, b): int(a == b) for a, b in product(objs, objs)}
    comp = {}
    for a, b, c in product(objs, repeat=3):
        comp[(a, b, c)] = eye(1) if a == b == c else zeros(dims[(a, c)], dims[(b, c)] * dims[(a, b)])
    ident = {a: eye(1) for a in objs}
    return FinCategory(RAT, objs, dims, comp, ident, name)


def check_group(elements: Sequence, mult: Dict[Tuple, object]) -> object:
    els = list(elements)
    for a, b in product(els, els):
        if mult.get((a, b)) not in els:
            raise InvalidInput(f"group table not total at {(a, b)}")
    for a, b, c in product(els, repeat=3):
        if mult[mult[a, b], c] != mult[a, mult[b, c]]:
            raise InvalidInput(f"group table not associative at {(a, b, c)}")
    units = [e for e in els if all(mult[e, a] == a == mult[a, e] for a in els)]
    if not units:
        raise InvalidInput("group table has no unit")
    e = units[0]
    for a in els:
        if not any(mult[a, b] == e for b in els):
            raise InvalidInput(f"no inverse for {a}")
    return e


def gen_group_action(elements: Sequence, mult: Dict[Tuple, object],
                     gset: Sequence, action: Dict[Tuple, object], name: str = "G") -> CategoryBundle:
    """Discrete linear category on G with tensor the group law, acting on a G-set."""
    e = check_group(elements, mult)
    S = list(gset)
    for g, s in product(elements, S):
        if action.get((g, s)) not in S:
            raise InvalidInput(f"action not total at {(g, s)}")
    for g, h, s in product(elements, elements, S):
        if action[mult[g, h], s] != action[g, action[h, s]]:
            raise InvalidInput(f"action not associative at {(g, h, s)}")
    for s in S:
        if action[e, s] != s:
            raise InvalidInput(f"unit acts nontrivially on {s}")
    cat = discrete_category(elements, name)
    d = cat.dims
    to = {(a, b): mult[a, b] for a, b in product(cat.objects, cat.objects)}
    tm = {}
    for a, b, a2, b2 in product(cat.objects, repeat=4):
        if a == a2 and b == b2:
            tm[(a, b, a2, b2)] = eye(1)
        else:
            tm[(a, b, a2, b2)] = zeros(d[(to[a, b], to[a2, b2])], d[(a, a2)] * d[(b, b2)])
    mon = MonoidalStructure(cat, to, tm, e)
    mcat = discrete_category(S, f"{name}-set")
    md = mcat.dims
    ao = {(g, s): action[g, s] for g, s in product(cat.objects, S)}
    am = {}
    for F, G, x, y in product(cat.objects, cat.objects, S, S):
        if F == G and x == y:
            am[(F, G, x, y)] = eye(1)
        else:
            am[(F, G, x, y)] = zeros(md[(ao[F, x], ao[G, y])], d[(F, G)] * md[(x, y)])
    mod = ModuleStructure(mon, mcat, ao, am, f"{name}-set")
    return CategoryBundle(cat, mon, {"S": mod}, {"regular": [e], "S": [S[0]]},
                          meta={"name": name, "version": SCHEMA_VERSION})


def cyclic_group(n: int):
    els = list(range(n))
    return els, {(a, b): (a + b) % n for a in els for b in els}


def gen_commutative_algebra(mult: Sequence[Sequence[Sequence]], unit: Sequence,
                            name: str = "A") -> CategoryBundle:
    """One-object linear category with End = a commutative algebra A, tensor = product.

    ``mult[i][j]`` is the coordinate vector of e_i e_j.  Commutativity makes
    the interchange law hold, so A acting on itself is a strict module.
    """
    n = len(unit)
    m = mat([[mult[j][k][i] for j in range(n) for k in range(n)] for i in range(n)], n * n)
    u = mat([[c] for c in unit], 1)
    from .base import swap as _swap
    if not same(m * _swap(n, n), m):
        raise InvalidInput("algebra is not commutative")
    o = "*"
    cat = FinCategory(RAT, [o], {(o, o): n}, {(o, o, o): m}, {o: u}, name)
    mon = MonoidalStructure(cat, {(o, o): o}, {(o, o, o, o): m}, o)
    reg = regular_module(mon)
    reg.name = name
    return CategoryBundle(cat, mon, {"A": reg}, {"regular": [o], "A": [o]},
                          meta={"name": name, "version": SCHEMA_VERSION})


def dual_numbers() -> CategoryBundle:
    """Q[x]/(x^2) with basis 1, x."""
    mult = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    return gen_commutative_algebra(mult, [1, 0], name="Q[x]/x^2")


def z2_regular() -> CategoryBundle:
    els = ["e", "g"]
    mult = {(a, b): "e" if a == b else "g" for a in els for b in els}
    return gen_group_action(els, mult, els, mult, name="Z/2")


def unit_rat() -> CategoryBundle:
    return gen_group_action(["1"], {("1", "1"): "1"}, ["*"], {("1", "*"): "*"}, name="unit")


def linearize(b: CategoryBundle) -> CategoryBundle:
    """Bool -> Rat: true becomes QQ, false becomes 0, composition becomes multiplication."""
    if b.base != BOOL:
        raise InvalidInput("linearize needs a Bool bundle")

    def lin_cat(c: FinCategory) -> FinCategory:
        return FinCategory(RAT, list(c.objects), dict(c.dims), dict(c.comp), dict(c.ident), "k" + c.name)

    cat = lin_cat(b.category)
    mon = None
    if b.monoidal is not None:
        mon = MonoidalStructure(cat, dict(b.monoidal.tensor_obj), dict(b.monoidal.tensor_mor), b.monoidal.unit)
    mods = {k: ModuleStructure(mon, lin_cat(m.cat), dict(m.act_obj), dict(m.act_mor), m.name)
            for k, m in b.modules.items()}
    meta = dict(b.meta)
    meta["name"] = "k" + b.name
    return CategoryBundle(cat, mon, mods, {k: list(v) for k, v in b.generators.items()}, {}, meta)


def product_bundle(b1: CategoryBundle, b2: CategoryBundle) -> CategoryBundle:
    """Product of two Bool monoidal posets acting on the product of their first modules."""
    from .fincat import product_category
    c = product_category(b1.category, b2.category)
    m1, m2 = b1.monoidal, b2.monoidal
    mon = bool_monoidal(c, lambda a, b: (m1.t(a[0], b[0]), m2.t(a[1], b[1])), (m1.unit, m2.unit))
    mods = {}
    if b1.modules and b2.modules:
        n1, n2 = sorted(b1.modules)[0], sorted(b2.modules)[0]
        M1, M2 = b1.modules[n1], b2.modules[n2]
        mc = product_category(M1.cat, M2.cat)
        mods["M"] = bool_module(mon, mc, lambda F, x: (M1.act(F[0], x[0]), M2.act(F[1], x[1])), "M")
    gens = {"regular": [mon.unit]}
    if mods:
        gens["M"] = [(b1.generators[n1][0], b2.generators[n2][0])]
    return CategoryBundle(c, mon, mods, gens, meta={"name": f"{b1.name}x{b2.name}", "version": SCHEMA_VERSION})


def builtin_bundles() -> Dict[str, CategoryBundle]:
    """The desk-scale example set used by the acceptance suite."""
    out = {
        "Z02": truncated_bundle(2, [0, 1, 2]),
        "Z03": truncated_bundle(3, [1, 2]),
        "kZ02": linearize(truncated_bundle(2, [1, 2])),
        "Z2": z2_regular(),
        "unit": unit_rat(),
        "max2": max_bundle(2, 1),
        "dual": dual_numbers(),
    }
    for k, b in out.items():
        b.meta["name"] = k
    return out


def random_bundle(rng: random.Random) -> CategoryBundle:
    """A small random bundle from one of several parametrized families."""
    fam = rng.choice(["trunc", "max", "cyclic", "lin", "prod"])
    if fam == "trunc":
        N = rng.randint(0, 3)
        ks = sorted(rng.sample(range(N + 1), rng.randint(1, N + 1)))
        return truncated_bundle(N, ks)
    if fam == "max":
        N = rng.randint(0, 3)
        return max_bundle(N, rng.randint(0, N))
    if fam == "cyclic":
        n = rng.randint(1, 3)
        els, mult = cyclic_group(n)
        sub = rng.choice([d for d in range(1, n + 1) if n % d == 0])
        S = list(range(sub))
        act = {(g, s): (g + s) % sub for g in els for s in S}
        return gen_group_action(els, mult, S, act, name=f"Z/{n}")
    if fam == "lin":
        N = rng.randint(0, 2)
        return linearize(truncated_bundle(N, [rng.randint(0, N)]))
    b1 = truncated_bundle(rng.randint(0, 1), [0])
    b2 = truncated_bundle(1, [rng.randint(0, 1)])
    b1.modules = {"M": b1.modules["Z0"]}
    b1.generators = {"M": [0]}
    return product_bundle(b1, b2)


def random_tambara(C: MonoidalStructure, rng: random.Random):
    """A small Tambara module C -> C built from hom, shifted-hom, Theta and W pieces."""
    from .presheaf import cayley_W, representable
    from .profunctor import compose_tambara, direct_sum, identity_tambara, shifted_hom, theta
    objs = list(C.objects)

    def piece():
        kind = rng.choice(["hom", "shift", "theta", "W"])
        if kind == "hom":
            return identity_tambara(regular_module(C))
        if kind == "shift":
            return shifted_hom(C, rng.choice(objs))
        if kind == "theta":
            return theta(C, rng.choice(objs), rng.choice(objs))
        return cayley_W(representable(C, rng.choice(objs)))

    R = piece()
    if rng.random() < 0.5:
        R = compose_tambara(R, piece())
    if C.base == RAT and rng.random() < 0.5:
        R = direct_sum(R, piece())
    return R


# ---------------------------------------------------------------------------
# rational serialization

def fmt_q(x) -> str:
    f = Fraction(x)
    sign = "-" if f < 0 else "+"
    return f"{sign}{abs(f.numerator)}/{f.denominator}"


def parse_q(s, pointer: str) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"malformed rational {s!r}", pointer=pointer)
    if isinstance(s, int):
        return Fraction(s)
    t = s.strip()
    body = t[1:] if t[:1] in "+-" else t
    num, _, den = body.partition("/")
    if not num.isdigit() or (den and not den.isdigit()) or den == "0":
        raise ParseError(f"malformed rational {s!r}", pointer=pointer)
    return Fraction(t)


def _mat_json(base: str, m: Matrix):
    if base == BOOL:
        return True
    return [[fmt_q(v) for v in row] for row in to_lists(m)]


def _mat_from_json(base: str, data, shape: Tuple[int, int], pointer: str) -> Matrix:
    if base == BOOL:
        if data is not True:
            raise SchemaError("Bool structure maps are written as true", pointer)
        return bool_map(*shape)
    rows, cols = shape
    if not isinstance(data, list) or len(data) != rows or any(not isinstance(r, list) or len(r) != cols for r in data):
        raise SchemaError(f"expected a {rows}x{cols} matrix", pointer)
    return mat([[parse_q(v, f"{pointer}/{i}/{j}") for j, v in enumerate(r)] for i, r in enumerate(data)], cols)


def _index(objs):
    return {o: i for i, o in enumerate(objs)}


def _cat_json(cat: FinCategory) -> dict:
    objs = cat.objects
    base = cat.base
    if base == BOOL:
        homs = [[bool(cat.dims[(a, b)]) for b in objs] for a in objs]
    else:
        homs = [[cat.dims[(a, b)] for b in objs] for a in objs]
    comp = []
    for a, b, c in product(objs, repeat=3):
        if cat.dims[(b, c)] * cat.dims[(a, b)]:
            comp.append({"triple": [a, b, c], "matrix": _mat_json(base, cat.comp[(a, b, c)])})
    out = {"objects": list(objs), "homs": homs, "comp": comp}
    if base == RAT:
        out["identities"] = [[fmt_q(v[0]) for v in to_lists(cat.ident[a])] for a in objs]
    return out


def _cat_from_json(base: str, d: dict, ptr: str, name: str = "") -> FinCategory:
    objs = [_hashable(o) for o in d["objects"]]
    if len(set(map(json.dumps, objs))) != len(objs):
        raise SchemaError("duplicate object identifiers", ptr + "/objects")
    n = len(objs)
    homs = d["homs"]
    if len(homs) != n or any(len(r) != n for r in homs):
        raise SchemaError(f"hom table must be {n}x{n}", ptr + "/homs")
    dims = {}
    for i, a in enumerate(objs):
        for j, b in enumerate(objs):
            v = homs[i][j]
            if base == BOOL:
                if not isinstance(v, bool):
                    raise SchemaError("Bool hom values are true/false", f"{ptr}/homs/{i}/{j}")
                dims[(a, b)] = int(v)
            else:
                if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                    raise SchemaError("Rat hom values are dimensions", f"{ptr}/homs/{i}/{j}")
                dims[(a, b)] = v
    comp = {}
    seen = {}
    for k, entry in enumerate(d.get("comp", [])):
        t = entry["triple"]
        key = tuple(_hashable(o) for o in t)
        if any(o not in objs for o in key):
            raise SchemaError(f"unknown object in triple {t}", f"{ptr}/comp/{k}/triple")
        a, b, c = key
        comp[key] = _mat_from_json(base, entry["matrix"], (dims[(a, c)], dims[(b, c)] * dims[(a, b)]),
                                   f"{ptr}/comp/{k}/matrix")
        seen[key] = k
    for a, b, c in product(objs, repeat=3):
        shape = (dims[(a, c)], dims[(b, c)] * dims[(a, b)])
        if (a, b, c) not in comp:
            if shape[1]:
                raise SchemaError(f"missing composition entry for triple {[a, b, c]}", f"{ptr}/comp")
            comp[(a, b, c)] = zeros(*shape)
    if base == BOOL:
        ident = {a: bool_map(dims[(a, a)], 1) for a in objs}
    else:
        ids = d.get("identities")
        if ids is None or len(ids) != n:
            raise SchemaError("identities required for Rat categories", ptr + "/identities")
        ident = {}
        for i, a in enumerate(objs):
            if len(ids[i]) != dims[(a, a)]:
                raise SchemaError(f"identity of {a} has wrong length", f"{ptr}/identities/{i}")
            ident[a] = mat([[parse_q(v, f"{ptr}/identities/{i}/{j}")] for j, v in enumerate(ids[i])], 1)
    return FinCategory(base, list(objs), dims, comp, ident, name)


def bundle_to_json(b: CategoryBundle) -> dict:
    base = b.base
    out = {"meta": dict(b.meta), "base": base}
    out["meta"].setdefault("version", SCHEMA_VERSION)
    out.update(_cat_json(b.category))
    objs = b.category.objects
    if b.monoidal is not None:
        mon = b.monoidal
        d = b.category.dims
        mors = []
        for a, c, a2, c2 in product(objs, repeat=4):
            if d[(a, a2)] * d[(c, c2)]:
                mors.append({"quad": [a, c, a2, c2], "matrix": _mat_json(base, mon.tensor_mor[(a, c, a2, c2)])})
        out["tensor"] = {"objects": [[mon.tensor_obj[(a, c)] for c in objs] for a in objs], "morphisms": mors}
        out["unit"] = mon.unit
    acts = {}
    for name, m in b.modules.items():
        e = _cat_json(m.cat)
        mo = m.cat.objects
        mors = []
        for F, G, x, y in product(objs, objs, mo, mo):
            if b.category.dims[(F, G)] * m.cat.dims[(x, y)]:
                mors.append({"quad": [F, G, x, y], "matrix": _mat_json(base, m.act_mor[(F, G, x, y)])})
        e["action"] = {"objects": [[m.act_obj[(F, x)] for x in mo] for F in objs], "morphisms": mors}
        acts[name] = e
    out["actions"] = acts
    out["generators"] = {k: list(v) for k, v in b.generators.items()}
    if b.functors:
        fs = {}
        for name, f in b.functors.items():
            src = _module_name(b, f.source)
            tgt = _module_name(b, f.target)
            so = f.source.objects
            fs[name] = {
                "source": src, "target": tgt,
                "objects": [[x, f.obj[x]] for x in so],
                "morphisms": [{"pair": [x, y], "matrix": _mat_json(base, f.mor[(x, y)])}
                              for x, y in product(so, so) if f.source.cat.dims[(x, y)]],
                "phi": [{"pair": [F, x], "vector": _mat_json(base, f.phi[(F, x)])}
                        for F, x in product(objs, so)],
            }
        out["functors"] = fs
    return out


def _module_name(b: CategoryBundle, m: ModuleStructure) -> str:
    for k, v in b.modules.items():
        if v is m:
            return k
    return "regular"


def _schema() -> dict:
    return json.loads(resources.files("tambara").joinpath("schema/bundle.schema.v1.json").read_text())


def bundle_from_json(data: dict) -> CategoryBundle:
    try:
        jsonschema.validate(data, _schema())
    except jsonschema.ValidationError as e:
        pointer = "/" + "/".join(str(p) for p in e.absolute_path)
        raise SchemaError(e.message, pointer) from None
    base = data["base"]
    meta = dict(data.get("meta", {}))
    cat = _cat_from_json(base, data, "", meta.get("name", ""))
    objs = cat.objects
    d = cat.dims
    mon = None
    if "tensor" in data:
        if "unit" not in data:
            raise SchemaError("tensor without unit", "/unit")
        tobj = data["tensor"]["objects"]
        if len(tobj) != len(objs) or any(len(r) != len(objs) for r in tobj):
            raise SchemaError("tensor object table has wrong shape", "/tensor/objects")
        to = {(a, c): _hashable(tobj[i][j]) for i, a in enumerate(objs) for j, c in enumerate(objs)}
        for (a, c), v in to.items():
            if v not in objs:
                raise SchemaError(f"tensor of {a},{c} is not an object", "/tensor/objects")
        tm = _table4(base, data["tensor"]["morphisms"], "/tensor/morphisms", "quad",
                     product(objs, repeat=4),
                     lambda a, c, a2, c2: (d[(to[a, c], to[a2, c2])], d[(a, a2)] * d[(c, c2)]))
        mon = MonoidalStructure(cat, to, tm, _hashable(data["unit"]))
    mods = {}
    for name, e in data.get("actions", {}).items():
        ptr = f"/actions/{name}"
        if mon is None:
            raise SchemaError("module action without tensor", ptr)
        mc = _cat_from_json(base, e, ptr, name)
        mo = mc.objects
        aobj = e["action"]["objects"]
        if len(aobj) != len(objs) or any(len(r) != len(mo) for r in aobj):
            raise SchemaError("action object table has wrong shape", ptr + "/action/objects")
        ao = {(F, x): _hashable(aobj[i][j]) for i, F in enumerate(objs) for j, x in enumerate(mo)}
        for k, v in ao.items():
            if v not in mo:
                raise SchemaError(f"action at {k} is not an object", ptr + "/action/objects")
        am = _table4(base, e["action"]["morphisms"], ptr + "/action/morphisms", "quad",
                     product(objs, objs, mo, mo),
                     lambda F, G, x, y: (mc.dims[(ao[F, x], ao[G, y])], d[(F, G)] * mc.dims[(x, y)]))
        mods[name] = ModuleStructure(mon, mc, ao, am, name)
    gens = {k: [_hashable(g) for g in v] for k, v in data.get("generators", {}).items()}
    b = CategoryBundle(cat, mon, mods, gens, {}, meta)
    for name, f in data.get("functors", {}).items():
        ptr = f"/functors/{name}"
        src, tgt = b.module(f["source"]), b.module(f["target"])
        obj = {_hashable(x): _hashable(y) for x, y in f["objects"]}
        so = src.objects
        if set(obj) != set(map(_hashable, so)):
            raise SchemaError("functor object map is not total", ptr + "/objects")
        mor = _table4(base, f["morphisms"], ptr + "/morphisms", "pair", product(so, so),
                      lambda x, y: (tgt.cat.dims[(obj[x], obj[y])], src.cat.dims[(x, y)]))
        phi = {}
        for k, ent in enumerate(f["phi"]):
            F, x = (_hashable(v) for v in ent["pair"])
            shape = (tgt.cat.dims[(tgt.act(F, obj[x]), obj[src.act(F, x)])], 1)
            phi[(F, x)] = _mat_from_json(base, ent["vector"], shape, f"{ptr}/phi/{k}/vector")
        b.functors[name] = ModuleFunctor(src, tgt, obj, mor, phi, name)
    return b


def _hashable(x):
    return tuple(_hashable(v) for v in x) if isinstance(x, list) else x


def _table4(base, entries, ptr, keyname, keys, shape_of):
    table = {}
    for k, ent in enumerate(entries):
        key = tuple(_hashable(v) for v in ent[keyname])
        try:
            shape = shape_of(*key)
        except KeyError:
            raise SchemaError(f"unknown object in {keyname} {ent[keyname]}", f"{ptr}/{k}/{keyname}") from None
        table[key] = _mat_from_json(base, ent["matrix"], shape, f"{ptr}/{k}/matrix")
    for key in keys:
        if key not in table:
            shape = shape_of(*key)
            if shape[1]:
                raise SchemaError(f"missing entry for {keyname} {list(key)}", ptr)
            table[key] = zeros(*shape)
    return table


def loads_bundle(text: str) -> CategoryBundle:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno, col=e.colno) from None
    return bundle_from_json(data)


def load_bundle(path) -> CategoryBundle:
    return loads_bundle(Path(path).read_text(encoding="utf-8"))


def save_bundle(b: CategoryBundle, path) -> None:
    Path(path).write_text(json.dumps(bundle_to_json(b), indent=1) + "\n", encoding="utf-8")


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    if env:
        return Path(env)
    return Path(str(resources.files("tambara").joinpath("fixtures")))


def load_fixture(name: str) -> CategoryBundle:
    return load_bundle(fixture_dir() / name)
