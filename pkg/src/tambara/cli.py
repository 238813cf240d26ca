"""Batch command-line driver.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error,
3 an invertibility search was inconclusive.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional

from . import __version__
from .examples_io import (SCHEMA_VERSION, CategoryBundle, ParseError, SchemaError, builtin_bundles, fixture_dir,
                          linearize, load_bundle, truncated_bundle)
from .base import BOOL, RAT
from .report import ValidationReport

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


class UsageError(Exception):
    pass


@dataclass
class Record:
    name: str
    status: str
    witness: List = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)


@dataclass
class Report:
    command: List[str]
    records: List[Record] = field(default_factory=list)
    timing: float = 0.0

    def add(self, name: str, ok: bool, witness=(), **data) -> None:
        self.records.append(Record(name, PASS if ok else FAIL, [_plain(w) for w in witness], _plain(data)))

    def add_report(self, name: str, rep: ValidationReport, **data) -> None:
        status = PASS if rep.ok else FAIL
        if rep.status == INCONCLUSIVE and not rep.ok:
            status = INCONCLUSIVE
        witness = [f"{f.law} at {_plain(list(f.witness))}" for f in rep.failures[:10]]
        data = dict(data, checks=rep.checked)
        self.records.append(Record(name, status, witness, _plain(data)))

    def sorted_records(self) -> List[Record]:
        return sorted(self.records, key=lambda r: r.name)

    def exit_code(self) -> int:
        statuses = {r.status for r in self.records}
        if FAIL in statuses:
            return 1
        if INCONCLUSIVE in statuses:
            return 3
        return 0

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "records": [{"name": r.name, "status": r.status, "witness": r.witness, "data": r.data}
                        for r in self.sorted_records()],
            "timing_s": round(self.timing, 3),
            "versions": {"tool": __version__, "schema": SCHEMA_VERSION},
            "exit_code": self.exit_code(),
        }

    def to_text(self) -> str:
        lines = [f"$ tambara {' '.join(self.command)}"]
        for r in self.sorted_records():
            extra = f"  {json.dumps(r.data, sort_keys=True)}" if r.data else ""
            lines.append(f"[{r.status.upper():>12}] {r.name}{extra}")
            for w in r.witness:
                lines.append(f"               witness: {w}")
        lines.append(f"exit {self.exit_code()}  ({self.timing:.2f}s)")
        return "\n".join(lines)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_plain(v) for v in x]
        if isinstance(x, (set, frozenset)):
            items.sort(key=repr)
        return items
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


# ---------------------------------------------------------------------------
# inputs

def resolve_bundle(ref: str, base: Optional[str] = None) -> CategoryBundle:
    p = Path(ref)
    if p.is_file():
        b = load_bundle(p)
    else:
        builtins = builtin_bundles()
        if ref in builtins:
            b = builtins[ref]
        elif (fixture_dir() / ref).is_file():
            b = load_bundle(fixture_dir() / ref)
        elif (fixture_dir() / f"{ref}.json").is_file():
            b = load_bundle(fixture_dir() / f"{ref}.json")
        else:
            raise UsageError(f"no bundle file, built-in or fixture named {ref!r}")
    if base == "rat" and b.base == BOOL:
        b = linearize(b)
    elif base == "bool" and b.base != BOOL:
        raise UsageError("a Rat bundle cannot be read over Bool")
    return b


def _parse_obj(b: CategoryBundle, module: str, text: str):
    M = _module(b, module)
    for x in M.objects:
        if str(x) == text:
            return x
    raise UsageError(f"module {module!r} has no object {text!r}")


def _module(b: CategoryBundle, name: Optional[str]):
    if name is None:
        if len(b.modules) != 1:
            raise UsageError(f"choose a module with --module from {sorted(b.modules)}")
        name = next(iter(b.modules))
    if name not in b.modules:
        raise UsageError(f"unknown module {name!r}; have {sorted(b.modules)}")
    return b.modules[name]


def _gen(b: CategoryBundle, module: Optional[str], gen: Optional[str]):
    M = _module(b, module)
    mname = module or next(iter(b.modules))
    if gen is None:
        gens = b.generators.get(mname) or []
        if not gens:
            raise UsageError("choose a generator with --gen")
        return M, gens[0]
    return M, _parse_obj(b, mname, gen)


def _pair(b: CategoryBundle, text: str):
    if ":" not in text:
        raise UsageError(f"expected MODULE:OBJECT, got {text!r}")
    m, x = text.split(":", 1)
    return _module(b, m), _parse_obj(b, m, x)


# ---------------------------------------------------------------------------
# commands

def cmd_validate(args, rep: Report) -> None:
    from .fincat import validate_bundle
    b = resolve_bundle(args.bundle, args.base)
    rep.add_report("bundle laws", validate_bundle(b), base=b.base, objects=len(b.category.objects))


def cmd_endmonoid(args, rep: Report) -> None:
    from .algebra import validate_bimodule, validate_monoid
    from .na import end_monoid, generator_context, hom_bimodule
    from .profunctor import identity_tambara
    b = resolve_bundle(args.bundle, args.base)
    M, X = _gen(b, args.module, args.gen)
    ctx = generator_context(M, X)
    E = end_monoid(ctx)
    rep.add_report("end_monoid laws", validate_monoid(E), dims=sorted(E.carrier.dims.items(), key=repr),
                   very_cyclic=ctx.very_cyclic, cyclic=ctx.cyclic)
    Bm = hom_bimodule(identity_tambara(M), X, X, E, E)
    rep.add_report("hom_bimodule laws", validate_bimodule(Bm))


def cmd_ideals(args, rep: Report) -> None:
    from .algebra import all_bool_subbimodules, hom_monoid, ideal_lattice, is_simple, regular_bimodule
    from .na import end_monoid, generator_context
    b = resolve_bundle(args.bundle, args.base)
    if b.base != BOOL:
        raise UsageError("ideals needs a Bool bundle")
    if args.monoid == "hom":
        A = hom_monoid(b.monoidal)
    else:
        M, X = _gen(b, args.module, args.gen)
        A = end_monoid(generator_context(M, X))
    lat = ideal_lattice(A)
    brute = sorted(all_bool_subbimodules(regular_bimodule(A)), key=lambda s: (len(s), sorted(map(repr, s))))
    rep.add("ideal lattice matches subbimodule enumeration", set(lat) == set(brute),
            size=len(lat), ideals=[sorted(s, key=repr) for s in lat])
    rep.add("simplicity verdict", True, simple=is_simple(A))


def cmd_morita(args, rep: Report) -> None:
    from .algebra import enumerate_bool_morita
    from .na import end_monoid, generator_change_witness, generator_context
    b = resolve_bundle(args.bundle, args.base)
    (M1, X1), (M2, X2) = _pair(b, args.left), _pair(b, args.right)
    if b.base == BOOL:
        A = end_monoid(generator_context(M1, X1))
        B = end_monoid(generator_context(M2, X2))
        t = time.perf_counter()
        res = enumerate_bool_morita(A, B)
        found = bool(res["witnesses"])
        rep.add("Morita witness search", args.expect is None or found == (args.expect == "found"),
                witnesses=len(res["witnesses"]), bimodules_BA=res["bimodules_BA"], bimodules_AB=res["bimodules_AB"],
                seconds=round(time.perf_counter() - t, 3))
        return
    if M1 is not M2:
        raise UsageError("over Rat only generator changes within one module are supported")
    w, r = generator_change_witness(M1, X1, X2)
    rep.add_report("generator-change Morita witness", r)


def cmd_omega(args, rep: Report) -> None:
    from .presheaf import omega
    b = resolve_bundle(args.bundle, args.base)
    M, X = _gen(b, args.module, args.gen)
    Y = _parse_obj(b, args.module or next(iter(b.modules)), args.target) if args.target else X
    om = omega(M, X, Y)
    rep.add_report("omega is a valid morphism", om.report)
    ok = True if args.expect_iso is None else om.is_iso == (args.expect_iso == "yes")
    rep.add("omega iso verdict", ok, witness=om.failing(), iso=om.is_iso, non_iso_components=om.failing())


def cmd_ostrik(args, rep: Report) -> None:
    from .presheaf import hom_copresheaf, ostrik_monoid, representable_monoid_check
    b = resolve_bundle(args.bundle, args.base)
    M, X = _gen(b, args.module, args.gen)
    o = ostrik_monoid(M, X)
    rep.add_report("Ostrik monoid laws", o.report, support=sorted(o.presheaf.support(), key=repr))
    cp = hom_copresheaf(M, X, X)
    rep.add("copresheaf support", True,
            complement=sorted(set(b.monoidal.objects) - cp.support(), key=repr))
    rc = representable_monoid_check(M, X)
    if rc is not None:
        rep.add_report("representable coincidence", rc.report, internal_hom=rc.hom.obj)
    if args.compare:
        M2, X2 = _pair(b, args.compare)
        o2 = ostrik_monoid(M2, X2)
        rep.add("Ostrik monoids equal", o.equal_to(o2))


def reproduce_10_4(N: int, rep: Report) -> None:
    from .algebra import enumerate_bool_morita, ideal_lattice, is_simple
    from .na import end_monoid, generator_context
    from .presheaf import hom_copresheaf, ostrik_monoid
    if N < 2:
        raise UsageError("--N must be at least 2")
    t0 = time.perf_counter()
    b = truncated_bundle(N, [0, 1, 2])
    Z0, Z1, Z2 = (b.modules[f"Z{k}"] for k in range(3))
    M2 = 3 if N < 3 else N + 1
    for bun, label in ((b, f"Z_{{0,{N}}}"), (truncated_bundle(M2, [1, 2]), f"Z_{{0,{M2}}}")):
        o1, o2 = ostrik_monoid(bun.modules["Z1"], 0), ostrik_monoid(bun.modules["Z2"], 0)
        sup = sorted(o1.presheaf.support())
        rep.add(f"Ostrik k=1 vs k=2 over {label}: equal, support {{0}}",
                o1.report.ok and o2.report.ok and o1.equal_to(o2) and sup == [0], support=sup)
    o0 = ostrik_monoid(Z0, 0)
    rep.add("Ostrik k=0 support (computed)", o0.report.ok, support=sorted(o0.presheaf.support()))
    comp = {k: sorted(set(b.monoidal.objects) - hom_copresheaf(m, 0, 0).support()) for k, m in ((1, Z1), (2, Z2))}
    rep.add("copresheaf support complement empty", all(v == [] for v in comp.values()), complement=comp)
    A0 = end_monoid(generator_context(Z0, 0))
    A1 = end_monoid(generator_context(Z1, 0))
    full0 = frozenset(k for k, v in A0.carrier.dims.items() if v)
    full1 = frozenset(k for k, v in A1.carrier.dims.items() if v)
    lat0, lat1 = ideal_lattice(A0), ideal_lattice(A1)
    rep.add("[0,0]_0 ideal lattice is {0, full}", set(lat0) == {frozenset(), full0} and is_simple(A0),
            size=len(lat0))
    sigma = frozenset(k for k in full1 if k[1] >= 1)
    rep.add("[0,0]_1 ideal lattice is {0, Sigma>=1, full}", set(lat1) == {frozenset(), sigma, full1},
            size=len(lat1), sigma=sorted(sigma))
    res = enumerate_bool_morita(A0, A1)
    rep.add("no Morita witness between [0,0]_0 and [0,0]_1", not res["witnesses"],
            bimodules_BA=res["bimodules_BA"], bimodules_AB=res["bimodules_AB"], witnesses=len(res["witnesses"]))
    elapsed = time.perf_counter() - t0
    if N == 2:
        rep.add("runtime under 5 s", elapsed < 5, seconds=round(elapsed, 3))


def cmd_reproduce(args, rep: Report) -> None:
    reproduce_10_4(args.N, rep)


def cmd_enrichment(args, rep: Report) -> None:
    from .enrichment import verify_enrichment_units
    b = resolve_bundle(args.bundle, args.base)
    names = [args.module] if args.module else sorted(b.modules)
    for name in names:
        r, certs = verify_enrichment_units(_module(b, name))
        rep.add_report(f"enrichment units [{name}]", r, certificates=len(certs))


def cmd_abelianization(args, rep: Report) -> None:
    import random
    from .abelianization import (arrow_total_dim, coker_compare, homotopy_matches_presheaf_hom, normal_form_arrows,
                                 random_arrow)
    b = resolve_bundle(args.bundle, args.base)
    if b.base != RAT:
        raise UsageError("abelianization needs a Rat bundle (try --base rat)")
    C = b.monoidal
    objs = C.objects
    if len(objs) == 1 and C.cat.dims[(objs[0], objs[0])] == 1:
        arrows = normal_form_arrows(C, objs[0], args.max_total)
        pairs = [(A, B) for A in arrows for B in arrows
                 if arrow_total_dim(A) + arrow_total_dim(B) <= args.max_total]
    else:
        rng = random.Random(args.seed)
        pairs = [(random_arrow(C, rng), random_arrow(C, rng)) for _ in range(args.samples)]
    bad_iso, bad_hom = [], []
    for i, (A, B) in enumerate(pairs):
        if not coker_compare(C, A, B).report.ok:
            bad_iso.append(i)
        h, p = homotopy_matches_presheaf_hom(C, A, B)
        if h != p:
            bad_hom.append((i, h, p))
    rep.add("Coker comparison iso", not bad_iso, witness=bad_iso, pairs=len(pairs))
    rep.add("homotopy classes match presheaf homs", not bad_hom, witness=bad_hom, pairs=len(pairs))


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--base", choices=["bool", "rat"], default=None, help="read a Bool bundle over Rat")
    p = argparse.ArgumentParser(prog="tambara", description="Exact checks for finite module categories.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, bundle=True, gen=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if bundle:
            sp.add_argument("bundle", help="bundle file, built-in name or fixture name")
        if gen:
            sp.add_argument("--module")
            sp.add_argument("--gen")
        sp.set_defaults(fn=fn)
        return sp

    add("validate", cmd_validate, "validate a bundle")
    add("endmonoid", cmd_endmonoid, "build and check [X,X]", gen=True)
    sp = add("ideals", cmd_ideals, "ideal lattice of a Bool monoid", gen=True)
    sp.add_argument("--monoid", choices=["hom", "end"], default="end")
    sp = add("morita-witness", cmd_morita, "search for or build a Morita witness")
    sp.add_argument("--left", required=True, metavar="MODULE:OBJECT")
    sp.add_argument("--right", required=True, metavar="MODULE:OBJECT")
    sp.add_argument("--expect", choices=["found", "none"], default=None)
    sp = add("omega", cmd_omega, "the comparison W(Hom(-X,Y)) -> [X,Y]", gen=True)
    sp.add_argument("--target", help="Y (defaults to X)")
    sp.add_argument("--expect-iso", choices=["yes", "no"], default=None)
    sp = add("ostrik", cmd_ostrik, "Ostrik monoid on Hom(-X,X)", gen=True)
    sp.add_argument("--compare", metavar="MODULE:OBJECT")
    sp = add("reproduce-10.4", cmd_reproduce, "truncated-addition counterexample pipeline", bundle=False)
    sp.add_argument("--N", type=int, default=2)
    sp = add("enrichment-roundtrip", cmd_enrichment, "S, R and the unit equivalences")
    sp.add_argument("--module")
    sp = add("abelianization-check", cmd_abelianization, "Coker comparison and homotopy classes")
    sp.add_argument("--max-total", type=int, default=4)
    sp.add_argument("--samples", type=int, default=12)
    sp.add_argument("--seed", type=int, default=0)
    return p


def run(argv: Optional[List[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    rep = Report(argv)
    t = time.perf_counter()
    try:
        args.fn(args, rep)
    except (UsageError, ParseError, SchemaError, OSError) as e:
        print(f"tambara: error: {e}", file=err)
        return 2
    rep.timing = time.perf_counter() - t
    if args.format == "json":
        print(json.dumps(rep.to_json(), indent=1, sort_keys=True), file=out)
    else:
        print(rep.to_text(), file=out)
    for r in rep.sorted_records():
        if r.status != PASS:
            print(f"tambara: {r.status}: {r.name}", file=err)
    return rep.exit_code()


def main() -> None:
    sys.exit(run())
