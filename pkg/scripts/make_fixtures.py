"""Regenerate the checked-in bundle fixtures and the negative test fixtures.

The Z_{0,1} fixture is written from plain loops over min(a + b, N), without the
package generators, so tests can compare the two constructions.
"""
import json
from itertools import product
from pathlib import Path

from tambara.examples_io import builtin_bundles, bundle_to_json, linearize, save_bundle, truncated_bundle

ROOT = Path(__file__).resolve().parent.parent
PKG = ROOT / "src" / "tambara" / "fixtures"
DATA = ROOT / "tests" / "data"


def poset_tables(objs):
    homs = [[a <= b for b in objs] for a in objs]
    comp = [{"triple": [a, b, c], "matrix": True} for a, b, c in product(objs, repeat=3) if a <= b <= c]
    return homs, comp


def hand_z01(N=2, k=1):
    C = list(range(N + 1))
    X = list(range(k + 1))
    homs, comp = poset_tables(C)
    tensor = {
        "objects": [[min(a + b, N) for b in C] for a in C],
        "morphisms": [{"quad": [a, b, a2, b2], "matrix": True}
                      for a, b, a2, b2 in product(C, repeat=4) if a <= a2 and b <= b2],
    }
    mhoms, mcomp = poset_tables(X)
    action = {
        "objects": [[min(F + x, k) for x in X] for F in C],
        "morphisms": [{"quad": [F, G, x, y], "matrix": True}
                      for F, G, x, y in product(C, C, X, X) if F <= G and x <= y],
    }
    return {
        "meta": {"name": "Z02_Z1_hand", "version": "1.0"},
        "base": "Bool", "objects": C, "homs": homs, "comp": comp,
        "tensor": tensor, "unit": 0,
        "actions": {"Z1": {"objects": X, "homs": mhoms, "comp": mcomp, "action": action}},
        "generators": {"Z1": [0]},
    }


def main():
    PKG.mkdir(parents=True, exist_ok=True)
    DATA.mkdir(parents=True, exist_ok=True)
    B = builtin_bundles()
    for name in ["Z02", "Z03", "kZ02", "Z2", "unit", "max2", "dual"]:
        save_bundle(B[name], PKG / f"{name}.json")
    (PKG / "Z02_Z1_hand.json").write_text(json.dumps(hand_z01(), indent=1) + "\n")

    missing = bundle_to_json(B["Z02"])
    missing["comp"] = [e for e in missing["comp"] if e["triple"] != [0, 1, 2]]
    missing["meta"]["name"] = "missing_comp"
    (DATA / "corrupt_missing_comp.json").write_text(json.dumps(missing, indent=1) + "\n")

    # over four objects the chain 0 <= 1 <= 2 <= 3 sees the rescaled entry
    assoc = bundle_to_json(linearize(truncated_bundle(3, [1])))
    for e in assoc["comp"]:
        if e["triple"] == [0, 1, 2]:
            e["matrix"] = [["2"]]
    assoc["meta"]["name"] = "corrupt_assoc"
    (DATA / "corrupt_assoc.json").write_text(json.dumps(assoc, indent=1) + "\n")

    (DATA / "bad_syntax.json").write_text('{"base": "Bool",\n "objects": [0, 1\n')


if __name__ == "__main__":
    main()
