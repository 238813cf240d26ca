"""Survey omega_{X,X} over the built-in bundles and truncated additions.

Prints, for each (bundle, module, generator), whether omega is an isomorphism
and which components fail.  The test suite freezes the built-in rows.
"""
import argparse

from tambara.examples_io import builtin_bundles, truncated_bundle
from tambara.presheaf import omega


def rows(max_n: int):
    for name, b in builtin_bundles().items():
        for mn in sorted(b.modules):
            for X in b.generators.get(mn, []):
                yield name, mn, X, b.modules[mn]
    for N in range(2, max_n + 1):
        b = truncated_bundle(N, list(range(N + 1)))
        for k in range(N + 1):
            yield f"Z_0,{N}", f"Z{k}", 0, b.modules[f"Z{k}"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4, help="largest truncation N to survey")
    args = ap.parse_args()
    print(f"{'bundle':<10} {'module':<8} {'X':<4} {'laws':<5} {'iso':<5} failing")
    for name, mn, X, M in rows(args.max_n):
        r = omega(M, X, X)
        print(f"{name:<10} {mn:<8} {X!s:<4} {str(r.report.ok):<5} {str(r.is_iso):<5} {r.failing()}")


if __name__ == "__main__":
    main()
