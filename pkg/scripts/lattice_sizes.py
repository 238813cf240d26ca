"""Ideal-lattice sizes of [0,0]_k over truncated additions Z_{0,N}."""
import argparse

from tambara.algebra import ideal_lattice, is_simple
from tambara.examples_io import truncated_bundle
from tambara.na import end_monoid, generator_context


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    args = ap.parse_args()
    print(f"{'N':>2} {'k':>2} {'ideals':>6} simple")
    for N in range(0, args.max_n + 1):
        b = truncated_bundle(N, list(range(N + 1)))
        for k in range(N + 1):
            A = end_monoid(generator_context(b.modules[f"Z{k}"], 0))
            print(f"{N:>2} {k:>2} {len(ideal_lattice(A)):>6} {is_simple(A)}")


if __name__ == "__main__":
    main()
