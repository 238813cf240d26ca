"""Run the truncated-addition counterexample pipeline for a range of N.

For each N: Ostrik monoids for k = 1, 2 agree, the ideal lattices of
[0,0]_0 and [0,0]_1 differ, and no Bool Morita witness exists.
"""
import argparse
import time

from tambara.cli import Report, reproduce_10_4


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=3, help="N=4 enumerates 2^25 relations, minutes")
    args = ap.parse_args()
    worst = 0
    for N in range(args.n_min, args.n_max + 1):
        rep = Report(["reproduce-10.4", "--N", str(N)])
        t0 = time.perf_counter()
        reproduce_10_4(N, rep)
        dt = time.perf_counter() - t0
        print(f"N={N}  exit={rep.exit_code()}  {dt:.2f}s")
        for r in rep.sorted_records():
            print(f"  [{r.status.upper():>12}] {r.name}  {r.data}")
        worst = max(worst, rep.exit_code())
    raise SystemExit(worst)


if __name__ == "__main__":
    main()
