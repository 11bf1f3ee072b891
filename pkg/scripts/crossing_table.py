"""Tabulate crossing points in both conventions for a range of M.

    python scripts/crossing_table.py --m-min 3 --m-max 30
"""

import argparse
import time

from simplex_gauntlet.analysis import find_crossing_lambda, find_crossing_snr


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--m-min", type=int, default=3)
    ap.add_argument("--m-max", type=int, default=30)
    args = ap.parse_args()

    print(f"{'M':>3}  {'lambda2_X':>22}  {'snr_X':>22}  {'(M-1)*snr_X':>22}")
    t0 = time.perf_counter()
    for M in range(args.m_min, args.m_max + 1):
        lam = find_crossing_lambda(M)
        snr = find_crossing_snr(M)
        fmt = lambda r: f"{r.x_cross:22.15e}" if r.found else f"{'none on grid':>22}"
        mapped = f"{snr.x_cross * (M - 1):22.15e}" if snr.found else ""
        print(f"{M:>3}  {fmt(lam)}  {fmt(snr)}  {mapped}")
    print(f"# {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
