"""Monte-Carlo cross-check of every closed form on a small grid.

    python scripts/mc_crosscheck.py --trials 1000000
"""

import argparse

from simplex_gauntlet.verification import mc_agreement


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=20240501)
    args = ap.parse_args()
    check = mc_agreement(args.trials, args.seed)
    for row in check.details["cells"]:
        flag = "ok " if row["pass"] else "OUT"
        print(f"{flag} {row['family']:>2} M={row['M']:<2} x={row['x']:<4} "
              f"p_hat={row['p_hat']:.6f} closed={row['closed_form']:.6f} z={row['z']:+.2f}")
    print(check.line())


if __name__ == "__main__":
    main()
