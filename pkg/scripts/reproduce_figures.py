"""Write the data behind the four probability-curve figures as CSV.

    python scripts/reproduce_figures.py --out figures/
"""

import argparse
from pathlib import Path

from simplex_gauntlet.analysis import CurveSpec, find_crossing_lambda, sweep

MS = (3, 7, 20, 30)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="figures")
    ap.add_argument("--points", type=int, default=200)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    # zoom around the M=7 crossing, same window as the published plot
    cross = find_crossing_lambda(7)
    print(f"lambda2 crossing, M=7: {cross.x_cross:.6e}")
    fig2 = sweep([CurveSpec("l1", "lambda2", 7), CurveSpec("si", "lambda2", 7)],
                 1.9850e-3, 1.9870e-3, args.points)
    fig2.to_csv(out / "fig2_l1_vs_si_lambda2.csv")

    fig3 = sweep([CurveSpec("l1", "snr", 7), CurveSpec("si", "snr", 7)],
                 0.0, 2.0, args.points)
    fig3.to_csv(out / "fig3_l1_vs_si_snr.csv")

    fig4 = sweep([CurveSpec("si", "snr", M) for M in MS], 0.0, 6.0, args.points)
    fig4.to_csv(out / "fig4_si_vs_snr.csv")

    fig5 = sweep([CurveSpec("si", "lambda2", M) for M in MS], 0.0, 6.0, args.points)
    fig5.to_csv(out / "fig5_si_vs_lambda2.csv")
    print(f"wrote 4 tables to {out}/")


if __name__ == "__main__":
    main()
