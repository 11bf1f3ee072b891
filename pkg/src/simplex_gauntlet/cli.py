"""Command-line front end.

Exit codes: 0 success, 1 domain or usage error, 2 numerical
non-convergence, 3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import metadata
from pathlib import Path

from . import analysis, closedform, signals, verification
from .mathkit import ConvergenceError, DomainError
from .montecarlo import DEFAULT_SEED, TIE_RULES, TrialConfig, simulate_pd

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def tool_version() -> str:
    try:
        return metadata.version("artifact")
    except metadata.PackageNotFoundError:
        return "unknown"


def _dump(obj, path: Path | None = None) -> str:
    text = json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def _clean(value):
    """NaN is not valid JSON; report it as null."""
    if isinstance(value, float) and math.isnan(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def write_manifest(args, argv: list, outputs: list, seed=None) -> Path | None:
    if not outputs:
        return None
    params = {k: v for k, v in vars(args).items() if k not in ("handler",)}
    manifest = {"command": args.command, "parameters": params,
                "argv": argv, "tool_version": tool_version(),
                "seed": seed, "outputs": [str(p) for p in outputs]}
    path = Path(str(outputs[0]) + ".manifest.json")
    _dump(manifest, path)
    return path


# -- commands ----------------------------------------------------------------

def cmd_pd(args, argv):
    pd = closedform.evaluate(args.formula, args.M, args.x, args.convention)
    print(f"P_d = {pd.value:.17g}")
    print(f"quadrature_error = {pd.quadrature_error:.3g}")
    if args.out:
        _dump({"value": pd.value, "convention": pd.convention, "M": pd.M,
               "quadrature_error": pd.quadrature_error, "formula": args.formula},
              args.out)
        write_manifest(args, argv, [args.out])


def cmd_rates(args, argv):
    R = signals.code_rate(args.M, args.N_u)
    ebn0 = signals.ebn0_from_snr(args.snr, R)
    cap = signals.capacity_per_dimension(args.snr)
    print(f"R = {R:.10g} bit/channel use")
    print(f"Eb/N0 = {ebn0:.10g}")
    print(f"C = {cap:.10g} bit/dimension")
    if args.out:
        _dump({"M": args.M, "N_u": args.N_u, "snr": args.snr, "rate": R,
               "ebn0": ebn0, "capacity_per_dimension": cap}, args.out)
        write_manifest(args, argv, [args.out])


def cmd_sweep(args, argv):
    curves = [analysis.CurveSpec.parse(c, args.convention) for c in args.curve]
    table = analysis.sweep(curves, args.x_lo, args.x_hi, args.points, args.spacing)
    table.to_csv(args.out)
    write_manifest(args, argv, [args.out])
    print(f"wrote {len(table.rows)} rows to {args.out}")


def cmd_crossing(args, argv):
    res = analysis.find_crossing(args.M, args.convention, args.x_max, args.x_tol)
    text = _dump(_clean(res.to_dict()), args.out)
    if args.out:
        write_manifest(args, argv, [args.out])
        status = f"x_cross = {res.x_cross:.17g}" if res.found else "no crossing found"
        print(f"M={args.M} {args.convention}: {status}")
    else:
        sys.stdout.write(text)


def build_set(args) -> signals.SignalSet:
    if args.set_file:
        return signals.load_signal_set(args.set_file)
    if args.set is None:
        raise UsageError("simulate needs --set or --set-file")
    if args.M is None:
        raise UsageError("--M is required with --set")
    if args.set == "si":
        if args.lambda2 is None:
            raise UsageError("--set si needs --lambda2")
        return signals.make_simplex(args.M, args.lambda2)
    if args.E is not None:
        E = args.E
    elif args.lambda2 is not None:
        E = args.lambda2 * args.M / 2
    else:
        raise UsageError(f"--set {args.set} needs --E or --lambda2")
    if args.set == "l1":
        return signals.make_l1(args.M, E)
    if args.set == "l1-eps":
        return signals.make_l1_eps(args.M, E, args.eps)
    return signals.make_coded_l1(args.M, E, args.direction_seed)


def cmd_simulate(args, argv):
    sset = build_set(args)
    est = simulate_pd(TrialConfig(sset, args.sigma2, args.trials, args.seed,
                                  args.tie_rule))
    text = _dump(est.to_dict(), args.out)
    if args.out:
        write_manifest(args, argv, [args.out], seed=args.seed)
        print(f"p_hat = {est.p_hat:.10g} +/- {est.stderr:.3g}")
    else:
        sys.stdout.write(text)


def cmd_verify(args, argv):
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    suites = list(verification.SUITES) if args.suite == "all" else [args.suite]
    ok = True
    outputs = []
    for name in suites:
        checks = verification.run_suite(name)
        for c in checks:
            print(c.line())
        rep = verification.report(name, checks)
        path = out_dir / f"verify_{name}.json"
        _dump(_clean(rep), path)
        outputs.append(path)
        ok = ok and rep["passed"]
    write_manifest(args, argv, outputs, seed=DEFAULT_SEED)
    if not ok:
        return EXIT_VERIFY


def cmd_replay(args, argv):
    manifest = json.loads(Path(args.manifest).read_text())
    return main(manifest["argv"])


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="simplex-gauntlet",
                description="Correct-decoding probabilities for L1, simplex "
                            "and coded-L1 signal sets on the AWGN channel.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("pd", help="evaluate a closed-form P_d")
    s.add_argument("--formula", choices=["l1", "si", "lc"], required=True)
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--x", type=float, required=True)
    s.add_argument("--convention", choices=closedform.CONVENTIONS, required=True)
    s.add_argument("--out")
    s.set_defaults(handler=cmd_pd)

    s = sub.add_parser("sweep", help="tabulate curves on a grid (CSV)")
    s.add_argument("--curve", action="append", required=True,
                   help="family:M[:convention], e.g. si:7:snr; repeatable")
    s.add_argument("--convention", choices=closedform.CONVENTIONS, default="lambda2")
    s.add_argument("--x-lo", type=float, default=0.0)
    s.add_argument("--x-hi", type=float, required=True)
    s.add_argument("--points", type=int, default=200)
    s.add_argument("--spacing", choices=["linear", "log"], default="linear")
    s.add_argument("--out", required=True)
    s.set_defaults(handler=cmd_sweep)

    s = sub.add_parser("crossing", help="locate the L1-family / simplex crossing")
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--convention", choices=closedform.CONVENTIONS, default="lambda2")
    s.add_argument("--x-max", type=float, default=analysis.DEFAULT_X_MAX)
    s.add_argument("--x-tol", type=float, default=analysis.DEFAULT_X_TOL)
    s.add_argument("--out")
    s.set_defaults(handler=cmd_crossing)

    s = sub.add_parser("simulate", help="Monte-Carlo estimate of P_d")
    s.add_argument("--set", choices=["l1", "l1-eps", "si", "lc"])
    s.add_argument("--set-file")
    s.add_argument("--M", type=int)
    s.add_argument("--E", type=float)
    s.add_argument("--lambda2", type=float)
    s.add_argument("--eps", type=float, default=1e-8)
    s.add_argument("--direction-seed", type=int, default=0)
    s.add_argument("--sigma2", type=float, default=1.0)
    s.add_argument("--trials", type=int, default=1_000_000)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--tie-rule", choices=TIE_RULES, default="uniform_random")
    s.add_argument("--out")
    s.set_defaults(handler=cmd_simulate)

    s = sub.add_parser("rates", help="code rate, Eb/N0 and capacity")
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--N-u", "--N_u", dest="N_u", type=int, required=True)
    s.add_argument("--snr", type=float, default=1.0)
    s.add_argument("--out")
    s.set_defaults(handler=cmd_rates)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", choices=[*verification.SUITES, "all"], required=True)
    s.add_argument("--out", default="verify_out")
    s.set_defaults(handler=cmd_verify)

    s = sub.add_parser("replay", help="re-run a command from its manifest")
    s.add_argument("manifest")
    s.set_defaults(handler=cmd_replay)
    return p


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        code = args.handler(args, argv)
    except ConvergenceError as exc:
        print(f"error: {exc} (best estimate {exc.estimate:.17g}, "
              f"error bound {exc.error:.3g})", file=sys.stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
