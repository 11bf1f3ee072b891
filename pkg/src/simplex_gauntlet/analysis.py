"""Curve sweeps, crossing location and dominance checks between the
L1-family and simplex probability curves."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .closedform import CONVENTIONS, pd_l1, pd_lc, pd_si_lambda, pd_si_snr
from .mathkit import DEFAULT_QUADRATURE, DomainError, QuadratureSpec, bracket_root

SCAN_POINTS = 400
SCAN_START = 1e-8
DEFAULT_X_MAX = 10.0
DEFAULT_X_TOL = 1e-12
REFINE_TOL = 1e-13
CROSS_EQUALITY = 1e-9


class NotApplicableError(DomainError):
    """Requested quantity does not exist for these arguments."""


def difference_function(M: int, convention: str,
                        spec: QuadratureSpec = DEFAULT_QUADRATURE):
    """L1-family minus simplex: pd_l1 - pd_si_lambda or pd_lc - pd_si_snr."""
    if convention == "lambda2":
        return lambda x: pd_l1(M, x).value - pd_si_lambda(M, x, spec).value
    if convention == "snr":
        return lambda x: pd_lc(M, x).value - pd_si_snr(M, x, spec).value
    raise DomainError(f"convention must be one of {CONVENTIONS}")


@dataclass
class CrossingResult:
    M: int
    convention: str
    x_cross: float
    pd_at_cross: float
    bracket_width: float
    found: bool
    diagnostics: dict = field(default_factory=dict)
    scan_x: list = field(default_factory=list, repr=False)
    scan_diff: list = field(default_factory=list, repr=False)

    def to_dict(self, include_scan: bool | None = None) -> dict:
        out = {"M": self.M, "convention": self.convention,
               "found": self.found, "x_cross": self.x_cross,
               "pd_at_cross": self.pd_at_cross,
               "bracket_width": self.bracket_width,
               "diagnostics": self.diagnostics}
        if include_scan is None:
            include_scan = not self.found
        if include_scan:
            out["scan"] = {"x": self.scan_x, "diff": self.scan_diff}
        return out


def _find_crossing(M: int, convention: str, x_max: float, x_tol: float,
                   spec: QuadratureSpec) -> CrossingResult:
    if M < 3:
        raise DomainError(f"crossing search requires M >= 3, got M={M}")
    if not x_tol > 0:
        raise DomainError(f"x_tol must be > 0, got {x_tol}")
    if not x_max > SCAN_START:
        raise DomainError(f"x_max must exceed {SCAN_START:g}, got {x_max}")
    g = difference_function(M, convention, spec)
    xs = np.logspace(math.log10(SCAN_START), math.log10(x_max), SCAN_POINTS)
    diffs = np.array([g(x) for x in xs])
    diag = {"grid_points": SCAN_POINTS, "grid_spacing": "log",
            "x_min": float(xs[0]), "x_max": float(xs[-1]),
            "diff_min": float(diffs.min()), "diff_max": float(diffs.max()),
            "sign_at_start": int(np.sign(diffs[0]))}
    signs = np.sign(diffs)
    change = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if change.size == 0:
        return CrossingResult(M, convention, math.nan, math.nan, math.nan,
                              False, diag, xs.tolist(), diffs.tolist())

    i = int(change[0])
    fine = difference_function(M, convention, spec.with_tol(REFINE_TOL))
    root = bracket_root(fine, float(xs[i]), float(xs[i + 1]), x_tol)
    if convention == "lambda2":
        a = pd_l1(M, root.root).value
        b = pd_si_lambda(M, root.root, spec.with_tol(REFINE_TOL)).value
    else:
        a = pd_lc(M, root.root).value
        b = pd_si_snr(M, root.root, spec.with_tol(REFINE_TOL)).value
    diag.update({"scan_bracket": [float(xs[i]), float(xs[i + 1])],
                 "refine_iterations": root.iterations,
                 "final_bracket": [root.lo, root.hi],
                 "diff_at_cross": a - b})
    found = abs(a - b) <= CROSS_EQUALITY and root.root > 0
    return CrossingResult(M, convention, root.root, 0.5 * (a + b),
                          root.width, found, diag, xs.tolist(), diffs.tolist())


def find_crossing_lambda(M: int, x_max: float = DEFAULT_X_MAX,
                         x_tol: float = DEFAULT_X_TOL,
                         spec: QuadratureSpec = DEFAULT_QUADRATURE
                         ) -> CrossingResult:
    """Smallest positive lambda2 where pd_l1 and pd_si_lambda meet.

    A sign change must show up on a 400-point log grid over
    [1e-8, x_max]; the shared value 1/M at zero never counts. A negative
    result means only that no crossing was seen on that grid.
    """
    return _find_crossing(M, "lambda2", x_max, x_tol, spec)


def find_crossing_snr(M: int, x_max: float = DEFAULT_X_MAX,
                      x_tol: float = DEFAULT_X_TOL,
                      spec: QuadratureSpec = DEFAULT_QUADRATURE
                      ) -> CrossingResult:
    """As :func:`find_crossing_lambda`, for pd_lc against pd_si_snr."""
    return _find_crossing(M, "snr", x_max, x_tol, spec)


def find_crossing(M: int, convention: str, x_max: float = DEFAULT_X_MAX,
                  x_tol: float = DEFAULT_X_TOL,
                  spec: QuadratureSpec = DEFAULT_QUADRATURE) -> CrossingResult:
    if convention not in CONVENTIONS:
        raise DomainError(f"convention must be one of {CONVENTIONS}")
    return _find_crossing(M, convention, x_max, x_tol, spec)


def dominance_interval(M: int, convention: str,
                       x_tol: float = DEFAULT_X_TOL) -> tuple[float, float]:
    """Interval (0, x_cross) on which the L1-family curve beats the simplex.

    Checked on 100 log-spaced points between 1e-8 and just below x_cross.
    """
    res = find_crossing(M, convention, x_tol=x_tol)
    if not res.found:
        raise NotApplicableError(
            f"no crossing found for M={M} ({convention}); "
            "the L1-family curve never exceeds the simplex curve on the scan grid")
    g = difference_function(M, convention)
    grid = np.logspace(math.log10(SCAN_START),
                       math.log10(res.x_cross * (1 - 1e-3)), 100)
    bad = [float(x) for x in grid if not g(x) > 0]
    if bad:
        raise ArithmeticError(
            f"dominance fails inside (0, {res.x_cross}) at {bad[:3]}")
    return (0.0, res.x_cross)


FAMILIES = ("l1", "si", "lc")


@dataclass(frozen=True)
class CurveSpec:
    """One curve of a sweep: signal family, abscissa convention and M.

    For L1 the normalised SNR equals lambda2 (one real channel use), so
    ``l1`` is accepted under either convention.
    """

    family: str
    convention: str
    M: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"family must be one of {FAMILIES}")
        if self.convention not in CONVENTIONS:
            raise DomainError(f"convention must be one of {CONVENTIONS}")
        if self.family == "lc" and self.convention != "snr":
            raise DomainError("lc curves are defined in the snr convention")
        lowest = 2 if self.family == "si" else 3
        if self.M < lowest:
            raise DomainError(f"{self.family} requires M >= {lowest}, got M={self.M}")

    @property
    def label(self) -> str:
        return f"{self.family}_{self.convention}_M{self.M}"

    def __call__(self, x: float, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
        if self.family == "l1":
            return pd_l1(self.M, x).value
        if self.family == "lc":
            return pd_lc(self.M, x).value
        if self.convention == "lambda2":
            return pd_si_lambda(self.M, x, spec).value
        return pd_si_snr(self.M, x, spec).value

    @classmethod
    def parse(cls, text: str, default_convention: str) -> "CurveSpec":
        """``family:M`` or ``family:M:convention``, e.g. ``si:7:snr``."""
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise DomainError(f"curve spec {text!r} is not family:M[:convention]")
        try:
            M = int(parts[1])
        except ValueError:
            raise DomainError(f"curve spec {text!r}: M must be an integer") from None
        conv = parts[2] if len(parts) == 3 else default_convention
        return cls(parts[0], conv, M)


@dataclass
class SweepTable:
    x_name: str
    labels: list
    rows: list  # (x, {label: value})

    def column(self, label: str) -> np.ndarray:
        return np.array([vals[label] for _, vals in self.rows])

    @property
    def x(self) -> np.ndarray:
        return np.array([x for x, _ in self.rows])

    def to_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["x", *self.labels])
            for x, vals in self.rows:
                w.writerow([f"{x:.17g}", *(f"{vals[k]:.17g}" for k in self.labels)])

    @classmethod
    def from_csv(cls, path: str | Path, x_name: str = "x") -> "SweepTable":
        with open(path, newline="") as fh:
            r = csv.reader(fh)
            header = next(r)
            labels = header[1:]
            rows = [(float(line[0]), dict(zip(labels, map(float, line[1:]))))
                    for line in r]
        return cls(x_name, labels, rows)


def sweep(curves: list, x_lo: float, x_hi: float, points: int,
          spacing: str = "linear",
          spec: QuadratureSpec = DEFAULT_QUADRATURE) -> SweepTable:
    if not x_lo < x_hi:
        raise DomainError(f"need x_lo < x_hi, got {x_lo}, {x_hi}")
    if points < 2:
        raise DomainError(f"points must be >= 2, got {points}")
    if spacing == "linear":
        xs = np.linspace(x_lo, x_hi, points)
    elif spacing == "log":
        if not x_lo > 0:
            raise DomainError("log spacing needs x_lo > 0")
        xs = np.logspace(math.log10(x_lo), math.log10(x_hi), points)
        xs[0], xs[-1] = x_lo, x_hi
    else:
        raise DomainError(f"spacing must be linear or log, got {spacing!r}")
    conventions = {c.convention for c in curves}
    x_name = conventions.pop() if len(conventions) == 1 else "x"
    rows = [(float(x), {c.label: c(float(x), spec) for c in curves}) for x in xs]
    return SweepTable(x_name, [c.label for c in curves], rows)
