"""Scalar numerical primitives: the standard normal pair, adaptive
Gauss-Kronrod quadrature and a bracketed Brent root finder.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_SQRT_HALF = math.sqrt(0.5)

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
# Gauss nodes are the odd-indexed Kronrod abscissae (1, 3, 5, 7 from the end).
_WGAUSS = np.zeros(15)
_WGAUSS[[1, 3, 5]] = _WG[:3]
_WGAUSS[7] = _WG[3]
_WGAUSS[[9, 11, 13]] = _WG[2::-1]


class DomainError(ValueError):
    """Argument outside the documented range of an operation."""


class ConvergenceError(ArithmeticError):
    """Quadrature budget exhausted before the tolerance was met."""

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class BracketError(ValueError):
    """Root-finding bracket does not enclose a sign change."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerance and truncation settings for the simplex integral.

    ``truncation_width`` is the half-width, in standard deviations, kept
    on either side of the Gaussian kernel when an infinite range is cut.
    """

    abs_tol: float = 1e-12
    truncation_width: float = 10.0
    max_subdivisions: int = 2 ** 20

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be > 0, got {self.abs_tol}")
        if not self.truncation_width >= 8:
            raise DomainError(
                f"truncation_width must be >= 8, got {self.truncation_width}")
        if self.max_subdivisions < 1:
            raise DomainError(
                f"max_subdivisions must be >= 1, got {self.max_subdivisions}")

    def with_tol(self, abs_tol: float) -> "QuadratureSpec":
        return QuadratureSpec(abs_tol, self.truncation_width,
                              self.max_subdivisions)


DEFAULT_QUADRATURE = QuadratureSpec()


def _check_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x}")
    return x


def std_normal_cdf(x: float) -> float:
    """Standard normal CDF, evaluated through erfc so both tails keep full
    relative precision."""
    x = _check_finite(x)
    return 0.5 * math.erfc(-x * _SQRT_HALF)


def std_normal_pdf(x: float) -> float:
    x = _check_finite(x)
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def normal_cdf_array(x: np.ndarray) -> np.ndarray:
    """Vectorised :func:`std_normal_cdf` without the finiteness check."""
    return 0.5 * special.erfc(-np.asarray(x, dtype=float) * _SQRT_HALF)


def normal_pdf_array(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return _INV_SQRT_2PI * np.exp(-0.5 * x * x)


def _eval(f: Callable, x: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f(x), dtype=float)
        if y.shape != x.shape:
            y = np.broadcast_to(y, x.shape)
    except (TypeError, ValueError):
        y = np.array([float(f(float(t))) for t in x])
    return y


def _gk15(f: Callable, a: float, b: float) -> tuple[float, float]:
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    y = _eval(f, mid + half * _NODES)
    if not np.all(np.isfinite(y)):
        raise DomainError(f"integrand is not finite on [{a}, {b}]")
    kronrod = half * float(np.dot(_WK, y))
    gauss = half * float(np.dot(_WGAUSS, y))
    return kronrod, abs(kronrod - gauss)


@dataclass(frozen=True)
class IntegralResult:
    value: float
    error: float
    subdivisions: int


def integrate_with_error(f: Callable, a: float, b: float,
                         spec: QuadratureSpec = DEFAULT_QUADRATURE
                         ) -> IntegralResult:
    """Globally adaptive G7-K15 quadrature.

    The interval with the largest local error is bisected until the summed
    error estimate falls below ``spec.abs_tol``. ``f`` may be vectorised
    (called on a numpy array of nodes) or scalar.
    """
    a = _check_finite(a)
    b = _check_finite(b)
    if not a < b:
        raise DomainError(f"need a < b, got [{a}, {b}]")
    value, err = _gk15(f, a, b)
    # heap of (-error, a, b, value); the index keeps ordering deterministic
    heap = [(-err, 0, a, b, value)]
    total, total_err = value, err
    count = 1
    serial = 1
    while total_err > spec.abs_tol:
        if count >= spec.max_subdivisions:
            raise ConvergenceError(
                f"quadrature did not reach {spec.abs_tol:g} within "
                f"{spec.max_subdivisions} subdivisions", total, total_err)
        neg_err, _, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise ConvergenceError(
                "interval can no longer be bisected", total, total_err)
        v1, e1 = _gk15(f, lo, mid)
        v2, e2 = _gk15(f, mid, hi)
        total += v1 + v2 - val
        total_err += e1 + e2 + neg_err
        heapq.heappush(heap, (-e1, serial, lo, mid, v1))
        heapq.heappush(heap, (-e2, serial + 1, mid, hi, v2))
        serial += 2
        count += 1
    # re-sum to shed accumulated cancellation in the running totals
    total = math.fsum(item[4] for item in heap)
    total_err = math.fsum(-item[0] for item in heap)
    return IntegralResult(total, total_err, count)


def integrate(f: Callable, a: float, b: float,
              spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    return integrate_with_error(f, a, b, spec).value


@dataclass(frozen=True)
class RootBracket:
    """Located root with the final sign-change bracket ``[lo, hi]``."""

    root: float
    lo: float
    hi: float
    iterations: int

    @property
    def width(self) -> float:
        return self.hi - self.lo


def bracket_root(g: Callable[[float], float], lo: float, hi: float,
                 x_tol: float, max_iter: int = 500) -> RootBracket:
    """Brent's method: inverse quadratic / secant steps guarded by
    bisection, iterated until the sign-change bracket is no wider than
    ``x_tol``."""
    if not x_tol > 0:
        raise DomainError(f"x_tol must be > 0, got {x_tol}")
    if not lo < hi:
        raise DomainError(f"need lo < hi, got [{lo}, {hi}]")
    a, b = float(lo), float(hi)
    fa, fb = float(g(a)), float(g(b))
    if fa == 0.0:
        return RootBracket(a, a, a, 0)
    if fb == 0.0:
        return RootBracket(b, b, b, 0)
    if (fa > 0) == (fb > 0):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: g(lo)={fa:g}, g(hi)={fb:g}")

    c, fc = a, fa
    d = e = b - a
    for it in range(1, max_iter + 1):
        if (fb > 0) == (fc > 0):
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = 0.5 * x_tol
        m = 0.5 * (c - b)
        if abs(m) <= tol or fb == 0.0:
            x0, x1 = (b, c) if b < c else (c, b)
            if fb == 0.0:
                x0 = x1 = b
            return RootBracket(b, x0, x1, it)
        if abs(e) >= tol and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e, d = d, p / q
            else:
                d = e = m
        else:
            d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol else math.copysign(tol, m)
        fb = float(g(b))
    raise ConvergenceError("root finder exceeded its iteration budget",
                           b, abs(c - b))


def find_root(g: Callable[[float], float], lo: float, hi: float,
              x_tol: float) -> float:
    return bracket_root(g, lo, hi, x_tol).root
