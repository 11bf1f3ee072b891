"""Average probability of correct optimal decoding for the L1, simplex and
coded-L1 signal sets.

Two conventions are used for the abscissa. ``"lambda2"`` is the average
signal energy with unit noise variance; ``"snr"`` is the normalised
classical SNR, energy divided by the number of real channel uses, so that
``lambda2 = (M - 1) * snr`` for the (M-1)-dimensional sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mathkit import (
    DEFAULT_QUADRATURE,
    DomainError,
    QuadratureSpec,
    integrate_with_error,
    normal_cdf_array,
    std_normal_cdf,
)

CONVENTIONS = ("lambda2", "snr")

# ceiling on reported quadrature error for an accepted value
ACCEPT_QUAD_ERROR = 1e-10
_BELOW_ONE = math.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class PdValue:
    value: float
    convention: str
    M: int
    quadrature_error: float = 0.0

    def __float__(self) -> float:
        return self.value


def _check_arg(name: str, x: float) -> float:
    x = float(x)
    if not (x >= 0 and math.isfinite(x)):
        raise DomainError(f"{name} must be finite and >= 0, got {x}")
    return x


def _l1_formula(M: int, lambda2: float) -> float:
    if lambda2 == 0.0:
        return 1.0 / M
    # 4 Phi(t) - 1 = 3 - 4 Q(t); the upper tail keeps precision as Phi -> 1
    tail = std_normal_cdf(-math.sqrt(lambda2 * M / 8.0))
    value = (3.0 - 4.0 * tail) / M
    # the supremum 3/M is never attained; round down once doubles saturate
    return min(value, math.nextafter(3.0 / M, 0.0))


def pd_l1(M: int, lambda2: float) -> PdValue:
    """L1 set: (4 Phi(sqrt(lambda2 M / 8)) - 1) / M, valid for M >= 3."""
    if M < 3:
        raise DomainError(f"L1 formula requires M >= 3, got M={M}")
    lambda2 = _check_arg("lambda2", lambda2)
    return PdValue(_l1_formula(M, lambda2), "lambda2", M)


def _clip(value: float) -> float:
    return min(max(value, 0.0), _BELOW_ONE)


def simplex_integral(M: int, shift: float,
                     spec: QuadratureSpec = DEFAULT_QUADRATURE
                     ) -> tuple[float, float]:
    """Integral of phi(x - shift) * Phi(x)^(M-1) over the real line.

    Truncated to ``[-c, shift + c]`` with ``c = spec.truncation_width``;
    the Gaussian kernel carries less than 1e-23 of mass outside for c=10.
    """
    power = M - 1
    inv_sqrt_2pi = 1.0 / math.sqrt(2.0 * math.pi)

    def integrand(x):
        z = x - shift
        return inv_sqrt_2pi * np.exp(-0.5 * z * z) * normal_cdf_array(x) ** power

    c = spec.truncation_width
    res = integrate_with_error(integrand, -c, shift + c, spec)
    return res.value, res.error


def pd_si_lambda(M: int, lambda2: float,
                 spec: QuadratureSpec = DEFAULT_QUADRATURE) -> PdValue:
    """Simplex set against average energy, mean shift sqrt(lambda2 M/(M-1))."""
    if M < 2:
        raise DomainError(f"simplex formula requires M >= 2, got M={M}")
    lambda2 = _check_arg("lambda2", lambda2)
    value, err = simplex_integral(M, math.sqrt(lambda2 * M / (M - 1)), spec)
    return PdValue(_clip(value), "lambda2", M, err)


def pd_si_snr(M: int, snr: float,
              spec: QuadratureSpec = DEFAULT_QUADRATURE) -> PdValue:
    """Simplex set against normalised SNR, mean shift sqrt(M snr)."""
    if M < 2:
        raise DomainError(f"simplex formula requires M >= 2, got M={M}")
    snr = _check_arg("snr", snr)
    # same shift as pd_si_lambda(M, (M-1) snr), computed without the detour
    value, err = simplex_integral(M, math.sqrt(M * snr), spec)
    return PdValue(_clip(value), "snr", M, err)


def pd_lc(M: int, snr: float) -> PdValue:
    """Coded L1 set: L1 formula at lambda2 = (M - 1) snr."""
    if M < 3:
        raise DomainError(f"Lc formula requires M >= 3, got M={M}")
    snr = _check_arg("snr", snr)
    return PdValue(_l1_formula(M, (M - 1) * snr), "snr", M)


def evaluate(formula: str, M: int, x: float, convention: str,
             spec: QuadratureSpec = DEFAULT_QUADRATURE) -> PdValue:
    """Dispatch by family name (``l1``, ``si``, ``lc``) and convention."""
    if convention not in CONVENTIONS:
        raise DomainError(f"convention must be one of {CONVENTIONS}")
    if formula == "l1":
        if convention != "lambda2":
            raise DomainError("formula l1 requires --convention lambda2")
        return pd_l1(M, x)
    if formula == "lc":
        if convention != "snr":
            raise DomainError("formula lc requires --convention snr")
        return pd_lc(M, x)
    if formula == "si":
        if convention == "lambda2":
            return pd_si_lambda(M, x, spec)
        return pd_si_snr(M, x, spec)
    raise DomainError(f"unknown formula {formula!r}; expected l1, si or lc")
