"""Signal-set constructors and the energy / SNR / rate bookkeeping that
goes with them."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .mathkit import DomainError

LABELS = ("L1", "L1-eps", "SI", "Lc", "custom")


@dataclass(frozen=True, eq=False)
class SignalSet:
    """M vectors of a common dimension with their a-priori probabilities.

    ``vectors`` is stored as a read-only ``(M, N_u)`` float array.
    """

    vectors: np.ndarray
    priors: np.ndarray
    label: str = "custom"

    def __post_init__(self):
        try:
            vectors = np.array(self.vectors, dtype=float)
            priors = np.array(self.priors, dtype=float)
        except (TypeError, ValueError):
            raise DomainError(
                "vectors must be equal-length lists of numbers") from None
        if vectors.ndim == 1:
            vectors = vectors[:, None]
        if vectors.ndim != 2:
            raise DomainError("vectors must be a list of equal-length vectors")
        M, n_u = vectors.shape
        if M < 2:
            raise DomainError(f"a signal set needs M >= 2 vectors, got {M}")
        if n_u < 1:
            raise DomainError("vector dimension N_u must be >= 1")
        if not np.all(np.isfinite(vectors)):
            raise DomainError("vector components must be finite")
        if priors.shape != (M,):
            raise DomainError(
                f"need one prior per vector ({M}), got {priors.size}")
        if np.any(priors < 0) or not np.all(np.isfinite(priors)):
            raise DomainError("priors must be nonnegative")
        if abs(priors.sum() - 1.0) > 1e-12:
            raise DomainError(
                f"priors must sum to 1 within 1e-12, got {priors.sum()!r}")
        if self.label not in LABELS:
            raise DomainError(f"label must be one of {LABELS}, got {self.label!r}")
        vectors.flags.writeable = False
        priors.flags.writeable = False
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "priors", priors)

    @property
    def M(self) -> int:
        return self.vectors.shape[0]

    @property
    def n_u(self) -> int:
        return self.vectors.shape[1]

    def peak_amplitude(self) -> float:
        """Largest absolute component over all vectors."""
        return float(np.max(np.abs(self.vectors)))

    def to_dict(self) -> dict:
        return {"label": self.label,
                "priors": self.priors.tolist(),
                "vectors": self.vectors.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "SignalSet":
        try:
            return cls(vectors=data["vectors"], priors=data["priors"],
                       label=data.get("label", "custom"))
        except KeyError as exc:
            raise DomainError(f"signal set file is missing field {exc}") from None
        except (TypeError, ValueError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"malformed signal set: {exc}") from None


def load_signal_set(path: str | Path) -> SignalSet:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise DomainError(f"{path}: expected a JSON object")
    return SignalSet.from_dict(data)


def save_signal_set(sset: SignalSet, path: str | Path) -> None:
    Path(path).write_text(json.dumps(sset.to_dict(), indent=2) + "\n")


def _uniform(M: int) -> np.ndarray:
    return np.full(M, 1.0 / M)


def make_l1(M: int, E: float) -> SignalSet:
    """Antipodal pair at -sqrt(E), +sqrt(E) plus M-2 copies of the origin,
    all in one dimension."""
    if M < 3:
        raise DomainError(f"L1 requires M >= 3, got M={M}")
    if not E >= 0:
        raise DomainError(f"E must be >= 0, got {E}")
    r = math.sqrt(E)
    vec = np.zeros(M)
    vec[0], vec[1] = -r, r
    return SignalSet(vec, _uniform(M), "L1")


def make_l1_eps(M: int, E: float, eps: float) -> SignalSet:
    """L1 with the M-2 origin vectors spread evenly over [-eps, eps].

    A single cluster vector sits at +eps.
    """
    if M < 3:
        raise DomainError(f"L1 requires M >= 3, got M={M}")
    if not eps > 0:
        raise DomainError(f"eps must be > 0, got {eps}")
    if not E >= 0 or eps >= 0.5 * math.sqrt(E):
        raise DomainError(
            f"eps must be < sqrt(E)/2 (eps={eps}, sqrt(E)={math.sqrt(max(E, 0.0))})")
    r = math.sqrt(E)
    k = M - 2
    cluster = np.array([eps]) if k == 1 else np.linspace(-eps, eps, k)
    vec = np.concatenate([[-r, r], cluster])
    return SignalSet(vec, _uniform(M), "L1-eps")


def make_simplex(M: int, lambda2: float) -> SignalSet:
    """Regular simplex of M vectors in M-1 dimensions, each of energy
    ``lambda2``, centred on the origin."""
    if M < 2:
        raise DomainError(f"simplex requires M >= 2, got M={M}")
    if not lambda2 >= 0:
        raise DomainError(f"lambda2 must be >= 0, got {lambda2}")
    centred = np.eye(M) - 1.0 / M
    # orthonormal basis of the sum-zero subspace (Helmert-type, exact structure)
    basis = np.zeros((M, M - 1))
    for j in range(1, M):
        basis[:j, j - 1] = 1.0
        basis[j, j - 1] = -j
        basis[:, j - 1] /= math.sqrt(j * (j + 1))
    coords = centred @ basis
    coords *= math.sqrt(lambda2 / ((M - 1) / M))
    return SignalSet(coords, _uniform(M), "SI")


def general_position_direction(n: int, seed: int) -> np.ndarray:
    """Seeded unit vector in R^n whose coordinates are all bounded away from
    zero."""
    rng = np.random.default_rng(seed)
    while True:
        u = rng.standard_normal(n)
        if np.all(np.abs(u) >= 1e-3):
            return u / np.linalg.norm(u)


def make_coded_l1(M: int, E: float, direction_seed: int = 0) -> SignalSet:
    """L1 embedded along a general-position line of R^{M-1}."""
    if M < 3:
        raise DomainError(f"Lc requires M >= 3, got M={M}")
    if not E >= 0:
        raise DomainError(f"E must be >= 0, got {E}")
    u = general_position_direction(M - 1, direction_seed)
    vec = np.zeros((M, M - 1))
    vec[0] = math.sqrt(E) * u
    vec[1] = -vec[0]
    return SignalSet(vec, _uniform(M), "Lc")


@dataclass(frozen=True)
class EnergyReport:
    avg_energy: float
    per_vector_energy: list = field(default_factory=list)
    snr: float = 0.0
    normalized_snr: float = 0.0


def avg_energy(sset: SignalSet, sigma2: float = 1.0) -> EnergyReport:
    if not sigma2 > 0:
        raise DomainError(f"sigma2 must be > 0, got {sigma2}")
    per = np.einsum("ij,ij->i", sset.vectors, sset.vectors)
    lam2 = float(np.dot(sset.priors, per))
    normalized = lam2 / sset.n_u
    return EnergyReport(lam2, per.tolist(), normalized / sigma2, normalized)


def code_rate(M: int, n_u: int) -> float:
    """Bits per real channel use, log2(M) / N_u."""
    if M < 2 or n_u < 1:
        raise DomainError(f"need M >= 2 and N_u >= 1, got M={M}, N_u={n_u}")
    return math.log2(M) / n_u


def ebn0_from_snr(snr: float, rate: float) -> float:
    """Eb/N0 = SNR / (2R), with N0 = sigma^2 / 2."""
    if not rate > 0:
        raise DomainError(f"rate must be > 0, got {rate}")
    return snr / (2.0 * rate)


def capacity_per_dimension(snr: float) -> float:
    """AWGN capacity in bits per real dimension."""
    if not snr >= 0:
        raise DomainError(f"snr must be >= 0, got {snr}")
    return 0.5 * math.log2(1.0 + snr)
