"""Monte-Carlo oracle: AWGN channel plus minimum-distance decoding.

Trials are split into fixed-size blocks. Block ``k`` draws from its own
PCG64 stream seeded by ``SeedSequence(seed, spawn_key=(k,))``, and only
integer counts leave a block, so the estimate does not depend on how many
worker threads process the blocks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .mathkit import DomainError
from .signals import SignalSet

TIE_RULES = ("uniform_random", "lowest_index")
BLOCK_SIZE = 1 << 14
DEFAULT_SEED = 20240501
THREADS_ENV = "SIMPLEX_GAUNTLET_THREADS"


@dataclass(frozen=True)
class TrialConfig:
    set: SignalSet
    sigma2: float = 1.0
    trials: int = 1_000_000
    seed: int = DEFAULT_SEED
    tie_rule: str = "uniform_random"

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError(f"trials must be >= 1, got {self.trials}")
        if not self.sigma2 > 0:
            raise DomainError(f"sigma2 must be > 0, got {self.sigma2}")
        if self.tie_rule not in TIE_RULES:
            raise DomainError(f"tie_rule must be one of {TIE_RULES}")
        if not 0 <= self.seed < 2 ** 64:
            raise DomainError("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class PdEstimate:
    p_hat: float
    stderr: float
    trials: int
    per_signal_correct: list  # None where a signal was never transmitted
    seed: int

    def to_dict(self) -> dict:
        return {"p_hat": self.p_hat, "stderr": self.stderr,
                "trials": self.trials, "seed": self.seed,
                "per_signal_correct": self.per_signal_correct}


def _pick(dist: np.ndarray, tie_rule: str, rng: np.random.Generator | None
          ) -> np.ndarray:
    """Row-wise index of the minimum of ``dist`` (shape (n, M))."""
    if tie_rule == "lowest_index":
        return np.argmin(dist, axis=1)
    is_min = dist == dist.min(axis=1, keepdims=True)
    keys = rng.random(dist.shape)
    return np.argmax(np.where(is_min, keys, -1.0), axis=1)


def _distances(y: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    diff = y[:, None, :] - vectors[None, :, :]
    return np.einsum("nmk,nmk->nm", diff, diff)


def decode_min_distance(y, sset: SignalSet, tie_rule: str = "uniform_random",
                        rng: np.random.Generator | None = None) -> int:
    """Nearest signal vector to ``y``, as a 1-based index.

    Exact co-minimisers are resolved uniformly at random (drawing from
    ``rng``) or by taking the lowest index.
    """
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if y.shape != (sset.n_u,):
        raise DomainError(
            f"received vector has dimension {y.size}, set has N_u={sset.n_u}")
    if tie_rule not in TIE_RULES:
        raise DomainError(f"tie_rule must be one of {TIE_RULES}")
    if tie_rule == "uniform_random" and rng is None:
        rng = np.random.default_rng()
    dist = _distances(y[None, :], sset.vectors)
    return int(_pick(dist, tie_rule, rng)[0]) + 1


def block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def _run_block(config: TrialConfig, block: int) -> tuple[np.ndarray, np.ndarray]:
    sset = config.set
    M = sset.M
    start = block * BLOCK_SIZE
    n = min(BLOCK_SIZE, config.trials - start)
    rng = block_rng(config.seed, block)

    # stratified transmissions: exact prior proportions, random remainder
    sent = np.floor(sset.priors * n).astype(np.int64)
    rest = n - int(sent.sum())
    if rest:
        extra = rng.choice(M, size=rest, p=sset.priors)
        sent += np.bincount(extra, minlength=M)
    tx = np.repeat(np.arange(M), sent)

    noise = rng.standard_normal((n, sset.n_u))
    y = sset.vectors[tx] + math.sqrt(config.sigma2) * noise
    decided = _pick(_distances(y, sset.vectors), config.tie_rule, rng)
    correct = np.bincount(tx[decided == tx], minlength=M)
    return sent, correct


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return min(8, os.cpu_count() or 1)


def simulate_pd(config: TrialConfig, workers: int | None = None) -> PdEstimate:
    """Estimate the average probability of correct decoding.

    The estimate is the prior-weighted mean of the per-signal success
    ratios, renormalised over the signals that were actually sent.
    """
    n_blocks = -(-config.trials // BLOCK_SIZE)
    workers = worker_count() if workers is None else max(1, workers)
    M = config.set.M
    sent = np.zeros(M, dtype=np.int64)
    correct = np.zeros(M, dtype=np.int64)
    if workers == 1 or n_blocks == 1:
        results = (_run_block(config, k) for k in range(n_blocks))
        for s, c in results:
            sent += s
            correct += c
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for s, c in pool.map(lambda k: _run_block(config, k), range(n_blocks)):
                sent += s
                correct += c

    priors = config.set.priors
    ratios = [int(c) / int(s) if s else None for s, c in zip(sent, correct)]
    weight = sum(float(p) for p, r in zip(priors, ratios) if r is not None)
    p_hat = sum(float(p) * r for p, r in zip(priors, ratios) if r is not None) / weight
    p_hat = min(max(p_hat, 0.0), 1.0)
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / config.trials)
    return PdEstimate(p_hat, stderr, config.trials, ratios, config.seed)
