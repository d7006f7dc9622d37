"""Reproducible Monte Carlo estimates of Pr[V_n = 1] and F_n(d).

Sample ``k`` of a run is the game generated from ``(seed, k)`` by the
counter-based leaf generator, so any split of the index range across
workers produces the same tallies.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .core import MASK64, MAX_MATERIALIZED_DEPTH
from .distribution import MAX_CAP

Z95 = 1.959964
THREADS_ENV = "GOLDEN_GAMES_THREADS"


@dataclass(frozen=True)
class Interval:
    est: float
    lo: float
    hi: float

    @property
    def std_error(self) -> float:
        """Wilson half-width expressed in standard errors (width / z)."""
        return (self.hi - self.lo) / (2.0 * Z95)

    def to_dict(self) -> dict:
        return {"est": self.est, "lo": self.lo, "hi": self.hi}


def wilson_interval(successes: int, trials: int, z: float = Z95) -> Interval:
    """Wilson score interval; ``est`` is the raw proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    x, n = float(successes), float(trials)
    z2 = z * z
    center = (x + z2 / 2.0) / (n + z2)
    half = z * math.sqrt(x * (n - x) / n + z2 / 4.0) / (n + z2)
    return Interval(x / n, max(0.0, center - half), min(1.0, center + half))


@dataclass(frozen=True)
class EstimationRequest:
    depth: int
    p: float
    dmax: int
    samples: int
    seed: int
    workers: int = 1

    def __post_init__(self):
        if self.samples <= 0:
            raise ValueError("samples must be positive")
        if not 0 <= self.depth <= MAX_MATERIALIZED_DEPTH:
            raise ValueError(f"depth must be in [0, {MAX_MATERIALIZED_DEPTH}]")
        if not 1 <= self.dmax <= MAX_CAP:
            raise ValueError(f"dmax must be in [1, {MAX_CAP}]")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass(frozen=True)
class EstimationResult:
    """``counts[v, k-1]`` tallies games of value v and fragility min(k, dmax+1)."""

    depth: int
    p: float
    dmax: int
    samples: int
    seed: int
    counts: np.ndarray
    prob_v1: Interval
    F: list[Interval]

    def to_dict(self) -> dict:
        return {
            "depth": self.depth,
            "p": self.p,
            "dmax": self.dmax,
            "samples": self.samples,
            "seed": self.seed,
            "prob_v1": self.prob_v1.to_dict(),
            "F": [{"d": d, **iv.to_dict()} for d, iv in enumerate(self.F, start=1)],
            "counts": self.counts.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def default_workers() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        return max(1, int(env))
    return 1


def _ranges(samples: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, samples))
    edges = [samples * i // parts for i in range(parts + 1)]
    return [(a, b) for a, b in zip(edges, edges[1:]) if b > a]


def estimate(req: EstimationRequest) -> EstimationResult:
    def tally(bounds):
        lo, hi = bounds
        return kernels.fragility_tally(req.seed, req.depth, float(req.p), lo, hi, req.dmax)

    chunks = _ranges(req.samples, req.workers)
    if len(chunks) == 1:
        parts = [tally(chunks[0])]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(tally, chunks))
    counts = np.sum(parts, axis=0, dtype=np.int64)

    n = req.samples
    prob_v1 = wilson_interval(int(counts[1].sum()), n)
    per_cost = counts.sum(axis=0)
    cumulative = np.cumsum(per_cost)
    F = [wilson_interval(int(cumulative[d - 1]), n) for d in range(1, req.dmax + 1)]
    return EstimationResult(req.depth, req.p, req.dmax, n, req.seed, counts, prob_v1, F)
