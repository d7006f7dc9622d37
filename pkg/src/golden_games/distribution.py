"""Exact law of (value, flips-to-overturn) under i.i.d. Bernoulli leaves.

Flip costs are tracked only up to a cap ``D``; anything larger collapses to
a single OVER state.  With ``2 * (D + 1)`` states per level, one level of
backward induction over two i.i.d. children is an exact convolution, and
iterating it gives ``Pr[V_n = 1]``, ``F_n(d)`` and the conditional
non-fragility sequences ``alpha_n(d)`` and ``beta_n(d)`` for every ``d <= D``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .core import Player, mover_at_height

MAX_CAP = 16
MAX_EXACT_DEPTH = 64


@dataclass(frozen=True)
class CappedCostDistribution:
    """``prob[v, k-1]`` is Pr[value v, overturn cost k] for k = 1..cap;
    ``prob[v, cap]`` holds the OVER mass (cost > cap)."""

    cap: int
    prob: np.ndarray = field(repr=False)

    @property
    def over(self) -> int:
        return self.cap

    def mass(self, v: int, cost: int | None = None) -> float:
        """Probability of value ``v`` with the given cost (``None`` = OVER)."""
        return float(self.prob[v, self.cap if cost is None else cost - 1])

    def prob_value(self, v: int) -> float:
        return float(self.prob[v].sum())

    def tail(self, v: int, d: int) -> float:
        """Pr[value v and cost > d]."""
        return float(self.prob[v, d:].sum())

    def total(self) -> float:
        return float(self.prob.sum())


def leaf_distribution(p: float, cap: int) -> CappedCostDistribution:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    prob = np.zeros((2, cap + 1))
    prob[1, 0] = p
    prob[0, 0] = 1.0 - p
    return CappedCostDistribution(cap, prob)


@lru_cache(maxsize=None)
def _transition(cap: int, preferred: int) -> np.ndarray:
    """Parent state index for every ordered pair of child states."""
    nstate = 2 * (cap + 1)
    over = cap + 1
    out = np.empty((nstate, nstate), dtype=np.intp)
    for a in range(nstate):
        va, ka = divmod(a, cap + 1)
        for b in range(nstate):
            vb, kb = divmod(b, cap + 1)
            # costs encoded 1..cap, OVER as cap+1; min/saturating sum both respect it
            to_pref = min(0 if va == preferred else ka + 1, 0 if vb == preferred else kb + 1)
            to_other = min((0 if va != preferred else ka + 1) + (0 if vb != preferred else kb + 1), over)
            if to_pref == 0:
                v, k = preferred, to_other
            else:
                v, k = 1 - preferred, to_pref
            out[a, b] = v * (cap + 1) + k - 1
    out.flags.writeable = False
    return out


def combine(child: CappedCostDistribution, mover: Player) -> CappedCostDistribution:
    """Law of a node whose two children are i.i.d. copies of ``child``."""
    cap = child.cap
    flat = child.prob.ravel()
    joint = np.outer(flat, flat)
    parent = np.bincount(
        _transition(cap, mover.preferred_value).ravel(),
        weights=joint.ravel(),
        minlength=flat.size,
    )
    # the total is squared at every level, so any rounding in it doubles
    # per level unless it is removed here
    parent /= parent.sum()
    return CappedCostDistribution(cap, parent.reshape(2, cap + 1))


@dataclass(frozen=True)
class ExactRow:
    """One depth of the exact table.  Undefined conditionals are ``None``."""

    n: int
    p: float
    cap: int
    prob_v1: float
    F: list[float]
    alpha: list[float | None]
    beta: list[float | None]


def _row(n: int, p: float, dist: CappedCostDistribution) -> ExactRow:
    cap = dist.cap
    pv1 = dist.prob_value(1)
    pv0 = dist.prob_value(0)
    # running sum keeps F non-decreasing in d under rounding
    F = [float(x) for x in np.cumsum(dist.prob.sum(axis=0))[:cap]]
    alpha, beta = [], []
    for d in range(1, cap + 1):
        t1 = dist.tail(1, d)
        t0 = dist.tail(0, d)
        alpha.append(t1 / pv1 if pv1 > 0.0 else None)
        beta.append(t0 / pv0 if pv0 > 0.0 else None)
    return ExactRow(n, p, cap, pv1, F, alpha, beta)


def exact_distributions(depth: int, p: float, cap: int) -> list[CappedCostDistribution]:
    if not 0 <= depth <= MAX_EXACT_DEPTH:
        raise ValueError(f"depth must be in [0, {MAX_EXACT_DEPTH}]")
    if not 1 <= cap <= MAX_CAP:
        raise ValueError(f"cap must be in [1, {MAX_CAP}]")
    dist = leaf_distribution(p, cap)
    out = [dist]
    for h in range(1, depth + 1):
        dist = combine(dist, mover_at_height(h))
        out.append(dist)
    return out


def exact_table(depth: int, p: float, cap: int) -> list[ExactRow]:
    """Exact rows for n = 0..depth.

    Rounding error in ``prob_v1`` grows by about 1.53x every two levels at
    the golden parameter (its fixed point is repelling), which is why depth
    is limited to 64.
    """
    return [_row(n, p, dist) for n, dist in enumerate(exact_distributions(depth, p, cap))]


def value_prob_iterate(p: float, depth: int) -> list[float]:
    """Pr[V_n = 1] for n = 0..depth from the one-level marginal map."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    q = p
    out = [q]
    for h in range(1, depth + 1):
        q = q * q if h & 1 else 1.0 - (1.0 - q) ** 2
        out.append(q)
    return out


def two_level_map(x: float) -> float:
    """Pr[Player 2 wins a depth-2 game] as a function of the leaf loss rate x."""
    return (1.0 - (1.0 - x) ** 2) ** 2


def _fmt(x: float | None) -> str:
    return "NA" if x is None else f"{x:.17g}"


def csv_header(cap: int) -> list[str]:
    ds = range(1, cap + 1)
    return (
        ["n", "p", "cap", "prob_v1"]
        + [f"F_{d}" for d in ds]
        + [f"alpha_{d}" for d in ds]
        + [f"beta_{d}" for d in ds]
    )


def rows_to_csv(rows: list[ExactRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows:
        w.writerow(csv_header(rows[0].cap))
    for r in rows:
        w.writerow(
            [r.n, _fmt(r.p), r.cap, _fmt(r.prob_v1)]
            + [_fmt(x) for x in r.F]
            + [_fmt(x) for x in r.alpha]
            + [_fmt(x) for x in r.beta]
        )
    return buf.getvalue()
