"""Recursions for golden games (leaf parameter ``PHI``).

Two computations live here:

* the asymptotic sequence ``xi_d``: the smaller root of
  ``2*PHI**2*x**2 - x + PHI**3*H(d) = 0``, where ``H(d)`` is the limiting
  probability that a node whose two children both hold the winning value
  cannot be overturned with ``d`` flips; from it
  ``F(d) = 1 - PHI*xi_d - PHI**2*xi_d**2``;
* the finite-depth sequences ``alpha_n(d)`` and ``beta_n(d)``
  (non-fragility conditioned on value 1 and value 0), which converge to
  ``xi_d`` and ``xi_d**2`` with alternating parity.

Both are written to avoid subtracting nearly equal numbers, so the
complements ``1 - F(d)`` stay accurate far below machine epsilon.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .core import PHI

PHI2 = PHI * PHI
PHI3 = PHI2 * PHI
PHI5 = PHI3 * PHI2


@dataclass(frozen=True)
class TheoryRow:
    d: int
    xi: float
    xi_sq: float
    H: float
    F: float
    complement: float


@dataclass(frozen=True)
class FiniteRow:
    n: int
    d: int
    alpha: float
    beta: float


def xi_quadratic_root(Hd: float) -> float:
    """Smaller root of ``2*PHI**2*x**2 - x + PHI**3*Hd``."""
    if not 0.0 < Hd <= 1.0:
        raise ValueError(f"H must lie in (0, 1], got {Hd}")
    return 2.0 * PHI3 * Hd / (1.0 + math.sqrt(1.0 - 8.0 * PHI5 * Hd))


def _both_children_hold(d: int, sq: list[float]) -> float:
    """Pr[two winning children cannot both be overturned within d flips].

    ``sq[r]`` is the probability that one child survives r flips.  Written as
    2*sq[d-1] + sum_{r+s=d-1} sq[r]sq[s] - sum_{r+s=d} sq[r]sq[s], which is
    the inclusion-exclusion form 1 - C(d) + C(d-1) with the constants
    cancelled.
    """
    if d == 1:
        return 1.0
    lower = sum(sq[r] * sq[d - 1 - r] for r in range(1, d - 1))
    upper = sum(sq[r] * sq[d - r] for r in range(1, d))
    return max(0.0, 2.0 * sq[d - 1] + lower - upper)


def xi_sequence(dmax: int) -> list[TheoryRow]:
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    sq = [0.0]  # index 0 unused
    rows = []
    for d in range(1, dmax + 1):
        H = _both_children_hold(d, sq)
        xi = xi_quadratic_root(H) if H > 0.0 else 0.0
        xi2 = xi * xi
        sq.append(xi2)
        complement = PHI * xi + PHI2 * xi2
        rows.append(TheoryRow(d, xi, xi2, H, 1.0 - complement, complement))
    return rows


def fixed_point_residual(row: TheoryRow) -> float:
    return abs(2.0 * PHI2 * row.xi_sq - row.xi + PHI3 * row.H)


def finite_alpha_beta(dmax: int, nmax: int) -> list[FiniteRow]:
    """alpha_n(d), beta_n(d) for n = 0..nmax and d = 1..dmax.

    At a Player 1 node holding value 1 either both children hold 1
    (conditional weight PHI**3) or exactly one does (2*PHI**2); at a
    Player 2 node holding 1 both children must.  beta mirrors this with the
    parities exchanged.
    """
    if dmax < 1 or nmax < 0:
        raise ValueError("need dmax >= 1 and nmax >= 0")
    alpha = [0.0] * (dmax + 1)  # index 0 unused
    beta = [0.0] * (dmax + 1)
    rows = [FiniteRow(0, d, 0.0, 0.0) for d in range(1, dmax + 1)]
    for n in range(1, nmax + 1):
        if n & 1:
            new_alpha = [a * a for a in alpha]
            new_beta = [0.0] + [
                PHI3 * _both_children_hold(d, beta) + 2.0 * PHI2 * beta[d] for d in range(1, dmax + 1)
            ]
        else:
            new_beta = [b * b for b in beta]
            new_alpha = [0.0] + [
                PHI3 * _both_children_hold(d, alpha) + 2.0 * PHI2 * alpha[d] for d in range(1, dmax + 1)
            ]
        alpha, beta = new_alpha, new_beta
        rows.extend(FiniteRow(n, d, alpha[d], beta[d]) for d in range(1, dmax + 1))
    return rows


def asymptotic_limit_check(dmax: int, n_big: int) -> dict:
    """Distance of the finite sequences from their asymptotic limits.

    Returns per-budget deviations ``|alpha_{n_big}(d) - xi_d|`` and
    ``|beta_{n_big+1}(d) - xi_d|`` along with the monotonicity flags.
    """
    if n_big % 2 or n_big < 40:
        raise ValueError("n_big must be even and >= 40")
    theory = xi_sequence(dmax)
    finite = {(r.n, r.d): r for r in finite_alpha_beta(dmax, n_big + 1)}
    dev_alpha = [abs(finite[n_big, t.d].alpha - t.xi) for t in theory]
    dev_beta = [abs(finite[n_big + 1, t.d].beta - t.xi) for t in theory]
    xis = [t.xi for t in theory]
    comps = [t.complement for t in theory]
    return {
        "d": [t.d for t in theory],
        "alpha_deviation": dev_alpha,
        "beta_deviation": dev_beta,
        "xi_decreasing": all(a > b for a, b in zip(xis, xis[1:])),
        "complement_decreasing": all(a > b for a, b in zip(comps, comps[1:])),
        "max_deviation": max(dev_alpha + dev_beta),
    }


def rows_to_csv(rows: list[TheoryRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "xi", "xi_sq", "H", "F", "one_minus_F"])
    for r in rows:
        w.writerow([r.d] + [f"{x:.17g}" for x in (r.xi, r.xi_sq, r.H, r.F, r.complement)])
    return buf.getvalue()
