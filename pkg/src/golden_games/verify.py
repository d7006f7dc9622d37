"""Cross-oracle checks bundled for ``golden-games verify``.

Each check compares two independent computations of the same quantity and
stops at the first counterexample.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import distribution, theory
from .core import PHI, GameInstance, SampleSpec, sample_game, value
from .fragility import brute_force_fragility, fragility, witness


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    counterexample: str | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        out = f"[{status}] {self.name}: {self.detail}"
        if self.counterexample:
            out += f"\n       first counterexample: {self.counterexample}"
        return out


def all_games(depth: int):
    n = 1 << depth
    for bits in itertools.product((0, 1), repeat=n):
        yield GameInstance(depth, np.array(bits, dtype=np.uint8))


def seeded_games(depth: int, count: int, seed: int = 2024, p: float = 0.5):
    for k in range(count):
        yield sample_game(SampleSpec(depth, p, seed, k))


def check_brute_force(max_depth: int, budget: int) -> CheckResult:
    checked = 0
    for depth in range(0, min(max_depth, 3) + 1):
        for g in all_games(depth):
            expected = brute_force_fragility(g, budget)
            got = fragility(g)
            if (got <= budget and expected != got) or (got > budget and expected is not None):
                return CheckResult("fragility vs brute force", False, f"{checked} games agreed",
                                   f"{g!r}: dp={got} brute={expected}")
            checked += 1
    if max_depth >= 4:
        cap = min(budget, 3)
        for g in seeded_games(4, 1000):
            expected = brute_force_fragility(g, cap)
            got = fragility(g)
            if (got <= cap and expected != got) or (got > cap and expected is not None):
                return CheckResult("fragility vs brute force", False, f"{checked} games agreed",
                                   f"{g!r}: dp={got} brute={expected}")
            checked += 1
    return CheckResult("fragility vs brute force", True, f"{checked} games agree")


def check_witnesses(max_depth: int) -> CheckResult:
    checked = 0
    games = itertools.chain.from_iterable(all_games(d) for d in range(0, min(max_depth, 3) + 1))
    if max_depth >= 4:
        games = itertools.chain(games, seeded_games(4, 1000))
    for g in games:
        rep = witness(g)
        flipped = g.flipped(rep.witness)
        if len(rep.witness) != rep.fragility or value(flipped) == rep.value:
            return CheckResult("witness validity", False, f"{checked} witnesses valid",
                               f"{g!r}: witness={rep.witness}")
        checked += 1
    return CheckResult("witness validity", True, f"{checked} witnesses flip the value with minimal size")


def check_enumeration(max_depth: int, cap: int = 4) -> CheckResult:
    worst = 0.0
    for depth in range(0, min(max_depth, 3) + 1):
        row = distribution.exact_table(depth, PHI, cap)[-1]
        pv1 = 0.0
        F = [0.0] * cap
        for g in all_games(depth):
            ones = int(g.payoffs.sum())
            w = PHI**ones * (1.0 - PHI) ** (g.payoffs.size - ones)
            pv1 += w * value(g)
            f = fragility(g)
            for d in range(cap):
                if f <= d + 1:
                    F[d] += w
        err = max([abs(pv1 - row.prob_v1)] + [abs(a - b) for a, b in zip(F, row.F)])
        worst = max(worst, err)
        if err > 1e-12:
            return CheckResult("exact table vs enumeration", False, f"depth {depth} error {err:.3g}")
    return CheckResult("exact table vs enumeration", True, f"max error {worst:.3g} (tol 1e-12)")


def check_closed_forms() -> CheckResult:
    rows = theory.xi_sequence(8)
    e_xi = abs(rows[0].xi - PHI / 2.0)
    e_F = abs(rows[0].F - 5.0 * PHI / 4.0)
    e_res = max(theory.fixed_point_residual(r) for r in rows)
    ok = e_xi < 1e-15 and e_F < 1e-15 and e_res < 1e-14
    return CheckResult(
        "closed forms and fixed-point residuals", ok,
        f"|xi_1 - phi/2|={e_xi:.3g}, |F(1) - 5phi/4|={e_F:.3g}, max residual={e_res:.3g}",
    )


def check_recursion_vs_dp(nmax: int = 40, dmax: int = 5, tol: float = 1e-8) -> CheckResult:
    exact = distribution.exact_table(nmax, PHI, dmax)
    worst = 0.0
    for fr in theory.finite_alpha_beta(dmax, nmax):
        row = exact[fr.n]
        err = max(abs(fr.alpha - row.alpha[fr.d - 1]), abs(fr.beta - row.beta[fr.d - 1]))
        worst = max(worst, err)
        if err >= tol:
            return CheckResult("alpha/beta recursion vs exact DP", False, f"tol {tol}",
                               f"n={fr.n} d={fr.d}: recursion=({fr.alpha}, {fr.beta}) "
                               f"dp=({row.alpha[fr.d - 1]}, {row.beta[fr.d - 1]})")
    return CheckResult("alpha/beta recursion vs exact DP", True,
                       f"n<={nmax}, d<={dmax}, max error {worst:.3g}")


def check_parity(nmax: int = 60, tol: float = 1e-9) -> CheckResult:
    rows = distribution.exact_table(nmax, PHI, 1)
    for r in rows:
        target = PHI if r.n % 2 == 0 else PHI * PHI
        if abs(r.prob_v1 - target) >= tol:
            return CheckResult("golden parity identity", False, f"tol {tol}",
                               f"n={r.n}: Pr[V=1]={r.prob_v1!r}, expected {target!r}")
    worst = max(abs(r.prob_v1 - (PHI if r.n % 2 == 0 else PHI * PHI)) for r in rows)
    return CheckResult("golden parity identity", True, f"n<={nmax}, max drift {worst:.3g}")


def check_fixed_points() -> CheckResult:
    pts = [0.0, 1.0, (3.0 - math.sqrt(5.0)) / 2.0]
    errs = [abs(distribution.two_level_map(x) - x) for x in pts]
    ok = max(errs) < 1e-12
    return CheckResult("fixed points of the two-level map", ok,
                       ", ".join(f"x={x:.6f}: {e:.3g}" for x, e in zip(pts, errs)))


def run_all(max_depth: int = 3, budget: int = 8) -> list[CheckResult]:
    return [
        check_brute_force(max_depth, budget),
        check_witnesses(max_depth),
        check_enumeration(max_depth),
        check_closed_forms(),
        check_recursion_vs_dp(),
        check_parity(),
        check_fixed_points(),
    ]
