"""Exact per-instance fragility.

The fragility of a game is the Hamming distance from its leaf vector to the
nearest game with the opposite value, i.e. the fewest leaf flips the losing
player needs to overturn the result.  It is computed bottom-up from per-node
cost pairs: a node's cost to reach the mover's preferred value is the
cheaper child, its cost to reach the other value is the sum over children.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .core import GameInstance, value

# brute_force_fragility refuses enumerations larger than this many subsets
MAX_BRUTE_FORCE_SUBSETS = 20_000_000


class EnumerationTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CostPair:
    cost_to_0: int
    cost_to_1: int

    @property
    def value(self) -> int:
        return 0 if self.cost_to_0 == 0 else 1

    @property
    def fragility(self) -> int:
        return max(self.cost_to_0, self.cost_to_1)


@dataclass(frozen=True)
class FragilityReport:
    value: int
    fragility: int
    witness: list[int]

    def to_dict(self) -> dict:
        return {"value": self.value, "fragility": self.fragility, "witness": list(self.witness)}


def cost_levels(game: GameInstance) -> list[tuple[np.ndarray, np.ndarray]]:
    """Cost arrays ``(to0, to1)`` for every height, leaves first.

    Entry ``h`` holds one pair of int64 arrays of length ``2**(depth-h)``.
    """
    to0 = game.payoffs.astype(np.int64)
    to1 = 1 - to0
    levels = [(to0, to1)]
    for h in range(1, game.depth + 1):
        p0 = to0.reshape(-1, 2)
        p1 = to1.reshape(-1, 2)
        if h & 1:  # Player 2 wants 0
            to0, to1 = p0.min(axis=1), p1.sum(axis=1)
        else:
            to0, to1 = p0.sum(axis=1), p1.min(axis=1)
        levels.append((to0, to1))
    return levels


def cost_pair(game: GameInstance) -> CostPair:
    to0, to1 = cost_levels(game)[-1]
    return CostPair(int(to0[0]), int(to1[0]))


def fragility(game: GameInstance) -> int:
    return cost_pair(game).fragility


def is_fragile(game: GameInstance, d: int) -> bool:
    return fragility(game) <= d


def witness(game: GameInstance) -> FragilityReport:
    """A minimal flip set that overturns the value, with its size.

    Ties between children at a choice node go to the left child; when both
    children must change, left leaves are listed before right ones.
    """
    levels = cost_levels(game)
    root = CostPair(int(levels[-1][0][0]), int(levels[-1][1][0]))
    target = 1 - root.value
    flips: list[int] = []
    # explicit stack of (height, node index); right pushed first so left is visited first
    stack = [(game.depth, 0)]
    while stack:
        h, j = stack.pop()
        if levels[h][target][j] == 0:
            continue
        if h == 0:
            if game.payoffs[j] != target:
                flips.append(j)
            continue
        child = levels[h - 1][target]
        left, right = 2 * j, 2 * j + 1
        preferred = 0 if h & 1 else 1
        if target == preferred:
            stack.append((h - 1, left if child[left] <= child[right] else right))
        else:
            stack.append((h - 1, right))
            stack.append((h - 1, left))
    return FragilityReport(root.value, root.fragility, flips)


def _reference_value(bits: tuple, h: int) -> int:
    # deliberately naive recursive minimax, independent of value()
    if h == 0:
        return bits[0]
    half = len(bits) // 2
    left = _reference_value(bits[:half], h - 1)
    right = _reference_value(bits[half:], h - 1)
    return min(left, right) if h % 2 == 1 else max(left, right)


def reference_value(game: GameInstance) -> int:
    return _reference_value(tuple(int(b) for b in game.payoffs), game.depth)


def brute_force_fragility(game: GameInstance, cap: int) -> int | None:
    """Smallest flip set (size at most ``cap``) that changes the value.

    Exhaustive over leaf subsets, so only for tiny games.  Returns ``None``
    when no subset of size ``<= cap`` works.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    n = game.payoffs.size
    cap = min(cap, n)
    total = sum(math.comb(n, k) for k in range(1, cap + 1))
    if total > MAX_BRUTE_FORCE_SUBSETS:
        raise EnumerationTooLarge(f"{total} subsets for {n} leaves and cap {cap}")
    bits = [int(b) for b in game.payoffs]
    v = _reference_value(tuple(bits), game.depth)
    for k in range(1, cap + 1):
        for subset in itertools.combinations(range(n), k):
            trial = list(bits)
            for i in subset:
                trial[i] ^= 1
            if _reference_value(tuple(trial), game.depth) != v:
                return k
    return None
