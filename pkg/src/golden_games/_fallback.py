"""Numpy implementations of the hot kernels.

Used when the compiled ``_kernels`` extension is unavailable (or disabled
with ``GOLDEN_GAMES_PURE_PYTHON=1``).  Results are bit-identical to the
compiled versions; only the speed differs.
"""

from __future__ import annotations

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
TWO53 = float(1 << 53)

# subtrees at or below this height are evaluated as one vectorized block
_BLOCK_HEIGHT = 10
# samples per vectorized batch in fragility_tally
_BATCH_LEAVES = 1 << 20


def _mix(z: np.ndarray) -> np.ndarray:
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(0xBF58476D1CE4E5B9)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _leaf_bits(bases: np.ndarray, first: int, count: int, p: float) -> np.ndarray:
    """Leaf bits for leaves ``first .. first+count-1`` of each sample key.

    ``bases`` is a 1-d uint64 array of sample keys; the result has shape
    ``(len(bases), count)``.
    """
    offsets = np.arange(first + 1, first + 1 + count, dtype=np.uint64) * np.uint64(GAMMA)
    z = _mix(bases[:, None] + offsets[None, :])
    return ((z >> np.uint64(11)).astype(np.float64) < p * TWO53).astype(np.uint8)


def _keys(seed: int, indices) -> np.ndarray:
    """Per-sample keys ``mix(seed + (index + 1) * GAMMA)``."""
    idx = np.asarray(indices, dtype=np.uint64)
    return _mix(np.uint64(seed) + (idx + np.uint64(1)) * np.uint64(GAMMA))


def _base(seed: int, index: int) -> np.ndarray:
    return _keys(seed, [index])


def _reduce_values(bits: np.ndarray, lo_height: int, hi_height: int) -> np.ndarray:
    # combine along the last axis from height lo_height+1 up to hi_height
    a = bits
    for h in range(lo_height + 1, hi_height + 1):
        pairs = a.reshape(*a.shape[:-1], -1, 2)
        a = pairs.min(axis=-1) if h & 1 else pairs.max(axis=-1)
    return a


def sample_leaves(seed: int, index: int, depth: int, p: float) -> np.ndarray:
    return _leaf_bits(_base(seed, index), 0, 1 << depth, p)[0]


def streamed_value(seed: int, index: int, depth: int, p: float) -> int:
    base = _base(seed, index)
    block = min(depth, _BLOCK_HEIGHT)

    def block_value(first: int) -> int:
        bits = _leaf_bits(base, first, 1 << block, p)
        return int(_reduce_values(bits, 0, block)[0, 0])

    def evaluate(first: int, h: int) -> int:
        if h == block:
            return block_value(first)
        left = evaluate(first, h - 1)
        if h & 1:
            if left == 0:
                return 0
        elif left == 1:
            return 1
        return evaluate(first + (1 << (h - 1)), h - 1)

    return evaluate(0, depth)


def _cost_levels(bits: np.ndarray, depth: int) -> tuple[np.ndarray, np.ndarray]:
    to0 = bits.astype(np.int64)
    to1 = 1 - to0
    for h in range(1, depth + 1):
        p0 = to0.reshape(*to0.shape[:-1], -1, 2)
        p1 = to1.reshape(*to1.shape[:-1], -1, 2)
        if h & 1:
            to0, to1 = p0.min(axis=-1), p1.sum(axis=-1)
        else:
            to0, to1 = p0.sum(axis=-1), p1.min(axis=-1)
    return to0[..., 0], to1[..., 0]


def fragility_tally(seed: int, depth: int, p: float, start: int, stop: int, dmax: int) -> np.ndarray:
    counts = np.zeros((2, dmax + 1), dtype=np.int64)
    batch = max(1, _BATCH_LEAVES >> depth)
    n = 1 << depth
    for lo in range(start, stop, batch):
        hi = min(stop, lo + batch)
        bases = _keys(seed, np.arange(lo, hi, dtype=np.uint64))
        to0, to1 = _cost_levels(_leaf_bits(bases, 0, n, p), depth)
        value = (to0 > 0).astype(np.int64)
        frag = np.where(value == 1, to0, to1)
        bucket = np.minimum(frag, dmax + 1) - 1
        np.add.at(counts, (value, bucket), 1)
    return counts
