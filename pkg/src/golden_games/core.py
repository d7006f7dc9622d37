"""Game representation, move convention, minimax value and seeded sampling.

Heights are measured from the leaves: leaves sit at height 0 and the root of
a depth-``n`` game at height ``n``.  Player 2 moves at odd heights (so always
moves last) and Player 1 at even heights.  Leaves are stored left to right,
so the two children of node ``j`` one level up are ``2j`` and ``2j+1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from pathlib import Path

import numpy as np

from ._backend import kernels

PHI = (math.sqrt(5.0) - 1.0) / 2.0
MAX_MATERIALIZED_DEPTH = 30
MAX_STREAM_DEPTH = 64

GAMMA = 0x9E3779B97F4A7C15
MASK64 = (1 << 64) - 1

TEXT_MAGIC = "GGAME v1"
BINARY_MAGIC = b"GGB1"
BINARY_VERSION = 1


class Player(IntEnum):
    PLAYER1 = 1  # maximizer, wins on value 1
    PLAYER2 = 2  # minimizer, wins on value 0

    @property
    def preferred_value(self) -> int:
        return 1 if self is Player.PLAYER1 else 0


class GameFormatError(ValueError):
    """Malformed game file.  ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


@dataclass(frozen=True, eq=False)
class GameInstance:
    """One realization of a depth-``depth`` game.

    ``payoffs`` is a read-only uint8 array of 0/1 values, one per leaf.
    """

    depth: int
    payoffs: np.ndarray

    def __post_init__(self):
        if not 0 <= self.depth <= MAX_MATERIALIZED_DEPTH:
            raise ValueError(f"depth must be in [0, {MAX_MATERIALIZED_DEPTH}], got {self.depth}")
        arr = np.asarray(self.payoffs, dtype=np.uint8)
        if arr.ndim != 1 or arr.size != 1 << self.depth:
            raise ValueError(f"expected {1 << self.depth} payoffs for depth {self.depth}, got {arr.size}")
        if arr.size and arr.max() > 1:
            raise ValueError("payoffs must be 0 or 1")
        if arr is self.payoffs and arr.flags.writeable:
            arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "payoffs", arr)

    @classmethod
    def from_bits(cls, bits) -> "GameInstance":
        """Build from a sequence of 0/1 values or a '0'/'1' string."""
        if isinstance(bits, str):
            bits = [int(c) for c in bits]
        arr = np.asarray(bits, dtype=np.uint8)
        depth = int(arr.size).bit_length() - 1
        if arr.size == 0 or 1 << depth != arr.size:
            raise ValueError(f"number of payoffs must be a power of two, got {arr.size}")
        return cls(depth, arr)

    def __eq__(self, other):
        if not isinstance(other, GameInstance):
            return NotImplemented
        return self.depth == other.depth and np.array_equal(self.payoffs, other.payoffs)

    def __hash__(self):
        return hash((self.depth, self.payoffs.tobytes()))

    def __repr__(self):
        body = self.bitstring() if self.depth <= 6 else f"<{self.payoffs.size} leaves>"
        return f"GameInstance(depth={self.depth}, payoffs={body})"

    def bitstring(self) -> str:
        return (self.payoffs + ord("0")).tobytes().decode("ascii")

    def flipped(self, leaves) -> "GameInstance":
        """Copy of the game with the given leaf payoffs inverted."""
        arr = self.payoffs.copy()
        idx = np.asarray(list(leaves), dtype=np.int64)
        arr[idx] ^= 1
        return GameInstance(self.depth, arr)


@dataclass(frozen=True)
class SampleSpec:
    depth: int
    p: float
    seed: int
    sample_index: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.depth < 0:
            raise ValueError("depth must be non-negative")
        if not (0 <= self.seed <= MASK64 and 0 <= self.sample_index <= MASK64):
            raise ValueError("seed and sample_index must be unsigned 64-bit integers")


def mover_at_height(h: int) -> Player:
    """Player to move at a node ``h`` levels above the leaves."""
    if h < 1:
        raise ValueError(f"leaves (height 0) have no mover; got height {h}")
    return Player.PLAYER2 if h & 1 else Player.PLAYER1


def value(game: GameInstance) -> int:
    """Minimax value of the game: 1 if Player 1 wins."""
    a = game.payoffs
    for h in range(1, game.depth + 1):
        pairs = a.reshape(-1, 2)
        a = pairs.min(axis=1) if h & 1 else pairs.max(axis=1)
    return int(a[0])


def _mix64(z: int) -> int:
    z ^= z >> 30
    z = (z * 0xBF58476D1CE4E5B9) & MASK64
    z ^= z >> 27
    z = (z * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def sample_key(seed: int, sample_index: int) -> int:
    return _mix64((seed + (sample_index + 1) * GAMMA) & MASK64)


def leaf_payoff(spec: SampleSpec, leaf_index: int) -> int:
    """Payoff of one leaf of the game described by ``spec``.

    A pure function of its inputs.  Each sample gets its own key
    ``mix(seed + (sample_index + 1) * GAMMA)``; leaf ``i`` is then
    ``mix(key + (i + 1) * GAMMA)`` and pays 1 when its top 53 bits, read
    as a fraction of 2**53, fall below ``p``.  Keying samples through the
    mixer keeps the leaf streams of different samples from overlapping.
    """
    if spec.depth <= 64 and not 0 <= leaf_index < 1 << spec.depth:
        raise ValueError(f"leaf index {leaf_index} out of range for depth {spec.depth}")
    key = sample_key(spec.seed, spec.sample_index)
    v = (key + (leaf_index + 1) * GAMMA) & MASK64
    u = (_mix64(v) >> 11) / float(1 << 53)
    return 1 if u < spec.p else 0


def sample_game(spec: SampleSpec) -> GameInstance:
    if spec.depth > MAX_MATERIALIZED_DEPTH:
        raise ValueError(
            f"depth {spec.depth} exceeds MAX_MATERIALIZED_DEPTH={MAX_MATERIALIZED_DEPTH}; "
            "use value_streamed instead"
        )
    bits = kernels.sample_leaves(spec.seed, spec.sample_index, spec.depth, float(spec.p))
    bits.flags.writeable = False
    return GameInstance(spec.depth, bits)


def value_streamed(spec: SampleSpec) -> int:
    """Value of the sampled game without materializing its leaves.

    Evaluates the tree depth first with short-circuiting (a left child equal
    to the mover's preferred value decides the node), so memory is O(depth).
    """
    if spec.depth > MAX_STREAM_DEPTH:
        raise ValueError(f"leaf indices are 64-bit; depth must be <= {MAX_STREAM_DEPTH}")
    return int(kernels.streamed_value(spec.seed, spec.sample_index, spec.depth, float(spec.p)))


# --- game file formats -------------------------------------------------------


def to_text(game: GameInstance) -> str:
    return f"{TEXT_MAGIC} depth={game.depth}\n{game.bitstring()}\n"


def to_binary(game: GameInstance) -> bytes:
    header = BINARY_MAGIC + bytes([BINARY_VERSION, game.depth])
    return header + np.packbits(game.payoffs, bitorder="little").tobytes()


def parse_text(data: bytes) -> GameInstance:
    nl = data.find(b"\n")
    if nl < 0:
        raise GameFormatError("missing newline after header", len(data))
    header = data[:nl].rstrip(b"\r").decode("ascii", errors="replace")
    prefix = TEXT_MAGIC + " depth="
    if not header.startswith(prefix):
        raise GameFormatError(f"bad header {header!r}, expected '{prefix}<n>'", 0)
    try:
        depth = int(header[len(prefix):])
    except ValueError:
        raise GameFormatError(f"bad depth in header {header!r}", len(prefix)) from None
    if not 0 <= depth <= MAX_MATERIALIZED_DEPTH:
        raise GameFormatError(f"depth {depth} out of range", len(prefix))
    start = nl + 1
    end = data.find(b"\n", start)
    if end < 0:
        raise GameFormatError("payload line must be newline-terminated", len(data))
    body = data[start:end].rstrip(b"\r")
    n = 1 << depth
    if len(body) != n:
        raise GameFormatError(f"expected {n} payoff characters, found {len(body)}", start + min(len(body), n))
    arr = np.frombuffer(body, dtype=np.uint8) - ord("0")
    bad = np.flatnonzero(arr > 1)
    if bad.size:
        raise GameFormatError(f"invalid payoff character {body[bad[0]:bad[0] + 1]!r}", start + int(bad[0]))
    if data[end + 1:].strip():
        raise GameFormatError("trailing data after payload", end + 1)
    return GameInstance(depth, arr)


def parse_binary(data: bytes) -> GameInstance:
    if data[:4] != BINARY_MAGIC:
        raise GameFormatError(f"bad magic {data[:4]!r}, expected {BINARY_MAGIC!r}", 0)
    if len(data) < 6:
        raise GameFormatError("truncated header", len(data))
    if data[4] != BINARY_VERSION:
        raise GameFormatError(f"unsupported version {data[4]}", 4)
    depth = data[5]
    if depth > MAX_MATERIALIZED_DEPTH:
        raise GameFormatError(f"depth {depth} out of range", 5)
    n = 1 << depth
    nbytes = (n + 7) // 8
    payload = data[6:]
    if len(payload) != nbytes:
        raise GameFormatError(f"expected {nbytes} payload bytes, found {len(payload)}", 6 + min(len(payload), nbytes))
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8), bitorder="little")[:n]
    return GameInstance(depth, bits)


def parse_game(data: bytes) -> GameInstance:
    """Parse either game format, detected from the leading magic bytes."""
    if data[:4] == BINARY_MAGIC:
        return parse_binary(data)
    return parse_text(data)


def read_game(path) -> GameInstance:
    return parse_game(Path(path).read_bytes())


def write_game(game: GameInstance, path, binary: bool = False) -> None:
    data = to_binary(game) if binary else to_text(game).encode("ascii")
    Path(path).write_bytes(data)
