"""Deterministic seeding and uniform variates built on splitmix64.

Every random quantity in this package is a pure function of a 64-bit
seed.  Parallel work never shares a generator: a *stream* is carved out
of a master seed by

    stream_seed(master, i) = mix64(master ^ ((i + 1) * GOLDEN))

where ``mix64`` is the splitmix64 finalizer and ``GOLDEN`` is the 64-bit
golden-ratio constant.  A stream with seed ``s`` then emits the words

    w_t = mix64(s + t * GOLDEN),   t = 1, 2, ...

and uniforms in [0, 1) are the top 53 bits of each word.  The same seed
gives the same draws everywhere, and replicate ``r`` of a Monte Carlo
run depends only on ``(master, r)``, so any worker partition of the
replicates reproduces the sequential result exactly.
"""

from __future__ import annotations

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
GOLDEN = 0x9E3779B97F4A7C15

_U64 = np.uint64
_G = _U64(GOLDEN)
_MUL1 = _U64(0xBF58476D1CE4E5B9)
_MUL2 = _U64(0x94D049BB133111EB)
_S30 = _U64(30)
_S27 = _U64(27)
_S31 = _U64(31)
_S11 = _U64(11)
_TO_UNIT = 2.0 ** -53


def mix64(z: int) -> int:
    """splitmix64 finalizer: a 64-bit bijective scrambler."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def stream_seed(master: int, index: int) -> int:
    """Seed of stream ``index`` (0-based) derived from ``master``."""
    return mix64((master ^ ((index + 1) * GOLDEN)) & MASK64)


def _mix64_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _S30)) * _MUL1
    z = (z ^ (z >> _S27)) * _MUL2
    return z ^ (z >> _S31)


def stream_seed_array(master: int, indices: np.ndarray) -> np.ndarray:
    """Vector version of :func:`stream_seed`; returns uint64 seeds."""
    idx = np.asarray(indices, dtype=np.uint64)
    return _mix64_array(_U64(master & MASK64) ^ ((idx + _U64(1)) * _G))


def uniform_block(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Uniforms w_{offset+1} .. w_{offset+count} of the stream ``seed``.

    Blocks taken at increasing offsets tile the stream exactly, which lets
    large scans (e.g. all vertex pairs of a random graph) run in constant
    memory without changing a single draw.
    """
    t = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    z = _mix64_array(_U64(seed & MASK64) + t * _G)
    return (z >> _S11).astype(np.float64) * _TO_UNIT


def uniform_matrix(seeds: np.ndarray, count: int) -> np.ndarray:
    """Row ``r`` holds the first ``count`` uniforms of stream ``seeds[r]``."""
    s = np.asarray(seeds, dtype=np.uint64)
    t = np.arange(1, count + 1, dtype=np.uint64)
    z = _mix64_array(s[:, None] + t[None, :] * _G)
    return (z >> _S11).astype(np.float64) * _TO_UNIT


class SplitMix64:
    """Sequential view of a stream, for inherently serial algorithms.

    ``uniforms(k)`` consumes exactly the same k words that k calls of
    ``uniform()`` would, so vectorized and scalar consumers can share a
    stream deterministically.
    """

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN) & MASK64
        return mix64(self._state)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * _TO_UNIT

    def uniforms(self, count: int) -> np.ndarray:
        out = uniform_block(self._state, count)
        self._state = (self._state + count * GOLDEN) & MASK64
        return out

    def randbelow(self, bound: int) -> int:
        # Modulo reduction; the bias is < bound / 2**64, far below any
        # tolerance used in this package.
        if bound <= 0:
            raise ValueError("bound must be positive")
        return self.next_u64() % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.randbelow(i + 1)
            items[i], items[j] = items[j], items[i]

    def sample_indices(self, count: int, population: int) -> list[int]:
        """``count`` distinct integers from range(population), partial Fisher-Yates."""
        if count > population:
            raise ValueError("sample larger than population")
        pool = list(range(population))
        for i in range(count):
            j = i + self.randbelow(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:count]
