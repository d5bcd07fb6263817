"""Seedable, splittable counter-based random streams (splitmix64).

Every stochastic routine in the package consumes one of these streams.
Streams are derived from a ``(seed, index)`` pair by a fixed mixing rule,
so batch output is deterministic regardless of how work is distributed
across workers.  The njit helpers are consumed directly inside numba
kernels; the :class:`Stream` wrapper is the Python-side handle.
"""

from __future__ import annotations

import secrets

import numpy as np
from numba import njit

# splitmix64 constants (Steele, Lea, Flood 2014)
_PHI = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_STREAM = np.uint64(0xD1342543DE82EF95)

_U64 = np.uint64


@njit(cache=True)
def mix64(z):
    """splitmix64 finalizer: a bijective avalanche mix on uint64."""
    z = (z ^ (z >> _U64(30))) * _MIX1
    z = (z ^ (z >> _U64(27))) * _MIX2
    return z ^ (z >> _U64(31))


@njit(cache=True)
def next_u64(state):
    """Advance a splitmix64 state; returns (new_state, uniform uint64)."""
    state = state + _PHI
    return state, mix64(state)


@njit(cache=True)
def rand_below(state, bound):
    """Uniform integer in [0, bound) by masked rejection.

    Exactly uniform given uniform bits (no modulo bias); bound must be >= 1.
    Returns (new_state, value).
    """
    m = _U64(bound - 1)
    m |= m >> _U64(1)
    m |= m >> _U64(2)
    m |= m >> _U64(4)
    m |= m >> _U64(8)
    m |= m >> _U64(16)
    m |= m >> _U64(32)
    while True:
        state, v = next_u64(state)
        v = v & m
        if v < _U64(bound):
            return state, np.int64(v)


@njit(cache=True)
def stream_state_nb(seed, index):
    """njit twin of :func:`stream_state` (same frozen split rule)."""
    s = mix64(_U64(seed) + _PHI)
    return mix64(s ^ (_U64(index) * _STREAM + _PHI))


_M64 = (1 << 64) - 1


def _pymix(z: int) -> int:
    """Python-int clone of mix64 (wrapping arithmetic mod 2^64)."""
    z = (z ^ (z >> 30)) * int(_MIX1) & _M64
    z = (z ^ (z >> 27)) * int(_MIX2) & _M64
    return z ^ (z >> 31)


def stream_state(seed: int, index: int = 0) -> np.uint64:
    """Derive the initial state of stream ``index`` of a seeded family.

    Split rule (frozen): ``mix64(mix64(seed + PHI) ^ (index * STREAM + PHI))``.
    Distinct indices give decorrelated streams; the rule is pure arithmetic,
    so any worker can derive any stream without coordination.
    """
    s = _pymix((seed + int(_PHI)) & _M64)
    return np.uint64(_pymix(s ^ ((index * int(_STREAM) + int(_PHI)) & _M64)))


def entropy_seed() -> int:
    """Fresh 63-bit seed from the OS entropy pool."""
    return secrets.randbits(63)


class Stream:
    """Python-side handle on a (seed, index) random stream."""

    def __init__(self, seed: int, index: int = 0):
        self.seed = seed
        self.index = index
        self.state = stream_state(seed, index)

    def rand_below(self, bound: int) -> int:
        state, v = rand_below(self.state, bound)
        self.state = np.uint64(state)
        return int(v)

    def uniform(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        state, v = next_u64(self.state)
        self.state = np.uint64(state)
        return float(int(v) >> 11) * (2.0 ** -53)

    def __repr__(self):
        return f"Stream(seed={self.seed}, index={self.index})"
