"""Swap-sequence mechanics: application, validation, scalings, symmetries.

A swap sequence for ``n`` particles is a word ``(k_1, ..., k_N)`` with
``N = n(n-1)/2`` and each ``k_i`` in ``{1, ..., n-1}``: at step ``i`` the
particles occupying positions ``k_i`` and ``k_i + 1`` are exchanged.
A sorting network is a swap sequence that carries ``1 2 ... n`` to
``n ... 2 1``; equivalently, every unordered pair of particles swaps
exactly once.

Words are applied left to right to positions (the wiring-diagram reading).
This convention is fixed here once and used everywhere in the package.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np
from numba import njit

MAX_N = 100_000


class ValidationError(ValueError):
    """A swap sequence or network failed a structural check."""


def _as_word(swaps) -> np.ndarray:
    w = np.asarray(swaps, dtype=np.int32)
    if w.ndim != 1:
        raise ValidationError("swap word must be one-dimensional")
    w = w.copy()
    w.setflags(write=False)
    return w


@dataclass(frozen=True)
class SwapSequence:
    """A structurally valid word: correct length, entries in range."""

    n: int
    word: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 2 <= self.n <= MAX_N:
            raise ValidationError(f"n={self.n} out of supported range [2, {MAX_N}]")
        object.__setattr__(self, "word", _as_word(self.word))
        N = self.n * (self.n - 1) // 2
        if len(self.word) != N:
            raise ValidationError(
                f"word has length {len(self.word)}, expected n(n-1)/2 = {N}"
            )
        if len(self.word) and (self.word.min() < 1 or self.word.max() > self.n - 1):
            raise ValidationError("word entries must lie in {1, ..., n-1}")

    @property
    def N(self) -> int:
        return self.n * (self.n - 1) // 2

    def __len__(self):
        return len(self.word)

    def __eq__(self, other):
        return (
            isinstance(other, SwapSequence)
            and self.n == other.n
            and np.array_equal(self.word, other.word)
        )

    def __hash__(self):
        return hash((self.n, self.word.tobytes()))


@njit(cache=True)
def _positions_at(n, word, snaps):
    """Positions of every particle at each requested swap index.

    snaps: sorted (ascending, duplicates allowed) indices in [0, N].
    Returns an array of shape (len(snaps), n); row s column x-1 is the
    position of particle x after snaps[s] swaps.
    """
    pos = np.arange(1, n + 1, dtype=np.int32)  # particle -> position
    arr = np.arange(1, n + 1, dtype=np.int32)  # position -> particle
    out = np.empty((len(snaps), n), dtype=np.int32)
    si = 0
    N = len(word)
    for j in range(N + 1):
        while si < len(snaps) and snaps[si] == j:
            out[si] = pos
            si += 1
        if j == N or si == len(snaps):
            break
        k = word[j]
        a = arr[k - 1]
        b = arr[k]
        arr[k - 1] = b
        arr[k] = a
        pos[a - 1] = k + 1
        pos[b - 1] = k
    return out


def positions_at(seq: SwapSequence, snaps) -> np.ndarray:
    """Incremental stepping: particle positions after each index in snaps."""
    snaps = np.asarray(snaps, dtype=np.int64)
    if len(snaps) and (snaps.min() < 0 or snaps.max() > seq.N):
        raise ValidationError("snapshot indices must lie in [0, N]")
    if np.any(np.diff(snaps) < 0):
        raise ValidationError("snapshot indices must be sorted ascending")
    return _positions_at(seq.n, seq.word, snaps)


def apply(seq: SwapSequence) -> np.ndarray:
    """Final positions of particles 1..n after the full word."""
    return positions_at(seq, [seq.N])[0]


def is_sorting_network(seq: SwapSequence) -> bool:
    """True iff the word carries the identity to the reverse permutation."""
    final = apply(seq)
    n = seq.n
    return bool(np.array_equal(final, np.arange(n, 0, -1, dtype=np.int32)))


def swapped_pairs(seq: SwapSequence) -> list[tuple[int, int]]:
    """The unordered particle pair exchanged at each step, in step order.

    A structurally valid word is a sorting network iff all N pairs are
    distinct (each pair crosses exactly once).
    """
    arr = list(range(1, seq.n + 1))
    pairs = []
    for k in seq.word:
        a, b = arr[k - 1], arr[k]
        pairs.append((min(a, b), max(a, b)))
        arr[k - 1], arr[k] = b, a
    return pairs


@dataclass(frozen=True)
class SortingNetwork:
    """A swap sequence verified to sort ``1..n`` to ``n..1``."""

    seq: SwapSequence

    def __post_init__(self):
        if not is_sorting_network(self.seq):
            raise ValidationError("word does not sort the identity to the reverse")

    @property
    def n(self) -> int:
        return self.seq.n

    @property
    def N(self) -> int:
        return self.seq.N

    @property
    def word(self) -> np.ndarray:
        return self.seq.word

    def __eq__(self, other):
        return isinstance(other, SortingNetwork) and self.seq == other.seq

    def __hash__(self):
        return hash(self.seq)


def network(n: int, swaps) -> SortingNetwork:
    return SortingNetwork(SwapSequence(n, swaps))


@dataclass(frozen=True)
class TrajectoryGrid:
    """Globally scaled trajectories sampled on a uniform time grid.

    positions[j, x-1] = 2 * sigma(x, floor(N*j/G)) / n - 1, so each row is a
    permutation of the scaled lattice {2i/n - 1 : i = 1..n}; row 0 is sorted
    ascending and row G descending.
    """

    n: int
    G: int
    positions: np.ndarray = field(repr=False)

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.G + 1) / self.G

    def particle(self, x: int) -> np.ndarray:
        """Scaled path of particle x (1-based) over the grid."""
        return self.positions[:, x - 1]


def global_trajectories(net: SortingNetwork, G: int) -> TrajectoryGrid:
    """Sample sigma_G(x, j/G) for j = 0..G, using swap index floor(N*j/G)."""
    if G < 1:
        raise ValidationError("grid size must be >= 1")
    N, n = net.N, net.n
    snaps = (N * np.arange(G + 1, dtype=np.int64)) // G
    raw = positions_at(net.seq, snaps)
    return TrajectoryGrid(n=n, G=G, positions=2.0 * raw / n - 1.0)


# ---------------------------------------------------------------------------
# Symmetries.  Each maps sorting networks to sorting networks bijectively.
# ---------------------------------------------------------------------------

def time_reverse(net: SortingNetwork) -> SortingNetwork:
    """(k_1, ..., k_N) -> (k_N, ..., k_1)."""
    return network(net.n, net.word[::-1])


def reflect(net: SortingNetwork) -> SortingNetwork:
    """(k_1, ..., k_N) -> (n - k_1, ..., n - k_N): left-right mirror."""
    return network(net.n, net.n - net.word)


def time_shift(net: SortingNetwork) -> SortingNetwork:
    """(k_1, ..., k_N) -> (k_2, ..., k_N, n - k_1).

    With 1-based swap positions the letter appended for the recycled first
    swap is n - k_1 (verified exhaustively at n = 3, 4: the map is a
    bijection on the network set and n + 1 - k_1 leaves the alphabet).
    """
    w = np.empty(net.N, dtype=np.int32)
    w[:-1] = net.word[1:]
    w[-1] = net.n - net.word[0]
    return network(net.n, w)


# ---------------------------------------------------------------------------
# Exhaustive enumeration (oracle for bijectivity / uniformity tests).
# ---------------------------------------------------------------------------

ENUMERATE_MAX_N = 6


def enumerate_all(n: int) -> list[SortingNetwork]:
    """All sorting networks of size n, by DFS over admissible swaps.

    A swap at position k is admissible iff the two particles there are
    still in original order (each pair must cross exactly once); any
    full-length admissible word is automatically a network.  Refuses
    n > 6 (the count grows superexponentially).
    """
    if n > ENUMERATE_MAX_N:
        raise ValidationError(
            f"enumerate_all supports n <= {ENUMERATE_MAX_N}; got n={n}"
        )
    N = n * (n - 1) // 2
    arr = list(range(1, n + 1))
    word: list[int] = []
    out: list[SortingNetwork] = []

    def dfs():
        if len(word) == N:
            out.append(network(n, word))
            return
        for k in range(1, n):
            if arr[k - 1] < arr[k]:
                arr[k - 1], arr[k] = arr[k], arr[k - 1]
                word.append(k)
                dfs()
                word.pop()
                arr[k - 1], arr[k] = arr[k], arr[k - 1]

    dfs()
    return out


# ---------------------------------------------------------------------------
# File formats.
# ---------------------------------------------------------------------------

FORMAT_VERSION = "sortnet v1"


def write_network(f, net: SortingNetwork) -> None:
    """Write the 'sortnet v1' text format: header line, then the word."""
    own = isinstance(f, (str,))
    fh = open(f, "w") if own else f
    try:
        fh.write(f"{FORMAT_VERSION} n={net.n}\n")
        fh.write(" ".join(str(int(k)) for k in net.word))
        fh.write("\n")
    finally:
        if own:
            fh.close()


def read_network(f) -> SortingNetwork:
    own = isinstance(f, (str,))
    fh = open(f) if own else f
    try:
        header = fh.readline().strip()
        if not header.startswith(FORMAT_VERSION + " n="):
            raise ValidationError(f"bad network header: {header!r}")
        n = int(header.split("n=", 1)[1])
        word = [int(tok) for tok in fh.read().split()]
        return network(n, word)
    finally:
        if own:
            fh.close()


def network_to_string(net: SortingNetwork) -> str:
    buf = io.StringIO()
    write_network(buf, net)
    return buf.getvalue()


def write_trajectory_csv(f, grid: TrajectoryGrid, particles=None, meta: str = "") -> None:
    """CSV dump with columns (particle, t, position_scaled)."""
    own = isinstance(f, (str,))
    fh = open(f, "w") if own else f
    try:
        if meta:
            fh.write(f"# {meta}\n")
        fh.write("particle,t,position_scaled\n")
        times = grid.times
        for x in particles if particles is not None else range(1, grid.n + 1):
            path = grid.particle(x)
            for t, y in zip(times, path):
                fh.write(f"{x},{t:.10g},{y:.10g}\n")
    finally:
        if own:
            fh.close()
