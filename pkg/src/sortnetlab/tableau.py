"""Staircase Young diagrams: hook lengths, exact counting, uniform sampling.

The staircase shape for n particles has row lengths (n-1, n-2, ..., 1) and
N = n(n-1)/2 cells.  Standard Young tableaux (SYT) of this shape biject
with n-element sorting networks, so an exactly uniform SYT sampler (the
Greene-Nijenhuis-Wilf hook walk) is the substrate of the network sampler.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .rng import Stream, rand_below


@dataclass(frozen=True)
class StaircaseShape:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("staircase shape needs n >= 2")

    @property
    def row_lengths(self) -> tuple[int, ...]:
        return tuple(range(self.n - 1, 0, -1))

    @property
    def ncells(self) -> int:
        return self.n * (self.n - 1) // 2


@dataclass(frozen=True)
class StaircaseTableau:
    """A filling of the staircase; rows[r][c] is the entry at (r, c), 0-based."""

    shape: StaircaseShape
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        want = self.shape.row_lengths
        got = tuple(len(r) for r in self.rows)
        if got != want:
            raise ValueError(f"row lengths {got} do not match staircase {want}")

    def entry_positions(self) -> tuple[np.ndarray, np.ndarray]:
        """Arrays (row_of, col_of): 0-based cell of each value 1..N."""
        N = self.shape.ncells
        row_of = np.empty(N, dtype=np.int32)
        col_of = np.empty(N, dtype=np.int32)
        for r, row in enumerate(self.rows):
            for c, v in enumerate(row):
                row_of[v - 1] = r
                col_of[v - 1] = c
        return row_of, col_of

    def to_debug_string(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows)


def hook_lengths(shape: StaircaseShape) -> list[list[int]]:
    """hook(r, c) = arm + leg + 1; for the staircase this is 2(n-1-r-c) - 1."""
    rl = shape.row_lengths
    heights = [sum(1 for r in rl if r > c) for c in range(rl[0])]
    return [
        [(rl[r] - c - 1) + (heights[c] - r - 1) + 1 for c in range(rl[r])]
        for r in range(len(rl))
    ]


def count_syt(shape: StaircaseShape) -> int:
    """Number of SYT by the hook length formula, exact big-integer arithmetic."""
    N = shape.ncells
    denom = 1
    for row in hook_lengths(shape):
        for h in row:
            denom *= h
    num = math.factorial(N)
    assert num % denom == 0
    return num // denom


def validate_syt(t: StaircaseTableau) -> bool:
    """True iff entries are a bijection onto 1..N and rows/columns increase."""
    N = t.shape.ncells
    seen = set()
    for row in t.rows:
        for v in row:
            if not (isinstance(v, (int, np.integer)) and 1 <= v <= N):
                return False
            seen.add(int(v))
    if len(seen) != N:
        return False
    for row in t.rows:
        if any(row[c] >= row[c + 1] for c in range(len(row) - 1)):
            return False
    for r in range(len(t.rows) - 1):
        upper, lower = t.rows[r], t.rows[r + 1]
        if any(upper[c] >= lower[c] for c in range(len(lower))):
            return False
    return True


@njit(cache=True)
def _hook_walk_fill(n, state):
    """GNW hook walk on the staircase: uniform SYT as (row_of, col_of) arrays.

    For m = N down to 1: pick a uniform cell of the remaining diagram, then
    repeatedly jump to a uniform cell strictly inside the current hook
    (arm or leg, current cell excluded) until at a corner; place m there
    and delete the corner.  Exactly uniform over SYT of the shape.
    """
    N = n * (n - 1) // 2
    nr = n - 1
    rowlen = np.empty(nr, dtype=np.int64)
    colht = np.empty(nr, dtype=np.int64)
    for r in range(nr):
        rowlen[r] = nr - r
        colht[r] = nr - r
    # flat list of remaining cells, for O(1) uniform picks
    cell_r = np.empty(N, dtype=np.int32)
    cell_c = np.empty(N, dtype=np.int32)
    idx_of = np.full((nr, nr), -1, dtype=np.int64)
    k = 0
    for r in range(nr):
        for c in range(nr - r):
            cell_r[k] = r
            cell_c[k] = c
            idx_of[r, c] = k
            k += 1
    row_of = np.empty(N, dtype=np.int32)
    col_of = np.empty(N, dtype=np.int32)
    for m in range(N, 0, -1):
        state, u = rand_below(state, m)
        r = np.int64(cell_r[u])
        c = np.int64(cell_c[u])
        while True:
            arm = rowlen[r] - c - 1
            leg = colht[c] - r - 1
            if arm + leg == 0:
                break
            state, j = rand_below(state, arm + leg)
            if j < arm:
                c = c + 1 + j
            else:
                r = r + 1 + (j - arm)
        row_of[m - 1] = r
        col_of[m - 1] = c
        rowlen[r] -= 1
        colht[c] -= 1
        # remove corner from the remaining-cell list: swap with slot m-1
        i = idx_of[r, c]
        lr, lc = cell_r[m - 1], cell_c[m - 1]
        cell_r[i] = lr
        cell_c[i] = lc
        idx_of[lr, lc] = i
    return row_of, col_of, state


def hook_walk_positions(n: int, stream: Stream) -> tuple[np.ndarray, np.ndarray]:
    """Fast path: uniform staircase SYT as value -> (row, col) arrays."""
    row_of, col_of, state = _hook_walk_fill(n, stream.state)
    stream.state = np.uint64(state)
    return row_of, col_of


def tableau_from_positions(n: int, row_of, col_of) -> StaircaseTableau:
    shape = StaircaseShape(n)
    rows = [[0] * ln for ln in shape.row_lengths]
    for v, (r, c) in enumerate(zip(row_of, col_of), start=1):
        rows[r][c] = v
    return StaircaseTableau(shape, tuple(tuple(row) for row in rows))


def hook_walk_sample(shape: StaircaseShape, stream: Stream) -> StaircaseTableau:
    """Exactly uniform SYT of the staircase shape."""
    row_of, col_of = hook_walk_positions(shape.n, stream)
    return tableau_from_positions(shape.n, row_of, col_of)


def enumerate_syt(shape: StaircaseShape) -> list[StaircaseTableau]:
    """All SYT of the shape by DFS (oracle for counting/uniformity tests)."""
    rl = shape.row_lengths
    N = shape.ncells
    rows = [[0] * ln for ln in rl]
    fill = [0] * len(rl)  # cells placed so far in each row
    out: list[StaircaseTableau] = []

    def dfs(v: int):
        if v > N:
            out.append(StaircaseTableau(shape, tuple(tuple(r) for r in rows)))
            return
        for r in range(len(rl)):
            c = fill[r]
            if c >= rl[r]:
                continue
            if r > 0 and fill[r - 1] <= c:
                continue  # cell above must already be filled
            rows[r][c] = v
            fill[r] += 1
            dfs(v + 1)
            fill[r] -= 1
        return

    dfs(1)
    return out
