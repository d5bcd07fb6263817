"""The Edelman-Greene correspondence between staircase SYT and networks.

``eg_insert`` runs Coxeter-Knuth insertion on a swap word; for a sorting
network the insertion tableau P is always the canonical staircase with
P(r, c) = r + c - 1 (1-based), so the recording tableau Q alone encodes
the word.  ``eg_inverse`` runs the reverse deletion starting from the
canonical P and is the workhorse of the uniform sampler.

The mechanics below (in particular the special bump rule when a row
contains both x and x+1) are pinned down by the exhaustive n <= 5
round-trip oracle in the test suite, which is the ground truth.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right

import numpy as np
from numba import njit

from .core import SwapSequence, ValidationError
from .tableau import StaircaseShape, StaircaseTableau, validate_syt


def canonical_p_rows(n: int) -> tuple[tuple[int, ...], ...]:
    """The canonical staircase insertion tableau: entry r + c + 1, 0-based."""
    return tuple(
        tuple(r + c + 1 for c in range(n - 1 - r)) for r in range(n - 1)
    )


def eg_insert(word: SwapSequence) -> tuple[tuple[tuple[int, ...], ...], StaircaseTableau]:
    """Coxeter-Knuth insert the word left to right; returns (P rows, Q).

    Inserting x into a row that contains both x and x+1 leaves the row
    unchanged and bumps x+1; otherwise the smallest entry greater than x
    is replaced and bumped.  Raises if the final P is not the canonical
    staircase (the word was not a reduced word of the reverse permutation).
    """
    n = word.n
    p: list[list[int]] = []
    q: list[list[int]] = []
    for step, letter in enumerate(word.word, start=1):
        x = int(letter)
        r = 0
        while True:
            if r == len(p):
                p.append([x])
                q.append([step])
                break
            row = p[r]
            i = bisect_right(row, x)
            if i == len(row):
                row.append(x)
                q[r].append(step)
                break
            y = row[i]
            if y == x + 1 and i > 0 and row[i - 1] == x:
                # row already contains x and x+1: row unchanged, bump x+1
                x = x + 1
            else:
                row[i] = x
                x = y
            r += 1
    p_rows = tuple(tuple(row) for row in p)
    if p_rows != canonical_p_rows(n):
        raise ValidationError("word is not a reduced word of the reverse permutation")
    q_tab = StaircaseTableau(StaircaseShape(n), tuple(tuple(row) for row in q))
    assert validate_syt(q_tab)
    return p_rows, q_tab


@njit(cache=True)
def _eg_inverse_kernel(n, row_of, col_of):
    """Reverse Coxeter-Knuth deletion from the canonical staircase P.

    row_of/col_of give the cell of each value 1..N in the recording
    tableau Q.  Returns (word, ok); ok = 0 flags an internal inconsistency
    (non-standard Q or implementation bug).
    """
    N = n * (n - 1) // 2
    nr = n - 1
    # P stored column-major and ragged: column c occupies coff[c] + (0..nr-1-c).
    # Bump paths run nearly vertically (the landing column barely moves from
    # row to row), so walking up a deletion path touches contiguous memory.
    coff = np.empty(nr, dtype=np.int64)
    plen = np.empty(nr, dtype=np.int64)
    acc = 0
    for c in range(nr):
        coff[c] = acc
        plen[c] = nr - c  # row lengths; staircase is self-conjugate
        acc += nr - c
    P = np.empty(N, dtype=np.int32)
    for c in range(nr):
        for r in range(nr - c):
            P[coff[c] + r] = r + c + 1
    word = np.empty(N, dtype=np.int32)
    for m in range(N, 0, -1):
        r = np.int64(row_of[m - 1])
        c = np.int64(col_of[m - 1])
        if c != plen[r] - 1:
            return word, 0  # cell of m must be a corner of the current shape
        v = np.int64(P[coff[c] + r])
        plen[r] -= 1
        j = c  # landing-column guess, refined by a short gallop per row
        for i in range(r - 1, -1, -1):
            # rightmost entry < v in the strictly increasing row i
            if j > plen[i] - 1:
                j = plen[i] - 1
            while j + 1 < plen[i] and P[coff[j + 1] + i] < v:
                j += 1
            while j >= 0 and P[coff[j] + i] >= v:
                j -= 1
            if j < 0:
                return word, 0
            u = np.int64(P[coff[j] + i])
            if u == v - 1 and j + 1 < plen[i] and P[coff[j + 1] + i] == v:
                v = v - 1  # row contains both v-1 and v: leave it unchanged
            else:
                P[coff[j] + i] = v
                v = u
        word[m - 1] = v
    return word, 1


def eg_inverse(q: StaircaseTableau) -> SwapSequence:
    """Inverse Edelman-Greene: recording tableau -> swap word.

    The letter expelled while deleting value m becomes word position m, so
    eg_insert(eg_inverse(Q)) recreates Q exactly.  The output is always a
    sorting network word.
    """
    if not validate_syt(q):
        raise ValidationError("not a standard staircase tableau")
    row_of, col_of = q.entry_positions()
    return eg_inverse_from_positions(q.shape.n, row_of, col_of)


def eg_inverse_from_positions(n: int, row_of, col_of) -> SwapSequence:
    """Fast path on value -> (row, col) arrays (no tableau object)."""
    word, ok = _eg_inverse_kernel(n, row_of, col_of)
    if not ok:
        raise AssertionError("reverse insertion reached an inconsistent state")
    return SwapSequence(n, word)
