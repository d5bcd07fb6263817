"""Exactly uniform sorting-network sampling and batch orchestration.

A sample is hook-walk SYT sampling composed with the inverse
Edelman-Greene map: uniform tableau x bijection = uniform network, with
no rejection or mixing-time caveats.  Batches are deterministic given
(n, count, seed) regardless of the worker count: sample index i always
uses the stream derived from (seed, i).
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import SortingNetwork, write_network
from .eg import _eg_inverse_kernel, eg_inverse_from_positions
from .rng import Stream, stream_state_nb
from .tableau import _hook_walk_fill, hook_walk_positions

MANIFEST_VERSION = "sortnet-batch v1"


def sample_uniform(n: int, stream: Stream) -> SortingNetwork:
    """One exactly uniform n-element sorting network."""
    row_of, col_of = hook_walk_positions(n, stream)
    seq = eg_inverse_from_positions(n, row_of, col_of)
    return SortingNetwork(seq)  # validates: must sort id -> reverse


@njit(cache=True)
def _sample_words_kernel(n, count, seed):
    N = n * (n - 1) // 2
    out = np.empty((count, N), dtype=np.int32)
    ok_all = True
    for i in range(count):
        state = stream_state_nb(seed, i)
        row_of, col_of, state = _hook_walk_fill(n, state)
        word, ok = _eg_inverse_kernel(n, row_of, col_of)
        ok_all = ok_all and ok == 1
        out[i] = word
    return out, ok_all


def sample_words(n: int, count: int, seed: int) -> np.ndarray:
    """Batched fast path: (count, N) array of uniform network words.

    Row i equals ``sample_uniform(n, Stream(seed, i)).word`` (same streams,
    same algorithm); skips per-sample object construction, so use it for
    high-volume small-n statistics.
    """
    words, ok = _sample_words_kernel(n, count, np.uint64(seed % (1 << 64)))
    if not ok:
        raise AssertionError("inverse insertion reached an inconsistent state")
    return words


def _sample_index(args) -> SortingNetwork:
    n, seed, index = args
    return sample_uniform(n, Stream(seed, index))


def sample_batch(n: int, count: int, seed: int, workers: int = 1) -> list[SortingNetwork]:
    """count uniform networks, ordered by sample index.

    Output depends only on (n, count, seed); workers > 1 parallelizes
    across indices without changing the result.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    jobs = [(n, seed, i) for i in range(count)]
    if workers <= 1:
        return [_sample_index(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sample_index, jobs, chunksize=max(1, count // (4 * workers))))


def iter_batch(n: int, count: int, seed: int):
    """Streaming variant: yields networks one at a time (memory-capped)."""
    for i in range(count):
        yield sample_uniform(n, Stream(seed, i))


@dataclass(frozen=True)
class BatchManifest:
    n: int
    count: int
    seed: int
    format_version: str
    files: tuple[str, ...]


def write_batch(out_dir: str, n: int, count: int, seed: int) -> BatchManifest:
    """Sample a batch to disk incrementally: one file per network + manifest."""
    os.makedirs(out_dir, exist_ok=True)
    width = max(6, len(str(count - 1)))
    files = []
    for i, net in enumerate(iter_batch(n, count, seed)):
        name = f"net_{i:0{width}d}.txt"
        write_network(os.path.join(out_dir, name), net)
        files.append(name)
    manifest = BatchManifest(
        n=n, count=count, seed=seed,
        format_version=MANIFEST_VERSION, files=tuple(files),
    )
    from . import __version__  # deferred: the package re-exports this module

    with open(os.path.join(out_dir, "manifest.json"), "w") as fh:
        json.dump(
            {
                "n": manifest.n,
                "count": manifest.count,
                "seed": manifest.seed,
                "format_version": manifest.format_version,
                "code_version": __version__,
                "files": list(manifest.files),
            },
            fh,
            indent=2,
        )
        fh.write("\n")
    return manifest
