"""Vectorized class counting over all trees with ``n`` leaves.

Depth data for every tree of a given size is held as two ``uint8`` matrices
(one row per tree, rows in :func:`assocspec.trees.enumerate_trees` order).
Counting maps each row to per-leaf coset tokens, packs the tokens exactly
into ``uint64`` words and counts distinct rows.  No hashing is involved, so
the counts are exact.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache
from itertools import islice
from typing import Iterator, Optional

import numpy as np

from .grids import Grid
from .trees import DEFAULT_MAX_LEAVES, GuardExceeded

_CACHE_LIMIT = 15


def _combine(left: tuple[np.ndarray, np.ndarray],
             right: tuple[np.ndarray, np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    lld, lrd = left
    rld, rrd = right
    nl, nr = len(lld), len(rld)
    ld = np.concatenate([np.repeat(lld + 1, nr, axis=0), np.tile(rld, (nl, 1))], axis=1)
    rd = np.concatenate([np.repeat(lrd, nr, axis=0), np.tile(rrd + 1, (nl, 1))], axis=1)
    return ld, rd


@lru_cache(maxsize=None)
def _cached_depths(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n == 1:
        z = np.zeros((1, 1), dtype=np.uint8)
        return z, z
    parts = [_combine(_cached_depths(k), _cached_depths(n - k)) for k in range(1, n)]
    ld = np.concatenate([p[0] for p in parts])
    rd = np.concatenate([p[1] for p in parts])
    ld.setflags(write=False)
    rd.setflags(write=False)
    return ld, rd


def depth_partitions(n: int) -> Iterator[tuple[int, np.ndarray, np.ndarray]]:
    """Yield ``(left_size, ld, rd)`` blocks covering all trees with ``n`` leaves."""
    if n == 1:
        ld, rd = _cached_depths(1)
        yield 0, ld, rd
        return
    for k in range(1, n):
        if n - k > _CACHE_LIMIT or k > _CACHE_LIMIT:
            raise GuardExceeded(f"n={n} too large for the depth cache")
        ld, rd = _combine(_cached_depths(k), _cached_depths(n - k))
        yield k, ld, rd


def depth_matrices(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n <= _CACHE_LIMIT:
        return _cached_depths(n)
    blocks = list(depth_partitions(n))
    return (np.concatenate([b[1] for b in blocks]), np.concatenate([b[2] for b in blocks]))


def grid_tokens(ld: np.ndarray, rd: np.ndarray, grid: Optional[Grid]) -> tuple[np.ndarray, int]:
    """Per-leaf coset tokens and their radix; ``grid=None`` means tree equality."""
    if grid is None or grid.dim < 2:
        # a tree is determined by its left depths
        return ld.astype(np.int64), int(ld.shape[1]) if ld.size else 1
    u, v, w = grid.u, grid.v, grid.w
    r = ld.astype(np.int64)
    s = rd.astype(np.int64)
    s0 = s % v
    k = s // v
    r0 = (r - k * u) % w
    return r0 * v + s0, v * w


def pack_rows(tokens: np.ndarray, radix: int) -> np.ndarray:
    """Pack each row of small nonnegative ints into ``uint64`` words exactly."""
    n = tokens.shape[1]
    if radix <= 1:
        return np.zeros((len(tokens), 1), dtype=np.uint64)
    per_word = 1
    while radix ** (per_word + 1) < 2 ** 64:
        per_word += 1
    words = []
    for start in range(0, n, per_word):
        acc = np.zeros(len(tokens), dtype=np.uint64)
        for col in range(start, min(n, start + per_word)):
            acc = acc * np.uint64(radix) + tokens[:, col].astype(np.uint64)
        words.append(acc)
    return np.stack(words, axis=1)


def unique_rows(words: np.ndarray) -> np.ndarray:
    if words.shape[1] == 1:
        return np.unique(words[:, 0])[:, None]
    return np.unique(words, axis=0)


def _block_keys(args) -> np.ndarray:
    ld, rd, grid = args
    tokens, radix = grid_tokens(ld, rd, grid)
    return unique_rows(pack_rows(tokens, radix))


def default_threads() -> int:
    return os.cpu_count() or 1


def count_grid_classes(n: int, grid: Optional[Grid], threads: int = 1,
                       max_leaves: int = DEFAULT_MAX_LEAVES) -> int:
    """Number of classes of trees with ``n`` leaves under coset-key equality."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > max_leaves:
        raise GuardExceeded(f"n={n} exceeds leaf guard {max_leaves}")
    blocks = ((ld, rd, grid) for _, ld, rd in depth_partitions(n))
    keys: list[np.ndarray] = []
    if threads > 1:
        # bounded window so at most `threads` blocks are materialized at once
        with ThreadPoolExecutor(max_workers=threads) as pool:
            while batch := list(islice(blocks, threads)):
                keys.extend(pool.map(_block_keys, batch))
    else:
        keys = [_block_keys(b) for b in blocks]
    return int(len(unique_rows(np.concatenate(keys))))


def class_ids(n: int, grid: Optional[Grid]) -> np.ndarray:
    """Class label per tree (in enumeration order), labels by first occurrence."""
    ld, rd = depth_matrices(n)
    tokens, radix = grid_tokens(ld, rd, grid)
    words = pack_rows(tokens, radix)
    _, first, inverse = np.unique(words, axis=0, return_index=True, return_inverse=True)
    order = np.argsort(first, kind="stable")
    relabel = np.empty_like(order)
    relabel[order] = np.arange(len(order))
    return relabel[inverse.reshape(-1)]
