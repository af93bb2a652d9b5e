"""Rank over GF(2) on bit-packed rows."""

import logging
from typing import Sequence

import numpy as np


logger = logging.getLogger(__name__)

WORD = 64


def pack_rows(rows: Sequence[Sequence[int]], n_cols: int) -> np.ndarray:
    """0/1 rows -> array of shape (len(rows), words) of little-endian uint64 words."""
    width = max(1, (n_cols + WORD - 1) // WORD) * WORD
    dense = np.zeros((len(rows), width), dtype=np.uint8)
    if len(rows) and n_cols:
        dense[:, :n_cols] = np.asarray(rows, dtype=np.uint8).reshape(len(rows), n_cols) % 2
    return np.packbits(dense, axis=-1, bitorder="little").view(np.uint64)


def packed_rank(packed: np.ndarray, n_cols: int) -> int:
    """Row-reduce packed rows in place, XOR-ing whole words, and return the rank."""
    n_rows = packed.shape[0]
    rank = 0
    for col in range(n_cols):
        if rank == n_rows:
            break
        word, bit = divmod(col, WORD)
        bits = (packed[rank:, word] >> np.uint64(bit)) & np.uint64(1)
        hits = np.nonzero(bits)[0]
        if not len(hits):
            continue
        pivot = rank + hits[0]
        if pivot != rank:
            packed[[rank, pivot]] = packed[[pivot, rank]]
        below = rank + hits[1:]
        if len(below):
            packed[below] ^= packed[rank]
        rank += 1
    return rank


def f2_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over GF(2) of a rectangular 0/1 matrix given by rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    n_cols = len(rows[0])
    if any(len(r) != n_cols for r in rows):
        logger.error("Ragged matrix with row lengths %s", sorted({len(r) for r in rows}))
        raise ValueError("f2_rank needs a rectangular matrix")
    return packed_rank(pack_rows(rows, n_cols), n_cols)
