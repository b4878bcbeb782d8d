"""Vectorized evaluation of operator words over one or many spaces.

Tables have shape ``(S, N)``: one row per space, one column per subset code,
all spaces sharing the same point count.  Composition is a gather along the
last axis.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .catalog import tokens


def _dtype_for(n: int) -> type:
    return np.uint16 if n <= 16 else np.uint32


class WordEngine:
    """Caches word tables for a batch of closure tables of equal size."""

    def __init__(self, closures: np.ndarray, n: int):
        closures = np.asarray(closures)
        if closures.ndim == 1:
            closures = closures[None, :]
        dtype = _dtype_for(n)
        self.n = n
        self.size = 1 << n
        self.full = self.size - 1
        self.spaces = closures.shape[0]
        self.identity = np.broadcast_to(np.arange(self.size, dtype=dtype), closures.shape)
        b = closures.astype(dtype, copy=False)
        a = (self.full ^ self.identity).astype(dtype)
        ba = gather(b, a)
        self._cache: dict[str, np.ndarray] = {
            "id": self.identity,
            "a": a,
            "b": b,
            "i": (self.full ^ ba).astype(dtype),
            "f": b & ba,
            "g": self.identity & ba,
            "0": np.zeros_like(b),
            "1": np.full_like(b, self.full),
        }

    def table(self, word: str) -> np.ndarray:
        """Table of ``word`` (evaluated right to left)."""
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        toks = tokens(word)
        if len(toks) == 1:
            raise KeyError(word)
        if toks[0] in ("0", "1"):
            return self._cache[toks[0]]
        # split off the leftmost letter and reuse the cached suffix
        result = gather(self._cache[toks[0]], self.table(word[1:]))
        self._cache[word] = result
        return result

    def apply(self, word: str, values: np.ndarray) -> np.ndarray:
        """Apply ``word`` to a value array of shape ``(S, M)``."""
        return gather(self.table(word), values)

    def stack(self, words: Sequence[str]) -> np.ndarray:
        """Tables of several words, shape ``(len(words), S, N)``."""
        return np.stack([self.table(w) for w in words])


def gather(outer: np.ndarray, inner: np.ndarray) -> np.ndarray:
    """Row-wise composition ``outer[s][inner[s][x]]``."""
    if outer.shape[0] == 1 and inner.shape[0] == 1:
        return outer[0][inner[0]][None, :]
    return np.take_along_axis(outer, inner, axis=1)


def distinct_counts(values: np.ndarray) -> np.ndarray:
    """Number of distinct entries along axis 0 of a ``(W, ...)`` array."""
    ordered = np.sort(values, axis=0)
    return 1 + (np.diff(ordered, axis=0) != 0).sum(axis=0)


def pair_indices(count: int, ordered: bool = False) -> tuple[np.ndarray, np.ndarray]:
    if ordered:
        left, right = np.nonzero(~np.eye(count, dtype=bool))
    else:
        left, right = np.triu_indices(count, k=1)
    return left, right


def _accumulate(flat: np.ndarray, left: np.ndarray, right: np.ndarray, relation: str) -> np.ndarray:
    # packs one flag per pair into uint64 words, one row per column of ``flat``
    words = np.zeros(((len(left) + 63) // 64, flat.shape[1]), dtype=np.uint64)
    for k, (p, q) in enumerate(zip(left, right)):
        if relation == "eq":
            flag = flat[p] == flat[q]
        else:
            flag = (flat[p] & ~flat[q]) == 0
        words[k >> 6] |= flag.astype(np.uint64) << np.uint64(k & 63)
    return np.ascontiguousarray(words.T).view(np.uint8)


def equality_bits(values: np.ndarray) -> np.ndarray:
    """Packed equality pattern of ``(W, ...)`` values; one byte row per trailing index."""
    left, right = pair_indices(values.shape[0])
    return _accumulate(values.reshape(values.shape[0], -1), left, right, "eq")


def inclusion_bits(values: np.ndarray) -> np.ndarray:
    """Packed inclusion pattern (``v[p] within v[q]`` for ordered ``p != q``)."""
    left, right = pair_indices(values.shape[0], ordered=True)
    return _accumulate(values.reshape(values.shape[0], -1), left, right, "inc")


def unique_rows(rows: np.ndarray) -> set[bytes]:
    if rows.size == 0:
        return set()
    view = np.ascontiguousarray(rows).view(np.dtype((np.void, rows.shape[1])))
    return {bytes(v) for v in np.unique(view)}


def batches(items: Sequence, size: int) -> Iterable[Sequence]:
    for start in range(0, len(items), size):
        yield items[start : start + size]
