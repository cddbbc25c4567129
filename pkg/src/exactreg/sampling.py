"""Long legal words as numpy arrays, occurrence prefix counts and window hashes."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .language import supertile_lengths
from .substitution import Substitution

_HASH_BASES = (np.uint64(0x9E3779B97F4A7C15), np.uint64(0xC2B2AE3D27D4EB4F))


def long_word(s: Substitution, min_len: int, letter: int = 0, truncate: bool = True) -> np.ndarray:
    """phi^N(letter) for the least N giving at least ``min_len`` letters.

    With ``truncate`` the result is cut to exactly ``min_len`` letters
    (a prefix of a legal word is legal).
    """
    n = 0
    while supertile_lengths(s, n)[letter] < min_len:
        n += 1
        if n > 200:
            raise ValueError("supertiles do not grow")
    flat = np.array([x for img in s.images for x in img], dtype=np.int32)
    img_len = np.array([len(img) for img in s.images], dtype=np.int64)
    img_start = np.concatenate(([0], np.cumsum(img_len)[:-1]))
    w = np.array([letter], dtype=np.int32)
    for _ in range(n):
        lens = img_len[w]
        total = int(lens.sum())
        block_start = np.repeat(np.cumsum(lens) - lens, lens)
        offset = np.arange(total, dtype=np.int64) - block_start
        w = flat[np.repeat(img_start[w], lens) + offset]
    return w[:min_len] if truncate else w


def occurrence_mask(w: np.ndarray, patch: Sequence[int]) -> np.ndarray:
    """Boolean array, True where an occurrence of ``patch`` starts (fully inside w)."""
    p = len(patch)
    out = np.zeros(len(w), dtype=bool)
    if p > len(w):
        return out
    span = len(w) - p + 1
    hit = np.ones(span, dtype=bool)
    for j, x in enumerate(patch):
        hit &= w[j:j + span] == x
    out[:span] = hit
    return out


def prefix_counts(mask: np.ndarray) -> np.ndarray:
    """``N[i]`` = number of marked positions before i; length len(mask) + 1."""
    out = np.zeros(len(mask) + 1, dtype=np.int64)
    np.cumsum(mask, out=out[1:])
    return out


def window_counts(prefix: np.ndarray, starts: np.ndarray, ends: np.ndarray, plen: int) -> np.ndarray:
    """Occurrences lying entirely inside w[start:end] for each window."""
    last = np.maximum(ends - plen + 1, starts)
    return prefix[last] - prefix[starts]


class WindowHasher:
    """Hashes of w[i:i+r] for all i in O(len) per radius, two independent 64-bit hashes."""

    def __init__(self, w: np.ndarray):
        vals = w.astype(np.uint64) + np.uint64(1)
        n = len(w)
        self._pre = []
        self._inv_pow = []
        with np.errstate(over="ignore"):
            for b in _HASH_BASES:
                pw = np.empty(n, dtype=np.uint64)
                pw[0] = 1
                if n > 1:
                    pw[1:] = b
                    pw = np.cumprod(pw, dtype=np.uint64)
                pre = np.zeros(n + 1, dtype=np.uint64)
                np.cumsum(vals * pw, out=pre[1:])
                inv = np.empty(n, dtype=np.uint64)
                inv[0] = 1
                if n > 1:
                    inv[1:] = np.uint64(pow(int(b), -1, 2**64))
                    inv = np.cumprod(inv, dtype=np.uint64)
                self._pre.append(pre)
                self._inv_pow.append(inv)

    def hashes(self, starts: np.ndarray, length: int) -> tuple[np.ndarray, np.ndarray]:
        out = []
        with np.errstate(over="ignore"):
            for pre, inv in zip(self._pre, self._inv_pow):
                out.append((pre[starts + length] - pre[starts]) * inv[starts])
        return out[0], out[1]


def natural_positions(w: np.ndarray, lengths: Sequence[float]) -> np.ndarray:
    """Left endpoint of each tile in natural length, plus the total at the end."""
    lens = np.asarray(lengths, dtype=float)[w]
    out = np.zeros(len(w) + 1)
    np.cumsum(lens, out=out[1:])
    return out
