"""Vectorized bitset tables shared by the exhaustive searches.

A "zero table" is indexed by ``m`` in ``[0, 2**(n-1))`` and describes the
set ``X = (m << 1) | 1``, i.e. all subsets containing the zero element.
"""

from __future__ import annotations

import functools

import numpy as np

from .groups import AbelianGroup, bit_indices


def popcounts(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr).astype(np.int64)


@functools.lru_cache(maxsize=32)
def zero_sets(n: int) -> np.ndarray:
    m = np.arange(1 << (n - 1), dtype=np.int64)
    out = (m << 1) | 1
    out.flags.writeable = False
    return out


@functools.lru_cache(maxsize=32)
def zero_sizes(n: int) -> np.ndarray:
    out = popcounts(zero_sets(n))
    out.flags.writeable = False
    return out


@functools.lru_cache(maxsize=32)
def all_sizes(n: int) -> np.ndarray:
    out = popcounts(np.arange(1 << n, dtype=np.int64))
    out.flags.writeable = False
    return out


def zero_sum_table(G: AbelianGroup, s_bits: int) -> np.ndarray:
    """``X + S`` for every ``X`` containing zero (doubling over the other elements)."""
    n = G.order
    f = np.empty(1 << (n - 1), dtype=np.int64)
    f[0] = s_bits
    for i in range(1, n):
        lo = 1 << (i - 1)
        f[lo:2 * lo] = f[:lo] | G.translate(s_bits, i)
    return f


def image_table(images: list[int]) -> np.ndarray:
    """``Gamma(X)`` for every ``X`` given the per-vertex images; index = bits of X."""
    n = len(images)
    f = np.zeros(1 << n, dtype=np.int64)
    for i, img in enumerate(images):
        lo = 1 << i
        f[lo:2 * lo] = f[:lo] | img
    return f


def all_sum_table(G: AbelianGroup, s_bits: int) -> np.ndarray:
    return image_table([G.translate(s_bits, i) for i in range(G.order)])


def sumset_array(G: AbelianGroup, arr: np.ndarray, b_bits: int) -> np.ndarray:
    out = np.zeros_like(arr)
    for b in bit_indices(b_bits):
        out |= G.translate_array(arr, b)
    return out


def aperiodic_mask(G: AbelianGroup, arr: np.ndarray) -> np.ndarray:
    """True where the encoded set has trivial period (empty sets count as periodic)."""
    mask = arr != 0
    for g in range(1, G.order):
        if not mask.any():
            break
        mask &= G.translate_array(arr, g) != arr
    return mask
