"""Compiled inner loops for packed GF(2) linear algebra.

Rows are packed little-endian into uint64 words: bit j of word w is column
64*w + j. All kernels assume the unused tail bits of the last word are zero
and preserve that invariant.
"""

from __future__ import annotations

import numba as nb
import numpy as np

U1 = np.uint64(1)
U0 = np.uint64(0)


@nb.njit(cache=True, inline="always")
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@nb.njit(cache=True, inline="always")
def _ctz64(x):
    n = 0
    while (x & U1) == U0:
        x >>= U1
        n += 1
    return n


@nb.njit(cache=True)
def eliminate(words, rows, cols):
    """In-place reduced row echelon form. Returns (rank, pivot columns)."""
    nwords = words.shape[1]
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        w = c >> 6
        b = np.uint64(c & 63)
        p = -1
        for i in range(r, rows):
            if (words[i, w] >> b) & U1:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for j in range(nwords):
                t = words[r, j]
                words[r, j] = words[p, j]
                words[p, j] = t
        # row r has no bits before c, so XOR from word w onward suffices
        for i in range(rows):
            if i != r and ((words[i, w] >> b) & U1):
                for j in range(w, nwords):
                    words[i, j] ^= words[r, j]
        pivots[r] = c
        r += 1
        if r == rows:
            break
    return r, pivots[:r]


@nb.njit(cache=True)
def matmul_accumulate(a_words, b_words, out):
    """out ^= A @ B where row i of the product XORs B's rows at A's set bits."""
    rows = a_words.shape[0]
    nwords_a = a_words.shape[1]
    nwords_b = b_words.shape[1]
    for i in range(rows):
        for w in range(nwords_a):
            x = a_words[i, w]
            while x != U0:
                j = (w << 6) + _ctz64(x)
                for t in range(nwords_b):
                    out[i, t] ^= b_words[j, t]
                x &= x - U1
    return out


@nb.njit(cache=True)
def gray_min_weight(basis_words):
    """Minimum Hamming weight over all nonzero combinations of the basis rows.

    Returns (weight, gray mask of the best combination). Enumerates the 2^k - 1
    nonzero codewords with a Gray-code sweep, one row XOR per step.
    """
    k, nwords = basis_words.shape
    cur = np.zeros(nwords, dtype=np.uint64)
    best = np.int64(1) << np.int64(62)
    best_mask = np.int64(0)
    for i in range(1, 1 << k):
        b = _ctz64(np.uint64(i))
        for j in range(nwords):
            cur[j] ^= basis_words[b, j]
        wt = np.int64(0)
        for j in range(nwords):
            wt += np.int64(_popcount64(cur[j]))
        if wt < best:
            best = wt
            best_mask = i ^ (i >> 1)
    return best, best_mask


@nb.njit(cache=True)
def gray_coset_min(basis_words, start_words):
    """Minimum Hamming weight over the coset start + span(basis).

    Returns (weight, gray mask of the combination closest to start). The
    all-zero combination is included, so the result never exceeds |start|.
    """
    k, nwords = basis_words.shape
    cur = start_words.copy()
    best = np.int64(0)
    for j in range(nwords):
        best += np.int64(_popcount64(cur[j]))
    best_mask = np.int64(0)
    for i in range(1, 1 << k):
        b = _ctz64(np.uint64(i))
        for j in range(nwords):
            cur[j] ^= basis_words[b, j]
        wt = np.int64(0)
        for j in range(nwords):
            wt += np.int64(_popcount64(cur[j]))
        if wt < best:
            best = wt
            best_mask = i ^ (i >> 1)
    return best, best_mask
