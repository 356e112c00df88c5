"""Exact linear algebra over GF(2) on packed 64-bit words.

Substrate for every code dimension, nullspace, and distance computation in the
package. Vectors and matrices are value types: construct, then treat as
read-only.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import _bitkernels
from .errors import ExactCapExceeded

__all__ = [
    "BitVector",
    "BitMatrix",
    "rank_and_rref",
    "nullspace_basis",
    "row_basis",
    "min_weight",
    "EXACT_DISTANCE_DIM_CAP",
]

WORD = 64
EXACT_DISTANCE_DIM_CAP = 24


def _nwords(cols: int) -> int:
    return (cols + WORD - 1) // WORD


def _pack_dense(dense: np.ndarray) -> np.ndarray:
    """Pack a 2-D 0/1 array into little-endian uint64 words per row."""
    rows, cols = dense.shape
    padded = np.zeros((rows, _nwords(cols) * 8), dtype=np.uint8)
    if cols:
        packed8 = np.packbits(dense.astype(np.uint8), axis=1, bitorder="little")
        padded[:, : packed8.shape[1]] = packed8
    return padded.view(np.uint64)


def _unpack_dense(words: np.ndarray, cols: int) -> np.ndarray:
    rows = words.shape[0]
    if cols == 0:
        return np.zeros((rows, 0), dtype=np.uint8)
    bits = np.unpackbits(words.view(np.uint8), axis=1, bitorder="little")
    return np.ascontiguousarray(bits[:, :cols])


class BitVector:
    """A fixed-length binary vector packed into uint64 words."""

    __slots__ = ("length", "words")

    def __init__(self, length: int, words: np.ndarray):
        self.length = length
        self.words = words

    @classmethod
    def zero(cls, length: int) -> "BitVector":
        return cls(length, np.zeros(_nwords(length), dtype=np.uint64))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        dense = np.asarray(bits, dtype=np.uint8).reshape(1, -1)
        return cls(dense.shape[1], _pack_dense(dense)[0])

    @classmethod
    def from_support(cls, length: int, positions: Iterable[int]) -> "BitVector":
        v = cls.zero(length)
        for p in positions:
            if not 0 <= p < length:
                raise IndexError(f"position {p} out of range for length {length}")
            v.words[p >> 6] ^= np.uint64(1) << np.uint64(p & 63)
        return v

    def get(self, i: int) -> int:
        return int((self.words[i >> 6] >> np.uint64(i & 63)) & np.uint64(1))

    @property
    def weight(self) -> int:
        return int(np.bitwise_count(self.words).sum())

    def support(self) -> list[int]:
        return [i for i in range(self.length) if self.get(i)]

    def to_dense(self) -> np.ndarray:
        return _unpack_dense(self.words.reshape(1, -1), self.length)[0]

    def to01(self) -> str:
        return "".join("1" if b else "0" for b in self.to_dense())

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.words ^ other.words)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitVector)
            and self.length == other.length
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __repr__(self) -> str:
        shown = self.to01() if self.length <= 64 else f"{self.to01()[:60]}..."
        return f"BitVector({self.length}, {shown})"


class BitMatrix:
    """A rows x cols binary matrix, rows packed into uint64 words."""

    __slots__ = ("rows", "cols", "words")

    def __init__(self, rows: int, cols: int, words: np.ndarray):
        self.rows = rows
        self.cols = cols
        self.words = words

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, np.zeros((rows, _nwords(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        m = cls.zeros(n, n)
        idx = np.arange(n)
        m.words[idx, idx >> 6] = np.uint64(1) << (idx % 64).astype(np.uint64)
        return m

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "BitMatrix":
        dense = np.atleast_2d(np.asarray(dense, dtype=np.uint8))
        return cls(dense.shape[0], dense.shape[1], _pack_dense(dense))

    @classmethod
    def from_bits(cls, rows: Sequence[Sequence[int]]) -> "BitMatrix":
        return cls.from_dense(np.asarray(rows, dtype=np.uint8))

    @classmethod
    def from_row_vectors(cls, vectors: Sequence[BitVector], cols: int | None = None) -> "BitMatrix":
        if not vectors:
            return cls.zeros(0, cols or 0)
        cols = vectors[0].length if cols is None else cols
        words = np.stack([v.words for v in vectors])
        return cls(len(vectors), cols, words)

    def to_dense(self) -> np.ndarray:
        return _unpack_dense(self.words, self.cols)

    def row(self, i: int) -> BitVector:
        return BitVector(self.cols, self.words[i].copy())

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self.words.copy())

    def get(self, i: int, j: int) -> int:
        return int((self.words[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))

    def set(self, i: int, j: int, value: int) -> None:
        mask = np.uint64(1) << np.uint64(j & 63)
        if value:
            self.words[i, j >> 6] |= mask
        else:
            self.words[i, j >> 6] &= ~mask

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch")
        return BitMatrix(self.rows + other.rows, self.cols, np.vstack([self.words, other.words]))

    def mul_vec(self, v: BitVector) -> BitVector:
        """Matrix-vector product over GF(2): parity of the row/vector overlaps."""
        if v.length != self.cols:
            raise ValueError("length mismatch")
        par = (np.bitwise_count(self.words & v.words[None, :]).sum(axis=1) & 1).astype(np.uint8)
        return BitVector(self.rows, _pack_dense(par.reshape(1, -1))[0])

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = np.zeros((self.rows, other.words.shape[1]), dtype=np.uint64)
        _bitkernels.matmul_accumulate(self.words, other.words, out)
        return BitMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self.words.any()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and bool(np.array_equal(self.words, other.words))
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"

    def to_text(self) -> str:
        """Serialize: first line "rows cols", then one 0/1 row per line."""
        dense = self.to_dense()
        lines = [f"{self.rows} {self.cols}"]
        lines.extend("".join(str(int(b)) for b in row) for row in dense)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "BitMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        rows, cols = (int(t) for t in lines[0].split())
        dense = np.zeros((rows, cols), dtype=np.uint8)
        for i in range(rows):
            line = lines[1 + i].strip()
            if len(line) != cols:
                raise ValueError(f"row {i} has length {len(line)}, expected {cols}")
            dense[i] = np.frombuffer(line.encode(), dtype=np.uint8) - ord("0")
        return cls.from_dense(dense)


def rank_and_rref(m: BitMatrix) -> tuple[int, BitMatrix, list[int]]:
    """Rank, reduced row echelon form, and strictly increasing pivot columns."""
    work = m.words.copy()
    rank, pivots = _bitkernels.eliminate(work, m.rows, m.cols)
    return int(rank), BitMatrix(m.rows, m.cols, work), [int(p) for p in pivots]


def row_basis(m: BitMatrix) -> BitMatrix:
    """The nonzero rows of the reduced row echelon form."""
    rank, rref, _ = rank_and_rref(m)
    return BitMatrix(rank, m.cols, rref.words[:rank].copy())


def nullspace_basis(m: BitMatrix) -> BitMatrix:
    """A basis (as matrix rows) of { v : m v = 0 }; has cols - rank rows."""
    rank, rref, pivots = rank_and_rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = BitMatrix.zeros(len(free), m.cols)
    for bi, f in enumerate(free):
        basis.set(bi, f, 1)
        for r, p in enumerate(pivots):
            if rref.get(r, f):
                basis.set(bi, p, 1)
    return basis


def _combine_rows(basis: BitMatrix, mask: int) -> BitVector:
    v = BitVector.zero(basis.cols)
    for i in range(basis.rows):
        if (mask >> i) & 1:
            v = v ^ basis.row(i)
    return v


def min_weight(
    generator: BitMatrix,
    mode: str = "exact",
    budget: int = 40,
    cap: int = EXACT_DISTANCE_DIM_CAP,
    seed: int = 0,
) -> tuple[int, BitVector, bool]:
    """Minimum nonzero codeword weight of the row span of `generator`.

    Exact mode enumerates all 2^k - 1 nonzero codewords (k <= cap required).
    Heuristic mode runs `budget` seeded information-set restarts and returns an
    upper bound. Returns (weight, witness, exact flag).
    """
    basis = row_basis(generator)
    k = basis.rows
    if k == 0:
        raise ValueError("the zero code has no nonzero codeword")
    if mode == "exact":
        if k > cap:
            raise ExactCapExceeded(f"dimension {k} exceeds exact cap {cap}")
        wt, mask = _bitkernels.gray_min_weight(basis.words)
        return int(wt), _combine_rows(basis, int(mask)), True
    if mode != "heuristic":
        raise ValueError(f"unknown mode {mode!r}")
    return _isd_upper_bound(basis, budget, seed)


def coset_min_weight(
    generator: BitMatrix,
    target: BitVector,
    cap: int = EXACT_DISTANCE_DIM_CAP,
) -> tuple[int, BitVector, bool]:
    """Distance from `target` to the row span of `generator`, by exact
    enumeration of the coset. Returns (weight, nearest codeword, True)."""
    if generator.cols != target.length:
        raise ValueError("length mismatch")
    basis = row_basis(generator)
    k = basis.rows
    if k > cap:
        raise ExactCapExceeded(f"dimension {k} exceeds exact cap {cap}")
    if k == 0:
        return target.weight, BitVector.zero(target.length), True
    wt, mask = _bitkernels.gray_coset_min(basis.words, target.words)
    return int(wt), _combine_rows(basis, int(mask)), True


def _isd_upper_bound(basis: BitMatrix, restarts: int, seed: int) -> tuple[int, BitVector, bool]:
    """Information-set resampling: re-echelonize under random column orders and
    keep the lightest row (and light row pairs) seen. Upper bound only."""
    k, n = basis.rows, basis.cols
    rng = np.random.default_rng(seed)
    dense = basis.to_dense()

    best_w = None
    best_vec = None

    def consider(rows_dense: np.ndarray) -> None:
        nonlocal best_w, best_vec
        weights = rows_dense.sum(axis=1)
        i = int(np.argmin(weights))
        if best_w is None or weights[i] < best_w:
            best_w = int(weights[i])
            best_vec = rows_dense[i].copy()

    consider(dense)
    for _ in range(restarts):
        perm = rng.permutation(n)
        permuted = BitMatrix.from_dense(dense[:, perm])
        reduced = row_basis(permuted).to_dense()
        inverse = np.empty(n, dtype=np.int64)
        inverse[perm] = np.arange(n)
        back = reduced[:, inverse]
        consider(back)
        if k <= 64:
            pair = back[:, None, :] ^ back[None, :, :]
            iu = np.triu_indices(back.shape[0], k=1)
            if iu[0].size:
                consider(pair[iu].reshape(-1, n))
    assert best_vec is not None
    return best_w, BitVector.from_bits(best_vec), False
