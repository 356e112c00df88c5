"""Linear codes over GF(2) and their testability oracles.

Provides code construction from either basis, tensor products on row-major
grids, random (c,d)-regular factor graphs with exhaustive vertex-expansion
certificates, exhaustive robust-testability and agreement-testability
constants for tiny tensor codes, and the closed-form conversions between
the two notions. All exhaustive oracles return exact rationals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, DivisibilityError, SizeCapExceeded
from .gf2 import (BitMatrix, BitVector, EXACT_DISTANCE_DIM_CAP, min_weight,
                  nullspace_basis, row_basis)

ROBUSTNESS_BIT_CAP = 20
AGREEMENT_PAIR_CAP = 10**6
EXPANDER_SUBSET_BUDGET = 10**8
CODEBOOK_CELL_CAP = 2 * 10**8


@dataclass(frozen=True)
class LinearCode:
    """A binary linear code carrying both a generator and a parity basis.

    The generator rows span the code, the parity rows span the dual, and the
    two ranks are complementary. The cached distance is exact only when the
    flag says so; None means not computed.
    """

    n: int
    gen: BitMatrix
    parity: BitMatrix
    distance: int | None
    distance_exact: bool
    name: str

    @property
    def dim(self) -> int:
        return self.gen.rows

    @property
    def rate(self) -> Fraction:
        return Fraction(self.dim, self.n)

    @property
    def delta(self) -> Fraction:
        if self.distance is None:
            raise ValueError(f"{self.name}: distance not computed")
        return Fraction(self.distance, self.n)

    def contains(self, vec: BitVector) -> bool:
        return self.parity.mul_vec(vec).weight == 0

    def to_text(self) -> str:
        d = -1 if self.distance is None else self.distance
        head = f"{self.n} {self.dim} {d} {int(self.distance_exact)}\n"
        return head + self.gen.to_text()

    @classmethod
    def from_text(cls, text: str, name: str = "code") -> "LinearCode":
        first, rest = text.split("\n", 1)
        n, dim, d, exact = (int(t) for t in first.split())
        gen = BitMatrix.from_text(rest)
        code = from_generator(gen, name=name, distance_mode="skip")
        if code.n != n or code.dim != dim:
            raise ValueError("header disagrees with the generator matrix")
        return cls(n=n, gen=code.gen, parity=code.parity,
                   distance=None if d < 0 else d,
                   distance_exact=bool(exact), name=name)


def _finish(gen: BitMatrix, parity: BitMatrix, name: str,
            distance_mode: str) -> LinearCode:
    n = gen.cols
    if gen.rows + parity.rows != n:
        raise ValueError("generator and parity ranks are not complementary")
    if gen.rows and parity.rows and not parity.matmul(gen.transpose()).is_zero():
        raise ValueError("generator and parity bases are not orthogonal")
    distance, exact = None, False
    if distance_mode == "auto" and 1 <= gen.rows <= EXACT_DISTANCE_DIM_CAP:
        distance, _, exact = min_weight(gen, mode="exact")
    elif distance_mode not in ("auto", "skip"):
        raise ValueError(f"unknown distance mode {distance_mode!r}")
    return LinearCode(n=n, gen=gen, parity=parity, distance=distance,
                      distance_exact=exact, name=name)


def from_parity(h: BitMatrix, name: str = "code",
                distance_mode: str = "auto") -> LinearCode:
    return _finish(nullspace_basis(h), row_basis(h), name, distance_mode)


def from_generator(g: BitMatrix, name: str = "code",
                   distance_mode: str = "auto") -> LinearCode:
    gen = row_basis(g)
    return _finish(gen, nullspace_basis(gen), name, distance_mode)


def repetition_code(n: int) -> LinearCode:
    code = from_generator(BitMatrix.from_bits([[1] * n]), name=f"rep{n}")
    assert code.distance == n
    return code


def parity_code(n: int) -> LinearCode:
    code = from_parity(BitMatrix.from_bits([[1] * n]), name=f"par{n}")
    assert code.dim == n - 1 and code.distance == 2
    return code


# -- tensor products (row-major cells: bit (i, j) sits at i * n2 + j)


def tensor_code(c1: LinearCode, c2: LinearCode) -> LinearCode:
    """Grid code whose columns lie in c1 and rows in c2."""
    n1, n2 = c1.n, c2.n
    h1 = c1.parity.to_dense()
    h2 = c2.parity.to_dense()
    h = np.vstack([
        np.kron(h1, np.eye(n2, dtype=np.uint8)),
        np.kron(np.eye(n1, dtype=np.uint8), h2),
    ])
    code = from_parity(BitMatrix.from_dense(h), name=f"{c1.name}(x){c2.name}",
                       distance_mode="skip")
    if code.dim != c1.dim * c2.dim:
        raise AssertionError("tensor dimension is not multiplicative")
    distance, exact = None, False
    if c1.distance is not None and c2.distance is not None:
        distance, exact = c1.distance * c2.distance, (
            c1.distance_exact and c2.distance_exact)
    return LinearCode(n=code.n, gen=code.gen, parity=code.parity,
                      distance=distance, distance_exact=exact, name=code.name)


def tensor_membership(c1: LinearCode, c2: LinearCode, grid: np.ndarray) -> bool:
    """Direct check: every column in c1 and every row in c2."""
    grid = np.asarray(grid, dtype=np.uint8)
    cols = all(c1.contains(BitVector.from_bits(grid[:, j]))
               for j in range(grid.shape[1]))
    rows = all(c2.contains(BitVector.from_bits(grid[i, :]))
               for i in range(grid.shape[0]))
    return cols and rows


# -- codebooks and nearest-codeword decoding


@dataclass(frozen=True)
class Codebook:
    """All codewords as dense rows in increasing lexicographic bit order
    (leftmost bit most significant), so the first argmin of any distance
    scan is the lexicographically smallest nearest codeword."""

    code: LinearCode
    words: np.ndarray  # (2^dim, n) uint8

    def __len__(self) -> int:
        return self.words.shape[0]


def codebook(code: LinearCode, cell_cap: int = CODEBOOK_CELL_CAP) -> Codebook:
    k, n = code.dim, code.n
    if (1 << k) * max(n, 1) > cell_cap:
        raise SizeCapExceeded(f"codebook of 2^{k} words of length {n} "
                              f"exceeds {cell_cap} cells")
    msgs = ((np.arange(1 << k, dtype=np.int64)[:, None]
             >> np.arange(k, dtype=np.int64)) & 1).astype(np.uint8)
    words = msgs @ code.gen.to_dense() % 2 if k else np.zeros((1, n), np.uint8)
    keys = np.packbits(words, axis=1)
    order = np.lexsort(keys.T[::-1])
    return Codebook(code=code, words=np.ascontiguousarray(words[order]))


def nearest_codeword(book: Codebook, target: np.ndarray) -> tuple[int, int]:
    """Index into the book plus the Hamming distance; ties resolve to the
    lexicographically smallest codeword."""
    dists = (book.words ^ np.asarray(target, dtype=np.uint8)).sum(axis=1)
    idx = int(np.argmin(dists))
    return idx, int(dists[idx])


def nearest_batch(book: Codebook, targets: np.ndarray,
                  block_cells: int = 10**8) -> tuple[np.ndarray, np.ndarray]:
    targets = np.atleast_2d(np.asarray(targets, dtype=np.uint8))
    m, n = targets.shape
    step = max(1, block_cells // max(1, len(book) * n))
    idx = np.empty(m, dtype=np.int64)
    dst = np.empty(m, dtype=np.int64)
    for lo in range(0, m, step):
        hi = min(m, lo + step)
        d = (targets[lo:hi, None, :] ^ book.words[None, :, :]).sum(
            axis=2, dtype=np.int64)
        idx[lo:hi] = np.argmin(d, axis=1)
        dst[lo:hi] = d[np.arange(hi - lo), idx[lo:hi]]
    return idx, dst


# -- random regular factor graphs and expansion certificates


@dataclass(frozen=True)
class FactorGraph:
    """(c,d)-biregular bit/check multigraph from a half-edge matching."""

    c: int
    d: int
    n: int
    m: int
    edges: np.ndarray  # (n*c, 2) rows (bit, check), matching order
    seed: int

    def neighbor_masks(self) -> list[int]:
        masks = [0] * self.n
        for bit, check in self.edges:
            masks[bit] |= 1 << int(check)
        return masks


def random_ldpc(c: int, d: int, n: int, seed: int) -> tuple[LinearCode, FactorGraph]:
    """Code of a uniform (c,d)-regular matching; a doubled edge cancels in
    the parity map but stays in the graph."""
    if (n * c) % d:
        raise DivisibilityError(f"d={d} does not divide n*c={n * c}")
    m = n * c // d
    rng = np.random.default_rng(seed)
    left = np.repeat(np.arange(n, dtype=np.int64), c)
    right = np.repeat(np.arange(m, dtype=np.int64), d)[rng.permutation(n * c)]
    edges = np.column_stack([left, right])
    fg = FactorGraph(c=c, d=d, n=n, m=m, edges=edges, seed=seed)
    counts = np.zeros((m, n), dtype=np.int64)
    np.add.at(counts, (right, left), 1)
    code = from_parity(BitMatrix.from_dense(counts % 2), name=f"ldpc{c}_{d}_{n}s{seed}")
    assert code.rate >= 1 - Fraction(c, d)
    return code, fg


@dataclass(frozen=True)
class ExpanderCertificate:
    ok: bool
    delta: Fraction
    gamma: Fraction
    max_size: int
    checked: int
    worst_set: tuple[int, ...]
    worst_neighbors: int
    witness: tuple[int, ...] | None  # violating set when not ok


def check_expander(fg: FactorGraph, delta, gamma,
                   budget: int = EXPANDER_SUBSET_BUDGET) -> ExpanderCertificate:
    """Exhaustively verify that every bit set of size at most delta*n sees
    strictly more than c*|S|*(1-gamma) distinct checks."""
    delta, gamma = Fraction(delta), Fraction(gamma)
    smax = math.floor(delta * fg.n)
    total = sum(math.comb(fg.n, k) for k in range(1, smax + 1))
    if total > budget:
        raise BudgetExceeded(f"{total} subsets exceed budget {budget}; "
                             "shrink n or delta")
    masks = fg.neighbor_masks()
    worst_margin, worst = None, ((), 0)
    for k in range(1, smax + 1):
        need = fg.c * k * (1 - gamma)  # exact rational threshold
        for combo in itertools.combinations(range(fg.n), k):
            u = 0
            for i in combo:
                u |= masks[i]
            cnt = u.bit_count()
            if cnt <= need:
                return ExpanderCertificate(
                    ok=False, delta=delta, gamma=gamma, max_size=smax,
                    checked=total, worst_set=combo, worst_neighbors=cnt,
                    witness=combo)
            margin = Fraction(cnt) - need
            if worst_margin is None or margin < worst_margin:
                worst_margin, worst = margin, (combo, cnt)
    return ExpanderCertificate(ok=True, delta=delta, gamma=gamma, max_size=smax,
                               checked=total, worst_set=worst[0],
                               worst_neighbors=worst[1], witness=None)


# -- exhaustive testability oracles for tiny tensor codes


@dataclass(frozen=True)
class RobustnessResult:
    tau: Fraction
    witness: np.ndarray  # (n1, n2) minimizing grid
    checked: int


def robustness_tau(c1: LinearCode, c2: LinearCode,
                   bit_cap: int = ROBUSTNESS_BIT_CAP) -> RobustnessResult:
    """Exact robustness of the tensor code: the minimum over grids outside
    it of (average column distance to c1 + average row distance to c2) / 2,
    relative, divided by the relative distance to the tensor code."""
    n1, n2 = c1.n, c2.n
    nbits = n1 * n2
    if nbits > bit_cap:
        raise SizeCapExceeded(f"{nbits} cells exceed exhaustive cap {bit_cap}")
    tbook = codebook(tensor_code(c1, c2))
    tints = _grid_ints(tbook.words, n1, n2)
    colcost = _side_costs(codebook(c1))
    rowcost = _side_costs(codebook(c2))

    f = np.arange(1 << nbits, dtype=np.int64)
    # cell (i, j) of grid f is bit i*n2 + j of its integer form
    dcol = np.zeros(len(f), dtype=np.int64)
    for j in range(n2):
        val = np.zeros(len(f), dtype=np.int64)
        for i in range(n1):
            val |= ((f >> (i * n2 + j)) & 1) << i
        dcol += colcost[val]
    drow = np.zeros(len(f), dtype=np.int64)
    for i in range(n1):
        val = (f >> (i * n2)) & ((1 << n2) - 1)
        drow += rowcost[val]
    dfull = np.full(len(f), np.iinfo(np.int64).max)
    for w in tints:
        np.minimum(dfull, _popcount64(f ^ w), out=dfull)

    outside = dfull > 0
    if not outside.any():
        raise ValueError("the tensor code fills the whole space")
    ratio = (dcol + drow) / (2.0 * np.where(outside, dfull, 1))
    ratio[~outside] = np.inf
    best = float(ratio.min())
    cand = np.flatnonzero(ratio <= best * (1 + 1e-12) + 1e-15)
    tau, wit = None, None
    for ix in cand:
        r = Fraction(int(dcol[ix] + drow[ix]), 2 * int(dfull[ix]))
        if tau is None or r < tau:
            tau, wit = r, int(f[ix])
    grid = np.array([[(wit >> (i * n2 + j)) & 1 for j in range(n2)]
                     for i in range(n1)], dtype=np.uint8)
    return RobustnessResult(tau=tau, witness=grid, checked=len(f))


def _popcount64(arr: np.ndarray) -> np.ndarray:
    return np.bitwise_count(arr.astype(np.uint64)).astype(np.int64)


def _grid_ints(words: np.ndarray, n1: int, n2: int) -> np.ndarray:
    flat = words.reshape(len(words), n1 * n2).astype(np.int64)
    return (flat << np.arange(n1 * n2, dtype=np.int64)).sum(axis=1)


def _vec_ints(words: np.ndarray) -> np.ndarray:
    words = words.astype(np.int64)
    return (words << np.arange(words.shape[1], dtype=np.int64)).sum(axis=1)


def _side_costs(book: Codebook) -> np.ndarray:
    """Distance from every vector (as an integer, bit i = coordinate i) to
    the nearest codeword."""
    n = book.code.n
    vals = np.arange(1 << n, dtype=np.int64)
    ints = _vec_ints(book.words)
    cost = np.full(len(vals), np.iinfo(np.int64).max)
    for w in ints:
        np.minimum(cost, _popcount64(vals ^ w), out=cost)
    return cost


@dataclass(frozen=True)
class AgreementResult:
    kappa: Fraction
    w_col: np.ndarray  # (n1, n2) grid with columns in c1
    w_row: np.ndarray  # (n1, n2) grid with rows in c2
    checked: int


def agreement_kappa(c1: LinearCode, c2: LinearCode,
                    pair_cap: int = AGREEMENT_PAIR_CAP) -> AgreementResult:
    """Exact agreement constant: over all pairs of a column-wise word and a
    row-wise word with positive correction cost, the minimum ratio of their
    cell disagreement fraction to the cheapest correction, where correcting
    means moving both to a common tensor codeword and costs the fraction of
    columns changed in one plus the fraction of rows changed in the other."""
    n1, n2 = c1.n, c2.n
    if n1 * n2 > 63:
        raise SizeCapExceeded(f"{n1 * n2} cells overflow the packed grid form")
    book1, book2 = codebook(c1), codebook(c2)
    p1, p2 = len(book1) ** n2, len(book2) ** n1
    if p1 * p2 > pair_cap:
        raise SizeCapExceeded(f"{p1 * p2} pairs exceed cap {pair_cap}")
    tbook = codebook(tensor_code(c1, c2))

    col_tuples = np.array(list(itertools.product(range(len(book1)), repeat=n2)),
                          dtype=np.int64)  # (p1, n2) codeword index per column
    row_tuples = np.array(list(itertools.product(range(len(book2)), repeat=n1)),
                          dtype=np.int64)
    ints1 = _vec_ints(book1.words)  # bit i = coordinate i
    ints2 = _vec_ints(book2.words)

    # integer form of each candidate grid, cell (i, j) at bit i*n2+j
    col_ints = np.zeros(p1, dtype=np.int64)
    for j in range(n2):
        col_of = ints1[col_tuples[:, j]]
        for i in range(n1):
            col_ints |= (((col_of >> i) & 1) << (i * n2 + j))
    row_ints = np.zeros(p2, dtype=np.int64)
    for i in range(n1):
        row_ints |= ints2[row_tuples[:, i]] << (i * n2)

    # tensor codewords as column-index and row-index tuples
    t_cols = np.empty((len(tbook), n2), dtype=np.int64)
    t_rows = np.empty((len(tbook), n1), dtype=np.int64)
    lut1 = {int(v): i for i, v in enumerate(ints1)}
    lut2 = {int(v): i for i, v in enumerate(ints2)}
    for t, w in enumerate(tbook.words):
        g = w.reshape(n1, n2)
        t_cols[t] = [lut1[int(sum(int(g[i, j]) << i for i in range(n1)))]
                     for j in range(n2)]
        t_rows[t] = [lut2[int(sum(int(g[i, j]) << j for j in range(n2)))]
                     for i in range(n1)]

    den = np.full((p1, p2), np.inf)
    for t in range(len(tbook)):
        cdiff = (col_tuples != t_cols[t]).sum(axis=1) / n2
        rdiff = (row_tuples != t_rows[t]).sum(axis=1) / n1
        np.minimum(den, cdiff[:, None] + rdiff[None, :], out=den)
    num = _popcount64(col_ints[:, None] ^ row_ints[None, :]) / (n1 * n2)

    live = den > 0
    ratio = np.where(live, num / np.where(live, den, 1), np.inf)
    best = float(ratio.min())
    cand = np.argwhere(ratio <= best * (1 + 1e-12) + 1e-15)
    kappa, wc, wr = None, None, None
    for a, b in cand:
        exact_den = min(
            Fraction(int((col_tuples[a] != t_cols[t]).sum()), n2)
            + Fraction(int((row_tuples[b] != t_rows[t]).sum()), n1)
            for t in range(len(tbook)))
        r = Fraction((int(col_ints[a]) ^ int(row_ints[b])).bit_count(),
                     n1 * n2) / exact_den
        if kappa is None or r < kappa:
            kappa, wc, wr = r, int(col_ints[a]), int(row_ints[b])
    unpack = lambda v: np.array([[(v >> (i * n2 + j)) & 1 for j in range(n2)]
                                 for i in range(n1)], dtype=np.uint8)
    return AgreementResult(kappa=kappa, w_col=unpack(wc), w_row=unpack(wr),
                           checked=p1 * p2)


# -- conversions between the two testability notions


def kappa_from_tau(tau, delta1, delta2) -> Fraction:
    tau, d1, d2 = Fraction(tau), Fraction(delta1), Fraction(delta2)
    if tau <= 0 or d1 <= 0 or d2 <= 0:
        raise ValueError("inputs must be positive")
    return 1 / (1 / (2 * tau * d1) + (1 + 1 / (2 * tau)) / d2)


def tau_from_kappa(kappa) -> Fraction:
    kappa = Fraction(kappa)
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    return kappa / (2 * (kappa + 1))


@dataclass(frozen=True)
class TestabilityReport:
    tau: Fraction
    kappa: Fraction
    tau_exact: bool
    kappa_exact: bool
    kappa_bound_from_tau: Fraction
    tau_bound_from_kappa: Fraction

    @property
    def consistent(self) -> bool:
        return (self.kappa >= self.kappa_bound_from_tau
                and self.tau >= self.tau_bound_from_kappa)


def testability_report(c1: LinearCode, c2: LinearCode) -> TestabilityReport:
    tau = robustness_tau(c1, c2).tau
    kappa = agreement_kappa(c1, c2).kappa
    return TestabilityReport(
        tau=tau, kappa=kappa, tau_exact=True, kappa_exact=True,
        kappa_bound_from_tau=kappa_from_tau(tau, c1.delta, c2.delta),
        tau_bound_from_kappa=tau_from_kappa(kappa))


# -- robustness lower bound for expander-based factor codes


def dsw_tau_bound(delta, delta_prime, gamma, d) -> float:
    """Lower bound on the robustness of (expander code) tensor (any code):
    the first form needs expansion defect below 1/6, the second holds for
    any defect below 1/2."""
    delta, delta_prime, gamma = float(delta), float(delta_prime), float(gamma)
    if gamma >= 0.5:
        raise ValueError("gamma must be below 1/2")
    if gamma < 1 / 6:
        return delta * delta_prime * (1 / 6 - gamma) / (2 * d)
    return delta * delta_prime / d ** (math.log(0.05) / math.log(0.5 + gamma))
