"""The global code on the squares of a complex, and its local tester.

Bits live on canonical squares. Around each vertex the complex arranges the
incident squares into a row-generator by column-generator grid, and the
global code is cut out by requiring every such grid to lie in the tensor of
the two base codes. Two equivalent parity systems are assembled: one row
per edge and dual vector of the opposite-side base code, and one row per
vertex and dual vector of the tensor code. Their nullspaces agree, which
is checked by rank, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .codes import LinearCode, from_parity, tensor_code
from .complexes import SquareComplex
from .errors import LengthMismatch
from .gf2 import BitMatrix, min_weight, rank_and_rref

DIST_EXACT_DIM_CAP = 24


@dataclass(frozen=True)
class SquareCodeInstance:
    cx: SquareComplex
    code_a: LinearCode
    code_b: LinearCode
    tensor: LinearCode  # the local code at every vertex
    h_edges: BitMatrix
    h_vertices: BitMatrix
    code: LinearCode  # global code, from the system named by mode
    mode: str
    name: str

    @property
    def n_bits(self) -> int:
        return self.cx.n_squares

    @property
    def rate(self) -> Fraction:
        return Fraction(self.code.dim, self.n_bits)

    def summary(self) -> dict:
        return {
            "name": self.name, "complex": self.cx.group.name,
            "bits": self.n_bits, "dim": self.code.dim,
            "rate": str(self.rate), "mode": self.mode,
            "code_a": self.code_a.name, "code_b": self.code_b.name,
            "rows_edges": self.h_edges.rows,
            "rows_vertices": self.h_vertices.rows,
        }


@dataclass(frozen=True)
class LocalView:
    vertex: int
    grid: np.ndarray  # (na, nb) rows by a-generator, columns by b-generator


def local_view(inst: SquareCodeInstance, f: np.ndarray, g: int) -> LocalView:
    f = np.asarray(f, dtype=np.uint8)
    return LocalView(vertex=g, grid=f[inst.cx.link_grid[g]].copy())


def _scatter_rows(words: np.ndarray, row_ids: np.ndarray,
                  col_ids: np.ndarray) -> None:
    np.bitwise_or.at(words, (row_ids, col_ids >> 6),
                     np.uint64(1) << (col_ids & 63).astype(np.uint64))


def _edge_system(cx: SquareComplex, code_a: LinearCode,
                 code_b: LinearCode) -> BitMatrix:
    """One parity row per edge and dual vector of the code on the opposite
    side: an A-edge reads its squares as a word over the b-positions."""
    rb, ra = code_b.parity, code_a.parity
    n_rows = cx.n_ea * rb.rows + cx.n_eb * ra.rows
    out = BitMatrix.zeros(n_rows, cx.n_squares)
    for t in range(rb.rows):
        js = np.flatnonzero(rb.to_dense()[t])
        rows = np.repeat(np.arange(cx.n_ea, dtype=np.int64) * rb.rows + t,
                         len(js))
        _scatter_rows(out.words, rows, cx.a_edge_sq[:, js].ravel())
    base = cx.n_ea * rb.rows
    for t in range(ra.rows):
        is_ = np.flatnonzero(ra.to_dense()[t])
        rows = np.repeat(
            base + np.arange(cx.n_eb, dtype=np.int64) * ra.rows + t, len(is_))
        _scatter_rows(out.words, rows, cx.b_edge_sq[:, is_].ravel())
    return out


def _vertex_system(cx: SquareComplex, tensor: LinearCode) -> BitMatrix:
    ht = tensor.parity
    out = BitMatrix.zeros(cx.n * ht.rows, cx.n_squares)
    flat = cx.link_grid.reshape(cx.n, cx.na * cx.nb)
    dense = ht.to_dense()
    for t in range(ht.rows):
        cells = np.flatnonzero(dense[t])
        rows = np.repeat(np.arange(cx.n, dtype=np.int64) * ht.rows + t,
                         len(cells))
        _scatter_rows(out.words, rows, flat[:, cells].ravel())
    return out


def assemble(cx: SquareComplex, code_a: LinearCode, code_b: LinearCode,
             mode: str = "edges", name: str | None = None) -> SquareCodeInstance:
    if code_a.n != cx.na:
        raise LengthMismatch(f"code_a length {code_a.n} != |A| = {cx.na}")
    if code_b.n != cx.nb:
        raise LengthMismatch(f"code_b length {code_b.n} != |B| = {cx.nb}")
    if mode not in ("edges", "vertices"):
        raise ValueError(f"unknown mode {mode!r}")
    tensor = tensor_code(code_a, code_b)
    h_e = _edge_system(cx, code_a, code_b)
    h_v = _vertex_system(cx, tensor)
    chosen = h_e if mode == "edges" else h_v
    code = from_parity(chosen, name="global", distance_mode="skip")
    return SquareCodeInstance(
        cx=cx, code_a=code_a, code_b=code_b, tensor=tensor, h_edges=h_e,
        h_vertices=h_v, code=code, mode=mode,
        name=name or f"C[{cx.group.name},{code_a.name},{code_b.name}]")


def nullspace_match(inst: SquareCodeInstance) -> bool:
    """The two parity systems cut out the same code: equal ranks, and the
    vertex system annihilates the edge system's nullspace."""
    rank_e = rank_and_rref(inst.h_edges)[0]
    rank_v = rank_and_rref(inst.h_vertices)[0]
    if rank_e != rank_v:
        return False
    gen = inst.code.gen
    if gen.rows == 0:
        return True
    return inst.h_vertices.matmul(gen.transpose()).is_zero() and \
        inst.h_edges.matmul(gen.transpose()).is_zero()


# -- rate


def skeleton_bipartition(cx: SquareComplex) -> np.ndarray | None:
    """Two-coloring of the 1-skeleton, or None if an odd cycle exists."""
    color = np.full(cx.n, -1, dtype=np.int64)
    adj: list[list[int]] = [[] for _ in range(cx.n)]
    for u, v in np.vstack([cx.a_edges, cx.b_edges]):
        adj[u].append(v)
        adj[v].append(u)
    for start in range(cx.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if color[v] < 0:
                    color[v] = 1 - color[u]
                    stack.append(v)
                elif color[v] == color[u]:
                    return None
    return color


def vertex_cover(cx: SquareComplex) -> tuple[np.ndarray, Fraction, str]:
    """A vertex cover of the 1-skeleton: a color class when bipartite, else
    both endpoints of a greedy maximal matching."""
    color = skeleton_bipartition(cx)
    edges = np.vstack([cx.a_edges, cx.b_edges])
    if color is not None:
        cover = np.flatnonzero(color == 0)
        method = "bipartition"
    else:
        in_cover = np.zeros(cx.n, dtype=bool)
        for u, v in edges:
            if not (in_cover[u] or in_cover[v]):
                in_cover[u] = in_cover[v] = True
        cover = np.flatnonzero(in_cover)
        method = "greedy-matching"
    covered = np.isin(edges, cover).any(axis=1)
    assert covered.all(), "not a vertex cover"
    return cover, Fraction(len(cover), cx.n), method


def rate_bounds(inst: SquareCodeInstance) -> dict:
    ra, rb = inst.code_a.rate, inst.code_b.rate
    cover, nu, method = vertex_cover(inst.cx)
    out = {
        "generic": 2 * (ra + rb) - 3,
        "cover": 4 * nu * ra * rb + 1 - 4 * nu,
        "nu": nu,
        "cover_method": method,
        "bipartite": 2 * ra * rb - 1 if method == "bipartition" else None,
        "measured": inst.rate,
    }
    for key in ("generic", "cover", "bipartite"):
        bound = out[key]
        if bound is not None:
            assert inst.rate >= bound, (key, bound, inst.rate)
    return out


# -- distance


def distance_report(inst: SquareCodeInstance, lam: float, seed: int = 0,
                    isd_budget: int = 40) -> dict:
    da, db = inst.code_a.delta, inst.code_b.delta
    bound = float(da * db * (max(da, db) - lam))
    measured, exact = None, False
    if inst.code.dim == 0:
        method = "zero-code"
    elif inst.code.dim <= DIST_EXACT_DIM_CAP:
        w, _, _ = min_weight(inst.code.gen, mode="exact")
        measured, exact, method = w, True, "enumeration"
    else:
        w, _, _ = min_weight(inst.code.gen, mode="heuristic",
                             budget=isd_budget, seed=seed)
        measured, method = w, "information-set upper bound"
    rel = None if measured is None else Fraction(measured, inst.n_bits)
    if measured is not None and bound > 0:
        assert rel >= bound - 1e-12, (rel, bound)
    return {"bound_relative": bound, "delta_a": da, "delta_b": db,
            "lambda": lam, "measured": measured, "measured_relative": rel,
            "exact": exact, "method": method}


# -- the local tester


def _reject_mask(inst: SquareCodeInstance, f: np.ndarray) -> np.ndarray:
    f = np.asarray(f, dtype=np.uint8)
    grids = f[inst.cx.link_grid.reshape(inst.cx.n, -1)]
    syn = grids @ inst.tensor.parity.to_dense().T % 2
    return syn.any(axis=1)


def zeta(inst: SquareCodeInstance, f: np.ndarray) -> Fraction:
    """Exact fraction of vertices whose local grid falls outside the
    tensor code."""
    return Fraction(int(_reject_mask(inst, f).sum()), inst.cx.n)


def sample_test(inst: SquareCodeInstance, f: np.ndarray, seed: int) -> dict:
    """One tester invocation: a uniform vertex, all of its squares queried."""
    rng = np.random.default_rng(seed)
    g = int(rng.integers(inst.cx.n))
    squares = inst.cx.link_grid[g].ravel()
    grid = np.asarray(f, dtype=np.uint8)[squares]
    syn = grid @ inst.tensor.parity.to_dense().T % 2
    return {"vertex": g, "queried": squares.copy(),
            "queries": int(squares.size), "accept": not syn.any()}


@dataclass(frozen=True)
class TheoremConstants:
    c: Fraction
    kappa: Fraction
    condition_holds: bool


def kappa_theorem(size_a: int, size_b: int, delta_a, delta_b, kappa0,
                  lam) -> TheoremConstants:
    """Soundness constants of the tester: the agreement constant of the
    local tensor code yields a stay probability c; when c clears the
    spectral bound of the complex, the code is locally testable with
    constant kappa."""
    delta_a, delta_b = Fraction(delta_a), Fraction(delta_b)
    kappa0, lam = Fraction(kappa0), Fraction(lam)
    c = kappa0 / (8 + kappa0) * min(delta_a, delta_b)
    kappa = min(Fraction(1, 4 * (1 + size_a + size_b)),
                (c - lam) / (2 * (size_a + size_b)))
    return TheoremConstants(c=c, kappa=kappa, condition_holds=c > lam)


# -- serialization


def word_to_text(f: np.ndarray) -> str:
    return "".join("1" if b else "0" for b in np.asarray(f, dtype=np.uint8))


def word_from_text(text: str, inst: SquareCodeInstance | None = None) -> np.ndarray:
    f = np.frombuffer(text.strip().encode(), dtype=np.uint8) - ord("0")
    if (f > 1).any():
        raise ValueError("words are 0/1 strings")
    if inst is not None and len(f) != inst.n_bits:
        raise LengthMismatch(f"word length {len(f)} != {inst.n_bits} squares")
    return f.astype(np.uint8)


def random_codeword(inst: SquareCodeInstance, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    gen = inst.code.gen.to_dense()
    if gen.shape[0] == 0:
        return np.zeros(inst.n_bits, dtype=np.uint8)
    coeffs = rng.integers(0, 2, size=gen.shape[0]).astype(np.uint8)
    return coeffs @ gen % 2
