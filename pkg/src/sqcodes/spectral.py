"""Spectral and random-walk analysis for Cayley graphs and complexes.

Covers the one-sided second eigenvalue (dense below a size switch, Lanczos
above), the vertex walks of both generator sets, the edge-space walk built
by averaging down to vertices and back up, the across-square parallel walk
with its half/half edge distribution, expander concentration inequalities,
and girth. Eigensolves are floating point; concentration quantities that
feed assertions are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .complexes import SquareComplex
from .errors import NoConvergence
from .groups import GroupTable

DENSE_EIG_CAP = 6000
EIG_TOL = 1e-8
EIG_BUDGET = 10**4


@dataclass(frozen=True)
class SpectralReport:
    lambda2: float
    method: str  # dense | iterative
    tol: float
    iterations: int

    def to_dict(self) -> dict:
        return {"lambda2": self.lambda2, "method": self.method,
                "tol": self.tol, "iterations": self.iterations}


@dataclass(frozen=True)
class Graph:
    """A regular (multi)graph with weighted adjacency; degree counts multiplicity."""

    n: int
    degree: int
    adj: sp.csr_matrix
    name: str = "graph"


def cayley_graph(group: GroupTable, gens, side: str = "left",
                 name: str | None = None) -> Graph:
    """Adjacency of the Cayley graph; repeated generators add multiplicity."""
    gens = np.asarray(gens, dtype=np.int64).ravel()
    n, k = group.order, len(gens)
    g = np.arange(n, dtype=np.int64)
    if side == "left":
        cols = np.concatenate([group.mul_arr(np.full(n, s), g) for s in gens])
    else:
        cols = np.concatenate([group.mul_arr(g, np.full(n, s)) for s in gens])
    rows = np.tile(g, k)
    adj = sp.coo_matrix((np.ones(n * k), (rows, cols)), shape=(n, n)).tocsr()
    return Graph(n=n, degree=k, adj=adj,
                 name=name or f"Cay({group.name},{side}:{k})")


def _second_largest(mat, tol: float, seed: int, budget: int,
                    method: str = "auto") -> SpectralReport:
    """Second-largest eigenvalue of a symmetric operator with top eigenvalue 1."""
    n = mat.shape[0]
    if method == "dense" or (method == "auto" and n <= DENSE_EIG_CAP):
        dense = mat.toarray() if sp.issparse(mat) else np.asarray(mat)
        vals = scipy.linalg.eigvalsh(dense)
        return SpectralReport(float(vals[-2]), "dense", tol, 0)
    counter = {"n": 0}

    def matvec(v):
        counter["n"] += 1
        return mat @ v

    op = spla.LinearOperator((n, n), matvec=matvec, dtype=np.float64)
    rng = np.random.default_rng(seed)
    try:
        vals = spla.eigsh(op, k=2, which="LA", v0=rng.standard_normal(n),
                          tol=tol, maxiter=budget, return_eigenvectors=False)
    except spla.ArpackNoConvergence as exc:
        raise NoConvergence(f"Lanczos spent {budget} iterations: {exc}") from exc
    return SpectralReport(float(np.sort(vals)[-2]), "iterative", tol, counter["n"])


def lambda2(graph: Graph, tol: float = EIG_TOL, seed: int = 0,
            budget: int = EIG_BUDGET, method: str = "auto") -> SpectralReport:
    """One-sided expansion constant: second-largest adjacency eigenvalue
    over the degree. A disconnected graph reports 1."""
    return _second_largest(graph.adj / graph.degree, tol, seed, budget, method)


def markov_lambda2(p, weights: np.ndarray, tol: float = EIG_TOL, seed: int = 0,
                   budget: int = EIG_BUDGET, method: str = "auto") -> SpectralReport:
    """Second-largest eigenvalue of a Markov operator that is self-adjoint
    under the weighted inner product; symmetrized by conjugation."""
    root = np.sqrt(np.asarray(weights, dtype=np.float64))
    if sp.issparse(p):
        sym = sp.diags(root) @ p @ sp.diags(1.0 / root)
        sym = (sym + sym.T) * 0.5  # scrub roundoff asymmetry
    else:
        sym = root[:, None] * np.asarray(p) / root[None, :]
        sym = (sym + sym.T) * 0.5
    return _second_largest(sym, tol, seed, budget, method)


# -- edge-space operators of a complex


@dataclass(frozen=True)
class EdgeOperators:
    """Walks attached to a complex. Edge indices are global: the A-edges
    first, then the B-edges; d1 is the stationary edge distribution putting
    half the mass on each side."""

    m_a: sp.csr_matrix
    m_b: sp.csr_matrix
    m0: sp.csr_matrix
    down: sp.csr_matrix  # (n, n_edges) average over incident edges, half per side
    up: sp.csr_matrix  # (n_edges, n) average over endpoints
    m: sp.csr_matrix  # up @ m0 @ down
    m_par: sp.csr_matrix
    d1: np.ndarray
    d1_exact: tuple[Fraction, Fraction]  # per-edge mass (A side, B side)


def build_operators(cx: SquareComplex) -> EdgeOperators:
    n, na, nb = cx.n, cx.na, cx.nb
    n_ea, n_eb, n_e = cx.n_ea, cx.n_eb, cx.n_edges

    m_a = cayley_graph(cx.group, cx.a_els, "left").adj / na
    m_b = cayley_graph(cx.group, cx.b_els, "right").adj / nb
    m0 = ((m_a + m_b) * 0.5).tocsr()

    g = np.arange(n, dtype=np.int64)
    rows = np.concatenate([np.repeat(g, na), np.repeat(g, nb)])
    cols = np.concatenate([cx.a_inc.ravel(), (n_ea + cx.b_inc).ravel()])
    data = np.concatenate([np.full(n * na, 0.5 / na), np.full(n * nb, 0.5 / nb)])
    down = sp.coo_matrix((data, (rows, cols)), shape=(n, n_e)).tocsr()

    ends = np.concatenate([cx.a_edges, cx.b_edges])
    up = sp.coo_matrix(
        (np.full(2 * n_e, 0.5),
         (np.repeat(np.arange(n_e), 2), ends.ravel())),
        shape=(n_e, n)).tocsr()

    m = (up @ m0 @ down).tocsr()

    par_rows = np.concatenate([
        np.repeat(np.arange(n_ea), nb), np.repeat(np.arange(n_ea, n_e), na)])
    par_cols = np.concatenate([cx.a_par.ravel(), (n_ea + cx.b_par).ravel()])
    par_data = np.concatenate(
        [np.full(n_ea * nb, 1.0 / nb), np.full(n_eb * na, 1.0 / na)])
    m_par = sp.coo_matrix((par_data, (par_rows, par_cols)),
                          shape=(n_e, n_e)).tocsr()

    wa, wb = Fraction(1, 2 * n_ea), Fraction(1, 2 * n_eb)
    d1 = np.concatenate([np.full(n_ea, float(wa)), np.full(n_eb, float(wb))])
    return EdgeOperators(m_a=m_a.tocsr(), m_b=m_b.tocsr(), m0=m0, down=down,
                         up=up, m=m, m_par=m_par, d1=d1, d1_exact=(wa, wb))


def operator_checks(cx: SquareComplex, ops: EdgeOperators, seed: int = 0) -> dict:
    """Numerical residuals for the structural identities every walk obeys."""
    n, n_e = cx.n, cx.n_edges
    rng = np.random.default_rng(seed)
    out: dict[str, float] = {}

    ones_v, ones_e = np.ones(n), np.ones(n_e)
    out["m0_row_sum"] = float(np.abs(ops.m0 @ ones_v - 1).max())
    out["m_row_sum"] = float(np.abs(ops.m @ ones_e - 1).max())
    out["m_par_row_sum"] = float(np.abs(ops.m_par @ ones_e - 1).max())
    out["up_constants"] = float(np.abs(ops.up @ ones_v - 1).max())

    def selfadj(p, w):
        ws = sp.diags(w) @ p
        return float(np.abs(ws - ws.T).max())

    out["m0_self_adjoint"] = selfadj(ops.m0, np.full(n, 1.0 / n))
    out["m_self_adjoint"] = selfadj(ops.m, ops.d1)
    out["m_par_self_adjoint"] = selfadj(ops.m_par, ops.d1)

    f1 = rng.standard_normal(n_e)
    f0 = rng.standard_normal(n)
    lhs = float(np.mean((ops.down @ f1) * f0))
    rhs = float(np.sum(ops.d1 * f1 * (ops.up @ f0)))
    out["down_up_adjoint"] = abs(lhs - rhs)

    du = (ops.down @ ops.up).toarray()
    half = 0.5 * (np.eye(n) + ops.m0.toarray()) if n <= DENSE_EIG_CAP else None
    if half is not None:
        out["down_up_identity"] = float(np.abs(du - half).max())
    return out


# -- concentration inequalities


def alon_chung_check(graph: Graph, t_set, lam: float | None = None) -> dict:
    """Induced-subgraph concentration: a set whose induced average degree is
    a delta fraction of the degree has at least (delta - lambda) of the
    vertices and (delta - lambda) * delta of the edges."""
    t = np.zeros(graph.n)
    t[np.asarray(t_set, dtype=np.int64)] = 1.0
    size = int(t.sum())
    if lam is None:
        lam = lambda2(graph).lambda2
    induced2 = float(t @ (graph.adj @ t))  # twice the induced edge weight
    delta = induced2 / (size * graph.degree)
    total_edges = graph.n * graph.degree / 2
    edge_frac = induced2 / 2 / total_edges
    set_bound = (delta - lam) * graph.n
    edge_bound = (delta - lam) * delta
    return {
        "delta": delta, "lambda": lam, "set_size": size,
        "set_bound": set_bound, "edge_frac": edge_frac, "edge_bound": edge_bound,
        "holds": size >= set_bound - 1e-9 and edge_frac >= edge_bound - 1e-9,
    }


def markov_concentration(p, weights: np.ndarray, indicator: np.ndarray,
                         lam: float) -> dict:
    """Operator form: if the stay probability of a set is a delta multiple of
    its mass, the mass is at least delta - lambda."""
    f = np.asarray(indicator, dtype=np.float64)
    mass = float(np.sum(weights * f * f))
    stay = float(np.sum(weights * f * (p @ f)))
    delta = stay / mass if mass else 0.0
    return {
        "delta": delta, "mass": mass, "stay": stay, "lambda": lam,
        "mass_bound": delta - lam, "stay_bound": delta * (delta - lam),
        "holds": mass >= delta - lam - 1e-9 and stay >= delta * (delta - lam) - 1e-9,
    }


def parallel_concentration(cx: SquareComplex, r_mask: np.ndarray,
                           lam: float) -> dict:
    """Exact stay probability of an edge set under the parallel walk, and the
    largest intersection with a single label class; when the stay ratio
    exceeds lambda, some class must hold at least (ratio - lambda) * n / 2
    of the set's edges."""
    r_mask = np.asarray(r_mask, dtype=bool)
    ra_mask, rb_mask = r_mask[:cx.n_ea], r_mask[cx.n_ea:]
    wa, wb = Fraction(1, 2 * cx.n_ea), Fraction(1, 2 * cx.n_eb)

    a_stay = int(r_mask[cx.a_par[ra_mask]].sum())
    b_stay = int(r_mask[cx.n_ea + cx.b_par[rb_mask]].sum())
    stay = wa * Fraction(a_stay, cx.nb) + wb * Fraction(b_stay, cx.na)
    mass = wa * int(ra_mask.sum()) + wb * int(rb_mask.sum())
    ratio = stay / mass if mass else Fraction(0)

    best = (0, "a", -1)
    for side, mask, labels in (("a", ra_mask, cx.a_edge_label),
                               ("b", rb_mask, cx.b_edge_label)):
        for rep in np.unique(labels):
            count = int((mask & (labels == rep)).sum())
            if count > best[0]:
                best = (count, side, int(rep))
    bound = (float(ratio) - lam) * cx.n / 2
    return {
        "stay_ratio": ratio, "mass": mass, "best_count": best[0],
        "best_side": best[1], "best_label": best[2], "class_bound": bound,
        "holds": float(ratio) <= lam or best[0] >= bound - 1e-9,
    }


# -- parallel-walk label classes and their vertex-walk shadow


def class_walk(cx: SquareComplex, side: str, rep: int):
    """The parallel walk restricted to one label class, plus the vertex each
    class edge maps to when the class is read as a vertex walk (the endpoint
    the representative generator moves away from)."""
    labels = cx.a_edge_label if side == "a" else cx.b_edge_label
    ids = np.flatnonzero(labels == rep)
    local = np.full(cx.n_ea if side == "a" else cx.n_eb, -1, dtype=np.int64)
    local[ids] = np.arange(len(ids))
    par = (cx.a_par if side == "a" else cx.b_par)[ids]
    deg = par.shape[1]
    p = sp.coo_matrix(
        (np.full(par.size, 1.0 / deg),
         (np.repeat(np.arange(len(ids)), deg), local[par].ravel())),
        shape=(len(ids), len(ids))).tocsr()
    edges = (cx.a_edges if side == "a" else cx.b_edges)[ids]
    gen_u = (cx.a_edge_gen_u if side == "a" else cx.b_edge_gen_u)[ids]
    u_of = np.where(gen_u == rep, edges[:, 0], edges[:, 1])
    return ids, p, u_of


# -- girth


def girth(graph: Graph, sources=None) -> float:
    """Shortest cycle length by breadth-first search from each source; exact
    when all vertices are scanned (a single source suffices on
    vertex-transitive graphs). Returns inf for forests."""
    coo = graph.adj.tocoo()
    loop = (coo.row == coo.col) & (coo.data != 0)
    if loop.any():
        return 1
    keep = (coo.row != coo.col) & (coo.data != 0)
    if keep.any() and coo.data[keep].max() >= 2:
        return 2
    simple = sp.csr_matrix(
        (np.ones(int(keep.sum())), (coo.row[keep], coo.col[keep])),
        shape=coo.shape)
    indptr, indices = simple.indptr, simple.indices
    n = graph.n
    best = math.inf
    for s in (range(n) if sources is None else sources):
        dist = np.full(n, -1, dtype=np.int64)
        dist[s] = 0
        frontier = [s]
        d = 0
        while frontier and 2 * d + 1 < best:
            d += 1
            discovered: dict[int, int] = {}
            found = math.inf
            for u in frontier:
                for w in indices[indptr[u]:indptr[u + 1]]:
                    dw = dist[w]
                    if dw == d - 1:
                        found = min(found, 2 * d - 1)
                    elif dw == -1:
                        if w in discovered and discovered[w] != u:
                            found = min(found, 2 * d)
                        discovered[w] = u
            if found < best:
                best = found
                break
            for w in discovered:
                dist[w] = d
            frontier = list(discovered)
        if best == 3:
            break
    return best


def cayley_girth(group: GroupTable, gens) -> float:
    """Exact girth of a Cayley graph by one breadth-first sweep from the
    identity (valid by vertex transitivity), without materializing edges."""
    gens = np.unique(np.asarray(gens, dtype=np.int64))
    dist = np.full(group.order, -1, dtype=np.int64)
    dist[group.identity] = 0
    frontier = np.array([group.identity], dtype=np.int64)
    d = 0
    while len(frontier):
        d += 1
        imgs = np.concatenate(
            [group.mul_arr(np.full(len(frontier), s), frontier) for s in gens])
        seen = dist[imgs]
        if (seen == d - 1).any():
            return 2 * d - 1
        fresh = imgs[seen == -1]
        uniq, counts = np.unique(fresh, return_counts=True)
        if (counts >= 2).any():
            # distinguish a true collision from one vertex discovered twice
            parents = np.tile(frontier, len(gens))[seen == -1]
            order = np.argsort(fresh, kind="stable")
            fs, ps = fresh[order], parents[order]
            starts = np.flatnonzero(np.r_[True, fs[1:] != fs[:-1]])
            for lo, hi in zip(starts, np.r_[starts[1:], len(fs)]):
                if hi - lo >= 2 and len(np.unique(ps[lo:hi])) >= 2:
                    return 2 * d
        dist[uniq] = d
        frontier = uniq
    return math.inf
