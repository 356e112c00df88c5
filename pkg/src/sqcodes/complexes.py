"""Left-right Cayley complexes.

Vertices are group elements; one generator set acts by left multiplication,
the other by right multiplication. Each commuting pattern g, ag, gb, agb
spans a square, and the no-conjugacy condition keeps every square
non-degenerate. The builder materializes canonical squares, labeled edges,
the per-vertex square grids, and the across-square (parallel) edge
adjacency, asserting every structural count it relies on.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import TncViolation
from .gensets import tnc_by_orders
from .groups import GroupTable, check_generator_set


@dataclass(frozen=True)
class TncCertificate:
    ok: bool
    method: str  # orders | exhaustive
    violations: tuple[tuple[int, int, int], ...] = ()


def check_tnc(group: GroupTable, a: np.ndarray, b: np.ndarray) -> TncCertificate:
    """Exhaustively verify that no conjugate of a left generator is a right
    generator; lists every violating (a, g, b) triple."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    g = np.arange(group.order, dtype=np.int64)
    inv_g = group.inv_arr(g)
    violations = []
    for a_el in a:
        conj = group.mul_arr(inv_g, group.mul_arr(np.full_like(g, a_el), g))
        bad = np.isin(conj, b)
        for gi in np.flatnonzero(bad):
            violations.append((int(a_el), int(gi), int(conj[gi])))
    return TncCertificate(ok=not violations, method="exhaustive",
                          violations=tuple(violations))


@dataclass
class SquareComplex:
    """A built complex; all arrays are immutable by convention.

    Edge ids are per side; a global edge id is the A-edge id, or n_ea plus
    the B-edge id. Square ids follow the sorted order of canonical triples.
    """

    group: GroupTable
    a_els: np.ndarray  # sorted element indices of the left set
    b_els: np.ndarray
    a_pos_inv: np.ndarray  # position of A[i]^{-1} in a_els
    b_pos_inv: np.ndarray
    squares: np.ndarray  # (n_sq, 3) canonical (a_el, g, b_el)
    square_vertices: np.ndarray  # (n_sq, 4): g, ag, gb, agb
    link_grid: np.ndarray  # (n, na, nb) square ids
    a_edges: np.ndarray  # (n_ea, 2) vertex pairs u < v, sorted
    b_edges: np.ndarray
    a_edge_gen_u: np.ndarray  # position i with A[i] u = v
    b_edge_gen_u: np.ndarray  # position j with u B[j] = v
    a_edge_label: np.ndarray  # min(i, pos of A[i]^{-1})
    b_edge_label: np.ndarray
    a_inc: np.ndarray  # (n, na) A-edge id of {g, A[i] g}
    b_inc: np.ndarray  # (n, nb) B-edge id of {g, g B[j]}
    a_edge_sq: np.ndarray  # (n_ea, nb) square ids along the edge
    b_edge_sq: np.ndarray  # (n_eb, na)
    a_par: np.ndarray  # (n_ea, nb) parallel A-edge ids
    b_par: np.ndarray  # (n_eb, na)
    tnc: TncCertificate = dc_field(repr=False, default=TncCertificate(True, "orders"))

    @property
    def n(self) -> int:
        return self.group.order

    @property
    def na(self) -> int:
        return len(self.a_els)

    @property
    def nb(self) -> int:
        return len(self.b_els)

    @property
    def n_ea(self) -> int:
        return len(self.a_edges)

    @property
    def n_eb(self) -> int:
        return len(self.b_edges)

    @property
    def n_edges(self) -> int:
        return self.n_ea + self.n_eb

    @property
    def n_squares(self) -> int:
        return len(self.squares)

    def vertex_link(self, g: int) -> np.ndarray:
        return self.link_grid[g]

    def parallel_neighbors(self, side: str, edge_id: int) -> np.ndarray:
        """Edge ids the parallel walk can move to, one per containing square."""
        return (self.a_par if side == "a" else self.b_par)[edge_id]

    def edge_endpoints(self, side: str, edge_id: int) -> tuple[int, int]:
        e = (self.a_edges if side == "a" else self.b_edges)[edge_id]
        return int(e[0]), int(e[1])

    def label_classes(self, side: str) -> dict[int, np.ndarray]:
        """Edge ids per label, keyed by the smaller generator position."""
        labels = self.a_edge_label if side == "a" else self.b_edge_label
        return {int(l): np.flatnonzero(labels == l) for l in np.unique(labels)}

    def summary(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.n,
            "degree_a": self.na,
            "degree_b": self.nb,
            "edges_a": self.n_ea,
            "edges_b": self.n_eb,
            "squares": self.n_squares,
            "tnc_method": self.tnc.method,
            "label_classes_a": {k: len(v) for k, v in self.label_classes("a").items()},
            "label_classes_b": {k: len(v) for k, v in self.label_classes("b").items()},
        }


def _encode(n: int, a: np.ndarray, g: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) * n + g) * n + b


def _edge_side(group: GroupTable, els: np.ndarray, left: bool):
    """Dedup the unordered vertex pairs of one side; returns edges (u, v),
    the incidence map (n, deg) -> edge id, and the generator position at u."""
    n = group.order
    deg = len(els)
    g = np.arange(n, dtype=np.int64)
    if left:
        other = group.mul_arr(els[:, None], g[None, :])  # (deg, n): A[i] g
    else:
        other = group.mul_arr(g[None, :], els[:, None])  # (deg, n): g B[j]
    u = np.minimum(g[None, :], other)
    v = np.maximum(g[None, :], other)
    keys = u * n + v
    uniq, inverse = np.unique(keys, return_inverse=True)
    inverse = inverse.reshape(deg, n)
    if 2 * len(uniq) != deg * n:
        raise TncViolation("edge incidences do not pair up; identity in the set?")
    edges = np.stack([uniq // n, uniq % n], axis=1).astype(np.int64)
    inc = inverse.T.astype(np.int64)  # inc[g, i] = edge id
    gen_u = np.empty(len(uniq), dtype=np.int64)
    from_u = g[None, :] == u  # presentation rooted at the smaller endpoint
    pos = np.broadcast_to(np.arange(deg)[:, None], (deg, n))
    gen_u[inverse[from_u]] = pos[from_u]
    return edges, inc, gen_u


def build_complex(group: GroupTable, a, b) -> SquareComplex:
    """Construct the complex for symmetric identity-free generator sets,
    verifying the no-conjugacy condition and every structural invariant."""
    a_els = check_generator_set(group, a)
    b_els = check_generator_set(group, b)
    n, na, nb = group.order, len(a_els), len(b_els)

    if tnc_by_orders(group, a_els, b_els):
        tnc = TncCertificate(ok=True, method="orders")
    else:
        tnc = check_tnc(group, a_els, b_els)
        if not tnc.ok:
            raise TncViolation(
                f"{len(tnc.violations)} conjugacy violations, first: "
                f"{tnc.violations[0]}")

    inv_a = group.inv_arr(a_els)
    inv_b = group.inv_arr(b_els)
    a_pos_inv = np.searchsorted(a_els, inv_a)
    b_pos_inv = np.searchsorted(b_els, inv_b)

    # canonical squares and the per-vertex grids
    g = np.arange(n, dtype=np.int64)
    keys = np.empty((na, nb, n), dtype=np.int64)
    for i, a_el in enumerate(a_els):
        ag = group.mul_arr(np.full(n, a_el), g)
        a_inv = inv_a[i]
        for j, b_el in enumerate(b_els):
            gb = group.mul_arr(g, np.full(n, b_el))
            agb = group.mul_arr(ag, np.full(n, b_el))
            b_inv = inv_b[j]
            k = _encode(n, np.full(n, a_el), g, np.full(n, b_el))
            k = np.minimum(k, _encode(n, np.full(n, a_inv), ag, np.full(n, b_el)))
            k = np.minimum(k, _encode(n, np.full(n, a_inv), agb, np.full(n, b_inv)))
            k = np.minimum(k, _encode(n, np.full(n, a_el), gb, np.full(n, b_inv)))
            keys[i, j] = k
    uniq_keys, inverse = np.unique(keys.ravel(), return_inverse=True)
    if (na * nb * n) % 4 or 4 * len(uniq_keys) != na * nb * n:
        raise TncViolation("square classes do not all have four members")
    link_grid = inverse.reshape(na, nb, n).transpose(2, 0, 1).astype(np.int64)

    b_part = uniq_keys % n
    rest = uniq_keys // n
    squares = np.stack([rest // n, rest % n, b_part], axis=1)
    sq_g = squares[:, 1]
    sq_ag = group.mul_arr(squares[:, 0], sq_g)
    sq_gb = group.mul_arr(sq_g, squares[:, 2])
    sq_agb = group.mul_arr(sq_ag, squares[:, 2])
    square_vertices = np.stack([sq_g, sq_ag, sq_gb, sq_agb], axis=1)
    sv = np.sort(square_vertices, axis=1)
    if (np.diff(sv, axis=1) == 0).any():
        raise TncViolation("a square has repeated vertices")

    # the grid rows of a vertex enumerate distinct squares
    flat = np.sort(link_grid.reshape(n, na * nb), axis=1)
    if (np.diff(flat, axis=1) == 0).any():
        raise TncViolation("vertex grid is not a bijection onto its squares")

    # distinct neighbors per vertex
    nbrs = np.concatenate([
        group.mul_arr(a_els[None, :], g[:, None]),
        group.mul_arr(g[:, None], b_els[None, :]),
    ], axis=1)
    nbrs.sort(axis=1)
    if (np.diff(nbrs, axis=1) == 0).any():
        raise TncViolation("a vertex has coinciding neighbors")

    a_edges, a_inc, a_edge_gen_u = _edge_side(group, a_els, left=True)
    b_edges, b_inc, b_edge_gen_u = _edge_side(group, b_els, left=False)
    assert 2 * len(a_edges) == na * n and 2 * len(b_edges) == nb * n

    a_edge_label = np.minimum(a_edge_gen_u, a_pos_inv[a_edge_gen_u])
    b_edge_label = np.minimum(b_edge_gen_u, b_pos_inv[b_edge_gen_u])
    for labels, pos_inv, els in ((a_edge_label, a_pos_inv, a_els),
                                 (b_edge_label, b_pos_inv, b_els)):
        reps, counts = np.unique(labels, return_counts=True)
        expect = np.where(pos_inv[reps] == reps, n // 2, n)
        if not (counts == expect).all():
            raise TncViolation("label class sizes are off")

    # squares along an edge, ordered by the opposite-side position; the
    # ordering is the same from both endpoints
    a_edge_sq = link_grid[a_edges[:, 0], a_edge_gen_u, :]
    alt = link_grid[a_edges[:, 1], a_pos_inv[a_edge_gen_u], :]
    if not (a_edge_sq == alt).all():
        raise TncViolation("A-edge square ordering depends on the endpoint")
    b_edge_sq = link_grid[b_edges[:, 0], :, b_edge_gen_u]
    alt = link_grid[b_edges[:, 1], :, b_pos_inv[b_edge_gen_u]]
    if not (b_edge_sq == alt).all():
        raise TncViolation("B-edge square ordering depends on the endpoint")

    # parallel adjacency: move across a containing square to the opposite
    # edge with the same label
    ub = group.mul_arr(a_edges[:, 0][:, None], b_els[None, :])
    a_par = a_inc[ub, a_edge_gen_u[:, None]]
    au = group.mul_arr(a_els[None, :], b_edges[:, 0][:, None])
    b_par = b_inc[au, b_edge_gen_u[:, None]]

    return SquareComplex(
        group=group, a_els=a_els, b_els=b_els,
        a_pos_inv=a_pos_inv, b_pos_inv=b_pos_inv,
        squares=squares, square_vertices=square_vertices, link_grid=link_grid,
        a_edges=a_edges, b_edges=b_edges,
        a_edge_gen_u=a_edge_gen_u, b_edge_gen_u=b_edge_gen_u,
        a_edge_label=a_edge_label, b_edge_label=b_edge_label,
        a_inc=a_inc, b_inc=b_inc,
        a_edge_sq=a_edge_sq, b_edge_sq=b_edge_sq,
        a_par=a_par, b_par=b_par,
        tnc=tnc,
    )
