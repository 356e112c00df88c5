"""Two-sided Cayley complex structure: counts, incidence coherence, no-conjugacy."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sqcodes import complexes, groups
from sqcodes.errors import TncViolation


def vertex_set_of_square(group, a, g, b):
    ag = group.mul(a, g)
    gb = group.mul(g, b)
    agb = group.mul(ag, b)
    return {g, ag, gb, agb}


def test_edge_and_square_counts(all_instances):
    for inst in all_instances:
        cx = inst.cx
        n, na, nb = cx.n, cx.na, cx.nb
        assert 2 * cx.n_edges == (na + nb) * n
        assert 4 * cx.n_squares == na * nb * n
        assert cx.n_ea * 2 == na * n and cx.n_eb * 2 == nb * n
        assert cx.a_edges.shape == (cx.n_ea, 2)
        assert cx.squares.shape == (cx.n_squares, 3)
        assert cx.link_grid.shape == (n, na, nb)


def test_squares_have_four_distinct_vertices(all_instances):
    for inst in all_instances:
        sv = inst.cx.square_vertices
        # row-wise distinctness, vectorized: sort and compare neighbors
        s = np.sort(sv, axis=1)
        assert (s[:, 1:] > s[:, :-1]).all(), inst.name


def test_link_is_bijective_per_vertex(all_instances):
    for inst in all_instances:
        grid = inst.cx.link_grid
        n = grid.shape[0]
        flat = grid.reshape(n, -1)
        srt = np.sort(flat, axis=1)
        assert (srt[:, 1:] > srt[:, :-1]).all(), inst.name
        # collectively, every square shows up in exactly four links
        counts = np.bincount(flat.ravel(), minlength=inst.cx.n_squares)
        assert (counts == 4).all(), inst.name


def test_link_entries_are_the_right_squares(small_instances, psl16_inst):
    for inst in small_instances:
        cx = inst.cx
        for g in range(cx.n):
            for i, a in enumerate(cx.a_els):
                for j, b in enumerate(cx.b_els):
                    s = int(cx.link_grid[g, i, j])
                    expect = vertex_set_of_square(cx.group, int(a), g, int(b))
                    assert set(int(v) for v in cx.square_vertices[s]) == expect
    cx = psl16_inst.cx
    rng = np.random.default_rng(0)
    for _ in range(200):
        g = int(rng.integers(cx.n))
        i = int(rng.integers(cx.na))
        j = int(rng.integers(cx.nb))
        s = int(cx.link_grid[g, i, j])
        expect = vertex_set_of_square(cx.group, int(cx.a_els[i]), g, int(cx.b_els[j]))
        assert set(int(v) for v in cx.square_vertices[s]) == expect


def test_edges_join_generator_translates(small_instances):
    for inst in small_instances:
        cx = inst.cx
        g = cx.group
        a_set = set(int(x) for x in cx.a_els)
        b_set = set(int(x) for x in cx.b_els)
        for u, v in cx.a_edges:
            assert any(g.mul(a, int(u)) == int(v) for a in a_set)
        for u, v in cx.b_edges:
            assert any(g.mul(int(u), b) == int(v) for b in b_set)


def test_vertex_incidence_degree(all_instances):
    for inst in all_instances:
        cx = inst.cx
        assert cx.a_inc.shape == (cx.n, cx.na)
        assert cx.b_inc.shape == (cx.n, cx.nb)
        # each listed edge really touches the vertex
        rows = np.arange(cx.n)[:, None]
        assert ((cx.a_edges[cx.a_inc][:, :, 0] == rows)
                | (cx.a_edges[cx.a_inc][:, :, 1] == rows)).all()


def test_parallel_edges_partition_squares(small_instances):
    for inst in small_instances:
        cx = inst.cx
        for e in range(cx.n_ea):
            own = set(int(v) for v in cx.a_edges[e])
            for j in range(cx.nb):
                s = int(cx.a_edge_sq[e, j])
                par = int(cx.a_par[e, j])
                other = set(int(v) for v in cx.a_edges[par])
                sq = set(int(v) for v in cx.square_vertices[s])
                assert own | other == sq and not (own & other)


def test_label_class_sizes(all_instances):
    for inst in all_instances:
        cx = inst.cx
        for side, els in (("a", cx.a_els), ("b", cx.b_els)):
            classes = cx.label_classes(side)
            total = 0
            for rep, edges in classes.items():
                el = int(els[rep])  # keys are generator positions
                expect = cx.n // 2 if cx.group.inv(el) == el else cx.n
                assert len(edges) == expect, (inst.name, side, rep)
                total += len(edges)
            assert total == (cx.n_ea if side == "a" else cx.n_eb)


def test_tnc_certificate_for_all(all_instances):
    for inst in all_instances:
        assert inst.cx.tnc.ok
        assert inst.cx.tnc.method in ("exhaustive", "orders")


def test_tnc_violation_abelian_overlap():
    g = groups.cyclic_group(8)
    cert = complexes.check_tnc(g, [1, 7], [1, 7])
    assert not cert.ok and len(cert.violations) > 0
    with pytest.raises(TncViolation):
        complexes.build_complex(g, [1, 7], [1, 7])


def test_tnc_violation_conjugate_transpositions():
    g = groups.perm_group([(1, 0, 2), (0, 2, 1)], name="S3")
    invol = [i for i in range(6) if groups.element_order(g, i) == 2]
    assert len(invol) == 3
    cert = complexes.check_tnc(g, [invol[0]], [invol[1]])
    assert not cert.ok


@pytest.mark.filterwarnings("ignore::sqcodes.errors.NonGeneratingSet")
def test_involution_generator_halves_class():
    g = groups.cyclic_group(8)
    cx = complexes.build_complex(g, [4], [3, 5])
    assert cx.n_ea == 4  # involution side: n/2 edges in the single class
    assert cx.n_squares == 1 * 2 * 8 // 4


@st.composite
def abelian_complex_params(draw):
    n = draw(st.integers(5, 14))
    half = [x for x in range(1, n) if x <= n - x]
    a_rep = draw(st.sampled_from(half))
    b_rep = draw(st.sampled_from([x for x in half if x != a_rep]))
    return n, a_rep, b_rep


@pytest.mark.filterwarnings("ignore::sqcodes.errors.NonGeneratingSet")
@settings(max_examples=25, deadline=None)
@given(abelian_complex_params())
def test_random_cyclic_complex_counts(params):
    n, a_rep, b_rep = params
    g = groups.cyclic_group(n)
    a = sorted({a_rep, (n - a_rep) % n})
    b = sorted({b_rep, (n - b_rep) % n})
    cx = complexes.build_complex(g, a, b)
    assert 2 * cx.n_edges == (len(a) + len(b)) * n
    assert 4 * cx.n_squares == len(a) * len(b) * n
    flat = cx.link_grid.reshape(n, -1)
    srt = np.sort(flat, axis=1)
    assert (srt[:, 1:] > srt[:, :-1]).all()
