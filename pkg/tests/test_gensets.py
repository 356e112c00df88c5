"""Morgenstern generator sets and degree reduction.

The unit-equation solutions, involution property, generation, and the
girth > 4 facts are all checked directly on the built groups; the paper-level
spectral consequences live in test_spectral and test_acceptance.
"""

import numpy as np
import pytest

from sqcodes import gensets, groups, spectral
from sqcodes.errors import NoSymmetricSubset


@pytest.fixture(scope="module")
def mb24():
    return gensets.morgenstern_b(2, 4)


def test_unit_equation_solutions(mb24):
    # gamma^2 + gamma*delta + delta^2*eps = 1 over the base field of order q
    mb = mb24
    fld = mb.field
    eps = mb.epsilon
    count = 0
    for gamma, delta in mb.solutions:
        lhs = fld.add(fld.add(fld.mul(gamma, gamma), fld.mul(gamma, delta)),
                      fld.mul(fld.mul(delta, delta), eps))
        assert lhs == fld.one
        count += 1
    assert count == mb.q + 1


def test_b_elements_are_involutions_and_generate(mb24):
    g = mb24.group
    assert len(mb24.b) == mb24.q + 1
    for x in mb24.b:
        assert groups.element_order(g, int(x)) == 2
    closure = groups.subgroup_closure(g, list(mb24.b))
    assert closure.size == g.order


@pytest.mark.parametrize("q,i", [(2, 4), (2, 6)])
def test_b_graph_girth_exceeds_four(q, i):
    mb = gensets.morgenstern_b(q, i, order_cap=300000)
    assert spectral.cayley_girth(mb.group, mb.b) > 4


def test_a_products_multiset_size(mb24):
    a_full = gensets.morgenstern_a(mb24.group, mb24.b)
    q = mb24.q
    assert len(a_full) == q * q + q
    # ordered products b_t b_s with t != s, recomputed directly
    expect = sorted(
        mb24.group.mul(int(s), int(t))
        for s in mb24.b for t in mb24.b if s != t
    )
    assert sorted(int(x) for x in a_full) == expect


def test_a_prime_is_symmetric_subset(mb24):
    g = mb24.group
    a_p = gensets.morgenstern_a_prime(g, mb24.b)
    a_full = set(int(x) for x in gensets.morgenstern_a(g, mb24.b))
    seen = set(int(x) for x in a_p)
    assert len(a_p) == len(seen)
    assert seen <= a_full
    for x in seen:
        assert g.inv(x) in seen
        assert x != g.identity


def test_pair_satisfies_total_no_conjugacy(mb24, psl16_pair):
    mb, pair = psl16_pair
    assert gensets.tnc_by_orders(mb.group, pair.a, pair.b)


def test_q4_pair_shapes(q4_pair):
    mb, pair = q4_pair
    assert mb.q == 4 and mb.group.order == 16**3 - 16
    assert len(mb.b) == 5
    assert len(pair.a) == len(set(int(x) for x in pair.a))


def test_degree_reduce_properties(q4_pair):
    mb, _ = q4_pair
    g = mb.group
    a_p = gensets.morgenstern_a_prime(g, mb.b)
    for target in (len(a_p) - 2, 4):
        red = gensets.degree_reduce(g, a_p, target)
        assert len(red) == target
        sred = set(int(x) for x in red)
        assert sred <= set(int(x) for x in a_p)
        for x in sred:
            assert g.inv(x) in sred and x != g.identity


def test_degree_reduce_impossible_target():
    g = groups.cyclic_group(7)
    s = np.array([1, 6], dtype=np.int64)  # one inverse pair, orders 7
    with pytest.raises(NoSymmetricSubset):
        gensets.degree_reduce(g, s, 1)


def test_reduction_bounds_formulas():
    out = gensets.reduction_bounds(0.25, n_removed=20, n_kept=80, n_original=100)
    assert out["additive"] == pytest.approx(0.25 + 2 * 20 / 80)
    # quadruple window: removed <= 2*sqrt(100) and 2/sqrt(100) <= lam <= 1/3
    assert out["quadruple"] == pytest.approx(1.0)
    out2 = gensets.reduction_bounds(0.05, n_removed=20, n_kept=80, n_original=100)
    assert out2["quadruple"] is None  # lam below 2/sqrt(n_original)
    out3 = gensets.reduction_bounds(0.25, n_removed=30, n_kept=70, n_original=100)
    assert out3["quadruple"] is None  # too many removed


def test_pair_provenance_label(psl16_pair):
    _, pair = psl16_pair
    assert pair.provenance == "morgenstern"
