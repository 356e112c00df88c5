"""Group tables and finite fields: axioms, orders, and known interop facts."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sqcodes import groups
from sqcodes.errors import IdentityInSet, NonGeneratingSet, NonSymmetricSet


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 40), st.data())
def test_cyclic_group_is_addition_mod_n(n, data):
    g = groups.cyclic_group(n)
    x = data.draw(st.integers(0, n - 1))
    y = data.draw(st.integers(0, n - 1))
    z = data.draw(st.integers(0, n - 1))
    assert g.order == n
    assert g.mul(x, y) == (x + y) % n
    assert g.inv(x) == (-x) % n
    assert g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z))
    assert g.mul(x, g.identity) == x


def test_cyclic_element_orders():
    import math
    g = groups.cyclic_group(12)
    for x in range(12):
        expect = 1 if x == 0 else 12 // math.gcd(12, x)
        assert groups.element_order(g, x) == expect


def test_perm_group_s3():
    g = groups.perm_group([(1, 0, 2), (0, 2, 1)], name="S3")
    assert g.order == 6
    rep = groups.validate_group(g)
    assert rep["associativity"] and rep["identity"] and rep["inverses"]
    assert rep["associativity_mode"] == "full"
    # every element has an order dividing 6
    for i in range(6):
        assert 6 % groups.element_order(g, i) == 0


def test_perm_group_closure_cap():
    with pytest.raises(Exception):
        groups.perm_group([tuple((i + 1) % 30 for i in range(30))], order_cap=10)


def test_validate_group_samples_large_groups():
    f = groups.make_field(2, 4)
    g = groups.psl2_group(f)
    rep = groups.validate_group(g, sample=2000)
    assert rep["associativity"] and rep["identity"] and rep["inverses"]
    assert rep["associativity_mode"] == "sampled"


def test_psl2_16_order_and_matrix_roundtrip():
    f = groups.make_field(2, 4)
    g = groups.psl2_group(f)
    q = 16
    assert g.order == q**3 - q
    rng = np.random.default_rng(0)
    for i in rng.integers(0, g.order, size=25):
        a, b, c, d = g.matrix(int(i))
        assert g.index_of_matrix((a, b, c, d)) == int(i)
        det = f.sub(f.mul(a, d), f.mul(b, c))
        assert det == f.one


def test_psl2_multiplication_matches_matrices():
    f = groups.make_field(2, 2)
    g = groups.psl2_group(f)
    rng = np.random.default_rng(1)
    for _ in range(40):
        i, j = (int(v) for v in rng.integers(0, g.order, size=2))
        a1, b1, c1, d1 = g.matrix(i)
        a2, b2, c2, d2 = g.matrix(j)
        prod = (f.add(f.mul(a1, a2), f.mul(b1, c2)),
                f.add(f.mul(a1, b2), f.mul(b1, d2)),
                f.add(f.mul(c1, a2), f.mul(d1, c2)),
                f.add(f.mul(c1, b2), f.mul(d1, d2)))
        assert g.mul(i, j) == g.index_of_matrix(prod)


def test_conjugate_definition():
    g = groups.cyclic_group(9)
    # abelian: conjugation is the identity map
    for x in range(9):
        assert g.conjugate(4, x) == x
    s3 = groups.perm_group([(1, 0, 2), (0, 2, 1)], name="S3")
    for gi in range(6):
        for a in range(6):
            assert s3.conjugate(gi, a) == s3.mul(s3.mul(s3.inv(gi), a), gi)


def test_mul_arr_matches_scalar():
    g = groups.cyclic_group(15)
    rng = np.random.default_rng(2)
    xs = rng.integers(0, 15, size=30)
    ys = rng.integers(0, 15, size=30)
    out = g.mul_arr(xs, ys)
    assert all(out[t] == g.mul(int(xs[t]), int(ys[t])) for t in range(30))
    assert np.array_equal(g.inv_arr(xs), [(15 - int(x)) % 15 for x in xs])


def test_subgroup_closure_proper_subgroup():
    g = groups.cyclic_group(16)
    closure = groups.subgroup_closure(g, [4, 12])
    assert sorted(int(x) for x in closure) == [0, 4, 8, 12]


def test_check_generator_set_contract():
    g = groups.cyclic_group(16)
    s = groups.check_generator_set(g, [1, 15])
    assert sorted(int(x) for x in s) == [1, 15]
    with pytest.raises(IdentityInSet):
        groups.check_generator_set(g, [0, 1, 15])
    with pytest.raises(NonSymmetricSet):
        groups.check_generator_set(g, [1, 2])
    with pytest.raises(NonGeneratingSet):
        groups.check_generator_set(g, [4, 12], require_generating=True,
                                   warn_non_generating=False)


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (5, 1)])
def test_field_axioms(p, k):
    f = groups.make_field(p, k)
    order = p**k
    assert f.order == order
    rng = np.random.default_rng(order)
    for _ in range(60):
        a, b, c = (int(v) for v in rng.integers(0, order, size=3))
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, f.neg(a)) == f.zero
        if a != f.zero:
            assert f.mul(a, f.inv(a)) == f.one
    # multiplicative group is cyclic of order p^k - 1: Lagrange on every unit
    for a in range(1, order):
        assert f.pow(a, order - 1) == f.one
    assert f.pow(f.zero, 0) == f.one


def test_field_char2_frobenius_and_sqrt():
    f = groups.make_field(2, 4)
    for a in range(16):
        for b in range(16):
            lhs = f.pow(f.add(a, b), 2)
            rhs = f.add(f.pow(a, 2), f.pow(b, 2))
            assert lhs == rhs
    for a in range(16):
        r = f.sqrt(a)
        assert f.mul(r, r) == a


def test_field_subfield_embedding():
    f = groups.make_field(2, 4)
    sub = f.subfield(4)
    assert len(sub) == 4
    # closed under add and mul, and fixed by x -> x^4
    for a in sub:
        assert f.pow(a, 4) == a
        for b in sub:
            assert f.add(a, b) in sub and f.mul(a, b) in sub


def test_field_modulus_is_irreducible_sympy_oracle():
    from sympy import GF, Poly, Symbol
    x = Symbol("x")
    for p, k in [(2, 2), (2, 4), (3, 2)]:
        f = groups.make_field(p, k)
        poly = Poly(list(reversed(f.modulus)), x, domain=GF(p))
        assert poly.is_irreducible


def test_group_header_text_mentions_order():
    g = groups.cyclic_group(8)
    text = groups.group_header_text(g, {"a": [1, 7]})
    assert "8" in text and "Z8" in text
