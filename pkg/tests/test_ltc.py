"""Square Tanner code assembly, the local tester, and the theorem constants."""

from fractions import Fraction

import numpy as np
import pytest

from sqcodes import codes, gf2, ltc
from tests.conftest import corrupt


def brute_zeta(inst, f):
    """Rejection probability recounted from first principles."""
    bad = 0
    for g in range(inst.cx.n):
        view = ltc.local_view(inst, f, g)
        if not codes.tensor_membership(inst.code_a, inst.code_b, view.grid):
            bad += 1
    return Fraction(bad, inst.cx.n)


def test_parity_systems_have_equal_nullspace(small_instances):
    for inst in small_instances:
        assert ltc.nullspace_match(inst), inst.name


def test_codewords_have_tensor_local_views(small_instances):
    for inst in small_instances:
        f = ltc.random_codeword(inst, 7)
        for g in range(inst.cx.n):
            view = ltc.local_view(inst, f, g)
            assert view.grid.shape == (inst.cx.na, inst.cx.nb)
            assert codes.tensor_membership(inst.code_a, inst.code_b, view.grid)


def test_zeta_matches_brute_recount(z8_inst, z12_inst):
    rng = np.random.default_rng(2)
    for inst in (z8_inst, z12_inst):
        for _ in range(20):
            f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
            assert ltc.zeta(inst, f) == brute_zeta(inst, f)


def test_zeta_zero_iff_codeword(z12_inst):
    inst = z12_inst
    rng = np.random.default_rng(3)
    for _ in range(15):
        f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
        vec = gf2.BitVector.from_bits([int(b) for b in f])
        in_code = inst.h_vertices.mul_vec(vec).weight == 0
        assert (ltc.zeta(inst, f) == 0) == in_code


def test_sample_test_reads_full_local_pattern(small_instances):
    for inst in small_instances:
        f = corrupt(inst, seed=11, weight=2)
        for seed in range(10):
            out = ltc.sample_test(inst, f, seed=seed)
            assert out["queries"] == inst.cx.na * inst.cx.nb
            assert len(out["queried"]) == out["queries"]
            view = ltc.local_view(inst, f, out["vertex"])
            assert out["accept"] == codes.tensor_membership(
                inst.code_a, inst.code_b, view.grid)
        once = ltc.sample_test(inst, f, seed=4)
        again = ltc.sample_test(inst, f, seed=4)
        assert once["vertex"] == again["vertex"]
        assert np.array_equal(once["queried"], again["queried"])


def test_random_codeword_is_deterministic_and_valid(small_instances):
    for inst in small_instances:
        w1 = ltc.random_codeword(inst, 9)
        w2 = ltc.random_codeword(inst, 9)
        assert np.array_equal(w1, w2)
        assert ltc.zeta(inst, w1) == 0


def test_rate_bounds_hold_exactly(all_instances):
    for inst in all_instances:
        out = ltc.rate_bounds(inst)
        rho_a, rho_b = inst.code_a.rate, inst.code_b.rate
        assert out["generic"] == 2 * (rho_a + rho_b) - 3
        assert out["measured"] == Fraction(inst.code.dim, inst.n_bits)
        assert out["measured"] >= out["generic"]
        assert out["measured"] >= out["cover"]
        nu = out["nu"]
        assert out["cover"] == 4 * nu * rho_a * rho_b + 1 - 4 * nu
        if out["bipartite"] is not None:
            assert out["bipartite"] == 2 * rho_a * rho_b - 1
            assert out["measured"] >= out["bipartite"]


def test_z8_rate_and_cover_values(z8_inst):
    out = ltc.rate_bounds(z8_inst)
    assert out["measured"] == Fraction(1, 8)
    assert out["generic"] == -1
    assert out["nu"] == Fraction(1, 2)
    assert out["bipartite"] == Fraction(-1, 2)


def test_vertex_cover_is_a_cover(small_instances):
    for inst in small_instances:
        cover, nu, method = ltc.vertex_cover(inst.cx)
        cset = set(int(v) for v in cover)
        assert nu == Fraction(len(cset), inst.cx.n)
        for sq in inst.cx.square_vertices:
            assert any(int(v) in cset for v in sq), inst.name


def test_skeleton_bipartition_is_proper(z8_inst, z16_inst):
    for inst in (z8_inst, z16_inst):
        part = ltc.skeleton_bipartition(inst.cx)
        assert part is not None
        for u, v in inst.cx.a_edges:
            assert part[int(u)] != part[int(v)]
        for u, v in inst.cx.b_edges:
            assert part[int(u)] != part[int(v)]


def test_skeleton_bipartition_absent_on_odd_cycles(z12_inst):
    # A side contains the involution 6, giving odd cycles in the skeleton
    assert ltc.skeleton_bipartition(z12_inst.cx) is None


def test_distance_report_z8_exact(z8_inst):
    import math
    out = ltc.distance_report(z8_inst, lam=math.cos(math.pi / 4))
    assert out["exact"]
    assert out["measured"] == 8 and out["measured_relative"] == 1
    assert out["bound_relative"] == pytest.approx(1 - math.cos(math.pi / 4))
    assert out["measured_relative"] >= out["bound_relative"]


def test_kappa_theorem_pinned_example():
    tc = ltc.kappa_theorem(2, 2, Fraction(1), Fraction(1), Fraction(1, 2), Fraction(0))
    assert tc.c == Fraction(1, 17)
    assert tc.kappa == Fraction(1, 136)
    assert tc.condition_holds
    # with lambda above c the premise fails and kappa is not asserted
    tc2 = ltc.kappa_theorem(2, 2, Fraction(1), Fraction(1), Fraction(1, 2),
                            Fraction(707, 1000))
    assert not tc2.condition_holds


def test_word_text_roundtrip(z12_inst):
    f = corrupt(z12_inst, seed=4, weight=3)
    text = ltc.word_to_text(f)
    assert set(text) <= {"0", "1"} and len(text) == z12_inst.n_bits
    back = ltc.word_from_text(text, z12_inst)
    assert np.array_equal(back, f)


def test_instance_summary_fields(z8_inst):
    s = z8_inst.summary()
    assert s["bits"] == 8 and s["dim"] == 1 and s["mode"] == "edges"
    assert s["rate"] == "1/8"
