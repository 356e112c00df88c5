"""Iterative self-correction: init bound, strict descent, termination, output."""

from fractions import Fraction

import numpy as np
import pytest

from sqcodes import codes, decoder, gf2, ltc
from sqcodes.errors import TensorDimCapExceeded
from tests.conftest import corrupt


def test_init_views_are_nearest_tensor_words(z12_inst):
    inst = z12_inst
    book = codes.codebook(inst.tensor)
    rng = np.random.default_rng(1)
    for _ in range(10):
        f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
        asg = decoder.init_views(inst, f)
        for g in range(inst.cx.n):
            raw = ltc.local_view(inst, f, g).grid.reshape(-1)
            got_dist = int((asg.views[g] ^ raw).sum())
            _, best = codes.nearest_codeword(book, raw)
            assert got_dist == best
            assert inst.tensor.contains(
                gf2.BitVector.from_bits([int(b) for b in asg.views[g]]))


def test_init_dispute_at_most_twice_zeta(small_instances):
    for inst in small_instances:
        rng = np.random.default_rng(4)
        for w in (0, 1, 2, 4):
            for t in range(10):
                f = corrupt(inst, seed=100 * w + t, weight=w)
                asg = decoder.init_views(inst, f)
                assert decoder.delta(asg) <= 2 * ltc.zeta(inst, f), (inst.name, w)


def test_delta_counts_dispute_edges(z12_inst):
    inst = z12_inst
    rng = np.random.default_rng(6)
    for _ in range(10):
        f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
        asg = decoder.init_views(inst, f)
        mask = decoder.dispute_mask(asg)
        assert decoder.delta(asg) == Fraction(int(mask.sum()), inst.cx.n_edges)


def test_dispute_mask_matches_view_disagreement(z8_inst):
    inst = z8_inst
    cx = inst.cx
    rng = np.random.default_rng(7)
    for _ in range(5):
        f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
        asg = decoder.init_views(inst, f)
        mask = decoder.dispute_mask(asg)
        grids = asg.views.reshape(cx.n, cx.na, cx.nb)
        for e in range(cx.n_ea):
            u, v = (int(x) for x in cx.a_edges[e])
            shared = sorted(int(s) for s in cx.a_edge_sq[e])
            bits_u = {s: None for s in shared}
            disagree = False
            for g in (u, v):
                for i in range(cx.na):
                    for j in range(cx.nb):
                        s = int(cx.link_grid[g, i, j])
                        if s in bits_u:
                            if bits_u[s] is None:
                                bits_u[s] = int(grids[g, i, j])
                            elif bits_u[s] != int(grids[g, i, j]):
                                disagree = True
            assert mask[e] == disagree


def test_naive_descent_is_strict_and_terminates(z8_inst, z12_inst):
    for inst in (z8_inst, z12_inst):
        rng = np.random.default_rng(9)
        for _ in range(8):
            f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
            asg = decoder.init_views(inst, f)
            d = decoder.delta(asg)
            steps = 0
            while decoder.step(asg):
                d2 = decoder.delta(asg)
                assert d2 < d  # every committed move strictly lowers delta
                d = d2
                steps += 1
                assert steps <= inst.cx.n_edges  # descent cannot outlast the edge count
            # no improving move remains
            assert not decoder.step(asg)


def test_run_matches_naive_loop(z12_inst):
    inst = z12_inst
    rng = np.random.default_rng(12)
    for _ in range(15):
        f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
        out = decoder.run(inst, f)
        asg = decoder.init_views(inst, f)
        naive = 0
        while decoder.step(asg):
            naive += 1
        assert out.iterations == naive
        assert out.delta_final == decoder.delta(asg)


def test_run_termination_and_output_contracts(small_instances):
    for inst in small_instances:
        rng = np.random.default_rng(17)
        bound_factor = 4 * (1 + inst.cx.na + inst.cx.nb)
        for t in range(25):
            f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
            z = ltc.zeta(inst, f)
            out = decoder.run(inst, f)
            assert out.zeta_in == z
            assert out.delta_init <= 2 * z
            assert out.iterations <= out.delta_init * inst.cx.n_edges
            if out.verdict == "codeword":
                assert out.codeword is not None
                assert ltc.zeta(inst, out.codeword) == 0
                assert out.dist_in_out == Fraction(
                    int((out.codeword ^ f).sum()), inst.n_bits)
                assert out.dist_in_out <= bound_factor * z
            else:
                assert out.verdict == "far"
                assert out.delta_final > 0
                assert out.codeword is None and out.dist_in_out is None


def test_codeword_is_fixed_point(small_instances):
    for inst in small_instances:
        f = ltc.random_codeword(inst, 21)
        out = decoder.run(inst, f)
        assert out.verdict == "codeword"
        assert out.iterations == 0
        assert out.zeta_in == 0 and out.delta_init == 0
        assert out.dist_in_out == 0
        assert np.array_equal(out.codeword, f)


def test_single_flip_recovers_base_codeword(z8_inst, z16_inst):
    for inst in (z8_inst, z16_inst):
        base = ltc.random_codeword(inst, 33)
        for j in range(0, inst.n_bits, max(1, inst.n_bits // 8)):
            f = base.copy()
            f[j] ^= 1
            out = decoder.run(inst, f)
            assert out.verdict == "codeword"
            assert np.array_equal(out.codeword, base), (inst.name, j)


def test_weighted_delta_equals_uniform_when_degrees_match(z8_inst, z16_inst):
    # |A| == |B| makes the stationary edge weights uniform
    for inst in (z8_inst, z16_inst):
        rng = np.random.default_rng(3)
        f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
        asg = decoder.init_views(inst, f)
        assert decoder.delta(asg) == decoder.delta_weighted(asg)


def test_weighted_delta_differs_when_degrees_differ(z12_inst):
    rng = np.random.default_rng(3)
    seen_diff = False
    for _ in range(10):
        f = rng.integers(0, 2, size=z12_inst.n_bits, dtype=np.uint8)
        asg = decoder.init_views(z12_inst, f)
        if decoder.delta(asg) != decoder.delta_weighted(asg):
            seen_diff = True
    assert seen_diff


def test_dispute_diagnostics_on_terminated_state(z12_inst):
    inst = z12_inst
    kappa0 = codes.agreement_kappa(inst.code_a, inst.code_b).kappa
    rng = np.random.default_rng(23)
    seen_disputes = False
    for _ in range(10):
        f = rng.integers(0, 2, size=inst.n_bits, dtype=np.uint8)
        asg = decoder.init_views(inst, f)
        while decoder.step(asg):
            pass
        diag = decoder.dispute_diagnostics(asg, kappa0=kappa0)
        if diag["n_disputes"] == 0:
            continue
        seen_disputes = True
        for side in ("edge_span_a", "edge_span_b"):
            if side in diag:
                assert diag[side]["holds"]
                assert (diag[side]["counts"] >= diag[side]["need"]).all()
        # terminated states: one-step dispute rate <= two-step rate / kappa0
        assert all(diag["vertex_holds"])
        for lhs, rhs in zip(diag["vertex_lhs"], diag["vertex_rhs"]):
            assert lhs <= rhs / kappa0
    assert seen_disputes


def test_tensor_dimension_cap_is_enforced():
    from sqcodes import complexes, groups
    g16 = groups.cyclic_group(16)
    cx = complexes.build_complex(g16, [1, 15, 3, 13, 5, 11], [7, 9, 2, 14, 6, 10])
    big = ltc.assemble(cx, codes.parity_code(6), codes.parity_code(6))
    with pytest.raises(TensorDimCapExceeded):
        decoder.init_views(big, np.zeros(big.n_bits, dtype=np.uint8))
