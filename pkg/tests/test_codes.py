"""Component codes, tensor products, and the local-testability oracles.

The expander certificate and the nearest-codeword search are re-derived
here by brute force; the agreement/robustness constants for tiny tensor
pairs are pinned to exhaustively computed values.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sqcodes import codes, gf2
from sqcodes.errors import SizeCapExceeded


def as_vec(bits):
    return gf2.BitVector.from_bits([int(b) for b in bits])


def test_repetition_and_parity_parameters():
    for n in (2, 3, 4, 6):
        rep = codes.repetition_code(n)
        assert (rep.n, rep.dim, rep.distance, rep.distance_exact) == (n, 1, n, True)
        assert rep.delta == 1
        par = codes.parity_code(n)
        assert (par.n, par.dim, par.distance) == (n, n - 1, 2)
        assert par.rate == Fraction(n - 1, n)


def test_generator_parity_duality():
    for code in (codes.parity_code(4), codes.repetition_code(3),
                 codes.random_ldpc(3, 4, 8, 58)[0]):
        prod = code.parity.matmul(code.gen.transpose())
        assert prod.is_zero()
        assert code.gen.rows + code.parity.rows >= code.n
        rank_h, _, _ = gf2.rank_and_rref(code.parity)
        assert code.dim == code.n - rank_h


def test_codebook_enumerates_row_space():
    par3 = codes.parity_code(3)
    book = codes.codebook(par3)
    assert book.words.shape == (4, 3)
    assert not book.words[0].any()
    seen = {tuple(int(b) for b in w) for w in book.words}
    expect = {tuple(int(b) for b in w) for w in
              itertools.product((0, 1), repeat=3) if sum(w) % 2 == 0}
    assert seen == expect


def test_nearest_codeword_matches_brute():
    par4 = codes.parity_code(4)
    book = codes.codebook(par4)
    rng = np.random.default_rng(0)
    targets = rng.integers(0, 2, size=(20, 4), dtype=np.uint8)
    for t in targets:
        idx, dist = codes.nearest_codeword(book, t)
        brute = min(int((w ^ t).sum()) for w in book.words)
        assert dist == brute
        assert int((book.words[idx] ^ t).sum()) == dist
    idxs, dists = codes.nearest_batch(book, targets)
    for t, i, d in zip(targets, idxs, dists):
        assert d == min(int((w ^ t).sum()) for w in book.words)
        assert int((book.words[i] ^ t).sum()) == d


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4), st.integers(2, 4), st.data())
def test_tensor_dimensions_and_distance(n1, n2, data):
    g1 = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=n1, max_size=n1),
                            min_size=1, max_size=n1))
    g2 = data.draw(st.lists(st.lists(st.integers(0, 1), min_size=n2, max_size=n2),
                            min_size=1, max_size=n2))
    c1 = codes.from_generator(gf2.BitMatrix.from_dense(np.array(g1, dtype=np.uint8)))
    c2 = codes.from_generator(gf2.BitMatrix.from_dense(np.array(g2, dtype=np.uint8)))
    t = codes.tensor_code(c1, c2)
    assert t.n == n1 * n2
    assert t.dim == c1.dim * c2.dim
    if c1.dim and c2.dim:
        assert t.distance == c1.distance * c2.distance


def test_tensor_membership_orientation():
    rep2, par3 = codes.repetition_code(2), codes.parity_code(3)
    ok = np.array([[0, 1, 1], [0, 1, 1]], dtype=np.uint8)
    assert codes.tensor_membership(rep2, par3, ok)
    assert not codes.tensor_membership(rep2, par3,
                                       np.array([[0, 1, 1], [0, 0, 1]], dtype=np.uint8))
    # a column outside rep2 must also be rejected even with rows in par3
    bad_cols = np.array([[0, 1, 1], [1, 0, 1]], dtype=np.uint8)
    assert not codes.tensor_membership(rep2, par3, bad_cols)


def test_random_ldpc_degree_profile():
    for seed in (5, 19, 58):
        code, fg = codes.random_ldpc(3, 6, 12, seed)
        assert (fg.c, fg.d, fg.n, fg.m) == (3, 6, 12, 6)
        assert len(fg.edges) == 36
        bits, checks = fg.edges[:, 0], fg.edges[:, 1]
        assert all(np.bincount(bits, minlength=12) == 3)
        assert all(np.bincount(checks, minlength=6) == 6)
        again, fg2 = codes.random_ldpc(3, 6, 12, seed)
        assert np.array_equal(fg.edges, fg2.edges)
        assert again.gen == code.gen


def brute_expander_ok(fg, delta, gamma):
    """Library contract: every bit set of size at most delta*n sees strictly
    more than c*|S|*(1-gamma) distinct checks."""
    nbrs = [set() for _ in range(fg.n)]
    for bit, chk in fg.edges:
        nbrs[int(bit)].add(int(chk))
    max_size = int(delta * fg.n)
    for size in range(1, max_size + 1):
        for sub in itertools.combinations(range(fg.n), size):
            seen = set().union(*(nbrs[b] for b in sub))
            if len(seen) <= (1 - gamma) * fg.c * size:
                return False, sub
    return True, None


@pytest.mark.parametrize("params,seed", [((3, 4, 8), 58), ((3, 4, 8), 0),
                                         ((3, 6, 6), 0), ((3, 6, 12), 19)])
def test_check_expander_matches_brute(params, seed):
    c, d, n = params
    _, fg = codes.random_ldpc(c, d, n, seed)
    for delta, gamma in ((Fraction(1, 8), Fraction(1, 8)),
                         (Fraction(1, 8), Fraction(1, 2)),
                         (Fraction(1, 3), Fraction(1, 4))):
        cert = codes.check_expander(fg, delta, gamma)
        ok, witness = brute_expander_ok(fg, delta, gamma)
        assert cert.ok == ok, (params, seed, delta, gamma)
        if not cert.ok:
            nbrs = [set() for _ in range(fg.n)]
            for bit, chk in fg.edges:
                nbrs[int(bit)].add(int(chk))
            wit = set(int(b) for b in cert.witness)
            seen = set().union(*(nbrs[b] for b in wit))
            assert len(seen) <= (1 - gamma) * fg.c * len(wit)


def test_agreement_and_robustness_pinned_values():
    rep2 = codes.repetition_code(2)
    rep3 = codes.repetition_code(3)
    par3 = codes.parity_code(3)
    assert codes.agreement_kappa(rep2, rep2).kappa == Fraction(1, 2)
    assert codes.robustness_tau(rep2, rep2).tau == Fraction(1, 2)
    assert codes.agreement_kappa(par3, rep2).kappa == Fraction(2, 5)
    assert codes.robustness_tau(par3, rep2).tau == Fraction(1, 2)
    assert codes.agreement_kappa(rep3, par3).kappa == Fraction(1, 3)
    assert codes.robustness_tau(rep3, par3).tau == Fraction(3, 8)


def test_conversion_formulas_pinned():
    assert codes.tau_from_kappa(Fraction(1, 2)) == Fraction(1, 6)
    assert codes.kappa_from_tau(Fraction(1, 2), Fraction(1), Fraction(1)) == Fraction(1, 3)


def test_testability_report_consistency():
    pairs = [
        (codes.repetition_code(2), codes.repetition_code(2)),
        (codes.parity_code(3), codes.repetition_code(2)),
        (codes.repetition_code(3), codes.parity_code(3)),
        (codes.repetition_code(2), codes.parity_code(4)),
    ]
    for c1, c2 in pairs:
        rep = codes.testability_report(c1, c2)
        assert rep.tau_exact and rep.kappa_exact
        assert rep.tau > 0 and rep.kappa > 0
        assert rep.kappa >= rep.kappa_bound_from_tau
        assert rep.tau >= rep.tau_bound_from_kappa
        assert rep.consistent


def test_dsw_bound_value_and_monotonicity():
    b = codes.dsw_tau_bound(Fraction(1, 2), Fraction(1), Fraction(1, 8), 4)
    assert b == pytest.approx(1 / 384)
    assert codes.dsw_tau_bound(Fraction(1, 4), Fraction(1), Fraction(1, 8), 4) <= b
    assert codes.dsw_tau_bound(Fraction(1, 2), Fraction(1), Fraction(1, 8), 8) <= b


def test_size_caps_raise():
    par4 = codes.parity_code(4)
    with pytest.raises(SizeCapExceeded):
        codes.agreement_kappa(par4, par4)
    with pytest.raises(SizeCapExceeded):
        codes.robustness_tau(codes.parity_code(6), codes.parity_code(6))


def test_code_text_roundtrip():
    code, _ = codes.random_ldpc(3, 4, 8, 58)
    back = codes.LinearCode.from_text(code.to_text())
    assert back.n == code.n and back.dim == code.dim
    # serialization canonicalizes: same code, possibly different basis
    assert gf2.row_basis(back.gen) == gf2.row_basis(code.gen)
    assert back.distance == code.distance and back.distance_exact


def test_contains_matches_codebook():
    par4 = codes.parity_code(4)
    book = codes.codebook(par4)
    words = {tuple(int(b) for b in w) for w in book.words}
    for bits in itertools.product((0, 1), repeat=4):
        assert par4.contains(as_vec(bits)) == (bits in words)
