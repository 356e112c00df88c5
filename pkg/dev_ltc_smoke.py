import math
from fractions import Fraction

import numpy as np

from sqcodes.codes import codebook, parity_code, repetition_code
from sqcodes.complexes import build_complex
from sqcodes.groups import cyclic_group
from sqcodes.ltc import (
    assemble, distance_report, kappa_theorem, local_view, nullspace_match,
    random_codeword, rate_bounds, sample_test, word_from_text, word_to_text,
    zeta,
)
from sqcodes.spectral import cayley_graph, lambda2

z8 = cyclic_group(8)
cx = build_complex(z8, [1, 7], [3, 5])
rep2 = repetition_code(2)
inst = assemble(cx, rep2, rep2, mode="edges")
print("z8 instance:", inst.summary())
assert inst.code.dim == 1
book = codebook(inst.code)
assert (book.words[0] == 0).all() and (book.words[1] == 1).all()
assert nullspace_match(inst)

inst_v = assemble(cx, rep2, rep2, mode="vertices")
assert inst_v.code.gen == inst.code.gen

rb = rate_bounds(inst)
print("rate bounds:", rb)
assert rb["generic"] == -1 and rb["measured"] == Fraction(1, 8)

lam = max(lambda2(cayley_graph(z8, [1, 7])).lambda2,
          lambda2(cayley_graph(z8, [3, 5], side="right")).lambda2)
dr = distance_report(inst, lam)
print("distance report:", dr)
assert dr["exact"] and dr["measured"] == 8
assert abs(dr["bound_relative"] - (1 - lam)) < 1e-12

zero = np.zeros(8, dtype=np.uint8)
assert zeta(inst, zero) == 0
assert zeta(inst, np.ones(8, dtype=np.uint8)) == 0
one_sq = zero.copy()
one_sq[0] = 1
assert zeta(inst, one_sq) == Fraction(1, 2)

view = local_view(inst, one_sq, int(cx.squares[0][1]))
assert view.grid.shape == (2, 2) and view.grid.sum() == 1

hits = sum(not sample_test(inst, one_sq, seed)["accept"] for seed in range(10**4))
print("empirical rejection", hits / 1e4)
assert abs(hits / 1e4 - 0.5) < 0.02
assert sample_test(inst, one_sq, 0)["queries"] == 4

for seed in range(5):
    cw = random_codeword(inst, seed)
    assert zeta(inst, cw) == 0

# soundness: every non-codeword is rejected somewhere
for trial in range(20):
    rng = np.random.default_rng(trial)
    f = rng.integers(0, 2, size=8).astype(np.uint8)
    dists = (book.words ^ f).sum(axis=1)
    if dists.min() > 0:
        assert zeta(inst, f) > 0

tc = kappa_theorem(2, 2, 1, 1, Fraction(1, 2), 0)
print("theorem constants:", tc)
assert tc.c == Fraction(1, 17)
assert tc.kappa == Fraction(1, 136)
assert tc.condition_holds

tc8 = kappa_theorem(2, 2, 1, 1, Fraction(1, 2), Fraction(7071, 10000))
assert not tc8.condition_holds and tc8.kappa < 0

s = word_to_text(one_sq)
assert s == "10000000" and (word_from_text(s, inst) == one_sq).all()

# a bipartite instance: Z16 with odd generators only
z16 = cyclic_group(16)
cx16 = build_complex(z16, [1, 15, 3, 13], [5, 11, 7, 9])
par4 = parity_code(4)
inst16 = assemble(cx16, par4, par4, mode="edges")
rb16 = rate_bounds(inst16)
print("z16 parity4 bounds:", rb16)
assert rb16["bipartite"] == Fraction(1, 8) and rb16["nu"] == Fraction(1, 2)
assert rb16["measured"] >= Fraction(1, 8)
assert nullspace_match(inst16)
print("z16 dim", inst16.code.dim, "of", inst16.n_bits)

print("smoke: ltc ok")
