from fractions import Fraction

import numpy as np

from sqcodes.codes import parity_code, repetition_code
from sqcodes.complexes import build_complex
from sqcodes.decoder import (
    delta, delta_weighted, dispute_diagnostics, dispute_mask, init_views,
    run, step,
)
from sqcodes.groups import cyclic_group
from sqcodes.ltc import assemble, random_codeword, zeta

z8 = cyclic_group(8)
cx = build_complex(z8, [1, 7], [3, 5])
rep2 = repetition_code(2)
inst = assemble(cx, rep2, rep2)

# codeword input: zero iterations, output equals input
ones = np.ones(8, dtype=np.uint8)
out = run(inst, ones)
assert out.verdict == "codeword" and out.iterations == 0
assert (out.codeword == ones).all() and out.dist_in_out == 0

# single-square error: all initial views zero, immediate codeword
f = np.zeros(8, dtype=np.uint8)
f[0] = 1
assign = init_views(inst, f)
assert (assign.views == 0).all() and delta(assign) == 0
out = run(inst, f)
assert out.verdict == "codeword" and (out.codeword == 0).all()
assert out.dist_in_out == Fraction(1, 8) and out.zeta_in == Fraction(1, 2)

# one vertex forced to the all-ones grid: its four incident edges dispute
assign = init_views(inst, np.zeros(8, dtype=np.uint8))
assign.views[5] = 1
assert delta(assign) == Fraction(4, 16) == Fraction(1, 4)
assert delta_weighted(assign) == Fraction(1, 4)
diag = dispute_diagnostics(assign, kappa0=Fraction(1, 2))
print("edge span a:", diag.get("edge_span_a"))
print("edge span b:", diag.get("edge_span_b"))
assert diag["edge_span_a"]["holds"] and diag["edge_span_a"]["need"] == 2
assert diag["edge_span_b"]["holds"] and diag["edge_span_b"]["need"] == 2
mv = step(assign)
print("step commit:", mv)
assert mv == (5, 4) and delta(assign) == 0

# zero-dispute state has no moves
assert step(assign) is None
assert dispute_diagnostics(assign)["n_disputes"] == 0

# the dirty-queue loop matches naive rescans exactly
z12 = cyclic_group(12)
cx12 = build_complex(z12, [1, 11, 6], [5, 7])
inst12 = assemble(cx12, parity_code(3), repetition_code(2))
print("z12 instance dim", inst12.code.dim)
for trial in range(30):
    rng = np.random.default_rng(100 + trial)
    f = rng.integers(0, 2, size=inst12.n_bits).astype(np.uint8)
    naive = init_views(inst12, f)
    commits = []
    while (mv := step(naive)) is not None:
        commits.append(mv)
    out = run(inst12, f)
    assert out.iterations == len(commits), (trial, out.iterations, len(commits))
    assert delta(naive) == out.delta_final
    if out.verdict == "codeword":
        assert zeta(inst12, out.codeword) == 0
print("equivalence over 30 z12 trials ok")

# corrupted codewords come back when the corruption is light
flips = 0
for seed in range(20):
    cw = random_codeword(inst12, seed)
    f = cw.copy()
    f[seed % inst12.n_bits] ^= 1
    out = run(inst12, f)
    assert out.verdict == "codeword"
    if (out.codeword == cw).all():
        flips += 1
print(f"{flips}/20 single-flip words decoded back to the original codeword")

far_seen = 0
for seed in range(200):
    rng = np.random.default_rng(seed)
    f = rng.integers(0, 2, size=inst12.n_bits).astype(np.uint8)
    out = run(inst12, f)
    if out.verdict == "far":
        far_seen += 1
        assert out.delta_final > 0
print("far verdicts on z12 random words:", far_seen, "/200")
print("smoke: decoder ok")
