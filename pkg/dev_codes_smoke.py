from fractions import Fraction

import numpy as np

from sqcodes.codes import (
    LinearCode, agreement_kappa, check_expander, codebook, dsw_tau_bound,
    from_generator, from_parity, kappa_from_tau, nearest_batch,
    nearest_codeword, parity_code, random_ldpc, repetition_code,
    robustness_tau, tau_from_kappa, tensor_code, tensor_membership,
    testability_report,
)
from sqcodes.errors import BudgetExceeded, DivisibilityError, SizeCapExceeded
from sqcodes.gf2 import BitMatrix, BitVector

rep2, rep3 = repetition_code(2), repetition_code(3)
par3, par4 = parity_code(3), parity_code(4)
assert rep3.distance == 3 and rep3.dim == 1 and par4.rate == Fraction(3, 4)

t = tensor_code(rep2, rep2)
assert t.dim == 1 and t.distance == 4
bk = codebook(t)
assert bk.words.shape == (2, 4)
assert (bk.words[0] == 0).all() and (bk.words[1] == 1).all()

t2 = tensor_code(par3, rep3)
assert t2.dim == 2 and t2.distance == 6 and t2.n == 9
bk2 = codebook(t2)
assert len(bk2) == 4
for w in bk2.words:
    assert tensor_membership(par3, rep3, w.reshape(3, 3))
# enumerated minimum weight agrees with the multiplicative distance
assert min(w.sum() for w in bk2.words[1:]) == 6

# lex tie-break: equidistant target picks the lexicographically smaller word
idx, dist = nearest_codeword(bk, np.array([1, 1, 0, 0], dtype=np.uint8))
assert dist == 2 and idx == 0 and (bk.words[idx] == 0).all()
ids, ds = nearest_batch(bk, np.array([[1, 1, 1, 0], [0, 0, 0, 1]], np.uint8))
assert list(ids) == [1, 0] and list(ds) == [1, 1]

# serialization round trip
text = t2.to_text()
back = LinearCode.from_text(text, name="t2")
assert back.n == 9 and back.dim == 2 and back.distance == 6 and back.distance_exact

code, fg = random_ldpc(3, 6, 12, seed=7)
assert fg.m == 6 and code.rate >= Fraction(1, 2)
code_b, fg_b = random_ldpc(3, 6, 12, seed=7)
assert (fg.edges == fg_b.edges).all() and code.gen == code_b.gen
print("ldpc c=3 d=6 n=12 seed=7: dim", code.dim, "distance", code.distance)
try:
    random_ldpc(3, 7, 12, seed=0)
    raise SystemExit("missed divisibility error")
except DivisibilityError:
    pass

cert = check_expander(fg, Fraction(1, 6), Fraction(1, 4))
print("expander cert ok", cert.ok, "checked", cert.checked,
      "worst", cert.worst_set, cert.worst_neighbors)
assert cert.checked == 78
vac = check_expander(fg, Fraction(1, 24), Fraction(1, 4))
assert vac.ok and vac.checked == 0
try:
    check_expander(fg, Fraction(1, 2), Fraction(1, 4), budget=10)
    raise SystemExit("missed budget error")
except BudgetExceeded:
    pass

# duplicated neighborhoods must be caught
from sqcodes.codes import FactorGraph
bad_edges = np.array([[b, c] for b in range(4) for c in ([0, 1, 2] if b < 2 else [3, 4, 5])])
bad = FactorGraph(c=3, d=2, n=4, m=6, edges=bad_edges, seed=0)
bad_cert = check_expander(bad, Fraction(1, 2), Fraction(1, 10))
assert not bad_cert.ok and bad_cert.witness is not None
print("violating set", bad_cert.witness, "neighbors", bad_cert.worst_neighbors)

r = robustness_tau(rep2, rep2)
print("tau rep2xrep2:", r.tau, "witness:\n", r.witness)
assert r.tau == Fraction(1, 2) and r.checked == 16

k = agreement_kappa(rep2, rep2)
print("kappa rep2xrep2:", k.kappa)
print("w_col:\n", k.w_col, "\nw_row:\n", k.w_row)
assert k.kappa == Fraction(1, 2)

assert kappa_from_tau(Fraction(1, 2), 1, 1) == Fraction(1, 3)
assert tau_from_kappa(Fraction(1, 2)) == Fraction(1, 6)
big = kappa_from_tau(10**9, 1, Fraction(9, 10))
assert abs(float(big) - 9 / 10) < 1e-6

rep = testability_report(rep2, rep2)
assert rep.consistent and rep.kappa_bound_from_tau == Fraction(1, 3)

b = dsw_tau_bound(0.25, 0.25, 0.15, 14)
print("dsw bound", b)
assert abs(b - (1 / 16) * (1 / 6 - 0.15) / 28) < 1e-12
b2 = dsw_tau_bound(0.25, 0.25, 1 / 6, 14)
assert b2 > 0
import math
assert abs(b2 - (1 / 16) / 14 ** (math.log(0.05) / math.log(0.5 + 1 / 6))) < 1e-15

try:
    robustness_tau(parity_code(5), parity_code(5))
    raise SystemExit("missed size cap")
except SizeCapExceeded:
    pass

print("smoke: codes ok")
