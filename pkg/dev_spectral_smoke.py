import math

import numpy as np

from sqcodes.complexes import build_complex
from sqcodes.gensets import morgenstern_pair
from sqcodes.groups import cyclic_group, perm_group
from sqcodes.spectral import (
    Graph, alon_chung_check, build_operators, cayley_girth, cayley_graph,
    class_walk, girth, lambda2, markov_concentration, markov_lambda2,
    operator_checks, parallel_concentration,
)

z8 = cyclic_group(8)
g_a = cayley_graph(z8, [1, 7])
rep = lambda2(g_a)
print("lam2 Cay(Z8,{1,7})", rep.lambda2, rep.method)
assert abs(rep.lambda2 - math.cos(math.pi / 4)) < 1e-9

z4 = cyclic_group(4)
k4 = cayley_graph(z4, [1, 2, 3])
assert abs(lambda2(k4).lambda2 - (-1 / 3)) < 1e-9
assert girth(k4) == 3
assert girth(g_a) == 8
assert cayley_girth(z8, [1, 7]) == 8
assert cayley_girth(z4, [1, 2, 3]) == 3
two_cycle = cayley_graph(cyclic_group(2), [1, 1])
assert girth(two_cycle) == 2 and cayley_girth(cyclic_group(2), [1, 1]) == math.inf

cx = build_complex(z8, [1, 7], [3, 5])
ops = build_operators(cx)
checks = operator_checks(cx, ops)
print("operator residuals", {k: f"{v:.2e}" for k, v in checks.items()})
assert all(v < 1e-10 for v in checks.values())

e01 = cx.a_inc[0, 0]
u, v = cx.edge_endpoints("a", e01)
assert {u, v} == {0, 1}
f = np.zeros(cx.n_edges)
f[e01] = 1.0
img = ops.m_par @ f
hit = {cx.edge_endpoints("a", int(i)) for i in np.flatnonzero(img)}
print("parallel image of {0,1}:", sorted(hit), img[np.flatnonzero(img)])
assert hit == {(3, 4), (5, 6)} and np.allclose(img[img > 0], 0.5)

lam_m = markov_lambda2(ops.m, ops.d1).lambda2
lam_m0 = markov_lambda2(ops.m0, np.full(cx.n, 1 / cx.n)).lambda2
print("lam2(M)", lam_m, "lam2(M0)", lam_m0)
assert lam_m <= lam_m0 + 1e-9

# label-class walk matches the opposite-side Cayley walk
ids, p_cls, u_of = class_walk(cx, "a", 0)
b_right = cayley_graph(z8, [3, 5], side="right")
lam_cls = markov_lambda2(p_cls, np.full(len(ids), 1 / len(ids))).lambda2
lam_b = lambda2(b_right).lambda2
print("class walk lam", lam_cls, "Cay(G,B) lam", lam_b)
assert abs(lam_cls - lam_b) < 1e-8
adj_cls = np.rint((p_cls * cx.nb).toarray()).astype(int)
for i in range(len(ids)):
    nbrs = sorted(int(u_of[j]) for j in range(len(ids))
                  for _ in range(adj_cls[i, j]))
    want = sorted(z8.mul(int(u_of[i]), b) for b in [3, 5])
    assert nbrs == want, (i, nbrs, want)
print("class walk isomorphism ok")

r_mask = np.zeros(cx.n_edges, dtype=bool)
r_mask[np.flatnonzero(cx.a_edge_label == 0)] = True
pc = parallel_concentration(cx, r_mask, max(lam2 := lambda2(g_a).lambda2,
                                            lambda2(cayley_graph(z8, [3, 5])).lambda2))
print("parallel concentration", pc)
assert pc["stay_ratio"] == 1 and pc["holds"] and pc["best_count"] == 8

ac = alon_chung_check(g_a, [0, 1, 2, 3])
print("alon-chung", ac)
assert ac["holds"]

f_ind = np.zeros(cx.n)
f_ind[[0, 1]] = 1
mc = markov_concentration(ops.m0, np.full(cx.n, 1 / cx.n), f_ind, lam_m0)
print("markov concentration", mc)
assert mc["holds"]

z12 = cyclic_group(12)
cx12 = build_complex(z12, [1, 11, 6], [5, 7])
ops12 = build_operators(cx12)
c12 = operator_checks(cx12, ops12)
assert all(v < 1e-10 for v in c12.values())
assert (markov_lambda2(ops12.m, ops12.d1).lambda2
        <= markov_lambda2(ops12.m0, np.full(12, 1 / 12)).lambda2 + 1e-9)
ids12, p12, u12 = class_walk(cx12, "b", 0)
lamc = markov_lambda2(p12, np.full(len(ids12), 1 / len(ids12))).lambda2
lama = lambda2(cayley_graph(z12, [1, 11, 6], side="left")).lambda2
assert abs(lamc - lama) < 1e-8, (lamc, lama)

s3 = perm_group([(1, 0, 2), (0, 2, 1)], name="S3")
transpositions = [i for i in range(6) if s3.mul(i, i) == s3.identity
                  and i != s3.identity]
print("s3 girth on transpositions:", cayley_girth(s3, transpositions))

mb, pair = morgenstern_pair(2, 4, variant="a_prime")
psl16 = mb.group
gb = cayley_graph(psl16, pair.b)
rb = lambda2(gb)
ram = 2 * math.sqrt(2) / 3
print("PSL2(16) B-graph lam2", rb.lambda2, "ram bound", ram, "method", rb.method)
assert rb.lambda2 <= ram + 1e-9
print("PSL2(16) B-graph girth", cayley_girth(psl16, pair.b))
print("smoke: spectral ok")
