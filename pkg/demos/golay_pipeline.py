"""Bound -> sample -> verify -> break, end to end on the [24,12,8] Golay code.

Run: python3 demos/golay_pipeline.py
"""

import numpy as np

from trapredund import bounds, codes, gf2core, trapping

a, b = 3, 2
golay = codes.build_reference_code("golay24")
H = golay.H

res = bounds.min_m_std(golay.n, a, b, k=golay.k, d=golay.d)
print(f"std bound for ({a},<{b}) sets: m={res.m}, m_hat={res.m_hat}")

# the stock 12-row matrix, before sampling
print("stock matrix min b at a=3:", trapping.exhaustive_min_b(H, a).min_b)

out = trapping.sample_lll_matrix(golay, res.m, a, b, seed=0)
print(f"sampled {out.sampled_rows} rows in {out.attempts} attempt(s), success={out.success}")
S = out.matrix
print("rank", gf2core.rank(S), "| min b", trapping.exhaustive_min_b(S, a).min_b, "| free:", bool(trapping.verify_free(S, a, b)))

# pick a weak 3-set of the sampled matrix and add one row that lifts its b
worst = trapping.exhaustive_min_b(S, a).witness
print(f"weakest 3-set {worst.columns} has b={worst.b}")
fix = trapping.break_trapping_set(S, worst.columns, max_combo_size=2)
best = fix.candidates[0]
lifted = trapping.measure(S.append_row(best.row), worst.columns).b
print(f"combining rows {best.combo} (weight {best.full_weight}) lifts b to {lifted}")

# a random column choice on the stock matrix, for comparison
rng = np.random.default_rng(1)
cols = sorted(int(c) for c in rng.choice(golay.n, a, replace=False))
print(f"random set {cols}: {len(trapping.break_trapping_set(H, cols, 3).candidates)} candidate rows")
