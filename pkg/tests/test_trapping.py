import itertools
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from helpers import beam_trapping_sets, naive_min_b
from trapredund import codes, gf2core, trapping
from trapredund.geometry import SearchBudgetError
from trapredund.gf2core import BitMatrix


small_matrices = st.tuples(st.integers(1, 9), st.integers(3, 10)).flatmap(
    lambda s: arrays(np.uint8, s, elements=st.integers(0, 1))
)


@given(small_matrices, st.integers(1, 3), st.booleans())
@settings(max_examples=80, deadline=None)
def test_min_b_matches_naive_scan(a, size, elementary):
    size = min(size, a.shape[1])
    H = BitMatrix.from_dense(a)
    got = trapping.exhaustive_min_b(H, size, elementary_only=elementary)
    want, arg = naive_min_b(a, size, elementary)
    assert got.min_b == want
    # elementary pruning skips whole subtrees of non-elementary prefixes
    if elementary:
        assert got.subsets_scanned <= comb(a.shape[1], size)
    else:
        assert got.subsets_scanned == comb(a.shape[1], size)
    if want is not None:
        assert got.witness.columns == arg
        assert got.witness.b == want


@given(small_matrices, st.integers(1, 3), st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_theta_counts_and_verify(a, size, b):
    size = min(size, a.shape[1])
    H = BitMatrix.from_dense(a)
    with_zero = without_zero = 0
    for S in itertools.combinations(range(a.shape[1]), size):
        s = int((a[:, list(S)].sum(axis=1) % 2).sum())
        with_zero += s < b
        without_zero += 1 <= s < b
    assert trapping.theta_counts(H, size, b) == (with_zero, without_zero)
    assert trapping.verify_free(H, size, b).passed == (without_zero == 0)


def test_parallel_scan_agrees(golay):
    C = trapping.build_combination_matrix(golay.H, 1)
    one = trapping.exhaustive_min_b(C, 3)
    two = trapping.exhaustive_min_b(C, 3, workers=2)
    assert (one.min_b, one.witness.columns, one.subsets_scanned) == (two.min_b, two.witness.columns, two.subsets_scanned)


def test_positive_only_skips_codewords(hamming):
    res = trapping.exhaustive_min_b(hamming.H, 3)
    assert res.min_b == 0
    pos = trapping.exhaustive_min_b(hamming.H, 3, positive_only=True)
    assert pos.min_b >= 1


def test_codeword_supports(hamming):
    supports = trapping.codeword_supports(hamming.H, 3)
    assert len(supports) == 7
    G = hamming.generator()
    words = {w for w in range(1 << 7) if not hamming.H.mul_vec(gf2core.BitVector.from_int(w, 7)).any()}
    assert {sum(1 << c for c in s) for s in supports} == {w for w in words if bin(w).count("1") == 3}
    assert G.rows == 4


def test_budget_guard_reports_estimate(margulis):
    with pytest.raises(SearchBudgetError) as exc:
        trapping.exhaustive_min_b(margulis.H, 14)
    assert exc.value.estimate == comb(2640, 14)
    assert 1e36 < exc.value.estimate < 1e38
    with pytest.raises(ValueError):
        trapping.exhaustive_min_b(margulis.H, 0)


def test_measure_report(hamming):
    rep = trapping.measure(hamming.H, [0, 1])
    assert rep.a == 2 and rep.elementary
    assert rep.to_json()["columns"] == (0, 1)


def test_sampler_is_deterministic_and_valid(golay):
    one = trapping.sample_lll_matrix(golay, 15, 3, 2, seed=4)
    two = trapping.sample_lll_matrix(golay, 15, 3, 2, seed=4)
    assert one.success and one.matrix == two.matrix and one.log == two.log
    assert gf2core.rank(one.matrix) == 12
    assert gf2core.rank(golay.H.vstack(one.matrix)) == 12
    assert trapping.exhaustive_min_b(one.matrix, 3).min_b >= 2


def test_sampler_preconditions(golay):
    with pytest.raises(ValueError):
        trapping.sample_lll_matrix(golay, 1, 3, 2)
    with pytest.raises(SearchBudgetError):
        trapping.sample_lll_matrix(golay, 15, 3, 2, budget=100)


def test_sampler_reports_failure(golay):
    # 2 rows cannot give every 3-set two odd rows in a [24,12] code
    out = trapping.sample_lll_matrix(golay, 2, 3, 2, max_attempts=5, seed=1)
    assert not out.success and out.attempts == 5 and len(out.log) == 5


@pytest.mark.parametrize("which,a_values", [("hamming7", (1, 2)), ("golay24", (2, 3))])
def test_constructive_guarantee(which, a_values):
    code = codes.build_reference_code(which)
    r = code.n - code.k
    H = code.dual_basis()
    for t in range(1, 4):
        C = trapping.build_combination_matrix(H, t)
        assert C.rows == sum(comb(r, i) for i in range(1, t + 1))
        for a in a_values:
            if t > a:
                continue
            guaranteed = 2 ** (a - 1) - sum(comb(r, j) for j in range(t + 1, a + 1))
            assert trapping.exhaustive_min_b(C, a).min_b >= guaranteed


def test_combination_matrix_needs_full_rank():
    with pytest.raises(ValueError):
        trapping.build_combination_matrix(BitMatrix.from_dense([[1, 1], [1, 1]]), 1)


def test_break_candidates_raise_b(golay):
    rng = np.random.default_rng(0)
    cols = sorted(int(c) for c in rng.choice(24, 3, replace=False))
    res = trapping.break_trapping_set(golay.H, cols, 3)
    assert res.found and res.candidates
    before = trapping.measure(golay.H, cols).b
    for cand in res.candidates[:10]:
        assert cand.restriction_weight % 2 == 1
        assert cand.row == gf2core.combine_rows(golay.H, cand.combo)
        after = trapping.measure(golay.H.append_row(cand.row), cols).b
        assert after == before + 1
    keys = [(len(c.combo), c.full_weight, c.combo) for c in res.candidates]
    assert keys == sorted(keys)


def test_break_budget(golay):
    with pytest.raises(SearchBudgetError):
        trapping.break_trapping_set(golay.H, [0, 1, 2], 3, max_combos=5)


def test_expansion_fixture_matches_block():
    H, basic, labels = trapping.expansion_fixture("a")
    dense = H.to_dense()
    assert trapping.measure(H, basic).b == 4
    ext = trapping.measure(H, list(range(14)))
    assert (ext.b, ext.elementary) == (4, True)
    block = dense[:7, :6]
    assert np.array_equal(block, trapping.EXPANSION_BLOCK)


def test_expansion_parities_config_a():
    H, basic, _ = trapping.expansion_fixture("a")
    exp = trapping.margulis_expansion(H, basic)
    for r in exp.method("S1") + exp.method("S3"):
        assert r.basic_weight % 2 == 1 and r.extended_weight % 2 == 1
    for r in exp.method("S2"):
        assert r.basic_weight % 2 == 0 and r.extended_weight % 2 == 1


def test_expansion_config_b():
    H, basic, labels = trapping.expansion_fixture("b")
    exp = trapping.margulis_expansion(H, basic)
    assert exp.config == "b"
    assert [r.checks for r in exp.rows] == list(trapping.CONFIG_B_COMBOS)
    assert exp.labels["vE1"] == labels["vE1"]
    assert all(r.extended_weight % 2 == 1 for r in exp.rows)


def test_expansion_rejects_wrong_sets(hamming):
    H, basic, _ = trapping.expansion_fixture("a")
    with pytest.raises(ValueError):
        trapping.margulis_expansion(H, basic[:-1])
    with pytest.raises(ValueError):
        trapping.margulis_expansion(H, basic, degree_one_checks=[0, 1, 2, 3])


def test_expansion_on_margulis_sets(margulis):
    H = margulis.H
    found = beam_trapping_sets(H, seed=0, size=12, width=500, max_b=4)
    assert found
    seen_a = 0
    for cols in found:
        rep = trapping.measure(H, cols)
        assert rep.elementary and rep.b <= 4
        exp = trapping.margulis_expansion(H, cols)
        if exp.config != "a":
            continue
        seen_a += 1
        ext = trapping.measure(H, exp.extended_columns)
        assert (ext.a, ext.b, ext.elementary) == (14, 4, True)
        for r in exp.method("S1") + exp.method("S3"):
            assert r.basic_weight % 2 == 1 and r.extended_weight % 2 == 1
            # adding the row lifts b of both sets
            Hx = H.append_row(gf2core.combine_rows(H, r.rows))
            assert trapping.measure(Hx, cols).b == 5
            assert trapping.measure(Hx, exp.extended_columns).b == 5
    assert seen_a
