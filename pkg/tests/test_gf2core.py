import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from trapredund import gf2core
from trapredund.gf2core import AlistError, BitMatrix, BitVector, SpanError


def naive_rank(dense):
    """Elimination over Python ints, independent of the packed implementation."""
    rows = [int("".join(map(str, r[::-1])), 2) if len(r) else 0 for r in dense.tolist()]
    rank = 0
    while rows:
        pivot = max(rows)
        rows.remove(pivot)
        if pivot == 0:
            continue
        rank += 1
        top = pivot.bit_length() - 1
        rows = [r ^ pivot if (r >> top) & 1 else r for r in rows]
    return rank


def dense_matrices(max_rows=12, max_cols=140):
    return st.tuples(st.integers(1, max_rows), st.integers(1, max_cols)).flatmap(
        lambda s: arrays(np.uint8, s, elements=st.integers(0, 1))
    )


@given(dense_matrices())
@settings(max_examples=60, deadline=None)
def test_dense_roundtrip_across_word_boundaries(a):
    m = BitMatrix.from_dense(a)
    assert m.shape == a.shape
    assert np.array_equal(m.to_dense(), a)
    assert np.array_equal(m.row_weights(), a.sum(axis=1))
    assert np.array_equal(m.col_weights(), a.sum(axis=0))
    assert BitMatrix.from_ints(m.row_ints(), a.shape[1]) == m


@given(dense_matrices(max_rows=10, max_cols=80))
@settings(max_examples=80, deadline=None)
def test_rank_matches_naive(a):
    assert gf2core.rank(BitMatrix.from_dense(a)) == naive_rank(a)


@given(dense_matrices(max_rows=8, max_cols=20))
@settings(max_examples=60, deadline=None)
def test_dual_basis_is_null_space(a):
    m = BitMatrix.from_dense(a)
    basis = gf2core.dual_basis(m)
    n = a.shape[1]
    assert basis.rows == n - gf2core.rank(m)
    if basis.rows:
        assert not ((a.astype(int) @ basis.to_dense().T.astype(int)) % 2).any()
        assert gf2core.rank(basis) == basis.rows


@given(dense_matrices(max_rows=6, max_cols=10))
@settings(max_examples=40, deadline=None)
def test_in_span_agrees_with_enumeration(a):
    m = BitMatrix.from_dense(a)
    span = set()
    for mask in range(1 << m.rows):
        acc = 0
        for i, r in enumerate(m.row_ints()):
            if mask >> i & 1:
                acc ^= r
        span.add(acc)
    for v in range(1 << a.shape[1]):
        assert gf2core.in_span(m, BitVector.from_int(v, a.shape[1])) == (v in span)


def test_rref_rows_have_unit_pivot_columns():
    rng = np.random.default_rng(3)
    a = rng.integers(0, 2, (9, 70), dtype=np.uint8)
    reduced, pivots = gf2core.rref(BitMatrix.from_dense(a))
    d = reduced.to_dense()
    assert pivots == sorted(pivots)
    for i, p in enumerate(pivots):
        assert d[:, p].tolist() == [int(k == i) for k in range(len(pivots))]


def test_bitvector_ops():
    v = BitVector.from_bits([1, 0, 1, 1] + [0] * 70 + [1])
    assert v.support() == [0, 2, 3, 74]
    assert v.weight == 4
    assert BitVector.from_int(v.to_int(), v.length) == v
    assert (v ^ v).weight == 0
    with pytest.raises(ValueError):
        v ^ BitVector.zeros(3)


def test_restriction_and_profile():
    a = np.array([[1, 1, 0, 1], [0, 1, 1, 0], [1, 1, 1, 1]], dtype=np.uint8)
    m = BitMatrix.from_dense(a)
    assert np.array_equal(gf2core.restriction(m, [3, 0]).to_dense(), a[:, [3, 0]])
    prof = gf2core.odd_row_profile(m, [0, 1, 2])
    assert prof.b == 1 and prof.odd_rows == (2,) and prof.max_row_weight == 3
    with pytest.raises(ValueError):
        gf2core.odd_row_profile(m, [0, 0])
    with pytest.raises(ValueError):
        gf2core.restriction(m, [4])


def test_combine_rows():
    m = BitMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 0]])
    assert gf2core.combine_rows(m, [0, 1]).support() == [0, 2]
    for bad in ([], [0, 0], [3]):
        with pytest.raises(ValueError):
            gf2core.combine_rows(m, bad)


def test_extend_to_full_rank():
    rng = np.random.default_rng(7)
    basis = gf2core.dual_basis(BitMatrix.from_dense(rng.integers(0, 2, (5, 12), dtype=np.uint8)))
    start = basis.take_rows([0, 0])
    full = gf2core.extend_to_full_rank(start, basis)
    assert gf2core.rank(full) == gf2core.rank(basis)
    assert full.take_rows([0, 1]) == start
    assert full.rows <= start.rows + basis.rows - 1
    outside = BitVector.from_int(1, 12)
    if not gf2core.in_span(basis, outside):
        with pytest.raises(SpanError):
            gf2core.extend_to_full_rank(BitMatrix(1, 12, outside.words[None, :]), basis)


def test_dual_sampling_is_uniform_over_span():
    H = BitMatrix.from_dense([[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]])
    rng = np.random.default_rng(11)
    draws = gf2core.sample_dual_matrix(H, 40000, rng).row_ints()
    counts = {}
    for d in draws:
        counts[d] = counts.get(d, 0) + 1
    assert len(counts) == 8
    expected = 40000 / 8
    sigma = (40000 * (1 / 8) * (7 / 8)) ** 0.5
    assert all(abs(c - expected) < 5 * sigma for c in counts.values())


@given(dense_matrices(max_rows=9, max_cols=30))
@settings(max_examples=40, deadline=None)
def test_alist_roundtrip(a):
    m = BitMatrix.from_dense(a)
    assert gf2core.from_alist(gf2core.to_alist(m)) == m


def test_alist_unpadded_and_errors():
    unpadded = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n"
    m = gf2core.from_alist(unpadded)
    assert m.to_dense().tolist() == [[1, 1, 0], [0, 1, 1]]
    # zero-degree column: blank line unpadded, a lone 0 padded
    for text in ("2 1\n1 1\n1 0\n1\n1\n\n1\n", "2 1\n1 1\n1 0\n1\n1\n0\n1\n"):
        assert gf2core.from_alist(text).to_dense().tolist() == [[1, 0]]
    with pytest.raises(AlistError):
        gf2core.from_alist("3\n")
    with pytest.raises(AlistError) as exc:
        gf2core.from_alist("3 2\n2 2\n1 2 x\n")
    assert exc.value.lineno == 3
    # column list claims row 2 but row list disagrees
    with pytest.raises(AlistError):
        gf2core.from_alist("2 2\n1 1\n1 1\n1 1\n2\n1\n1\n2\n")


def test_col_ints_match_dense():
    rng = np.random.default_rng(5)
    a = rng.integers(0, 2, (70, 9), dtype=np.uint8)
    cols = BitMatrix.from_dense(a).col_ints()
    for j, c in enumerate(cols):
        assert [c >> i & 1 for i in range(70)] == a[:, j].tolist()


def test_mul_vec_is_syndrome():
    rng = np.random.default_rng(9)
    a = rng.integers(0, 2, (6, 90), dtype=np.uint8)
    x = rng.integers(0, 2, 90, dtype=np.uint8)
    m = BitMatrix.from_dense(a)
    assert np.array_equal(m.mul_vec(BitVector.from_bits(x)), (a.astype(int) @ x) % 2)


def test_identity_and_vstack():
    eye = BitMatrix.identity(5)
    assert gf2core.rank(eye) == 5
    both = eye.vstack(eye)
    assert both.rows == 10 and gf2core.rank(both) == 5
    with pytest.raises(ValueError):
        eye.vstack(BitMatrix.identity(4))
    assert list(itertools.chain.from_iterable(eye.row_supports())) == list(range(5))
