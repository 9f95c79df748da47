import numpy as np
import pytest

from trapredund import codes, gf2core
from trapredund.gf2core import BitMatrix, rank


def codewords(G: BitMatrix):
    rows = G.row_ints()
    words = [0]
    for r in rows:
        words += [w ^ r for w in words]
    return words


def test_hamming7(hamming):
    assert (hamming.n, hamming.k, hamming.d, hamming.d_kind) == (7, 4, 3, "exact")
    assert hamming.dual_distance == 4
    assert not hamming.is_redundant
    assert hamming.max_lll_a() == 1


def test_golay_weight_enumerator(golay):
    assert (golay.n, golay.k, golay.d, golay.dual_distance) == (24, 12, 8, 8)
    G = codes.golay24_G()
    d = G.to_dense().astype(int)
    assert not ((d @ d.T) % 2).any()  # self-dual
    weights = [bin(w).count("1") for w in codewords(G)]
    assert sorted(set(weights)) == [0, 8, 12, 16, 24]
    assert weights.count(8) == 759 and weights.count(12) == 2576


@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_repetition(n):
    c = codes.build_reference_code("repetition", n=n)
    assert (c.n, c.k, c.d) == (n, 1, n)
    assert c.H.shape == (n - 1, n)


def test_full_dual_matrix(hamming):
    D = codes.full_dual_matrix(hamming)
    ints = D.row_ints()
    assert D.rows == 8 and ints[0] == 0 and len(set(ints)) == 8
    G = hamming.generator().to_dense().astype(int)
    assert not ((D.to_dense().astype(int) @ G.T) % 2).any()


def test_full_dual_budget():
    with pytest.raises(ValueError):
        codes.full_dual_matrix(codes.build_pg_code(2, 8))


@pytest.mark.parametrize("q,n,k,d", [(2, 7, 3, 4), (4, 21, 11, 6), (8, 73, 45, 10)])
def test_pg_codes(q, n, k, d):
    c = codes.build_pg_code(2, q)
    assert (c.n, c.k, c.d) == (n, k, d)
    if c.k <= codes.ENUMERATION_MAX_K:
        assert codes.min_distance(c) == d


def test_min_distance_budget():
    with pytest.raises(ValueError):
        codes.min_distance(codes.build_pg_code(2, 8))


def test_margulis_small_prime():
    c = codes.build_margulis(5)
    assert c.H.shape == (120, 240)
    assert set(c.H.row_weights().tolist()) == {6}
    assert set(c.H.col_weights().tolist()) == {3}
    assert c.d is None and c.d_kind == "unknown"
    assert codes.girth(c.H) >= 6


def test_margulis_tags(margulis):
    assert margulis.d == 40 and margulis.d_kind == "estimated"
    assert margulis.provenance["rule"] == codes.MARGULIS_RULE_ID
    assert margulis.k == 1320


@pytest.mark.parametrize("p", [2, 3, 4, 9])
def test_margulis_rejects(p):
    with pytest.raises(ValueError):
        codes.build_margulis(p)


def test_sl2_order():
    for p in (3, 5, 7):
        assert len(codes.sl2_elements(p)) == p * (p * p - 1)


def test_girth_small_graphs():
    four_cycle = BitMatrix.from_dense([[1, 1, 0], [1, 1, 1]])
    assert codes.girth(four_cycle) == 4
    tree = BitMatrix.from_dense([[1, 1, 0], [0, 1, 1]])
    assert codes.girth(tree) is None
    six = BitMatrix.from_dense([[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert codes.girth(six) == 6
    assert codes.girth(six, cap=4) is None
    assert codes.girth(codes.hamming7_H()) == 4


def test_alist_reference_roundtrip(golay):
    text = gf2core.to_alist(golay.H)
    again = codes.build_reference_code("alist", alist_text=text, k=12)
    assert again.H == golay.H and again.d == 8
    with pytest.raises(ValueError):
        codes.build_reference_code("alist", alist_text=text, k=11)
    with pytest.raises(ValueError):
        codes.build_reference_code("nope")


def test_dual_basis_spans_row_space(golay):
    B = golay.dual_basis()
    assert B.rows == 12 == rank(B)
    assert rank(B.vstack(golay.H)) == 12
    G = golay.generator().to_dense().astype(int)
    assert not ((B.to_dense().astype(int) @ G.T) % 2).any()
    assert np.array_equal(np.sort(B.row_weights()) > 0, np.ones(12, dtype=bool))
