import itertools

import numpy as np
import pytest

from trapredund import geometry
from trapredund.geometry import FiniteField, SearchBudgetError


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 32])
def test_field_axioms(q):
    F = FiniteField(q)
    e = np.arange(q)
    assert np.array_equal(F.add[0], e) and np.array_equal(F.mul[1], e)
    assert np.array_equal(F.add, F.add.T) and np.array_equal(F.mul, F.mul.T)
    for x in range(1, q):
        assert F.mul[x, F.inv[x]] == 1
        assert F.add[x, F.neg[x]] == 0
    # multiplicative group has no zero divisors, each row a permutation
    assert all(sorted(F.mul[x, 1:]) == list(range(1, q)) for x in range(1, q))
    rng = np.random.default_rng(q)
    for x, y, z in rng.integers(0, q, (200, 3)):
        assert F.mul[x, F.add[y, z]] == F.add[F.mul[x, y], F.mul[x, z]]
        assert F.mul[F.mul[x, y], z] == F.mul[x, F.mul[y, z]]


def test_fixed_binary_moduli():
    assert FiniteField(8).modulus == (1, 1, 0, 1)
    assert FiniteField(32).modulus == (1, 0, 1, 0, 0, 1)
    with pytest.raises(ValueError):
        FiniteField(4, modulus=(1, 0, 1))  # x^2 + 1 = (x + 1)^2


@pytest.mark.parametrize("q", [1, 6, 12, 100])
def test_not_prime_powers(q):
    with pytest.raises(ValueError):
        geometry.factor_prime_power(q)


@pytest.mark.parametrize("q", [2, 3, 4])
def test_plane_axioms(q):
    geo = geometry.build_geometry(2, q)
    lines = [set(L) for L in geo.lines]
    for i, j in itertools.combinations(range(len(geo.points)), 2):
        assert sum(1 for L in lines if i in L and j in L) == 1
    for L1, L2 in itertools.combinations(lines, 2):
        assert len(L1 & L2) == 1
    assert all(len(geo.lines_through(p)) == q + 1 for p in range(len(geo.points)))


def test_space_pg32_structure():
    geo = geometry.build_geometry(3, 2)
    assert (len(geo.points), len(geo.lines)) == (15, 35)
    assert all(len(geo.lines_through(p)) == 7 for p in range(15))
    # three collinear points are closed under addition in PG(3,2)
    for L in geo.lines:
        a, b, c = (np.array(geo.points[i]) for i in L)
        assert not ((a + b + c) % 2).any()


def test_points_are_canonical_and_sorted():
    geo = geometry.build_geometry(2, 5)
    assert geo.points == sorted(geo.points)
    assert all(pt[next(i for i, c in enumerate(pt) if c)] == 1 for pt in geo.points)
    assert geo.point_index((0, 2, 4)) == geo.point_index((0, 1, 2))


def test_incidence_matrix_shape_and_weights():
    geo = geometry.build_geometry(2, 8)
    H = geometry.incidence_matrix(geo)
    assert H.shape == (73, 73)
    assert set(H.row_weights().tolist()) == {9} and set(H.col_weights().tolist()) == {9}


def test_unsupported_inputs():
    with pytest.raises(ValueError):
        geometry.build_geometry(4, 2)
    with pytest.raises(ValueError):
        geometry.build_geometry(2, 6)
    with pytest.raises(ValueError):
        geometry.build_geometry(2, 128)


def test_cap_in_pg32_unisecants():
    geo = geometry.build_geometry(3, 2)
    arcs = geometry.enumerate_arcs(geo, 3, limit=1).arcs
    n1, n2 = geometry.secant_profile(geo, arcs[0])
    assert n1 == 15 == geometry.unisecant_formula(3, 2, 3)
    assert n2 == 3


def test_secant_profile_rejects_collinear_points():
    geo = geometry.build_geometry(2, 4)
    with pytest.raises(ValueError):
        geometry.secant_profile(geo, geo.lines[0][:3])


def test_arc_enumeration_limits():
    geo = geometry.build_geometry(2, 4)
    res = geometry.enumerate_arcs(geo, 4, limit=5)
    assert res.truncated and len(res.arcs) == 5
    full = geometry.enumerate_arcs(geo, 4).arcs
    assert [a.point_indices for a in full[:5]] == [a.point_indices for a in res.arcs]
    assert [a.point_indices for a in full] == sorted(a.point_indices for a in full)
    with pytest.raises(SearchBudgetError) as exc:
        geometry.enumerate_arcs(geometry.build_geometry(2, 16), 18, budget=10**6)
    assert exc.value.estimate > 10**6
    assert geometry.enumerate_arcs(geo, 7).arcs == []


def test_max_arc_sizes():
    assert geometry.max_arc_size(2, 4) == 6
    assert geometry.max_arc_size(2, 5) == 6
    assert geometry.max_arc_size(3, 3) == 10


def test_ovals_of_pg23_are_the_conics():
    # q odd: every oval is a nondegenerate conic, of which there are q^5 - q^2
    q = 3
    geo = geometry.build_geometry(2, q)
    ovals = geometry.enumerate_arcs(geo, q + 1).arcs
    assert len(ovals) == q**5 - q**2
    for arc in ovals:
        assert geometry.secant_profile(geo, arc) == (q + 1, (q + 1) * q // 2)
