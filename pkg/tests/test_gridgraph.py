from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partialpoly.gridgraph import (
    EMPTY,
    ONE,
    ZERO,
    GridGraph,
    SumLabeling,
    basic_sum_labeling,
    enumerate_sum_labelings,
    full_labeling,
    hat,
    matrix_from_labeling,
    regions,
    union_all,
)
from partialpoly.matrices import enumerate_pasms, zero_matrix

M3 = ((0, 1, 0), (0, 0, 0))
M8 = ((1, 0, 0), (0, 1, 0))
M13 = ((0, 0, 1), (0, 1, 0))
M14 = ((0, 1, 0), (1, -1, 0))
M15 = ((0, 1, 0), (1, -1, 1))
EXAMPLE_X = ((F(1, 5), F(2, 5), F(3, 10)), (F(7, 10), F(-3, 10), F(-1, 10)), (0, F(1, 2), F(-1, 5)))


def test_grid_has_2mn_edges():
    g = GridGraph(3, 4)
    assert len(g.edges()) == 24
    assert g.endpoints(("h", 0, 3)) == ((0, 3), (0, 4))
    assert g.is_boundary_vertex((0, 4)) and g.is_boundary_vertex((3, 0))
    assert not g.is_boundary_vertex((2, 3))


def test_hat_of_zero_and_vertex():
    grid = hat(zero_matrix(2, 3))
    assert all(grid.label(e) == 0 for e in grid.base.edges())
    grid = hat(M8)
    assert all(grid.label(e) in (0, 1) for e in grid.base.edges())


def test_hat_of_worked_example():
    grid = hat(EXAMPLE_X)
    assert grid.vert[0][0] == F(1, 5)
    assert grid.vert[1][0] == F(9, 10)
    assert grid.horiz[1][0] == F(7, 10)
    assert grid.identity_holds()


small_rational = st.fractions(min_value=-3, max_value=3, max_denominator=12)


@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small_rational, min_size=n, max_size=n), min_size=m, max_size=m))))
def test_local_identity_holds(X):
    assert hat(X).identity_holds()


def test_basic_sum_labeling():
    g = basic_sum_labeling(zero_matrix(2, 3))
    assert all(x == ZERO for row in g.horiz + g.vert for x in row)
    assert matrix_from_labeling(basic_sum_labeling(M8)) == M8
    g = basic_sum_labeling(M14)
    assert g.vert[0][1] == ONE and g.vert[1][1] == ZERO
    assert g.horiz[1][0] == ONE and g.horiz[1][1] == ZERO
    with pytest.raises(ValueError):
        basic_sum_labeling(((1, 1),))


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3), (3, 3)])
def test_basic_sum_labeling_is_injective(m, n):
    pasms = enumerate_pasms(m, n)
    labels = {basic_sum_labeling(M) for M in pasms}
    assert len(labels) == len(pasms)
    assert all(matrix_from_labeling(basic_sum_labeling(M)) == M for M in pasms)
    assert all(regions(d) == 0 for d in labels)


def test_union_identities():
    d = basic_sum_labeling(M15)
    assert d | d == d
    assert EMPTY | d == d and d | EMPTY == d
    assert d <= (d | basic_sum_labeling(M3))
    assert EMPTY <= d and not d <= EMPTY
    with pytest.raises(ValueError):
        d | basic_sum_labeling(((1,),))


def test_intersection():
    a, b = basic_sum_labeling(M3), basic_sum_labeling(M13)
    u = a | b
    assert u & a == a
    assert a & b == EMPTY
    assert full_labeling(2, 3) & u == u


def test_worked_region_example():
    delta = union_all(basic_sum_labeling(M) for M in (M3, M13, M15))
    assert regions(delta) == 4
    assert regions(EMPTY) == -1


@pytest.mark.parametrize("m, n", [(1, 1), (2, 3), (3, 3), (4, 2)])
def test_full_labeling_has_mn_regions(m, n):
    assert regions(full_labeling(m, n)) == m * n


def test_json_round_trip():
    delta = union_all(basic_sum_labeling(M) for M in (M3, M13, M15))
    data = delta.to_json()
    assert set(data) == {"m", "n", "horiz", "vert"}
    assert all(x in ("0", "1", "01") for row in data["horiz"] for x in row)
    assert SumLabeling.from_json(data) == delta
    assert SumLabeling.from_json(EMPTY.to_json()) == EMPTY


def test_sum_labeling_count_2x3():
    # one per nonempty face of PASM(2,3)
    assert len(enumerate_sum_labelings(enumerate_pasms(2, 3))) == 471


@pytest.mark.parametrize("m, n", [(2, 2), (2, 3)])
def test_regions_strictly_monotone(m, n):
    labels = sorted(enumerate_sum_labelings(enumerate_pasms(m, n)), key=regions)
    for a, b in combinations(labels, 2):
        if a != b and b.contains(a):
            assert regions(b) > regions(a)
        elif a != b and a.contains(b):
            assert regions(a) > regions(b)


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_regions_monotone_random_3x3(data):
    pasms = enumerate_pasms(3, 3)
    base = data.draw(st.lists(st.sampled_from(pasms), min_size=1, max_size=6))
    extra = data.draw(st.sampled_from(pasms))
    small = union_all(basic_sum_labeling(M) for M in base)
    big = small | basic_sum_labeling(extra)
    if big != small:
        assert regions(big) > regions(small)
