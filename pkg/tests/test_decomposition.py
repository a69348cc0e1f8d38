import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from partialpoly.decomposition import (
    ConvexDecomposition,
    count_inner,
    decompose_pasm,
    find_trail,
    random_point,
    split,
    verify_decomposition,
)
from partialpoly.gridgraph import hat
from partialpoly.matrices import enumerate_pasms, is_pasm
from partialpoly.polytopes import pasm_contains

EXAMPLE_X = ((F(1, 5), F(2, 5), F(3, 10)), (F(7, 10), F(-3, 10), F(-1, 10)), (0, F(1, 2), F(-1, 5)))
EXAMPLE_PLUS = ((F(1, 5), F(1, 2), F(1, 5)), (F(4, 5), F(-2, 5), 0), (0, F(1, 2), F(-1, 5)))
EXAMPLE_MINUS = ((F(1, 5), F(1, 10), F(3, 5)), (F(2, 5), 0, F(-2, 5)), (0, F(1, 2), F(-1, 5)))
M8 = ((1, 0, 0), (0, 1, 0))
M10 = ((0, 1, 0), (1, 0, 0))


def test_worked_example_first_split():
    s = split(EXAMPLE_X)
    assert s.ell_plus == F(1, 10) and s.ell_minus == F(3, 10)
    assert s.weight_plus == F(3, 4) and s.weight_minus == F(1, 4)
    assert s.x_plus == EXAMPLE_PLUS
    assert s.x_minus == EXAMPLE_MINUS
    assert not s.closed
    # the trail enters from the bottom boundary and leaves through the right one
    assert s.trail[0] == (3, 0) and s.trail[-1] == (1, 3)


def test_split_recombines():
    s = split(EXAMPLE_X)
    combo = tuple(tuple(s.weight_plus * a + s.weight_minus * b for a, b in zip(ra, rb))
                  for ra, rb in zip(s.x_plus, s.x_minus))
    assert combo == EXAMPLE_X
    assert count_inner(hat(s.x_plus)) < count_inner(hat(EXAMPLE_X))
    assert count_inner(hat(s.x_minus)) < count_inner(hat(EXAMPLE_X))


def test_worked_example_decomposes():
    dec = decompose_pasm(EXAMPLE_X)
    assert dec.is_valid_for(EXAMPLE_X)
    assert dec.total_weight() == 1


def test_vertex_decomposes_to_itself():
    for M in enumerate_pasms(2, 3):
        dec = decompose_pasm(M)
        assert dec.terms == ((F(1), M),)
        assert find_trail(hat(M)) is None
        assert split(M) is None


def test_midpoint():
    X = tuple(tuple(F(a + b, 2) for a, b in zip(ra, rb)) for ra, rb in zip(M8, M10))
    dec = decompose_pasm(X)
    assert dec.is_valid_for(X)
    assert dec.is_valid_for(X, partial_permutation=True)


def test_outside_point_rejected():
    with pytest.raises(ValueError):
        decompose_pasm(((F(3, 2), 0),))


def test_json_shape():
    dec = decompose_pasm(((F(1, 2),),))
    assert dec.to_json() == {"terms": [{"lambda": "1/2", "vertex": [[0]]}, {"lambda": "1/2", "vertex": [[1]]}]}


def test_invalid_decompositions_are_caught():
    X = ((F(1, 2),),)
    assert not ConvexDecomposition(((F(1), ((1,),)),)).is_valid_for(X)
    assert not ConvexDecomposition(((F(1, 2), ((1,),)), (F(1, 2), ((2,),)))).is_valid_for(((F(3, 2),),))


@pytest.mark.parametrize("m, n", [(1, 3), (2, 2), (3, 2), (2, 3)])
def test_random_points(m, n):
    report = verify_decomposition(m, n, 40, seed=m * 10 + n)
    assert report["pass"], report["counterexamples"][:1]


def test_boundary_points_lie_on_a_facet():
    rng = random.Random(5)
    for _ in range(20):
        X = random_point(2, 3, rng, boundary=True)
        assert pasm_contains(X)
        grid = hat(X)
        labels = [grid.label(e) for e in grid.base.edges()]
        assert any(x in (0, 1) for x in labels)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=8),
                         min_size=3, max_size=3), min_size=2, max_size=2))
def test_membership_matches_decomposability(X):
    X = tuple(tuple(r) for r in X)
    if pasm_contains(X):
        dec = decompose_pasm(X)
        assert dec.is_valid_for(X)
        assert all(is_pasm(M) for _, M in dec.terms)
    else:
        with pytest.raises(ValueError):
            decompose_pasm(X)
