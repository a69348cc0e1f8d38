from fractions import Fraction as F
import pytest
from hypothesis import given
from hypothesis import strategies as st

from partialpoly.matrices import count_partial_perms, enumerate_partial_perms
from partialpoly.permutohedron import (
    PermutohedronSpec,
    all_words,
    permutohedron_contains,
    permutohedron_contains_subsets,
    permutohedron_facet_count,
    permutohedron_facets,
    permutohedron_vertices,
    prefix_bound,
    project,
    reference_vector,
    vertex_count,
    verify_facets,
    verify_projection,
    verify_vertices,
    weakly_majorizes,
    weighted_contains,
    weighted_vertices,
    zhat,
)

M8 = ((1, 0, 0), (0, 1, 0))
M14 = ((0, 1, 0), (1, -1, 0))


def test_vertices_examples():
    assert permutohedron_vertices(2, 2) == sorted([(0, 0), (2, 0), (0, 2), (2, 1), (1, 2)])
    assert vertex_count(2, 2) == 5
    assert vertex_count(3, 3) == 16
    assert len(all_words(3, 3)) == 34
    assert permutohedron_vertices(1, 4) == [(0,), (4,)]


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 4) for n in range(1, 4)])
def test_vertex_formula_vs_extremality(m, n):
    report = verify_vertices(m, n)
    assert report["pass"] and report["vertices"] == vertex_count(m, n)


def test_majorization_examples():
    u = (F(1, 3), 2, 0)
    assert weakly_majorizes(u, u)
    assert weakly_majorizes((1, 1, 0), (2, 1, 0))
    assert not weakly_majorizes((3, 0), (2, 1))
    with pytest.raises(ValueError):
        weakly_majorizes((1,), (1, 2))


def test_membership_examples():
    assert all(permutohedron_contains(v, 2, 2) for v in permutohedron_vertices(2, 2))
    for n in range(1, 6):
        assert not permutohedron_contains((n, n), 2, n)
    assert permutohedron_contains((1, 1, 0), 3, 2)
    assert not permutohedron_contains((-1, 0), 2, 2)
    assert PermutohedronSpec(3, 2).contains((1, 1, 0))
    assert PermutohedronSpec(2, 1, z=(F(1, 2),)).contains((F(1, 2), 0))
    with pytest.raises(ValueError):
        permutohedron_contains((1, 2), 3, 2)


def test_prefix_bound():
    assert [prefix_bound(3, k) for k in range(6)] == [0, 3, 5, 6, 6, 6]
    assert prefix_bound(2, 2) == 3


@st.composite
def vector_and_size(draw):
    m = draw(st.integers(1, 5))
    n = draw(st.integers(1, 5))
    u = draw(st.lists(st.fractions(min_value=-1, max_value=n + 1, max_denominator=7), min_size=m, max_size=m))
    return u, m, n


@given(vector_and_size())
def test_three_membership_forms_agree(data):
    u, m, n = data
    sorted_form = permutohedron_contains(u, m, n)
    assert sorted_form == permutohedron_contains_subsets(u, m, n)
    assert sorted_form == (all(x >= 0 for x in u) and weakly_majorizes(u, reference_vector(m, n)))


@given(vector_and_size(), st.fractions(min_value=F(1, 9), max_value=5, max_denominator=9))
def test_scale_equivariance(data, t):
    u, m, n = data
    inside = permutohedron_contains(u, m, n)
    scaled = [t * x for x in u]
    bounds_ok = all(x >= 0 for x in scaled)
    acc = 0
    for k, x in enumerate(sorted(scaled, reverse=True), start=1):
        acc += x
        bounds_ok = bounds_ok and acc <= t * prefix_bound(n, k)
    assert inside == bounds_ok


def test_facet_counts():
    assert permutohedron_facet_count(2, 2) == 5
    assert permutohedron_facet_count(3, 2) == 7
    assert permutohedron_facet_count(2, 3) == 5
    assert len(permutohedron_facets(3, 2)) == 7


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 5) for n in range(1, 5)])
def test_facet_formula_vs_oracle(m, n):
    assert verify_facets(m, n)["pass"]


def test_weighted_vertices():
    assert len(weighted_vertices((2, 1), 3)) == 13 == count_partial_perms(3, 2)
    assert weighted_vertices((5,), 1) == [(0,), (5,)]
    renamed = {tuple(4 - x if x else 0 for x in w) for w in weighted_vertices((3, 2, 1), 2)}
    assert renamed == set(all_words(2, 3))
    with pytest.raises(ValueError):
        weighted_vertices((1, 1), 2)
    with pytest.raises(ValueError):
        weighted_vertices((0, 1), 2)


def test_zhat():
    assert zhat((2, 1), 3) == (2, 1, 0)
    assert zhat((1, 3, 2), 2) == (3, 2)


def test_projection_examples():
    assert project((2, 1), M8) == (2, 1, 0)
    image = project((2, 1), M14)
    assert image == (1, 1, 0)
    assert weighted_contains(image, (2, 1))
    assert project((2, 1), ((0, 0, 0), (0, 0, 0))) == (0, 0, 0)
    with pytest.raises(ValueError):
        project((1, 2, 3), M8)


@pytest.mark.parametrize("kind", ["pperm", "pasm"])
@pytest.mark.parametrize("m, n", [(1, 2), (2, 2), (2, 3), (3, 2)])
def test_projection_theorems(kind, m, n):
    assert verify_projection(kind, m, n, tuple(range(m, 0, -1)))["pass"]


def test_projection_other_weights():
    assert verify_projection("pperm", 2, 3, (F(1, 2), 3))["pass"]
    assert verify_projection("pasm", 2, 3, (F(7, 2), F(1, 3)))["pass"]


def test_projection_preconditions():
    with pytest.raises(ValueError):
        verify_projection("pasm", 2, 2, (1, 2))
    with pytest.raises(ValueError):
        verify_projection("pperm", 2, 2, (1, -2))
    with pytest.raises(ValueError):
        verify_projection("pperm", 2, 2, (1,))
    with pytest.raises(ValueError):
        verify_projection("permutohedron", 2, 2, (2, 1))


def test_images_of_partial_permutations_are_the_weighted_words():
    z = (3, 2, 1)
    images = {project(z, M) for M in enumerate_partial_perms(3, 3)}
    assert images == set(weighted_vertices(z, 3))
    assert len(images) == 34
