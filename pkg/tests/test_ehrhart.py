from fractions import Fraction
from math import factorial

import pytest

from partialpoly import ehrhart
from partialpoly.ehrhart import (
    DilationCounter,
    ResourceGuardError,
    brute_force_count,
    count_lattice_points,
    ehrhart_polynomial,
    max_states,
    nonpositive_results,
    verify_conjectures,
    verify_volume_theorem_P2n,
)
from partialpoly.exact import parse_rational
from partialpoly.matrices import count_partial_perms, count_pasms
from partialpoly.permutohedron import all_words, permutohedron_contains


@pytest.mark.parametrize("kind", ehrhart.KINDS)
@pytest.mark.parametrize("m, n", [(1, 1), (2, 3), (3, 2), (4, 4)])
def test_zero_dilate_has_one_point(kind, m, n):
    assert count_lattice_points(kind, m, n, 0) == 1


def test_small_counts():
    assert count_lattice_points("pasm", 2, 3, 1) == 17
    assert count_lattice_points("pperm", 2, 2, 1) == 7
    assert count_lattice_points("PASM", 2, 2, 1) == 8


BRUTE_CASES = [
    (kind, m, n, t)
    for kind in ehrhart.KINDS
    for m, n, ts in [(1, 1, 5), (1, 3, 3), (2, 1, 3), (2, 2, 3), (2, 3, 1), (3, 2, 1), (3, 3, 1)]
    for t in range(ts + 1)
]


@pytest.mark.parametrize("kind, m, n, t", BRUTE_CASES)
def test_dp_matches_brute_force(kind, m, n, t):
    values = (t * n + 1) if kind == "permutohedron" else (2 * t + 1)
    dims = m if kind == "permutohedron" else m * n
    if values ** dims > 3 * 10**5:
        pytest.skip("search space too large for the naive oracle")
    assert count_lattice_points(kind, m, n, t) == brute_force_count(kind, m, n, t)


def test_dp_matches_brute_force_permutohedron_larger():
    for m, n, t in [(4, 2, 2), (3, 4, 2), (5, 5, 1)]:
        assert count_lattice_points("permutohedron", m, n, t) == brute_force_count("permutohedron", m, n, t)


@pytest.mark.parametrize("m, n", [(m, n) for m in range(1, 4) for n in range(1, 4)])
def test_first_dilate_counts_vertices(m, n):
    assert count_lattice_points("pperm", m, n, 1) == count_partial_perms(m, n)
    assert count_lattice_points("pasm", m, n, 1) == count_pasms(m, n)
    words = [w for w in all_words(m, n) if permutohedron_contains(w, m, n)]
    assert count_lattice_points("permutohedron", m, n, 1) >= len(set(words))


@pytest.mark.parametrize("kind", ["pperm", "pasm"])
@pytest.mark.parametrize("m, n", [(1, 2), (1, 3), (2, 3)])
def test_transpose_symmetry_by_brute_force(kind, m, n):
    for t in range(3 if m * n <= 3 else 2):
        assert brute_force_count(kind, m, n, t) == brute_force_count(kind, n, m, t)


@pytest.mark.parametrize("kind", ["pperm", "pasm"])
@pytest.mark.parametrize("m, n", [(1, 2), (1, 3), (2, 3)])
def test_transposed_volumes_agree(kind, m, n):
    a, b = ehrhart_polynomial(kind, m, n), ehrhart_polynomial(kind, n, m)
    assert a.ehrhart == b.ehrhart


def test_wrap_recovery(monkeypatch):
    expected = [count_lattice_points("pasm", 3, 3, t) for t in range(5)]
    monkeypatch.setattr(ehrhart, "_WRAP_RISK", 1)
    assert [count_lattice_points("pasm", 3, 3, t) for t in range(5)] == expected


def test_resource_guard(monkeypatch):
    monkeypatch.setenv(ehrhart.MAX_STATES_ENV, "100")
    assert max_states() == 100
    with pytest.raises(ResourceGuardError) as info:
        count_lattice_points("pasm", 3, 3, 5)
    assert info.value.cap == 100 and "100" in str(info.value)
    monkeypatch.setenv(ehrhart.MAX_STATES_ENV, "lots")
    with pytest.raises(ValueError):
        max_states()
    monkeypatch.delenv(ehrhart.MAX_STATES_ENV)
    assert max_states() == ehrhart.DEFAULT_MAX_STATES


def test_argument_errors():
    with pytest.raises(ValueError):
        count_lattice_points("cube", 2, 2, 1)
    with pytest.raises(ValueError):
        count_lattice_points("pasm", 2, 2, -1)
    with pytest.raises(ValueError):
        count_lattice_points("pasm", 0, 2, 1)
    with pytest.raises(ResourceGuardError):
        brute_force_count("pasm", 3, 3, 3, limit=1000)


def test_counter_and_result():
    counter = DilationCounter("pperm", 2, 2)
    assert counter.dim == 4 and counter(1) == 7
    res = ehrhart_polynomial("pperm", 2, 2)
    assert res.normalized_volume == 4 and res.dimension == 4
    assert [res.ehrhart(t) for t in range(6)] == [counter(t) for t in range(6)]
    assert res.to_json()["coefficients"][0] == "1"


def test_parallel_dilates_agree():
    assert ehrhart_polynomial("pasm", 2, 3, workers=2) == ehrhart_polynomial("pasm", 2, 3)


def check_golden_row(row):
    res = ehrhart_polynomial(row["kind"], int(row["m"]), int(row["n"]))
    coeffs = tuple(parse_rational(c) for c in row["coefficients"].split(";"))
    assert res.ehrhart.coeffs == coeffs
    assert res.dimension == int(row["dim"])
    assert res.normalized_volume == int(row["normalized_volume"])
    assert coeffs[0] == 1
    assert coeffs[-1] * factorial(res.dimension) == res.normalized_volume > 0
    assert all(c > 0 for c in coeffs)


@pytest.mark.parametrize("name", ["pperm_volumes.csv", "pasm_volumes.csv", "permutohedron_volumes.csv"])
def test_golden_tables(golden, name):
    rows = golden(name)
    assert rows
    for row in rows:
        check_golden_row(row)


def test_golden_pipeline_agrees_with_brute_force():
    # the golden coefficients come from the DP, which is checked here against naive counts
    for kind, m, n in [("pperm", 2, 2), ("pasm", 1, 3), ("permutohedron", 3, 3)]:
        res = ehrhart_polynomial(kind, m, n)
        for t in range(res.dimension + 2):
            values = (t * n + 1) if kind == "permutohedron" else (2 * t + 1)
            if values ** res.dimension <= 10**6:
                assert res.ehrhart(t) == brute_force_count(kind, m, n, t, limit=10**6)


def test_theorem_p2n():
    report = verify_volume_theorem_P2n(7)
    assert report["pass"]
    assert [r["normalized_volume"] for r in report["checked"]] == [2 * n * n - 1 for n in range(1, 8)]
    with pytest.raises(ValueError):
        verify_volume_theorem_P2n(0)


def test_conjectures_small_scope():
    report = verify_conjectures("small")
    assert report["pass"], report["counterexamples"]
    with pytest.raises(ValueError):
        verify_conjectures("huge")


def test_nonpositive_detection():
    res = ehrhart_polynomial("pperm", 1, 1)
    fake = ehrhart.VolumeResult("pperm", 1, 1, type(res.ehrhart)((1, Fraction(-1))), 1, 1)
    assert nonpositive_results([res, fake]) == [fake]
