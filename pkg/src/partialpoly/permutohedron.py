"""The partial permutohedron P(m,n), its weighted variant P_z, and the projections X -> zX."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, factorial
from typing import Sequence

from partialpoly.facelattice import LinearInequality
from partialpoly.matrices import enumerate_partial_perms, enumerate_pasms, one_line_notation, shape
from partialpoly.polytopes import facet_masks, facet_oracle, tight_rank

RatVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class PermutohedronSpec:
    """P(m,n) in R^m, or P_z(m, len(z)) when weights are given."""

    m: int
    n: int
    z: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("m and n must be positive")
        if self.z is not None and len(self.z) != self.n:
            raise ValueError(f"weight vector must have length n={self.n}")

    def contains(self, u: Sequence) -> bool:
        if self.z is None:
            return permutohedron_contains(u, self.m, self.n)
        return weighted_contains(u, self.z)


def prefix_bound(n: int, k: int) -> int:
    """Sum of the k largest entries of (n, n-1, ..., 1, 0, 0, ...)."""
    return comb(n + 1, 2) - (comb(n - k + 1, 2) if n - k + 1 >= 2 else 0)


def all_words(m: int, n: int) -> list[tuple[int, ...]]:
    """Words of length m over {0..n} with distinct nonzero letters (= w(P_{m,n}))."""
    return sorted(one_line_notation(M) for M in enumerate_partial_perms(m, n))


def permutohedron_vertices(m: int, n: int) -> list[tuple[int, ...]]:
    """Words whose nonzero letters are n, n-1, ..., n-r+1 for r = #nonzero letters."""
    out = set()
    for zeros in range(max(m - n, 0), m + 1):
        r = m - zeros
        letters = list(range(n, n - r, -1)) + [0] * zeros
        out.update(permutations(letters))
    return sorted(out)


def vertex_count(m: int, n: int) -> int:
    return sum(factorial(m) // factorial(k) for k in range(max(m - n, 0), m + 1))


def weakly_majorizes(u: Sequence, v: Sequence) -> bool:
    """u is weakly majorized by v: sorted-decreasing prefix sums of u never exceed those of v."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    su = sorted((Fraction(x) for x in u), reverse=True)
    sv = sorted((Fraction(x) for x in v), reverse=True)
    a = b = Fraction(0)
    for x, y in zip(su, sv):
        a += x
        b += y
        if a > b:
            return False
    return True


def reference_vector(m: int, n: int) -> tuple[int, ...]:
    """(n, n-1, ..., max(n-m+1, 1), 0, ..., 0) of length m."""
    return tuple(max(n - k, 0) for k in range(m))


def permutohedron_contains(u: Sequence, m: int, n: int) -> bool:
    """Membership through the m sorted-prefix inequalities."""
    if len(u) != m:
        raise ValueError(f"expected a vector of length {m}")
    vals = [Fraction(x) for x in u]
    if any(x < 0 for x in vals):
        return False
    acc = Fraction(0)
    for k, x in enumerate(sorted(vals, reverse=True), start=1):
        acc += x
        if acc > prefix_bound(n, k):
            return False
    return True


def permutohedron_contains_subsets(u: Sequence, m: int, n: int) -> bool:
    """Membership through all 2^m - 1 subset-sum inequalities plus nonnegativity."""
    return all(q.satisfied(u) for q in permutohedron_inequalities(m, n))


def permutohedron_inequalities(m: int, n: int) -> list[LinearInequality]:
    out = []
    for k in range(1, m + 1):
        for S in combinations(range(m), k):
            name = "sum{" + ",".join(str(i + 1) for i in S) + "}"
            out.append(LinearInequality.build({i: 1 for i in S}, "<=", prefix_bound(n, k), name))
    out += [LinearInequality.build({i: 1}, ">=", 0, f"u{i + 1}>=0") for i in range(m)]
    return out


def permutohedron_facets(m: int, n: int) -> list[LinearInequality]:
    """Irredundant subset inequalities (sizes below n, and the full set) plus nonnegativity."""
    return [q for q in permutohedron_inequalities(m, n)
            if q.sense == ">=" or len(q.coeffs) < n or len(q.coeffs) == m]


def permutohedron_facet_count(m: int, n: int) -> int:
    return m + 2 ** m - 1 - sum(comb(m, m - r) for r in range(1, m - n + 1))


# -- weighted variant and projections ------------------------------------------

def _check_weights(z: Sequence) -> tuple[Fraction, ...]:
    z = tuple(Fraction(x) for x in z)
    if any(x == 0 for x in z) or len(set(z)) != len(z):
        raise ValueError("weights must be distinct and nonzero")
    return z


def weighted_vertices(z: Sequence, m: int) -> list[RatVector]:
    """Words of length m over {0, z_1, ..., z_n} with distinct nonzero letters."""
    z = _check_weights(z)
    out = []
    for choice in product(range(len(z) + 1), repeat=m):
        used = [c for c in choice if c]
        if len(set(used)) == len(used):
            out.append(tuple(z[c - 1] if c else Fraction(0) for c in choice))
    return sorted(set(out))


def zhat(z: Sequence, n: int) -> RatVector:
    """z padded with zeros to length n, or its n largest entries when len(z) > n."""
    z = sorted((Fraction(x) for x in z), reverse=True)
    if len(z) >= n:
        return tuple(z[:n])
    return tuple(z) + (Fraction(0),) * (n - len(z))


def weighted_contains(u: Sequence, z: Sequence) -> bool:
    """u in P_z(len(u), len(z)) for positive z: u >= 0 and u weakly majorized by z-hat."""
    z = _check_weights(z)
    if any(x <= 0 for x in z):
        raise ValueError("majorization membership needs positive weights")
    return all(Fraction(x) >= 0 for x in u) and weakly_majorizes(u, zhat(z, len(u)))


def project(z: Sequence, X: Sequence[Sequence]) -> RatVector:
    """The row vector zX."""
    m, n = shape(X)
    if len(z) != m:
        raise ValueError(f"weight length {len(z)} does not match {m} rows")
    return tuple(sum((Fraction(z[i]) * X[i][j] for i in range(m)), Fraction(0)) for j in range(n))


def verify_projection(kind: str, m: int, n: int, z: Sequence) -> dict:
    """Check that zX maps the vertices of PPerm/PASM(m,n) onto P_z(n, m).

    (a) every vertex image lies in P_z(n,m); (b) every word of P_z(n,m) is
    the image of a partial permutation matrix.
    """
    z = _check_weights(z)
    if len(z) != m:
        raise ValueError(f"z must have length m={m}")
    if any(x <= 0 for x in z):
        raise ValueError("projection check needs positive weights")
    kind = kind.lower()
    if kind == "pasm":
        if any(a <= b for a, b in zip(z, z[1:])):
            raise ValueError("PASM projection needs strictly decreasing z")
        vertices = enumerate_pasms(m, n)
    elif kind == "pperm":
        vertices = enumerate_partial_perms(m, n)
    else:
        raise ValueError(f"unknown polytope kind {kind!r}")
    bad = []
    for M in vertices:
        image = project(z, M)
        if not weighted_contains(image, z):
            bad.append({"vertex": [list(r) for r in M], "image": [str(x) for x in image]})
    images = {project(z, M) for M in enumerate_partial_perms(m, n)}
    for w in weighted_vertices(z, n):
        if w not in images:
            bad.append({"word": [str(x) for x in w], "reason": "not an image of a partial permutation"})
    return {"pass": not bad, "vertices": len(vertices), "counterexamples": bad}


# -- facet and vertex verifiers -------------------------------------------------

def verify_facets(m: int, n: int) -> dict:
    """Oracle facet count of P(m,n) vs. the formula and the irredundant list."""
    vertices = permutohedron_vertices(m, n)
    raw = permutohedron_inequalities(m, n)
    facets = permutohedron_facets(m, n)
    formula = permutohedron_facet_count(m, n)
    oracle = facet_oracle(vertices, raw)
    problems = []
    if oracle != formula:
        problems.append(f"oracle found {oracle} facets, formula gives {formula}")
    if len(facet_masks(vertices, facets)) != len(facets) or len(facets) != formula:
        problems.append("facet list is redundant or incomplete")
    return {"pass": not problems, "oracle": oracle, "formula": formula, "counterexamples": problems}


def verify_vertices(m: int, n: int) -> dict:
    """Extreme points among all integer points of [0, n]^m in P(m,n) vs. the vertex formula."""
    raw = permutohedron_inequalities(m, n)
    extreme = set()
    for u in product(range(n + 1), repeat=m):
        if permutohedron_contains(u, m, n) and tight_rank(u, raw, m) == m:
            extreme.add(u)
    listed = set(permutohedron_vertices(m, n))
    problems = []
    if extreme != listed:
        problems.append({"missing": sorted(extreme - listed), "spurious": sorted(listed - extreme)})
    if len(listed) != vertex_count(m, n):
        problems.append({"formula": vertex_count(m, n), "listed": len(listed)})
    return {"pass": not problems, "vertices": len(listed), "formula": vertex_count(m, n),
            "counterexamples": problems}
