"""PPerm(m,n) and PASM(m,n): membership, facet systems, separation, face lattice."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import networkx as nx

from partialpoly.exact import affine_rank, rank
from partialpoly.facelattice import (
    Face,
    GradedPoset,
    LinearInequality,
    faces_from_vh,
    flatten,
    from_covers,
    poset_isomorphic,
)
from partialpoly.gridgraph import EMPTY, basic_sum_labeling, enumerate_sum_labelings, regions, union_all
from partialpoly.matrices import (
    IntMatrix,
    column_prefix_sums,
    enumerate_partial_perms,
    enumerate_pasms,
    is_pasm,
    row_prefix_sums,
    shape,
)

FACE_LATTICE_MAX_CELLS = 9


class DegenerateSizeError(ValueError):
    """Facet formulas are only valid for m, n >= 2."""


# -- membership ---------------------------------------------------------------

def pperm_contains(X: Sequence[Sequence]) -> bool:
    if any(Fraction(x) < 0 for row in X for x in row):
        return False
    if any(sum(map(Fraction, row)) > 1 for row in X):
        return False
    return all(sum(map(Fraction, col)) <= 1 for col in zip(*X))


def pasm_contains(X: Sequence[Sequence]) -> bool:
    vals = [[Fraction(x) for x in row] for row in X]
    return all(0 <= s <= 1 for sums in row_prefix_sums(vals) + column_prefix_sums(vals) for s in sums)


def signmatrix_contains(X: Sequence[Sequence]) -> bool:
    """Sign-matrix polytope: as PASM(m,n) but row partial sums have no upper bound."""
    vals = [[Fraction(x) for x in row] for row in X]
    if any(s < 0 for sums in row_prefix_sums(vals) for s in sums):
        return False
    return all(0 <= s <= 1 for sums in column_prefix_sums(vals) for s in sums)


def lemma_intersection_check(X: Sequence[Sequence]) -> bool:
    """PASM(m,n) equals the sign-matrix polytope cut by ``row partial sums <= 1``."""
    vals = [[Fraction(x) for x in row] for row in X]
    rows_bounded = all(s <= 1 for sums in row_prefix_sums(vals) for s in sums)
    return pasm_contains(vals) == (signmatrix_contains(vals) and rows_bounded)


# -- inequality systems -------------------------------------------------------

def _row_prefix(i: int, j: int) -> dict:
    return {(i, k): 1 for k in range(j + 1)}


def _col_prefix(i: int, j: int) -> dict:
    return {(k, j): 1 for k in range(i + 1)}


def pperm_inequalities(m: int, n: int) -> list[LinearInequality]:
    """Nonnegativity, row sums <= 1, column sums <= 1 (mn + m + n inequalities)."""
    out = [LinearInequality.build({(i, j): 1}, ">=", 0, f"X[{i + 1},{j + 1}]>=0")
           for i in range(m) for j in range(n)]
    out += [LinearInequality.build(_row_prefix(i, n - 1), "<=", 1, f"row{i + 1}<=1") for i in range(m)]
    out += [LinearInequality.build(_col_prefix(m - 1, j), "<=", 1, f"col{j + 1}<=1") for j in range(n)]
    return out


def pasm_inequalities(m: int, n: int) -> list[LinearInequality]:
    """All 4mn partial-sum bounds 0 <= r[i][j], c[i][j] <= 1."""
    out = []
    for i in range(m):
        for j in range(n):
            tag = f"[{i + 1},{j + 1}]"
            out.append(LinearInequality.build(_col_prefix(i, j), ">=", 0, f"c{tag}>=0"))
            out.append(LinearInequality.build(_col_prefix(i, j), "<=", 1, f"c{tag}<=1"))
            out.append(LinearInequality.build(_row_prefix(i, j), ">=", 0, f"r{tag}>=0"))
            out.append(LinearInequality.build(_row_prefix(i, j), "<=", 1, f"r{tag}<=1"))
    return out


def signmatrix_inequalities(m: int, n: int) -> list[LinearInequality]:
    return [q for q in pasm_inequalities(m, n) if not (q.name.startswith("r") and q.sense == "<=")]


def pperm_facets(m: int, n: int) -> list[LinearInequality]:
    if m < 2 or n < 2:
        raise DegenerateSizeError(f"PPerm facet list needs m, n >= 2 (got {m}x{n})")
    return pperm_inequalities(m, n)


def pasm_facets(m: int, n: int) -> list[LinearInequality]:
    """The 4mn - 3m - 3n + 5 facet-defining partial-sum inequalities."""
    if m < 2 or n < 2:
        raise DegenerateSizeError(f"PASM facet list needs m, n >= 2 (got {m}x{n})")
    out = []
    for i in range(1, m):
        for j in range(n):
            out.append(LinearInequality.build(_row_prefix(i, j), ">=", 0, f"r[{i + 1},{j + 1}]>=0"))
    for i in range(1, m):
        for j in range(1, n):
            out.append(LinearInequality.build(_row_prefix(i, j), "<=", 1, f"r[{i + 1},{j + 1}]<=1"))
    for i in range(m):
        for j in range(1, n):
            out.append(LinearInequality.build(_col_prefix(i, j), ">=", 0, f"c[{i + 1},{j + 1}]>=0"))
    for i in range(1, m):
        for j in range(1, n):
            out.append(LinearInequality.build(_col_prefix(i, j), "<=", 1, f"c[{i + 1},{j + 1}]<=1"))
    out.append(LinearInequality.build(_col_prefix(m - 1, 0), "<=", 1, f"c[{m},1]<=1"))
    out.append(LinearInequality.build(_row_prefix(0, n - 1), "<=", 1, f"r[1,{n}]<=1"))
    out.append(LinearInequality.build({(0, 0): 1}, ">=", 0, "X[1,1]>=0"))
    return out


def pperm_facet_count(m: int, n: int) -> int:
    return m * n + m + n


def pasm_facet_count(m: int, n: int) -> int:
    return 4 * m * n - 3 * m - 3 * n + 5


def facet_masks(vertices: Sequence, candidates: Sequence[LinearInequality]) -> dict[int, list[LinearInequality]]:
    """Tight vertex sets of the candidates that are facets, with the candidates defining each."""
    flat = [flatten(v) for v in vertices]
    dim = len(flat[0])
    if affine_rank(flat) != dim:
        raise ValueError("facet oracle needs a full-dimensional vertex set")
    found: dict[int, list[LinearInequality]] = {}
    rank_cache: dict[int, int] = {}
    for ineq in candidates:
        mask = 0
        for k, v in enumerate(vertices):
            if not ineq.satisfied(v):
                raise ValueError(f"vertex {k} violates {ineq.name or ineq}")
            if ineq.tight(v):
                mask |= 1 << k
        if mask not in rank_cache:
            rank_cache[mask] = affine_rank([flat[k] for k in range(len(flat)) if mask >> k & 1])
        if rank_cache[mask] == dim - 1:
            found.setdefault(mask, []).append(ineq)
    return found


def facet_oracle(vertices: Sequence, candidates: Sequence[LinearInequality]) -> int:
    """Number of distinct facets among the candidate inequalities."""
    return len(facet_masks(vertices, candidates))


def tight_rank(point, inequalities: Sequence[LinearInequality], dim: int) -> int:
    """Rank of the normals of the inequalities tight at ``point`` (``dim`` means a vertex)."""
    rows = []
    for q in inequalities:
        if q.tight(point):
            rows.append(dict(q.coeffs))
    if not rows:
        return 0
    keys = sorted({k for r in rows for k in r}, key=lambda k: k if isinstance(k, tuple) else (k,))
    return rank([[r.get(k, 0) for k in keys] for r in rows])


# -- separation ---------------------------------------------------------------

@dataclass(frozen=True)
class Hyperplane:
    """``sum coeffs[(i,j)] * X[i][j] = rhs``."""

    coeffs: tuple[tuple[tuple[int, int], Fraction], ...]
    rhs: Fraction

    def value(self, X: Sequence[Sequence]) -> Fraction:
        return sum((c * X[i][j] for (i, j), c in self.coeffs), Fraction(0))


def ones_of_column_sums(M: IntMatrix) -> set[tuple[int, int]]:
    """C_M: positions whose column partial sum equals 1."""
    c = column_prefix_sums(M)
    return {(i, j) for i, row in enumerate(c) for j, x in enumerate(row) if x == 1}


def separating_hyperplane(M: IntMatrix) -> Hyperplane:
    """Hyperplane strictly separating M from every other PASM of its size.

    The functional is +c[i][j] over C_M minus c[i][j] elsewhere, expanded in
    the entries of X; the right-hand side is |C_M| - 1/2.
    """
    if not is_pasm(M):
        raise ValueError("separating hyperplanes are built for partial alternating sign matrices")
    m, n = shape(M)
    C = ones_of_column_sums(M)
    sign = [[1 if (i, j) in C else -1 for j in range(n)] for i in range(m)]
    coeffs = []
    for i in range(m):
        for j in range(n):
            # X[i][j] appears in c[k][j] for every k >= i
            coeffs.append(((i, j), Fraction(sum(sign[k][j] for k in range(i, m)))))
    return Hyperplane(tuple(coeffs), Fraction(len(C)) - Fraction(1, 2))


def verify_separation(m: int, n: int) -> dict:
    pasms = enumerate_pasms(m, n)
    failures = []
    for M in pasms:
        h = separating_hyperplane(M)
        if not h.value(M) > h.rhs:
            failures.append({"vertex": M, "other": None})
        for other in pasms:
            if other != M and not h.value(other) < h.rhs:
                failures.append({"vertex": M, "other": other})
    return {"pass": not failures, "checked": len(pasms), "counterexamples": failures}


# -- face lattice -------------------------------------------------------------

def pperm_face_lattice(m: int, n: int) -> GradedPoset:
    return faces_from_vh(enumerate_partial_perms(m, n), pperm_inequalities(m, n))


def pasm_face_lattice(m: int, n: int) -> GradedPoset:
    """Oracle face lattice of PASM(m,n), each face labeled by its sum-labeling."""
    if m * n > FACE_LATTICE_MAX_CELLS:
        raise ValueError(f"PASM face lattice limited to mn <= {FACE_LATTICE_MAX_CELLS}")
    pasms = enumerate_pasms(m, n)
    poset = faces_from_vh(pasms, pasm_inequalities(m, n))
    basics = [basic_sum_labeling(M) for M in pasms]
    for face in poset.faces:
        face.label = union_all(basics[k] for k in face.indices())
    return poset


def sum_labeling_lattice(m: int, n: int) -> GradedPoset:
    """Sum-labelings ordered by containment, graded by region count.

    Built from unions of basic sum-labelings alone; covers come from the
    transitive reduction of containment, not from the region counts.
    """
    labelings = [EMPTY] + sorted(enumerate_sum_labelings(enumerate_pasms(m, n)),
                                 key=lambda d: (regions(d), str(d.to_json())))
    g = nx.DiGraph()
    g.add_nodes_from(range(len(labelings)))
    for a, la in enumerate(labelings):
        for b, lb in enumerate(labelings):
            if a != b and lb.contains(la):
                g.add_edge(a, b)
    reduced = nx.transitive_reduction(g)
    faces = [Face(0, regions(d), d) for d in labelings]
    return from_covers(faces, list(reduced.edges()))


def verify_pasm_face_lattice(m: int, n: int) -> dict:
    oracle = pasm_face_lattice(m, n)
    labels = [f.label for f in oracle.faces]
    problems = []
    if len(set(labels)) != len(labels):
        problems.append("psi is not injective")
    expected = enumerate_sum_labelings(enumerate_pasms(m, n)) | {EMPTY}
    if set(labels) != expected:
        problems.append("psi is not onto the sum-labelings")
    for f in oracle.faces:
        if f.dim != regions(f.label):
            problems.append(f"dim {f.dim} != regions {regions(f.label)} for face {f.indices()}")
    for a in oracle.faces:
        for b in oracle.faces:
            faces_le = a.vertices & ~b.vertices == 0
            if faces_le != b.label.contains(a.label):
                problems.append(f"order mismatch between faces {a.indices()} and {b.indices()}")
                break
    iso = poset_isomorphic(oracle, sum_labeling_lattice(m, n))
    if not iso:
        problems.append("sum-labeling lattice not isomorphic to the oracle lattice")
    return {"pass": not problems, "faces": len(oracle), "f_vector": oracle.f_vector(),
            "counterexamples": problems[:20]}


# -- facet and vertex verifiers -----------------------------------------------

def _matrix_setup(kind: str, m: int, n: int):
    kind = kind.lower()
    if kind == "pperm":
        return enumerate_partial_perms(m, n), pperm_inequalities(m, n), range(0, 2)
    if kind == "pasm":
        return enumerate_pasms(m, n), pasm_inequalities(m, n), range(-1, 2)
    raise ValueError(f"unknown polytope kind {kind!r}")


def verify_facets(kind: str, m: int, n: int) -> dict:
    """Oracle facet count vs. the closed formula, and irredundancy of the facet list."""
    vertices, raw, _ = _matrix_setup(kind, m, n)
    facets = pperm_facets(m, n) if kind.lower() == "pperm" else pasm_facets(m, n)
    formula = pperm_facet_count(m, n) if kind.lower() == "pperm" else pasm_facet_count(m, n)
    oracle = facet_oracle(vertices, raw)
    listed = facet_masks(vertices, facets)
    problems = []
    if oracle != formula:
        problems.append(f"oracle found {oracle} facets, formula gives {formula}")
    if len(listed) != len(facets) or len(facets) != formula:
        problems.append("facet list is redundant or incomplete")
    return {"pass": not problems, "oracle": oracle, "formula": formula, "counterexamples": problems}


def verify_vertices(kind: str, m: int, n: int) -> dict:
    """Extreme integer points of the polytope vs. the matrix enumeration.

    Every integer matrix in the bounding box is tested for membership and,
    if inside, for extremality by the rank of its tight constraints.
    """
    vertices, raw, values = _matrix_setup(kind, m, n)
    expected = set(vertices)
    inside, extreme = set(), set()
    for flat in product(values, repeat=m * n):
        X = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(m))
        if all(q.satisfied(X) for q in raw):
            inside.add(X)
            if tight_rank(X, raw, m * n) == m * n:
                extreme.add(X)
    problems = [{"matrix": [list(r) for r in X], "reason": "extreme but not enumerated"}
                for X in sorted(extreme - expected)]
    problems += [{"matrix": [list(r) for r in X], "reason": "enumerated but not extreme"}
                 for X in sorted(expected - extreme)]
    if inside != extreme:
        problems.append({"reason": "some integer point is not a vertex"})
    return {"pass": not problems, "vertices": len(expected), "extreme": len(extreme),
            "counterexamples": problems}
