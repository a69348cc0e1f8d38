"""The grid graph of an m x n matrix, its partial-sum labeling and sum-labelings.

Internal vertex (i, j) (0-based) carries X[i][j].  The horizontal edge leaving
it to the right carries the row partial sum r[i][j]; the vertical edge leaving
it downward carries the column partial sum c[i][j].  Edges in the last column
(horizontal) or last row (vertical) end on boundary vertices.

Sum-labelings store each edge label as a bitmask: ZERO = {0}, ONE = {1},
BOTH = {0,1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from partialpoly.matrices import IntMatrix, column_prefix_sums, is_pasm, row_prefix_sums, shape

ZERO, ONE, BOTH = 1, 2, 3
_LABEL_TEXT = {ZERO: "0", ONE: "1", BOTH: "01"}
_TEXT_LABEL = {v: k for k, v in _LABEL_TEXT.items()}


@dataclass(frozen=True)
class GridGraph:
    m: int
    n: int

    def edges(self) -> list[tuple[str, int, int]]:
        """All 2mn edges as ("h" | "v", i, j)."""
        return [(kind, i, j) for kind in "hv" for i in range(self.m) for j in range(self.n)]

    def endpoints(self, edge: tuple[str, int, int]) -> tuple[tuple[int, int], tuple[int, int]]:
        kind, i, j = edge
        return ((i, j), (i, j + 1)) if kind == "h" else ((i, j), (i + 1, j))

    def is_boundary_vertex(self, v: tuple[int, int]) -> bool:
        return v[0] == self.m or v[1] == self.n


@dataclass(frozen=True)
class LabeledGrid:
    """X-hat: vertex labels X[i][j], horizontal labels r[i][j], vertical labels c[i][j]."""

    base: GridGraph
    vertex: tuple[tuple[Fraction, ...], ...]
    horiz: tuple[tuple[Fraction, ...], ...]
    vert: tuple[tuple[Fraction, ...], ...]

    def label(self, edge: tuple[str, int, int]) -> Fraction:
        kind, i, j = edge
        return self.horiz[i][j] if kind == "h" else self.vert[i][j]

    def identity_holds(self) -> bool:
        """r[i][j] + c[i-1][j] == c[i][j] + r[i][j-1] at every internal vertex."""
        for i in range(self.base.m):
            for j in range(self.base.n):
                up = self.vert[i - 1][j] if i else 0
                left = self.horiz[i][j - 1] if j else 0
                if self.horiz[i][j] + up != self.vert[i][j] + left:
                    return False
        return True


def hat(X: Sequence[Sequence]) -> LabeledGrid:
    m, n = shape(X)
    vals = tuple(tuple(Fraction(x) for x in row) for row in X)
    r = tuple(tuple(row) for row in row_prefix_sums(vals))
    c = tuple(tuple(row) for row in column_prefix_sums(vals))
    return LabeledGrid(GridGraph(m, n), vals, r, c)


@dataclass(frozen=True)
class SumLabeling:
    m: int
    n: int
    horiz: tuple[tuple[int, ...], ...] = ()
    vert: tuple[tuple[int, ...], ...] = ()
    empty: bool = False

    def _check(self, other: SumLabeling) -> None:
        if not (self.empty or other.empty) and (self.m, self.n) != (other.m, other.n):
            raise ValueError(f"labelings of different grids: {self.m}x{self.n} vs {other.m}x{other.n}")

    def union(self, other: SumLabeling) -> SumLabeling:
        self._check(other)
        if self.empty:
            return other
        if other.empty:
            return self
        return SumLabeling(self.m, self.n, _zip2(self.horiz, other.horiz, int.__or__),
                           _zip2(self.vert, other.vert, int.__or__))

    __or__ = union

    def intersection(self, other: SumLabeling) -> SumLabeling:
        """Edgewise intersection; EMPTY if some edge label becomes the empty set."""
        self._check(other)
        if self.empty or other.empty:
            return EMPTY
        h = _zip2(self.horiz, other.horiz, int.__and__)
        v = _zip2(self.vert, other.vert, int.__and__)
        if any(x == 0 for row in h + v for x in row):
            return EMPTY
        return SumLabeling(self.m, self.n, h, v)

    __and__ = intersection

    def contains(self, other: SumLabeling) -> bool:
        """True iff ``other`` is contained in ``self`` edgewise."""
        self._check(other)
        if other.empty:
            return True
        if self.empty:
            return False
        pairs = zip((x for row in self.horiz + self.vert for x in row),
                    (y for row in other.horiz + other.vert for y in row))
        return all(y & ~x == 0 for x, y in pairs)

    def __le__(self, other: SumLabeling) -> bool:
        return other.contains(self)

    def __lt__(self, other: SumLabeling) -> bool:
        return self != other and other.contains(self)

    def to_json(self) -> dict:
        if self.empty:
            return {"empty": True}
        return {
            "m": self.m,
            "n": self.n,
            "horiz": [[_LABEL_TEXT[x] for x in row] for row in self.horiz],
            "vert": [[_LABEL_TEXT[x] for x in row] for row in self.vert],
        }

    @classmethod
    def from_json(cls, data: dict) -> SumLabeling:
        if data.get("empty"):
            return EMPTY
        h = tuple(tuple(_TEXT_LABEL[x] for x in row) for row in data["horiz"])
        v = tuple(tuple(_TEXT_LABEL[x] for x in row) for row in data["vert"])
        return cls(int(data["m"]), int(data["n"]), h, v)


EMPTY = SumLabeling(0, 0, empty=True)


def _zip2(a, b, op):
    return tuple(tuple(op(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def basic_sum_labeling(M: IntMatrix) -> SumLabeling:
    if not is_pasm(M):
        raise ValueError("basic sum-labelings are defined for partial alternating sign matrices only")
    m, n = shape(M)
    code = {0: ZERO, 1: ONE}
    h = tuple(tuple(code[x] for x in row) for row in row_prefix_sums(M))
    v = tuple(tuple(code[x] for x in row) for row in column_prefix_sums(M))
    return SumLabeling(m, n, h, v)


def matrix_from_labeling(delta: SumLabeling) -> IntMatrix:
    """Inverse of :func:`basic_sum_labeling`, read off the column partial sums."""
    if delta.empty or any(x == BOTH for row in delta.vert + delta.horiz for x in row):
        raise ValueError("only basic sum-labelings determine a matrix")
    c = [[1 if x == ONE else 0 for x in row] for row in delta.vert]
    return tuple(tuple(c[i][j] - (c[i - 1][j] if i else 0) for j in range(delta.n))
                 for i in range(delta.m))


def union_all(labelings: Iterable[SumLabeling]) -> SumLabeling:
    out = EMPTY
    for d in labelings:
        out = out | d
    return out


def full_labeling(m: int, n: int) -> SumLabeling:
    row = (BOTH,) * n
    return SumLabeling(m, n, (row,) * m, (row,) * m)


def regions(delta: SumLabeling) -> int:
    """Bounded regions of the {0,1}-labeled subgraph; -1 for EMPTY.

    Boundary stubs on the right and bottom all meet one exterior vertex; the
    count is the cyclomatic number E - V + C of the resulting planar graph.
    """
    if delta.empty:
        return -1
    g = GridGraph(delta.m, delta.n)
    ext = (-1, -1)
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    n_edges = 0
    for edge in g.edges():
        kind, i, j = edge
        label = delta.horiz[i][j] if kind == "h" else delta.vert[i][j]
        if label != BOTH:
            continue
        a, b = g.endpoints(edge)
        if g.is_boundary_vertex(b):
            b = ext
        n_edges += 1
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    n_vertices = len(parent)
    n_components = sum(1 for v in parent if find(v) == v)
    return n_edges - n_vertices + n_components


def enumerate_sum_labelings(pasms: Sequence[IntMatrix]) -> set[SumLabeling]:
    """All nonempty unions of basic sum-labelings of the given matrices."""
    basics = {basic_sum_labeling(M) for M in pasms}
    seen = set(basics)
    frontier = list(basics)
    while frontier:
        nxt = []
        for d in frontier:
            for b in basics:
                u = d | b
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen
