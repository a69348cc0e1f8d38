"""Writing a point of PASM(m,n) as a convex combination of its vertices.

Each step builds X-hat, walks a trail through edges with inner labels (strictly
between 0 and 1), puts alternating +/- signs on the trail's corners, and pushes
X both ways along that sign pattern as far as the partial-sum bounds allow.
X is the weighted average of the two pushed matrices, each of which has more
partial sums at a bound; both are decomposed in turn.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Sequence

from partialpoly.exact import render_rational
from partialpoly.gridgraph import LabeledGrid, hat
from partialpoly.matrices import (
    IntMatrix,
    column_prefix_sums,
    enumerate_pasms,
    is_partial_permutation,
    is_pasm,
    row_prefix_sums,
    shape,
)
from partialpoly.polytopes import pasm_contains, pasm_inequalities

RatMatrix = tuple[tuple[Fraction, ...], ...]
Vertex = tuple[int, int]

RIGHT, UP, LEFT, DOWN = (0, 1), (-1, 0), (0, -1), (1, 0)
# continuation preference: a turn before going straight, then this order
_PRIORITY = {RIGHT: 0, UP: 1, LEFT: 2, DOWN: 3}


class DecompositionError(RuntimeError):
    """Raised when a trail cannot be pushed in some direction (would loop forever)."""


@dataclass(frozen=True)
class ConvexDecomposition:
    terms: tuple[tuple[Fraction, IntMatrix], ...]

    def total_weight(self) -> Fraction:
        return sum((lam for lam, _ in self.terms), Fraction(0))

    def combination(self) -> RatMatrix:
        m, n = shape(self.terms[0][1])
        out = [[Fraction(0)] * n for _ in range(m)]
        for lam, M in self.terms:
            for i in range(m):
                for j in range(n):
                    out[i][j] += lam * M[i][j]
        return tuple(tuple(row) for row in out)

    def is_valid_for(self, X: Sequence[Sequence], partial_permutation: bool = False) -> bool:
        vertex_ok = is_partial_permutation if partial_permutation else is_pasm
        return (
            all(lam > 0 for lam, _ in self.terms)
            and self.total_weight() == 1
            and all(vertex_ok(M) for _, M in self.terms)
            and self.combination() == as_rat_matrix(X)
        )

    def to_json(self) -> dict:
        return {"terms": [{"lambda": render_rational(lam), "vertex": [list(r) for r in M]}
                          for lam, M in self.terms]}


@dataclass(frozen=True)
class Split:
    """One step: X = weight_plus * x_plus + weight_minus * x_minus."""

    trail: tuple[Vertex, ...]
    closed: bool
    corners: tuple[tuple[Vertex, int], ...]
    ell_plus: Fraction
    ell_minus: Fraction
    x_plus: RatMatrix
    x_minus: RatMatrix

    @property
    def weight_plus(self) -> Fraction:
        return self.ell_minus / (self.ell_plus + self.ell_minus)

    @property
    def weight_minus(self) -> Fraction:
        return self.ell_plus / (self.ell_plus + self.ell_minus)


def as_rat_matrix(X: Sequence[Sequence]) -> RatMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in X)


def _inner(x: Fraction) -> bool:
    return 0 < x < 1


def _edge_label(grid: LabeledGrid, v: Vertex, d: tuple[int, int]) -> Fraction | None:
    """Label of the edge leaving internal vertex v in direction d, or None if absent."""
    i, j = v
    if d == RIGHT:
        return grid.horiz[i][j]
    if d == DOWN:
        return grid.vert[i][j]
    if d == LEFT:
        return grid.horiz[i][j - 1] if j > 0 else None
    return grid.vert[i - 1][j] if i > 0 else None


def count_inner(grid: LabeledGrid) -> int:
    return sum(_inner(x) for row in grid.horiz + grid.vert for x in row)


def find_trail(grid: LabeledGrid) -> tuple[list[Vertex], bool] | None:
    """A simple path (boundary to boundary) or simple cycle of inner-labeled edges.

    Returns the vertex sequence and whether it is closed; None if no label is inner.
    Boundary vertices are (m, j) and (i, n).
    """
    m, n = grid.base.m, grid.base.n
    start: Vertex | None = None
    heading = None
    for j in range(n):
        if _inner(grid.vert[m - 1][j]):
            start, heading = (m, j), UP
            break
    if start is None:
        for i in range(m):
            if _inner(grid.horiz[i][n - 1]):
                start, heading = (i, n), LEFT
                break
    if start is None:
        for i in range(m):
            for j in range(n):
                if any(_inner(x) for d in _PRIORITY if (x := _edge_label(grid, (i, j), d)) is not None):
                    start = (i, j)
                    break
            if start is not None:
                break
    if start is None:
        return None

    trail = [start]
    seen = {start: 0}
    cur = start
    if heading is not None:
        cur = (start[0] + heading[0], start[1] + heading[1])
        trail.append(cur)
        seen[cur] = 1
    while True:
        back = (-heading[0], -heading[1]) if heading else None
        options = []
        for d in _PRIORITY:
            if d == back:
                continue
            x = _edge_label(grid, cur, d)
            if x is not None and _inner(x):
                options.append(d)
        if not options:
            raise DecompositionError(f"trail stuck at {cur}; partial sums are inconsistent")
        options.sort(key=lambda d: (d == heading, _PRIORITY[d]))
        heading = options[0]
        cur = (cur[0] + heading[0], cur[1] + heading[1])
        if cur in seen:
            return trail[seen[cur]:], True
        trail.append(cur)
        if cur[0] == m or cur[1] == n:
            return trail, False
        seen[cur] = len(trail) - 1


def _corners(trail: list[Vertex], closed: bool) -> list[Vertex]:
    if closed:
        seq = range(len(trail))
        nb = lambda t: (trail[t - 1], trail[(t + 1) % len(trail)])  # noqa: E731
    else:
        seq = range(1, len(trail) - 1)
        nb = lambda t: (trail[t - 1], trail[t + 1])  # noqa: E731
    out = []
    for t in seq:
        (a, b), v = nb(t), trail[t]
        d_in = (v[0] - a[0], v[1] - a[1])
        d_out = (b[0] - v[0], b[1] - v[1])
        if d_in[0] * d_out[0] + d_in[1] * d_out[1] == 0:
            out.append(v)
    return out


def _push_limit(grid: LabeledGrid, D: list[list[int]], sign: int) -> Fraction:
    """Largest t >= 0 keeping every partial sum of X + sign*t*D inside [0, 1]."""
    signed = [[sign * x for x in row] for row in D]
    best = None
    for xs, ds in ((grid.horiz, row_prefix_sums(signed)), (grid.vert, column_prefix_sums(signed))):
        for xrow, drow in zip(xs, ds):
            for x, d in zip(xrow, drow):
                if d > 0:
                    lim = (1 - x) / d
                elif d < 0:
                    lim = x / -d
                else:
                    continue
                best = lim if best is None else min(best, lim)
    if best is None:
        raise DecompositionError("trail perturbation changes no partial sum")
    return best


def split(X: Sequence[Sequence], grid: LabeledGrid | None = None) -> Split | None:
    """One trail step on X; None when X has no inner partial sums."""
    X = as_rat_matrix(X)
    if grid is None:
        grid = hat(X)
    found = find_trail(grid)
    if found is None:
        return None
    trail, closed = found
    corners = _corners(trail, closed)
    m, n = shape(X)
    D = [[0] * n for _ in range(m)]
    signed = []
    for k, v in enumerate(corners):
        s = 1 if k % 2 == 0 else -1
        D[v[0]][v[1]] = s
        signed.append((v, s))
    ell_plus = _push_limit(grid, D, 1)
    ell_minus = _push_limit(grid, D, -1)
    if ell_plus == 0 or ell_minus == 0:
        raise DecompositionError(f"zero push along trail {trail}")
    x_plus = tuple(tuple(X[i][j] + ell_plus * D[i][j] for j in range(n)) for i in range(m))
    x_minus = tuple(tuple(X[i][j] - ell_minus * D[i][j] for j in range(n)) for i in range(m))
    return Split(tuple(trail), closed, tuple(signed), ell_plus, ell_minus, x_plus, x_minus)


def decompose_pasm(X: Sequence[Sequence]) -> ConvexDecomposition:
    """Exact convex combination of PASMs equal to X, by repeated trail splits."""
    X = as_rat_matrix(X)
    if not pasm_contains(X):
        raise ValueError("point is outside PASM(m,n)")
    memo: dict[RatMatrix, dict[IntMatrix, Fraction]] = {}

    def rec(Y: RatMatrix, parent_inner: int) -> dict[IntMatrix, Fraction]:
        if Y in memo:
            return memo[Y]
        grid = hat(Y)
        inner = count_inner(grid)
        if inner >= parent_inner:
            raise DecompositionError("trail step did not fix a partial sum")
        s = split(Y, grid)
        if s is None:
            M = tuple(tuple(int(x) for x in row) for row in Y)
            out = {M: Fraction(1)}
        else:
            out = {}
            for child, w in ((s.x_plus, s.weight_plus), (s.x_minus, s.weight_minus)):
                for M, lam in rec(child, inner).items():
                    out[M] = out.get(M, Fraction(0)) + w * lam
        memo[Y] = out
        return out

    m, n = shape(X)
    weights = rec(X, 2 * m * n + 1)
    return ConvexDecomposition(tuple((lam, M) for M, lam in sorted(weights.items())))


# -- randomized verification ----------------------------------------------------

@lru_cache(maxsize=None)
def _vertices(m: int, n: int) -> tuple[IntMatrix, ...]:
    return tuple(enumerate_pasms(m, n))


def random_point(m: int, n: int, rng: random.Random, boundary: bool = False, max_weight: int = 10) -> RatMatrix:
    """A random rational point of PASM(m,n).

    Interior points mix every vertex with positive weight.  Boundary points
    mix only the vertices tight on one random partial-sum bound, so they lie
    on that supporting hyperplane.
    """
    pasms = _vertices(m, n)
    if boundary:
        bound = rng.choice(pasm_inequalities(m, n))
        pool = [M for M in pasms if bound.tight(M)]
        pool = rng.sample(pool, rng.randint(1, len(pool)))
    else:
        pool = pasms
    raw = [rng.randint(1, max_weight) for _ in pool]
    total = sum(raw)
    out = [[Fraction(0)] * n for _ in range(m)]
    for w, M in zip(raw, pool):
        for i in range(m):
            for j in range(n):
                out[i][j] += Fraction(w, total) * M[i][j]
    return tuple(tuple(row) for row in out)


def verify_decomposition(m: int, n: int, samples: int, seed: int = 0) -> dict:
    """Decompose random interior and boundary points and check each result exactly."""
    rng = random.Random(seed)
    bad = []
    for k in range(samples):
        X = random_point(m, n, rng, boundary=bool(k % 2))
        try:
            dec = decompose_pasm(X)
            ok = dec.is_valid_for(X)
        except (DecompositionError, ValueError) as exc:
            ok, dec = False, str(exc)
        if not ok:
            bad.append({"point": [[render_rational(x) for x in row] for row in X],
                        "result": dec.to_json() if isinstance(dec, ConvexDecomposition) else dec})
    return {"pass": not bad, "m": m, "n": n, "checked": samples, "counterexamples": bad}
