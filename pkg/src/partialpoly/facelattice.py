"""Brute-force face lattices from a vertex list and a valid inequality list.

Faces are intersections of facet-tight vertex sets (bitmasks over the vertex
list); a face's dimension is the affine rank of its vertices, computed exactly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Hashable, Iterable, Sequence

import networkx as nx

from partialpoly.exact import affine_rank, render_rational

MAX_AMBIENT_DIM = 9
MAX_VERTICES = 200


@dataclass(frozen=True)
class LinearInequality:
    """``sum coeffs[k] * x[k]  (<= | >=)  rhs``.

    Keys are ints for vectors and (i, j) pairs for matrices.
    """

    coeffs: tuple[tuple[Hashable, Fraction], ...]
    sense: str
    rhs: Fraction
    name: str = ""

    def __post_init__(self):
        if self.sense not in ("<=", ">="):
            raise ValueError(f"bad relation {self.sense!r}")
        if not any(c != 0 for _, c in self.coeffs):
            raise ValueError("inequality needs a nonzero coefficient")

    @classmethod
    def build(cls, coeffs: dict, sense: str, rhs, name: str = "") -> LinearInequality:
        items = tuple(sorted((k, Fraction(v)) for k, v in coeffs.items() if v != 0))
        return cls(items, sense, Fraction(rhs), name)

    def lhs(self, point) -> Fraction:
        total = Fraction(0)
        for key, c in self.coeffs:
            total += c * (point[key[0]][key[1]] if isinstance(key, tuple) else point[key])
        return total

    def satisfied(self, point) -> bool:
        v = self.lhs(point)
        return v <= self.rhs if self.sense == "<=" else v >= self.rhs

    def tight(self, point) -> bool:
        return self.lhs(point) == self.rhs

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "coeffs": [[list(k) if isinstance(k, tuple) else k, render_rational(c)] for k, c in self.coeffs],
            "relation": self.sense,
            "rhs": render_rational(self.rhs),
        }


def flatten(point) -> tuple:
    if point and isinstance(point[0], (tuple, list)):
        return tuple(x for row in point for x in row)
    return tuple(point)


@dataclass
class Face:
    vertices: int  # bitmask over the vertex list
    dim: int
    label: Any = None

    def indices(self) -> list[int]:
        return [k for k in range(self.vertices.bit_length()) if self.vertices >> k & 1]


@dataclass
class GradedPoset:
    """Finite graded poset given by its elements and cover relations ``(lower, upper)``."""

    faces: list[Face]
    covers: list[tuple[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.faces)

    def f_vector(self) -> dict[int, int]:
        return dict(sorted(Counter(f.dim for f in self.faces).items()))

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        for k, f in enumerate(self.faces):
            g.add_node(k, dim=f.dim)
        g.add_edges_from(self.covers)
        return g

    def check_graded(self) -> bool:
        if any(self.faces[b].dim != self.faces[a].dim + 1 for a, b in self.covers):
            return False
        g = self.graph()
        return len(self.faces) == 1 or (
            sum(1 for k in g if g.in_degree(k) == 0) == 1 and sum(1 for k in g if g.out_degree(k) == 0) == 1
        )

    def euler_holds(self) -> bool:
        """Euler-Poincare: sum over nonempty faces of (-1)^dim equals 1."""
        return sum((-1) ** f.dim for f in self.faces if f.dim >= 0) == 1

    def to_json(self, label_json=None) -> dict:
        out = []
        for f in self.faces:
            item = {"dim": f.dim, "vertices": f.indices()}
            if label_json is not None and f.label is not None:
                item["label"] = label_json(f.label)
            out.append(item)
        return {"faces": out, "covers": [list(c) for c in self.covers]}


def _covers_by_containment(faces: list[Face]) -> list[tuple[int, int]]:
    by_dim: dict[int, list[int]] = {}
    for k, f in enumerate(faces):
        by_dim.setdefault(f.dim, []).append(k)
    covers = []
    for k, f in enumerate(faces):
        for lo in by_dim.get(f.dim - 1, []):
            if faces[lo].vertices & ~f.vertices == 0:
                covers.append((lo, k))
    return sorted(covers)


def faces_from_vh(vertices: Sequence, inequalities: Iterable[LinearInequality]) -> GradedPoset:
    """Face lattice of conv(vertices), given inequalities valid on every vertex."""
    vertices = list(vertices)
    flat = [flatten(v) for v in vertices]
    if len(flat) > MAX_VERTICES or (flat and len(flat[0]) > MAX_AMBIENT_DIM):
        raise ValueError(f"face enumeration limited to {MAX_VERTICES} vertices in dimension {MAX_AMBIENT_DIM}")
    full = (1 << len(vertices)) - 1
    tight_sets = set()
    for ineq in inequalities:
        mask = 0
        for k, v in enumerate(vertices):
            if not ineq.satisfied(v):
                raise ValueError(f"vertex {k} violates inequality {ineq.name or ineq}")
            if ineq.tight(v):
                mask |= 1 << k
        if mask != full:
            tight_sets.add(mask)
    masks = {full, 0}
    frontier = [full]
    while frontier:
        nxt = []
        for f in frontier:
            for t in tight_sets:
                g = f & t
                if g not in masks:
                    masks.add(g)
                    nxt.append(g)
        frontier = nxt
    faces = []
    for mask in masks:
        pts = [flat[k] for k in range(len(flat)) if mask >> k & 1]
        faces.append(Face(mask, affine_rank(pts)))
    faces.sort(key=lambda f: (f.dim, Face.indices(f)))
    return GradedPoset(faces, _covers_by_containment(faces))


def from_covers(faces: list[Face], covers: list[tuple[int, int]]) -> GradedPoset:
    """Poset from abstract elements; each element's vertex set becomes the atoms below it."""
    below: list[set[int]] = [set() for _ in faces]
    for lo, hi in covers:
        below[hi].add(lo)
    atoms = sorted((k for k, f in enumerate(faces) if f.dim == 0))
    bit = {a: p for p, a in enumerate(atoms)}
    masks: dict[int, int] = {}
    for k in sorted(range(len(faces)), key=lambda k: faces[k].dim):
        mask = 1 << bit[k] if k in bit else 0
        for lo in below[k]:
            mask |= masks[lo]
        masks[k] = mask
    return GradedPoset([Face(masks[k], f.dim, f.label) for k, f in enumerate(faces)], sorted(covers))


def facets_of(poset: GradedPoset) -> list[Face]:
    top = max(f.dim for f in poset.faces)
    return [f for f in poset.faces if f.dim == top - 1]


def _refine(up: list[list[int]], down: list[list[int]], colors: list[int]) -> list[int]:
    """Colour refinement on the cover DAG until the partition stops splitting."""
    n_classes = len(set(colors))
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in up[v])), tuple(sorted(colors[u] for u in down[v])))
            for v in range(len(colors))
        ]
        ids = {sig: k for k, sig in enumerate(sorted(set(sigs)))}
        colors = [ids[sig] for sig in sigs]
        if len(ids) == n_classes:
            return colors
        n_classes = len(ids)


def poset_isomorphic(a: GradedPoset, b: GradedPoset) -> bool:
    """Rank-preserving isomorphism of the cover graphs, by individualization-refinement.

    Both posets are refined together as one disjoint union so colours stay
    comparable. A colour class holding different numbers of elements from
    each side rules out the current branch.
    """
    if len(a) != len(b) or a.f_vector() != b.f_vector() or len(a.covers) != len(b.covers):
        return False
    na = len(a)
    up: list[list[int]] = [[] for _ in range(2 * na)]
    down: list[list[int]] = [[] for _ in range(2 * na)]
    for off, p in ((0, a), (na, b)):
        for lo, hi in p.covers:
            up[lo + off].append(hi + off)
            down[hi + off].append(lo + off)
    dims = sorted({f.dim for f in a.faces})
    start = [dims.index(f.dim) for f in a.faces] + [dims.index(f.dim) for f in b.faces]
    edges_a = set(a.covers)

    def search(colors: list[int]) -> bool:
        colors = _refine(up, down, colors)
        if Counter(colors[:na]) != Counter(colors[na:]):
            return False
        classes: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            classes.setdefault(c, []).append(v)
        if all(len(vs) == 2 for vs in classes.values()):
            mapping = {vs[1] - na: vs[0] for vs in classes.values()}
            return all((mapping[lo], mapping[hi]) in edges_a for lo, hi in b.covers)
        target = min((vs for vs in classes.values() if len(vs) > 2), key=len)
        fresh = max(colors) + 1
        for w in target:
            if w < na:
                continue
            trial = list(colors)
            trial[target[0]] = trial[w] = fresh
            if search(trial):
                return True
        return False

    return search(start)
