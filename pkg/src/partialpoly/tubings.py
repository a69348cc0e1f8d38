"""Tubings of the star graph K_{1,m}, spines, and chains in the Boolean lattice B_m.

Star-graph vertices are 0 for the inner vertex * and 1..m for the outer
vertices x_1..x_m.  A chain is a tuple of bitmasks (bit i-1 <-> element i)
ordered by strict containment; the empty tuple is the empty chain, which
stands for the empty face.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from partialpoly.facelattice import Face, GradedPoset, faces_from_vh, from_covers, poset_isomorphic
from partialpoly.permutohedron import permutohedron_inequalities, permutohedron_vertices

STAR = 0
MAX_M = 4

Tube = frozenset
Tubing = frozenset
Chain = tuple


# -- tubes and tubings ---------------------------------------------------------

def is_tube(t: Iterable[int], m: int) -> bool:
    t = frozenset(t)
    if not t or not t <= frozenset(range(m + 1)) or len(t) == m + 1:
        return False
    return STAR in t or len(t) == 1


def all_tubes(m: int) -> list[Tube]:
    singles = [frozenset({i}) for i in range(1, m + 1)]
    starred = [frozenset({STAR, *S}) for k in range(m) for S in combinations(range(1, m + 1), k)]
    return singles + starred


def is_compatible(t1: Tube, t2: Tube) -> bool:
    """Nested, or disjoint with a disconnected union."""
    if t1 <= t2 or t2 <= t1:
        return True
    if t1 & t2:
        return False
    # disjoint: the union is connected exactly when one side holds *
    return STAR not in t1 and STAR not in t2


def is_tubing(T: Iterable[Tube], m: int) -> bool:
    T = list(T)
    return all(is_tube(t, m) for t in T) and all(is_compatible(a, b) for a, b in combinations(T, 2))


def all_tubings(m: int) -> list[Tubing]:
    tubes = all_tubes(m)
    out: list[Tubing] = []

    def rec(start: int, chosen: list[Tube]) -> None:
        out.append(frozenset(chosen))
        for k in range(start, len(tubes)):
            t = tubes[k]
            if all(is_compatible(t, c) for c in chosen):
                chosen.append(t)
                rec(k + 1, chosen)
                chosen.pop()

    rec(0, [])
    return out


# -- spines --------------------------------------------------------------------

@dataclass(frozen=True)
class Spine:
    """Singleton tubes below *, then the level grouped with *, then each later level."""

    singletons: frozenset[int]
    levels: tuple[frozenset[int], ...]


def tubing_to_spine(T: Tubing, m: int) -> Spine:
    if not is_tubing(T, m):
        raise ValueError(f"not a tubing of K_1,{m}: {sorted(map(sorted, T))}")
    singles = frozenset(i for t in T if STAR not in t for i in t)
    starred = sorted((t for t in T if STAR in t), key=len) + [frozenset(range(m + 1))]
    levels, prev = [], frozenset({STAR}) | singles
    for t in starred:
        levels.append(frozenset(t - prev))
        prev = t
    return Spine(singles, tuple(levels))


def spine_to_tubing(S: Spine) -> Tubing:
    tubes = [frozenset({i}) for i in S.singletons]
    acc = frozenset({STAR}) | S.singletons
    for level in S.levels[:-1]:
        acc = acc | level
        tubes.append(acc)
    return frozenset(tubes)


def spine_to_chain(S: Spine) -> Chain:
    out, acc = [], 0
    for level in S.levels:
        acc |= _mask(level)
        out.append(acc)
    return tuple(out)


def chain_to_spine(C: Chain, m: int) -> Spine:
    if not is_chain(C, m) or not C:
        raise ValueError(f"not a nonempty chain of B_{m}: {C!r}")
    full = (1 << m) - 1
    singles = _elements(full & ~C[-1])
    levels, prev = [], 0
    for A in C:
        levels.append(frozenset(_elements(A & ~prev)))
        prev = A
    return Spine(frozenset(singles), tuple(levels))


def tubing_to_chain(T: Tubing, m: int) -> Chain:
    return spine_to_chain(tubing_to_spine(T, m))


def chain_to_tubing(C: Chain, m: int) -> Tubing:
    return spine_to_tubing(chain_to_spine(C, m))


def maximal_tubing_vertex(T: Tubing, m: int) -> tuple[int, ...]:
    """(|t_1| - 1, ..., |t_m| - 1) with t_i the smallest tube containing x_i."""
    if len(T) != m or not is_tubing(T, m):
        raise ValueError("expected a maximal tubing")
    coords = []
    for i in range(1, m + 1):
        containing = [t for t in T if i in t] + [frozenset(range(m + 1))]
        coords.append(min(len(t) for t in containing) - 1)
    return tuple(coords)


# -- chains --------------------------------------------------------------------

def _mask(elements: Iterable[int]) -> int:
    out = 0
    for i in elements:
        out |= 1 << (i - 1)
    return out


def _elements(mask: int) -> list[int]:
    return [k + 1 for k in range(mask.bit_length()) if mask >> k & 1]


def chain_from_sets(sets: Sequence[Iterable[int]]) -> Chain:
    return tuple(sorted((_mask(s) for s in sets), key=lambda x: (bin(x).count("1"), x)))


def chain_to_sets(C: Chain) -> list[list[int]]:
    return [_elements(A) for A in C]


def is_chain(C: Chain, m: int) -> bool:
    full = (1 << m) - 1
    if any(A & ~full for A in C):
        return False
    return all(a != b and a & ~b == 0 for a, b in zip(C, C[1:]))


def all_chains(m: int) -> list[Chain]:
    """Every nonempty chain of B_m, in bitmask-lexicographic order."""
    subsets = sorted(range(1 << m), key=lambda x: (bin(x).count("1"), x))
    out: list[Chain] = []

    def rec(chain: list[int]) -> None:
        last = chain[-1]
        out.append(tuple(chain))
        for B in subsets:
            if B != last and last & ~B == 0:
                chain.append(B)
                rec(chain)
                chain.pop()

    for A in subsets:
        rec([A])
    return sorted(out)


def missing_ranks(C: Chain, m: int) -> int:
    """Ranks j absent from C below the size of its largest subset; -1 for the empty chain."""
    if not C:
        return -1
    sizes = {bin(A).count("1") for A in C}
    return sum(1 for j in range(max(sizes)) if j not in sizes)


def chain_moves(C: Chain, m: int) -> list[Chain]:
    """Chains one move below C: add a non-maximal subset, or drop an element common to all."""
    if not C:
        return []
    out = set()
    top = C[-1]
    # (1) insert B strictly below the top subset
    for B in range(1 << m):
        if B in C or B & ~top or B == top:
            continue
        if all((A & ~B == 0) or (B & ~A == 0) for A in C):
            out.add(tuple(sorted(C + (B,), key=lambda x: (bin(x).count("1"), x))))
    # (2) remove one element lying in every subset
    for i in _elements(C[0]):
        bit = 1 << (i - 1)
        out.add(tuple(A & ~bit for A in C))
    return sorted(out)


def chain_covers(C: Chain, C2: Chain, m: int) -> bool:
    """True iff C2 is obtained from C by exactly one move."""
    return C2 in chain_moves(C, m)


def stellohedron_face_lattice(m: int) -> GradedPoset:
    """Chains of B_m (plus the empty chain) ordered by moves, graded by missing ranks."""
    if m > MAX_M:
        raise ValueError(f"chain lattice limited to m <= {MAX_M}")
    chains = [()] + all_chains(m)
    chains.sort(key=lambda C: (missing_ranks(C, m), C))
    index = {C: k for k, C in enumerate(chains)}
    covers = []
    for C in chains:
        for D in chain_moves(C, m):
            covers.append((index[D], index[C]))
        if C and missing_ranks(C, m) == 0:
            covers.append((index[()], index[C]))
    faces = [Face(0, missing_ranks(C, m), C) for C in chains]
    return from_covers(faces, list(covers))


def permutohedron_face_lattice(m: int, n: int) -> GradedPoset:
    return faces_from_vh(permutohedron_vertices(m, n), permutohedron_inequalities(m, n))


def verify_stellohedron(m: int) -> dict:
    """Chain lattice vs. the oracle lattice of P(m,m), abstractly and through the vertex map."""
    chain_poset = stellohedron_face_lattice(m)
    oracle = permutohedron_face_lattice(m, m)
    problems = []
    if not poset_isomorphic(chain_poset, oracle):
        problems.append("chain lattice not isomorphic to the face lattice of P(m,m)")
    vertices = permutohedron_vertices(m, m)
    position = {v: k for k, v in enumerate(vertices)}
    maximal = [T for T in all_tubings(m) if len(T) == m]
    oracle_faces = {f.vertices: f.dim for f in oracle.faces}
    for C in all_chains(m):
        T = chain_to_tubing(C, m)
        mask = 0
        for Tm in maximal:
            if T <= Tm:
                mask |= 1 << position[maximal_tubing_vertex(Tm, m)]
        if oracle_faces.get(mask) != missing_ranks(C, m):
            problems.append(f"chain {chain_to_sets(C)} does not map to a face of dimension {missing_ranks(C, m)}")
    return {"pass": not problems, "elements": len(chain_poset), "f_vector": chain_poset.f_vector(),
            "counterexamples": problems[:20]}


def gap_ok(C: Chain, n: int) -> bool:
    sizes = [bin(A).count("1") for A in C if A]
    return not sizes or max(sizes) - min(sizes) <= n - 1


def conjecture_faces(m: int, n: int) -> dict:
    """Dimension profile of gap-bounded chains vs. the oracle f-vector of P(m,n)."""
    if m > MAX_M or n > MAX_M:
        raise ValueError(f"conjecture check limited to m, n <= {MAX_M}")
    chains = [()] + [C for C in all_chains(m) if gap_ok(C, n)]
    profile = dict(sorted(Counter(missing_ranks(C, m) for C in chains).items()))
    oracle = permutohedron_face_lattice(m, n).f_vector()
    return {"m": m, "n": n, "pass": profile == oracle, "chains": profile, "oracle": oracle}
