"""Partial permutation matrices and partial alternating sign matrices.

Matrices are tuples of row tuples of ints, so they hash and compare by value.
Enumeration order is row-major lexicographic with -1 < 0 < 1.
"""

from __future__ import annotations

from itertools import product
from math import comb, perm
from typing import Iterator, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
Word = tuple[int, ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    mat = tuple(tuple(int(x) for x in row) for row in rows)
    if not mat or not mat[0]:
        raise ValueError("matrix dimensions must be positive")
    if any(len(row) != len(mat[0]) for row in mat):
        raise ValueError("ragged matrix")
    return mat


def zero_matrix(m: int, n: int) -> IntMatrix:
    return tuple((0,) * n for _ in range(m))


def shape(M: Sequence[Sequence]) -> tuple[int, int]:
    return len(M), len(M[0])


def transpose(M: Sequence[Sequence]) -> tuple:
    return tuple(zip(*M))


def row_prefix_sums(M: Sequence[Sequence]) -> list[list]:
    out = []
    for row in M:
        acc, sums = 0, []
        for x in row:
            acc += x
            sums.append(acc)
        out.append(sums)
    return out


def column_prefix_sums(M: Sequence[Sequence]) -> list[list]:
    """``c[i][j]`` is the sum of column j over rows 0..i."""
    m, n = shape(M)
    out = [[0] * n for _ in range(m)]
    for j in range(n):
        acc = 0
        for i in range(m):
            acc += M[i][j]
            out[i][j] = acc
    return out


def is_partial_permutation(M: Sequence[Sequence[int]]) -> bool:
    if any(x not in (0, 1) for row in M for x in row):
        return False
    if any(sum(row) > 1 for row in M):
        return False
    return all(sum(col) <= 1 for col in zip(*M))


def is_pasm(M: Sequence[Sequence[int]]) -> bool:
    if any(x not in (-1, 0, 1) for row in M for x in row):
        return False
    for sums in row_prefix_sums(M) + column_prefix_sums(M):
        if any(s not in (0, 1) for s in sums):
            return False
    return True


def enumerate_partial_perms(m: int, n: int) -> list[IntMatrix]:
    """All of P_{m,n}, lexicographic in row-major order."""
    _check_dims(m, n)
    out: list[IntMatrix] = []
    rows: list[tuple[int, ...]] = []
    used = [False] * n
    row_choices = [None] + list(range(n - 1, -1, -1))  # lexicographic: a 1 further left is larger

    def rec(i: int) -> None:
        if i == m:
            out.append(tuple(rows))
            return
        for j in row_choices:
            if j is None:
                rows.append((0,) * n)
                rec(i + 1)
                rows.pop()
            elif not used[j]:
                used[j] = True
                rows.append(tuple(1 if k == j else 0 for k in range(n)))
                rec(i + 1)
                rows.pop()
                used[j] = False

    rec(0)
    return out


def count_partial_perms(m: int, n: int) -> int:
    """sum_k C(m,k) (n)_k with m <= n (transpose otherwise)."""
    _check_dims(m, n)
    a, b = min(m, n), max(m, n)
    return sum(comb(a, k) * perm(b, k) for k in range(a + 1))


def iter_pasms(m: int, n: int) -> Iterator[IntMatrix]:
    """Depth-first generation of PASM_{m,n} with prefix-sum pruning."""
    _check_dims(m, n)
    cells = [(i, j) for i in range(m) for j in range(n)]
    entries = [0] * (m * n)
    col = [0] * n
    rowsum = [0] * m

    def rec(k: int) -> Iterator[IntMatrix]:
        if k == len(cells):
            yield tuple(tuple(entries[i * n:(i + 1) * n]) for i in range(m))
            return
        i, j = cells[k]
        for e in (-1, 0, 1):
            r, c = rowsum[i] + e, col[j] + e
            if r not in (0, 1) or c not in (0, 1):
                continue
            entries[k] = e
            rowsum[i], col[j] = r, c
            yield from rec(k + 1)
            rowsum[i], col[j] = r - e, c - e
        entries[k] = 0

    yield from rec(0)


def enumerate_pasms(m: int, n: int) -> list[IntMatrix]:
    return list(iter_pasms(m, n))


def count_pasms(m: int, n: int) -> int:
    """|PASM_{m,n}| by a transfer matrix over column partial-sum states.

    A row is determined by the column partial sums before and after it; the
    transition is allowed when every row partial sum lies in {0,1}.
    """
    _check_dims(m, n)
    if n > m:
        m, n = n, m
    states = list(product((0, 1), repeat=n))

    def allowed(a, b) -> bool:
        acc = 0
        for x, y in zip(a, b):
            acc += y - x
            if acc not in (0, 1):
                return False
        return True

    succ = {a: [b for b in states if allowed(a, b)] for a in states}
    counts = {s: 0 for s in states}
    counts[(0,) * n] = 1
    for _ in range(m):
        nxt = {s: 0 for s in states}
        for a, c in counts.items():
            if c:
                for b in succ[a]:
                    nxt[b] += c
        counts = nxt
    return sum(counts.values())


def one_line_notation(M: Sequence[Sequence[int]]) -> Word:
    """w_i = j (1-based) when M[i][j] = 1, else 0."""
    if not is_partial_permutation(M):
        raise ValueError("one-line notation needs a partial permutation matrix")
    return tuple(next((j + 1 for j, x in enumerate(row) if x == 1), 0) for row in M)


def from_one_line(word: Sequence[int], n: int) -> IntMatrix:
    letters = [w for w in word if w]
    if len(set(letters)) != len(letters) or any(not 0 <= w <= n for w in word):
        raise ValueError(f"not a partial permutation word over 0..{n}: {word!r}")
    return tuple(tuple(1 if w == j + 1 else 0 for j in range(n)) for w in word)


def _check_dims(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise ValueError(f"dimensions must be positive, got {m}x{n}")
