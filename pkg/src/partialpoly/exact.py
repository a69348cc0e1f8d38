"""Exact rationals, univariate rational polynomials, interpolation and rank.

Rationals are plain :class:`fractions.Fraction` values; this module adds the
text format used in every JSON/CSV output ("p/q", or "p" when q == 1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

_INT_RE = re.compile(r"[+-]?\d+")
_FRAC_RE = re.compile(r"([+-]?\d+)\s*/\s*([+-]?\d+)")
_DEC_RE = re.compile(r"([+-]?)(\d*)\.(\d*)")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse an integer, a fraction ``p/q`` or a finite decimal, exactly.

    >>> parse_rational("0.2")
    Fraction(1, 5)
    >>> parse_rational("-3/6")
    Fraction(-1, 2)
    """
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse {type(text).__name__} as a rational")
    s = text.strip()
    if _INT_RE.fullmatch(s):
        return Fraction(int(s))
    m = _FRAC_RE.fullmatch(s)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if q == 0:
            raise ZeroDivisionError(f"zero denominator in {text!r}")
        return Fraction(p, q)
    m = _DEC_RE.fullmatch(s)
    if m and (m.group(2) or m.group(3)):
        sign = -1 if m.group(1) == "-" else 1
        whole = int(m.group(2) or "0")
        frac = m.group(3)
        value = Fraction(whole) + (Fraction(int(frac), 10 ** len(frac)) if frac else 0)
        return sign * value
    raise ValueError(f"malformed rational: {text!r}")


def render_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RatPolynomial:
    """Polynomial with exact rational coefficients; ``coeffs[k]`` multiplies t**k."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[Fraction | int]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __call__(self, t: Fraction | int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: RatPolynomial) -> RatPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RatPolynomial(x + y for x, y in zip(a, b))

    def __mul__(self, other: RatPolynomial | Fraction | int) -> RatPolynomial:
        if not isinstance(other, RatPolynomial):
            return RatPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RatPolynomial(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPolynomial(out)

    __rmul__ = __mul__

    def to_strings(self) -> list[str]:
        return [render_rational(c) for c in self.coeffs]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coef = render_rational(c)
            terms.append(f"({coef}){mono}" if mono else coef)
        return " + ".join(terms)


def interpolate(points: Sequence[tuple[int | Fraction, Fraction | int]], degree: int) -> RatPolynomial:
    """Unique polynomial of degree <= ``degree`` through ``degree + 1`` points (Lagrange form)."""
    if len(points) != degree + 1:
        raise ValueError(f"need exactly {degree + 1} points for degree {degree}, got {len(points)}")
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be distinct")
    result = RatPolynomial(())
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        basis = RatPolynomial([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * RatPolynomial([-xj, 1])
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result


def rank(rows: Sequence[Sequence[Fraction | int]]) -> int:
    """Rank of a rational matrix by exact Gaussian elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][col]
        for i in range(r + 1, len(mat)):
            f = mat[i][col]
            if f:
                f /= pv
                row_i, row_r = mat[i], mat[r]
                for k in range(col, ncols):
                    row_i[k] -= f * row_r[k]
        r += 1
        if r == len(mat):
            break
    return r


def affine_rank(points: Sequence[Sequence[Fraction | int]]) -> int:
    """Dimension of the affine hull of ``points``; -1 for the empty set."""
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]])
