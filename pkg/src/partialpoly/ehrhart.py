"""Lattice points in integer dilates, Ehrhart polynomials and normalized volumes.

Three polytope kinds are supported:

* ``pperm``: nonnegative m x n matrices with row and column sums at most t,
* ``pasm``: m x n matrices whose row and column prefix sums lie in [0, t],
* ``permutohedron``: the partial permutohedron in R^m scaled by t.

The matrix kinds are counted with a profile dynamic program that sweeps the
cells column by column.  The state is the vector of running row sums plus the
running sum of the current column.  Because the polytopes are invariant under
transposition the shorter side is always used as the state dimension.

The permutohedron is counted on weakly decreasing representatives: distinct
values are placed from the largest down, and each placement is weighted by the
number of ways to choose its positions.

Large DP instances are refused once the state count exceeds a cap, read from
the ``PARTIALPOLY_MAX_STATES`` environment variable (default 10**8).
"""

from __future__ import annotations

import itertools
import os
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb, factorial

import numpy as np

from partialpoly.exact import RatPolynomial, interpolate
from partialpoly.facelattice import LinearInequality
from partialpoly.permutohedron import permutohedron_inequalities, prefix_bound
from partialpoly.polytopes import pasm_inequalities, pperm_inequalities

KINDS = ("pperm", "pasm", "permutohedron")
MAX_STATES_ENV = "PARTIALPOLY_MAX_STATES"
DEFAULT_MAX_STATES = 10**8

# Above this a priori bound the uint64 arrays may wrap; a float shadow is then
# carried along to recover the exact count from the value modulo 2**64.
_WRAP_RISK = 2**62


class ResourceGuardError(RuntimeError):
    """A counting instance needs more DP states than the configured cap."""

    def __init__(self, needed: int, cap: int):
        super().__init__(
            f"instance needs {needed} DP states, above the cap of {cap} "
            f"(raise {MAX_STATES_ENV} to allow it)"
        )
        self.needed = needed
        self.cap = cap


def max_states() -> int:
    raw = os.environ.get(MAX_STATES_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_STATES
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{MAX_STATES_ENV} must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise ValueError(f"{MAX_STATES_ENV} must be positive, got {cap}")
    return cap


def _check_kind(kind: str) -> str:
    k = kind.lower()
    if k not in KINDS:
        raise ValueError(f"unknown polytope kind {kind!r}; expected one of {', '.join(KINDS)}")
    return k


def _check_size(m: int, n: int) -> None:
    if m < 1 or n < 1:
        raise ValueError(f"sizes must be positive, got m={m}, n={n}")


def dimension(kind: str, m: int, n: int) -> int:
    kind = _check_kind(kind)
    _check_size(m, n)
    return m if kind == "permutohedron" else m * n


@dataclass(frozen=True)
class DilationCounter:
    """t -> number of lattice points of the t-th dilate."""

    kind: str
    m: int
    n: int

    def __post_init__(self):
        object.__setattr__(self, "kind", _check_kind(self.kind))
        _check_size(self.m, self.n)

    @property
    def dim(self) -> int:
        return dimension(self.kind, self.m, self.n)

    def __call__(self, t: int) -> int:
        return count_lattice_points(self.kind, self.m, self.n, t)


@dataclass(frozen=True)
class VolumeResult:
    kind: str
    m: int
    n: int
    ehrhart: RatPolynomial
    normalized_volume: int
    dimension: int

    def coefficients_positive(self) -> bool:
        return all(c > 0 for c in self.ehrhart.coeffs)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "n": self.n,
            "dim": self.dimension,
            "normalized_volume": self.normalized_volume,
            "coefficients": self.ehrhart.to_strings(),
        }


# -- matrix kinds: profile DP ---------------------------------------------------

def _shift(axis_a: int, axis_b: int, d: int, t: int, ndim: int):
    """Source and target slices adding d to coordinates axis_a and axis_b."""
    src = [slice(None)] * ndim
    dst = [slice(None)] * ndim
    if d >= 0:
        lo, hi = slice(0, t + 1 - d), slice(d, t + 1)
    else:
        lo, hi = slice(-d, t + 1), slice(0, t + 1 + d)
    src[axis_a] = src[axis_b] = lo
    dst[axis_a] = dst[axis_b] = hi
    return tuple(src), tuple(dst)


def _profile_count(m: int, n: int, t: int, signed: bool) -> int:
    k, cols = min(m, n), max(m, n)
    needed = (t + 1) ** (k + 1)
    cap = max_states()
    if needed > cap:
        raise ResourceGuardError(needed, cap)
    ndim = k + 1
    shape = (t + 1,) * ndim
    deltas = range(-t, t + 1) if signed else range(0, t + 1)
    moves = [_shift(i, k, d, t, ndim) for i in range(k) for d in deltas]
    risky = (t + 1) ** (m * n) >= _WRAP_RISK

    exact = np.zeros(shape, dtype=np.uint64)
    exact[(0,) * ndim] = 1
    approx = exact.astype(np.float64) if risky else None
    per_row = len(deltas)
    for _ in range(cols):
        for i in range(k):
            nxt = np.zeros(shape, dtype=np.uint64)
            nxt_f = np.zeros(shape) if risky else None
            for src, dst in moves[i * per_row:(i + 1) * per_row]:
                nxt[dst] += exact[src]
                if risky:
                    nxt_f[dst] += approx[src]
            exact, approx = nxt, nxt_f
        # close the column: its running sum restarts at zero
        closed = np.zeros(shape, dtype=np.uint64)
        closed[..., 0] = exact.sum(axis=-1, dtype=np.uint64)
        exact = closed
        if risky:
            closed_f = np.zeros(shape)
            closed_f[..., 0] = approx.sum(axis=-1)
            approx = closed_f
    residue = int(exact.sum(dtype=np.uint64))
    if not risky:
        return residue
    estimate = int(round(float(approx.sum())))
    wrap = 2**64
    return estimate + ((residue - estimate + wrap // 2) % wrap - wrap // 2)


# -- permutohedron: sorted-value DP ---------------------------------------------

def _permutohedron_count(m: int, n: int, t: int) -> int:
    bounds = [t * prefix_bound(n, k) for k in range(m + 1)]
    needed = (m + 1) * (bounds[m] + 1)
    cap = max_states()
    if needed > cap:
        raise ResourceGuardError(needed, cap)
    dp: dict[tuple[int, int], int] = {(0, 0): 1}
    for v in range(bounds[1], -1, -1):
        nxt: dict[tuple[int, int], int] = defaultdict(int)
        for (filled, s), ways in dp.items():
            nxt[filled, s] += ways
            for c in range(1, m - filled + 1):
                # the prefix ending at position filled + c is fixed once v is placed c times
                if s + v * c > bounds[filled + c]:
                    break
                nxt[filled + c, s + v * c] += ways * comb(m - filled, c)
        dp = nxt
    return sum(w for (filled, _), w in dp.items() if filled == m)


def count_lattice_points(kind: str, m: int, n: int, t: int) -> int:
    """Integer points of the t-th dilate of the given polytope."""
    kind = _check_kind(kind)
    _check_size(m, n)
    if t < 0:
        raise ValueError(f"dilation factor must be nonnegative, got {t}")
    if kind == "permutohedron":
        return _permutohedron_count(m, n, t)
    return _profile_count(m, n, t, signed=(kind == "pasm"))


def estimated_work(kind: str, m: int, n: int) -> int:
    """Rough count of elementary array updates for a full Ehrhart computation."""
    kind = _check_kind(kind)
    dim = dimension(kind, m, n)
    total = 0
    for t in range(dim + 1):
        if kind == "permutohedron":
            total += (m + 1) * (t * prefix_bound(n, m) + 1) * (t * n + 1)
            continue
        k = min(m, n)
        deltas = 2 * t + 1 if kind == "pasm" else t + 1
        shadow = 2 if (t + 1) ** (m * n) >= _WRAP_RISK else 1
        total += (t + 1) ** (k + 1) * deltas * m * n * shadow
    return total


# -- brute-force oracle ---------------------------------------------------------

def _integer_rows(ineqs: list[LinearInequality], keys: list) -> list[tuple[list[int], int, int]]:
    pos = {key: p for p, key in enumerate(keys)}
    rows = []
    for q in ineqs:
        sign = 1 if q.sense == "<=" else -1
        rows.append(([pos[key] for key, _ in q.coeffs], sign, int(q.rhs)))
    return rows


def brute_force_count(kind: str, m: int, n: int, t: int, limit: int = 10**7) -> int:
    """Naive box enumeration against the raw inequality systems, for cross-checks."""
    kind = _check_kind(kind)
    _check_size(m, n)
    if kind == "permutohedron":
        keys = list(range(m))
        ineqs = permutohedron_inequalities(m, n)
        values = range(0, t * n + 1)
    else:
        keys = [(i, j) for i in range(m) for j in range(n)]
        ineqs = pperm_inequalities(m, n) if kind == "pperm" else pasm_inequalities(m, n)
        values = range(0, t + 1) if kind == "pperm" else range(-t, t + 1)
    if len(values) ** len(keys) > limit:
        raise ResourceGuardError(len(values) ** len(keys), limit)
    rows = _integer_rows(ineqs, keys)
    total = 0
    for x in itertools.product(values, repeat=len(keys)):
        ok = True
        for idx, sign, rhs in rows:
            s = sum(x[p] for p in idx)
            # every coefficient is 1, so the dilated test is on the plain sum
            if (s > t * rhs) if sign > 0 else (s < t * rhs):
                ok = False
                break
        total += ok
    return total


# -- Ehrhart polynomials ----------------------------------------------------------

def _count_task(args: tuple[str, int, int, int]) -> int:
    return count_lattice_points(*args)


def ehrhart_polynomial(kind: str, m: int, n: int, workers: int = 1) -> VolumeResult:
    """Interpolate counts at t = 0..dim and read the normalized volume off the top."""
    kind = _check_kind(kind)
    dim = dimension(kind, m, n)
    tasks = [(kind, m, n, t) for t in range(dim + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(pool.map(_count_task, tasks))
    else:
        counts = [_count_task(task) for task in tasks]
    poly = interpolate(list(enumerate(counts)), dim)
    vol = poly.leading * factorial(dim)
    if vol.denominator != 1:
        raise ArithmeticError(f"normalized volume {vol} of {kind}({m},{n}) is not an integer")
    return VolumeResult(kind, m, n, poly, int(vol), dim)


def volume_table(kind: str, sizes) -> list[VolumeResult]:
    return [ehrhart_polynomial(kind, m, n) for m, n in sizes]


# -- verifiers --------------------------------------------------------------------

def verify_volume_theorem_P2n(n_max: int) -> dict:
    """Normalized volume of the partial permutohedron P(2, n) is 2n^2 - 1."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rows, bad = [], []
    for n in range(1, n_max + 1):
        res = ehrhart_polynomial("permutohedron", 2, n)
        expected = 2 * n * n - 1
        rows.append({"n": n, "normalized_volume": res.normalized_volume, "expected": expected})
        if res.normalized_volume != expected:
            bad.append(rows[-1])
    return {"pass": not bad, "checked": rows, "counterexamples": bad}


SCOPES = {
    "default": {"pperm_2n": 5, "permutohedron_m2": 6},
    "small": {"pperm_2n": 3, "permutohedron_m2": 4},
}


def verify_conjectures(scope: str = "default") -> dict:
    """Volume formulas for PPerm(2, n) and P(m, 2), and positivity of every Ehrhart polynomial.

    PPerm(2, n) should have normalized volume C(2n, n) - n and P(m, 2) should
    have 3^m - m.
    """
    if scope not in SCOPES:
        raise ValueError(f"unknown scope {scope!r}; expected one of {', '.join(SCOPES)}")
    bounds = SCOPES[scope]
    checks, bad = [], []

    def record(name: str, res: VolumeResult, expected: int):
        entry = {
            "check": name,
            "kind": res.kind,
            "m": res.m,
            "n": res.n,
            "normalized_volume": res.normalized_volume,
            "expected": expected,
            "coefficients": res.ehrhart.to_strings(),
        }
        checks.append(entry)
        if res.normalized_volume != expected:
            bad.append({**entry, "reason": "volume"})
        if not res.coefficients_positive():
            bad.append({**entry, "reason": "nonpositive coefficient"})

    for n in range(1, bounds["pperm_2n"] + 1):
        record("pperm(2,n)", ehrhart_polynomial("pperm", 2, n), comb(2 * n, n) - n)
    for m in range(1, bounds["permutohedron_m2"] + 1):
        record("permutohedron(m,2)", ehrhart_polynomial("permutohedron", m, 2), 3**m - m)
    return {"pass": not bad, "scope": scope, "checked": checks, "counterexamples": bad}


def nonpositive_results(results) -> list[VolumeResult]:
    """Results whose Ehrhart polynomial has a coefficient that is not strictly positive."""
    return [r for r in results if not r.coefficients_positive()]


__all__ = [
    "DEFAULT_MAX_STATES",
    "DilationCounter",
    "KINDS",
    "MAX_STATES_ENV",
    "ResourceGuardError",
    "VolumeResult",
    "brute_force_count",
    "count_lattice_points",
    "dimension",
    "estimated_work",
    "ehrhart_polynomial",
    "max_states",
    "nonpositive_results",
    "verify_conjectures",
    "verify_volume_theorem_P2n",
    "volume_table",
]
