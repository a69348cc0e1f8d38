"""Command-line interface.

Every subcommand prints JSON (or CSV for tables) on stdout.  Exit status is 0
on success, 1 when a check fails or a point is rejected, and 2 on usage
errors, including inputs that would exceed the resource guard.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from partialpoly import decomposition, ehrhart, permutohedron, polytopes, tubings
from partialpoly.exact import parse_rational, render_rational
from partialpoly.gridgraph import SumLabeling
from partialpoly.matrices import count_pasms, enumerate_partial_perms, iter_pasms

# Volume runs estimated above this many array updates need --long-running.
LONG_RUNNING_WORK = 3 * 10**9
# Matrix listings longer than this need --long-running.
LONG_RUNNING_MATRICES = 200_000

SCOPES = ("small", "default")


class UsageError(Exception):
    pass


# -- I/O helpers -----------------------------------------------------------------

def _default(obj):
    if isinstance(obj, Fraction):
        return render_rational(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, SumLabeling):
        return obj.to_json()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(payload, out) -> None:
    out.write(json.dumps(payload, default=_default, sort_keys=True) + "\n")


def _read_json(stream, what: str):
    text = stream.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what}: invalid JSON ({exc.msg})") from None


def _parse_entries(data, what: str):
    try:
        return [parse_rational(x) for x in data]
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise UsageError(f"{what}: {exc}") from None


def read_matrix(stream, what: str = "matrix") -> tuple[tuple[Fraction, ...], ...]:
    data = _read_json(stream, what)
    if not isinstance(data, list) or not data or not all(isinstance(r, list) for r in data):
        raise UsageError(f"{what}: expected a nonempty JSON array of arrays")
    rows = [tuple(_parse_entries(r, what)) for r in data]
    if len({len(r) for r in rows}) != 1 or not rows[0]:
        raise UsageError(f"{what}: rows must be nonempty and of equal length")
    return tuple(rows)


def read_vector(stream, what: str = "vector") -> tuple[Fraction, ...]:
    data = _read_json(stream, what)
    if not isinstance(data, list) or not data:
        raise UsageError(f"{what}: expected a nonempty JSON array")
    return tuple(_parse_entries(data, what))


def _load(path: str, reader, what: str):
    if path == "-":
        return reader(sys.stdin, what)
    try:
        with open(path, encoding="utf-8") as fh:
            return reader(fh, what)
    except OSError as exc:
        raise UsageError(f"{what}: cannot read {path!r} ({exc.strerror})") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


# -- subcommands -----------------------------------------------------------------

def cmd_enumerate(args, out) -> int:
    m, n = args.m, args.n
    if args.kind == "pasm":
        size = count_pasms(m, n)
        if size > LONG_RUNNING_MATRICES and not args.long_running:
            raise UsageError(f"PASM({m},{n}) has {size} elements; pass --long-running to enumerate them")
        if args.count_only:
            _emit({"kind": "pasm", "m": m, "n": n, "count": sum(1 for _ in iter_pasms(m, n))}, out)
            return 0
        mats = list(iter_pasms(m, n))
    else:
        mats = enumerate_partial_perms(m, n)
        if len(mats) > LONG_RUNNING_MATRICES and not args.long_running:
            raise UsageError(f"P({m},{n}) has {len(mats)} elements; pass --long-running to enumerate them")
        if args.count_only:
            _emit({"kind": "pperm", "m": m, "n": n, "count": len(mats)}, out)
            return 0
    _emit({"kind": args.kind, "m": m, "n": n, "count": len(mats), "matrices": mats}, out)
    return 0


def _violations(point, inequalities) -> list[str]:
    return [q.name for q in inequalities if not q.satisfied(point)]


def cmd_check(args, out) -> int:
    if args.kind == "permutohedron":
        if args.n is None:
            raise UsageError("check permutohedron needs --n")
        u = read_vector(sys.stdin, "point")
        m = len(u)
        inside = permutohedron.permutohedron_contains(u, m, args.n)
        report = {"kind": "permutohedron", "m": m, "n": args.n, "inside": inside}
        if not inside:
            report["violated"] = _violations(u, permutohedron.permutohedron_inequalities(m, args.n))
    else:
        X = read_matrix(sys.stdin, "point")
        m, n = len(X), len(X[0])
        if args.kind == "pperm":
            inside = polytopes.pperm_contains(X)
            ineqs = polytopes.pperm_inequalities(m, n)
        else:
            inside = polytopes.pasm_contains(X)
            ineqs = polytopes.pasm_inequalities(m, n)
        report = {"kind": args.kind, "m": m, "n": n, "inside": inside}
        if not inside:
            report["violated"] = _violations(X, ineqs)
    _emit(report, out)
    return 0 if inside else 1


def cmd_decompose(args, out) -> int:
    X = read_matrix(sys.stdin, "point")
    if not polytopes.pasm_contains(X):
        _emit({"inside": False, "violated": _violations(X, polytopes.pasm_inequalities(len(X), len(X[0])))}, out)
        return 1
    dec = decomposition.decompose_pasm(X)
    payload = dec.to_json()
    payload["valid"] = dec.is_valid_for(X)
    _emit(payload, out)
    return 0 if payload["valid"] else 1


def cmd_facets(args, out) -> int:
    m, n = args.m, args.n
    try:
        if args.kind == "pperm":
            facets = polytopes.pperm_facets(m, n)
        elif args.kind == "pasm":
            facets = polytopes.pasm_facets(m, n)
        else:
            facets = permutohedron.permutohedron_facets(m, n)
    except polytopes.DegenerateSizeError as exc:
        raise UsageError(str(exc)) from None
    _emit({"kind": args.kind, "m": m, "n": n, "count": len(facets),
           "facets": [q.to_json() for q in facets]}, out)
    return 0


def cmd_face_lattice(args, out) -> int:
    if args.kind == "pasm":
        if args.n is None:
            raise UsageError("face-lattice pasm needs both m and n")
        if args.m * args.n > polytopes.FACE_LATTICE_MAX_CELLS:
            raise UsageError(f"face-lattice pasm is limited to m*n <= {polytopes.FACE_LATTICE_MAX_CELLS}")
        poset = polytopes.pasm_face_lattice(args.m, args.n)
        payload = poset.to_json(lambda d: d.to_json())
    else:
        if args.n is not None:
            raise UsageError("face-lattice stellohedron takes only m")
        if args.m > tubings.MAX_M:
            raise UsageError(f"face-lattice stellohedron is limited to m <= {tubings.MAX_M}")
        poset = tubings.stellohedron_face_lattice(args.m)
        payload = poset.to_json(tubings.chain_to_sets)
    payload["f_vector"] = {str(k): v for k, v in poset.f_vector().items()}
    _emit(payload, out)
    return 0


CSV_FIELDS = ("kind", "m", "n", "dim", "normalized_volume", "coefficients")


def _volume_rows(results: Sequence[ehrhart.VolumeResult], fmt: str, out) -> None:
    if fmt == "json":
        _emit([r.to_json() for r in results], out)
        return
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for r in results:
        writer.writerow([r.kind, r.m, r.n, r.dimension, r.normalized_volume, ";".join(r.ehrhart.to_strings())])
    out.write(buf.getvalue())


def _gate(kind: str, m: int, n: int, long_running: bool) -> None:
    work = ehrhart.estimated_work(kind, m, n)
    if work > LONG_RUNNING_WORK and not long_running:
        raise UsageError(f"{kind}({m},{n}) is a long computation (about {work:.2e} updates); "
                         "pass --long-running to run it")


def cmd_volume(args, out) -> int:
    _gate(args.kind, args.m, args.n, args.long_running)
    _volume_rows([ehrhart.ehrhart_polynomial(args.kind, args.m, args.n, workers=args.jobs)], args.format, out)
    return 0


def cmd_table(args, out) -> int:
    sizes = [(m, n) for m in range(1, args.max_m + 1) for n in range(1, args.max_n + 1)]
    for m, n in sizes:
        _gate(args.kind, m, n, args.long_running)
    _volume_rows([ehrhart.ehrhart_polynomial(args.kind, m, n, workers=args.jobs) for m, n in sizes],
                 args.format, out)
    return 0


def cmd_project(args, out) -> int:
    if args.z_file == "-" and args.matrix_file == "-":
        raise UsageError("only one of z-file and matrix-file can be read from stdin")
    z = _load(args.z_file, read_vector, "z-file")
    X = _load(args.matrix_file, read_matrix, "matrix-file")
    if len(z) != len(X):
        raise UsageError(f"z has length {len(z)} but the matrix has {len(X)} rows")
    image = permutohedron.project(z, X)
    payload = {"image": list(image)}
    try:
        payload["in_weighted_permutohedron"] = permutohedron.weighted_contains(image, z)
    except ValueError:
        # membership is only defined for distinct positive weights
        payload["in_weighted_permutohedron"] = None
    _emit(payload, out)
    return 0


# -- verify ------------------------------------------------------------------------

def _verify_separation(scope: str, args) -> list[dict]:
    sizes = [(2, 2)] if scope == "small" else [(2, 2), (2, 3), (3, 3)]
    return [{"m": m, "n": n, **polytopes.verify_separation(m, n)} for m, n in sizes]


def _verify_projection(scope: str, args) -> list[dict]:
    sizes = [(2, 2)] if scope == "small" else [(2, 2), (2, 3), (3, 3)]
    out = []
    for kind in ("pperm", "pasm"):
        for m, n in sizes:
            z = tuple(range(m, 0, -1))
            out.append({"kind": kind, "m": m, "n": n, "z": z,
                        **permutohedron.verify_projection(kind, m, n, z)})
    return out


def _verify_facets(scope: str, args) -> list[dict]:
    top_matrix, top_perm = (2, 3) if scope == "small" else (3, 4)
    out = []
    for kind in ("pperm", "pasm"):
        for m in range(2, top_matrix + 1):
            for n in range(2, top_matrix + 1):
                out.append({"kind": kind, "m": m, "n": n, **polytopes.verify_facets(kind, m, n)})
    for m in range(1, top_perm + 1):
        for n in range(1, top_perm + 1):
            out.append({"kind": "permutohedron", "m": m, "n": n, **permutohedron.verify_facets(m, n)})
    return out


def _verify_vertices(scope: str, args) -> list[dict]:
    top = 2 if scope == "small" else 3
    out = []
    for m in range(1, top + 1):
        for n in range(1, top + 1):
            for kind in ("pperm", "pasm"):
                out.append({"kind": kind, "m": m, "n": n, **polytopes.verify_vertices(kind, m, n)})
            out.append({"kind": "permutohedron", "m": m, "n": n, **permutohedron.verify_vertices(m, n)})
    return out


def _verify_face_lattice(scope: str, args) -> list[dict]:
    small = scope == "small"
    out = []
    for m, n in ([(1, 1), (2, 2)] if small else [(1, 1), (2, 2), (2, 3)]):
        out.append({"kind": "pasm", "m": m, "n": n, **polytopes.verify_pasm_face_lattice(m, n)})
    for m in range(1, 3 if small else 4):
        out.append({"kind": "stellohedron", "m": m, **tubings.verify_stellohedron(m)})
    top = 3 if small else 4
    for m in range(1, top + 1):
        for n in range(1, top + 1):
            out.append({"kind": "chain-profile", **tubings.conjecture_faces(m, n)})
    return out


def _verify_decomposition(scope: str, args) -> list[dict]:
    samples = args.samples if args.samples is not None else (50 if scope == "small" else 500)
    return [decomposition.verify_decomposition(m, n, samples, seed=args.seed) for m, n in ((2, 3), (3, 3))]


def _verify_conjectures(scope: str, args) -> list[dict]:
    return [ehrhart.verify_conjectures(scope)]


def _verify_theorem_p2n(scope: str, args) -> list[dict]:
    return [ehrhart.verify_volume_theorem_P2n(4 if scope == "small" else 7)]


def _verify_positivity(scope: str, args) -> list[dict]:
    if scope == "small":
        plan = [("pperm", 2, 2), ("pasm", 2, 2), ("permutohedron", 3, 3)]
    else:
        plan = [(k, m, n) for k in ("pperm", "pasm") for m in range(1, 4) for n in range(1, 4)]
        plan += [("pperm", 2, 4), ("pperm", 2, 5), ("pasm", 2, 4), ("pasm", 3, 4)]
        plan += [("permutohedron", m, n) for m in range(1, 8) for n in range(1, 8)]
    results = [ehrhart.ehrhart_polynomial(k, m, n) for k, m, n in plan]
    bad = [r.to_json() for r in ehrhart.nonpositive_results(results)]
    return [{"pass": not bad, "checked": len(results), "counterexamples": bad}]


VERIFIERS: dict[str, Callable[[str, argparse.Namespace], list[dict]]] = {
    "separation": _verify_separation,
    "projection": _verify_projection,
    "facets": _verify_facets,
    "vertices": _verify_vertices,
    "face-lattice": _verify_face_lattice,
    "decomposition": _verify_decomposition,
    "conjectures": _verify_conjectures,
    "theorem-p2n": _verify_theorem_p2n,
    "positivity": _verify_positivity,
}


def cmd_verify(args, out) -> int:
    reports = VERIFIERS[args.what](args.scope, args)
    ok = all(r["pass"] for r in reports)
    _emit({"check": args.what, "scope": args.scope, "pass": ok, "reports": reports}, out)
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="partialpoly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="list PPerm or PASM vertices as JSON")
    e.add_argument("kind", choices=("pperm", "pasm"))
    e.add_argument("m", type=_positive)
    e.add_argument("n", type=_positive)
    e.add_argument("--count-only", action="store_true", help="print the count, not the matrices")
    e.add_argument("--long-running", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("check", help="membership of a point read from stdin")
    c.add_argument("kind", choices=("pperm", "pasm", "permutohedron"))
    c.add_argument("--n", type=_positive, help="value bound for the permutohedron")
    c.set_defaults(func=cmd_check)

    d = sub.add_parser("decompose", help="write a PASM(m,n) point from stdin as a convex combination")
    d.set_defaults(func=cmd_decompose)

    f = sub.add_parser("facets", help="irredundant facet inequalities")
    f.add_argument("kind", choices=("pperm", "pasm", "permutohedron"))
    f.add_argument("m", type=_positive)
    f.add_argument("n", type=_positive)
    f.set_defaults(func=cmd_facets)

    fl = sub.add_parser("face-lattice", help="face lattice as graded-poset JSON")
    fl.add_argument("kind", choices=("pasm", "stellohedron"))
    fl.add_argument("m", type=_positive)
    fl.add_argument("n", type=_positive, nargs="?")
    fl.set_defaults(func=cmd_face_lattice)

    for name, helptext in (("volume", "Ehrhart polynomial and normalized volume"),
                           ("table", "normalized volumes for all sizes up to a bound")):
        v = sub.add_parser(name, help=helptext)
        v.add_argument("kind", choices=ehrhart.KINDS)
        if name == "volume":
            v.add_argument("m", type=_positive)
            v.add_argument("n", type=_positive)
            v.set_defaults(func=cmd_volume)
        else:
            v.add_argument("--max-m", type=_positive, default=3)
            v.add_argument("--max-n", type=_positive, default=3)
            v.set_defaults(func=cmd_table)
        v.add_argument("--format", choices=("csv", "json"), default="csv")
        v.add_argument("--jobs", type=_positive, default=1, help="worker processes for the dilates")
        v.add_argument("--long-running", action="store_true")

    ver = sub.add_parser("verify", help="run a verification suite")
    ver.add_argument("what", choices=sorted(VERIFIERS))
    ver.add_argument("--scope", choices=SCOPES, default="default")
    ver.add_argument("--samples", type=_positive, help="random points per size (decomposition)")
    ver.add_argument("--seed", type=int, default=0)
    ver.set_defaults(func=cmd_verify)

    pr = sub.add_parser("project", help="image zX of a matrix, with P_z membership")
    pr.add_argument("z_file", help="JSON vector file, or - for stdin")
    pr.add_argument("matrix_file", help="JSON matrix file, or - for stdin")
    pr.set_defaults(func=cmd_project)
    return p


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, ehrhart.ResourceGuardError, ValueError) as exc:
        err.write(f"partialpoly {args.command}: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
