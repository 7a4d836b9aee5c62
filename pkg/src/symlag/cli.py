"""Command-line front end: every analysis as a subcommand, JSON or table output.

Exit codes: 0 success (for analyze: unisolvent; for solve: admissible; for
equiv: equivalent), 1 negative verdict, 2 input or usage error.  JSON output
is byte-deterministic for identical inputs.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from . import charmat, interp, nodeset, symcore
from .errors import SymlagError

SCHEMA = "symlag/1"
ENUM_LIMIT_ENV = "SYMLAG_ENUM_LIMIT"


@dataclass(frozen=True)
class RunConfig:
    fmt: str
    snap_tol: Fraction | None
    det_tol: float
    enum_limit: int | None
    float_mode: bool


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _positive_fraction(text: str) -> Fraction:
    try:
        value = Fraction(Decimal(text))
    except (InvalidOperation, ValueError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if value <= 0:
        raise argparse.ArgumentTypeError("tolerance must be strictly positive")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number")
    if value <= 0:
        raise argparse.ArgumentTypeError("threshold must be strictly positive")
    return value


def _config(args) -> RunConfig:
    enum_limit = getattr(args, "enum_limit", None)
    if enum_limit is None:
        raw = os.environ.get(ENUM_LIMIT_ENV)
        if raw is not None:
            try:
                enum_limit = int(raw)
            except ValueError:
                raise SymlagError(f"{ENUM_LIMIT_ENV}={raw!r} is not an integer")
    return RunConfig(
        fmt=getattr(args, "format", "table"),
        snap_tol=getattr(args, "snap_tol", None),
        det_tol=getattr(args, "det_tol", 1e-9),
        enum_limit=enum_limit,
        float_mode=getattr(args, "float_mode", False),
    )


def _frac(x: Fraction) -> str:
    return str(x)


def _det_json(det):
    if isinstance(det, Fraction):
        return [det.numerator, det.denominator]
    return det


def _emit(payload: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _type_str(t: symcore.OrbitType) -> str:
    return "(" + ", ".join(map(str, t.counts)) + ")"


def _matrix_lines(title: str, types, entries) -> list[str]:
    labels = [_type_str(t) for t in types]
    width = max(len(s) for s in labels)
    cell = max((len(str(v)) for row in entries for v in row), default=1)
    lines = [title, " " * (width + 2) + "  ".join(str(j + 1).rjust(cell) for j in range(len(types)))]
    for label, row in zip(labels, entries):
        lines.append(label.rjust(width) + "  " + "  ".join(str(v).rjust(cell) for v in row))
    return lines


# -- subcommands -------------------------------------------------------------

def cmd_types(args) -> int:
    cfg = _config(args)
    types = symcore.enumerate_types(args.n)
    rows = [
        {
            "rank": rank,
            "counts": t.to_json(),
            "orbit_size": symcore.orbit_size(t),
            "stabilizer_order": symcore.stabilizer_order(t),
        }
        for rank, t in enumerate(types, start=1)
    ]
    payload = {"schema": SCHEMA, "command": "types", "n": args.n, "types": rows}
    lines = [f"orbit types of R^{args.n} in descending order ({len(types)} classes)"]
    lines.append(f"{'rank':>4}  {'type':<{4 + 3 * args.n}}  {'orbit size':>10}  {'stab order':>10}")
    for row, t in zip(rows, types):
        lines.append(
            f"{row['rank']:>4}  {_type_str(t):<{4 + 3 * args.n}}  "
            f"{row['orbit_size']:>10}  {row['stabilizer_order']:>10}"
        )
    _emit(payload, lines, cfg.fmt)
    return 0


def cmd_vmatrix(args) -> int:
    cfg = _config(args)
    v = charmat.v_matrix(args.n)
    minors = v.leading_principal_minors()
    payload = {
        "schema": SCHEMA,
        "command": "vmatrix",
        "determinant": v.determinant(),
        "leading_principal_minors": minors,
        "positive_definite": all(m > 0 for m in minors),
        "symmetric": v.is_symmetric(),
        **v.to_json_dict(),
    }
    lines = _matrix_lines(f"V matrix for n={args.n} (v[i][j] = <chi_i, chi_j>)", v.types, v.entries)
    lines.append(f"determinant: {v.determinant()}")
    lines.append(f"leading principal minors: {minors} (all positive: {all(m > 0 for m in minors)})")
    _emit(payload, lines, cfg.fmt)
    return 0


def cmd_kmatrix(args) -> int:
    cfg = _config(args)
    k = charmat.k_matrix(args.n)
    payload = {
        "schema": SCHEMA,
        "command": "kmatrix",
        "determinant": k.determinant(),
        "lower_triangular": k.is_lower_triangular(),
        "diagonal": list(k.diagonal()),
        **k.to_json_dict(),
    }
    lines = _matrix_lines(
        f"K matrix for n={args.n} (rows: conjugacy classes, columns: orbit classes)",
        k.types, k.entries,
    )
    lines.append(f"lower triangular: {k.is_lower_triangular()}, diagonal: {list(k.diagonal())}")
    lines.append(f"determinant: {k.determinant()}")
    _emit(payload, lines, cfg.fmt)
    return 0


def _load_nodes(path, cfg: RunConfig):
    return nodeset.load_node_set(path, snap_tol=cfg.snap_tol)


def cmd_classify(args) -> int:
    cfg = _config(args)
    try:
        nodes, snaps = _load_nodes(args.nodes, cfg)
    except (OSError, ValueError, SymlagError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    vector = nodes.orbit_vector()
    payload = {
        "schema": SCHEMA,
        "command": "classify",
        "n": nodes.n,
        "point_count": len(nodes),
        "orbit_vector": list(vector),
        "orbits": [
            {
                "type": o.type.to_json(),
                "size": len(o.points),
                "representative": o.rep.to_json(),
                "points": [p.to_json() for p in o.points],
            }
            for o in nodes.orbits
        ],
        "snaps": [
            {"original": s.original, "snapped": _frac(s.snapped), "delta": _frac(s.delta)}
            for s in snaps
        ],
    }
    lines = [f"{len(nodes)} points in R^{nodes.n}, {len(nodes.orbits)} orbits, orbit vector {vector}"]
    for o in nodes.orbits:
        lines.append(f"  type {_type_str(o.type)}  size {len(o.points):>3}  representative {o.rep}")
    for s in snaps:
        lines.append(f"  note: {s.describe()}")
    _emit(payload, lines, cfg.fmt)
    return 0


def _orbit_template(types, solution) -> list[dict]:
    template = []
    instance = 0
    for t, count in zip(types, solution):
        for _ in range(count):
            instance += 1
            pattern = []
            for letter, block in zip("abcdefghijklmnopqrstuvwxyz", symcore.canonical_blocks(t)):
                pattern.extend([f"{letter}{instance}"] * len(block))
            template.append({"type": t.to_json(), "pattern": pattern})
    return template


def cmd_solve(args) -> int:
    cfg = _config(args)
    try:
        basis = interp.load_basis(args.basis, n=args.n)
        v = charmat.v_matrix(basis.n)
        r = interp.r_vector(basis)
    except (OSError, ValueError, SymlagError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, SymlagError) and "enumeration" in str(exc):
            print("hint: raise the limit with --enum-limit or SYMLAG_ENUM_LIMIT", file=sys.stderr)
        return 2
    cs = interp.solve_constraints(v, r)
    realizable = {symcore.orbit_size(t) for t in v.types}
    notes = [
        f"basis has an orbit of size {k}, which matches no point-orbit class in R^{basis.n}"
        for k in sorted({s for s in basis.orbit_sizes() if s not in realizable})
    ]
    payload = {
        "schema": SCHEMA,
        "command": "solve",
        "n": basis.n,
        "function_count": len(basis),
        "r": list(cs.r),
        "solution": [_frac(x) for x in cs.solution],
        "admissible": cs.admissible,
        "reason": cs.reason,
        "template": _orbit_template(v.types, cs.integer_solution()) if cs.admissible else None,
        "notes": notes,
    }
    lines = [f"basis: {len(basis)} functions in {len(basis.orbits)} orbits (n = {basis.n})"]
    lines.append(f"r vector: {cs.r}")
    lines.append("solution X: (" + ", ".join(_frac(x) for x in cs.solution) + ")")
    if cs.admissible:
        lines.append("admissible: yes — node-set template:")
        for entry in _orbit_template(v.types, cs.integer_solution()):
            lines.append(f"  orbit of type {tuple(entry['type'])}: pattern ({', '.join(entry['pattern'])})")
        lines.append("  (values within an orbit distinct per letter; orbits pairwise disjoint)")
    else:
        lines.append(f"infeasible: no symmetric unisolvent node set exists ({cs.reason})")
    for note in notes:
        lines.append(f"note: {note}")
    _emit(payload, lines, cfg.fmt)
    return 0 if cs.admissible else 1


def cmd_equiv(args) -> int:
    cfg = _config(args)
    try:
        nodes_a, snaps_a = _load_nodes(args.nodes_a, cfg)
        nodes_b, snaps_b = _load_nodes(args.nodes_b, cfg)
        result = nodeset.equivalent(nodes_a, nodes_b)
    except (OSError, ValueError, SymlagError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    payload = {
        "schema": SCHEMA,
        "command": "equiv",
        "n": nodes_a.n,
        "orbit_vector_a": list(result.vector_a),
        "orbit_vector_b": list(result.vector_b),
        "equivalent": result.equivalent,
        "bijection": (
            [[x.to_json(), y.to_json()] for x, y in result.bijection]
            if result.bijection is not None
            else None
        ),
        "snaps": [
            {"original": s.original, "snapped": _frac(s.snapped), "delta": _frac(s.delta)}
            for s in (*snaps_a, *snaps_b)
        ],
    }
    lines = [
        f"orbit vector A: {result.vector_a}",
        f"orbit vector B: {result.vector_b}",
        f"equivalent: {'yes' if result.equivalent else 'no'}",
    ]
    if result.bijection is not None:
        lines.append("equivariant bijection:")
        for x, y in result.bijection:
            lines.append(f"  {x} -> {y}")
    _emit(payload, lines, cfg.fmt)
    return 0 if result.equivalent else 1


def cmd_analyze(args) -> int:
    cfg = _config(args)
    try:
        basis = interp.load_basis(args.basis, n=args.n)
        nodes, snaps = _load_nodes(args.nodes, cfg)
        if basis.n != nodes.n:
            raise SymlagError(f"basis lives in R^{basis.n} but nodes in R^{nodes.n}")
    except (OSError, ValueError, SymlagError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    screen = interp.check_necessary_conditions(basis, nodes)
    report = None
    if screen.passed:
        report = interp.vandermonde(
            basis, nodes,
            mode="float" if cfg.float_mode else "exact",
            det_tol=cfg.det_tol,
        )
        verdict = report.verdict
        reason = None if report.unisolvent else f"determinant test: {report.verdict}"
    else:
        violation = screen.first_violation()
        verdict = "necessary-conditions-failed"
        reason = violation.detail if violation is not None else "necessary conditions failed"

    payload = {
        "schema": SCHEMA,
        "command": "analyze",
        "n": basis.n,
        "verdict": verdict,
        "reason": reason,
        "determinant": _det_json(report.determinant) if report is not None else None,
        "determinant_mode": report.mode if report is not None else None,
        "conditions": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in screen.conditions
        ],
        "notes": list(screen.notes),
        "basis": {"function_count": len(basis), "orbit_sizes": list(basis.orbit_sizes())},
        "nodes": {"point_count": len(nodes), "orbit_vector": list(screen.node_vector)},
        "snaps": [
            {"original": s.original, "snapped": _frac(s.snapped), "delta": _frac(s.delta)}
            for s in snaps
        ],
    }
    lines = [f"analyze: {len(basis)} basis functions vs {len(nodes)} nodes in R^{basis.n}"]
    for c in screen.conditions:
        lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.name}: {c.detail}")
    for note in screen.notes:
        lines.append(f"  note: {note}")
    for s in snaps:
        lines.append(f"  note: {s.describe()}")
    if report is not None:
        det = _frac(report.determinant) if isinstance(report.determinant, Fraction) else repr(report.determinant)
        lines.append(f"determinant ({report.mode}): {det}")
    lines.append(f"verdict: {verdict}")
    if reason:
        lines.append(f"reason: {reason}")
    _emit(payload, lines, cfg.fmt)
    return 0 if verdict == interp.VERDICT_UNISOLVENT else 1


# -- parser ------------------------------------------------------------------

def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "table"), default="table",
                     help="output format (default: table)")
    sub.add_argument("--enum-limit", type=_positive_int, default=None, dest="enum_limit",
                     help=f"n cap for full permutation enumeration (env {ENUM_LIMIT_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symlag",
        description="Symmetry analysis for multivariate Lagrange interpolation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("types", help="list all orbit types of R^n with sizes")
    p.add_argument("--n", type=_positive_int, required=True)
    _add_common(p)
    p.set_defaults(handler=cmd_types)

    p = sub.add_parser("vmatrix", help="Gram matrix V of permutation characters")
    p.add_argument("--n", type=_positive_int, required=True)
    _add_common(p)
    p.set_defaults(handler=cmd_vmatrix)

    p = sub.add_parser("kmatrix", help="fixed-point table K")
    p.add_argument("--n", type=_positive_int, required=True)
    _add_common(p)
    p.set_defaults(handler=cmd_kmatrix)

    p = sub.add_parser("classify", help="orbit decomposition of a node-set file")
    p.add_argument("--nodes", required=True)
    p.add_argument("--snap-tol", type=_positive_fraction, default=None, dest="snap_tol")
    _add_common(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("solve", help="solve V X = r for a symmetric basis")
    p.add_argument("--basis", required=True)
    p.add_argument("--n", type=_positive_int, default=None)
    _add_common(p)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("equiv", help="decide equivalence of two symmetric node sets")
    p.add_argument("nodes_a", metavar="NODES_A")
    p.add_argument("nodes_b", metavar="NODES_B")
    p.add_argument("--snap-tol", type=_positive_fraction, default=None, dest="snap_tol")
    _add_common(p)
    p.set_defaults(handler=cmd_equiv)

    p = sub.add_parser("analyze", help="full unisolvence analysis of basis + nodes")
    p.add_argument("--basis", required=True)
    p.add_argument("--nodes", required=True)
    p.add_argument("--n", type=_positive_int, default=None)
    p.add_argument("--snap-tol", type=_positive_fraction, default=None, dest="snap_tol")
    p.add_argument("--det-tol", type=_positive_float, default=1e-9, dest="det_tol",
                   help="relative smallness threshold for the float determinant")
    p.add_argument("--float", action="store_true", dest="float_mode",
                   help="use the floating determinant path instead of exact arithmetic")
    _add_common(p)
    p.set_defaults(handler=cmd_analyze)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SymlagError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
