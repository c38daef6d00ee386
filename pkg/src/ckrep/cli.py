"""Command-line interface: ``ckrep <command> ...``.

Exit status is 0 when every requested stage succeeds, 1 when a stage rejects
its input or a check fails, and 2 for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certify import inequivalence_certificate
from .classify import classify_type
from .errors import CKError, MalformedInputError
from .fixtures import fixture_names, fixture_pair, load_fixture, pair_names
from .gns import compare_states, gns_moment
from .interval import EtaPrime, build_interval_system, gp_fixed_point_check, verify_ck_relations
from .io import RunConfig, load_config, parse_vector, read_matrix
from .scalars import format_scalar, simplify, sqrt
from .spectral import (
    LambdaPoint,
    check_lambda_membership,
    solve_last_coordinate,
    validate_ck_matrix,
)
from .words import parse_formal_sum, quasifree_eval

SCHEMA_VERSION = 1


class StageFailure(Exception):
    """A stage ran but its verdict is negative; carries the partial report."""

    def __init__(self, report: dict):
        super().__init__(report.get("reason", "stage failed"))
        self.report = report


# rendering ---------------------------------------------------------------------

def _vec(values) -> dict:
    values = [simplify(v) for v in values]
    out = {"value": [float(v) for v in values]}
    if all(isinstance(v, Fraction) for v in values):
        out["exact"] = [str(v) for v in values]
    return out


def _point_json(p: LambdaPoint) -> dict:
    return {"a": _vec(p.a), "x": _vec(p.x), "residual": float(p.residual),
            "scalar_mode": p.scalar_mode}


def _flatten(obj, prefix=""):
    if isinstance(obj, dict) and obj:
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and obj and all(isinstance(r, dict) for r in obj):
        yield prefix, f"[{len(obj)} rows]"
    else:
        yield prefix, obj


def render_table(report: dict) -> str:
    rows = []
    for key, value in _flatten({k: v for k, v in report.items() if k != "table"}):
        rows.append((key, json.dumps(value) if isinstance(value, (list, dict)) else str(value)))
    width = max((len(k) for k, _ in rows), default=0)
    lines = [f"{k.ljust(width)}  {v}" for k, v in rows]
    table = report.get("table")
    if table:
        cols = list(table[0])
        lines.append("")
        lines.append("\t".join(cols))
        for r in table:
            lines.append("\t".join(_cell(r[c]) for c in cols))
    return "\n".join(lines)


def _cell(v) -> str:
    if isinstance(v, dict) and "value" in v:
        return v.get("exact", repr(v["value"]))
    if isinstance(v, list):
        return ",".join(map(str, v)) or "-"
    return str(v)


def emit(report: dict, cfg: RunConfig, stream=None) -> None:
    stream = stream or sys.stdout
    if cfg.output == "table":
        print(render_table(report), file=stream)
    else:
        print(json.dumps(report, indent=2, sort_keys=False), file=stream)


# argument plumbing ------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--config", help="key=value config file (default: $CKREP_CONFIG)")
    g.add_argument("--tol", type=float, help="membership / comparison tolerance")
    g.add_argument("--max-len", type=int, dest="max_len", help="word length cap")
    g.add_argument("--pmax", type=int, help="largest exponent in the type search")
    g.add_argument("--qmax", type=int, help="largest convergent denominator")
    mode = g.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_const", const=True,
                      help="read numbers as exact rationals (default)")
    mode.add_argument("--float", dest="exact", action="store_const", const=False,
                      help="read numbers as floats")
    fmt = g.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="output", action="store_const", const="json")
    fmt.add_argument("--table", dest="output", action="store_const", const="table")
    return p


def _point_args(p: argparse.ArgumentParser, with_b: bool = False) -> None:
    p.add_argument("--matrix", "-m", help="matrix file")
    p.add_argument("--a", help="parameter vector, e.g. '1/3 1/3 1/2'")
    p.add_argument("--fixture", "-f", help="shipped fixture name")
    if with_b:
        p.add_argument("--b", help="second parameter vector")
        p.add_argument("--fixture-b", help="second fixture")
        p.add_argument("--pair", help="shipped fixture pair")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="ckrep", description=(
        "Quasi-free representations of Cuntz-Krieger algebras: parameter sets, "
        "type labels, interval and free-group representations, and overlap bounds."))
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-matrix", parents=[common], help="admissibility diagnostics")
    p.add_argument("path")

    p = sub.add_parser("lambda", parents=[common], help="membership in / solving for Lambda(A)")
    lsub = p.add_subparsers(dest="action", required=True)
    q = lsub.add_parser("check", parents=[common])
    _point_args(q)
    q = lsub.add_parser("solve", parents=[common], help="solve for the last coordinate")
    _point_args(q)

    p = sub.add_parser("classify", parents=[common], help="III_lambda / III_1 label")
    _point_args(p)

    p = sub.add_parser("state", parents=[common], help="quasi-free state")
    ssub = p.add_subparsers(dest="action", required=True)
    q = ssub.add_parser("eval", parents=[common])
    _point_args(q)
    q.add_argument("expr", help="formal sum, e.g. \"s[3,1]*s[3,1]' + 1/2*s[2]*s[2]'\"")

    p = sub.add_parser("verify-rep", parents=[common], help="relations of the interval representation")
    _point_args(p)
    p.add_argument("--depth", type=int, default=1, help="breakpoint refinement depth")

    p = sub.add_parser("gns-compare", parents=[common], help="Pi moments vs the quasi-free state")
    _point_args(p)
    p.add_argument("--carrier", choices=("interval", "sequence"), default="interval")
    p.add_argument("--no-table", action="store_true", help="summary only")

    p = sub.add_parser("certify", parents=[common], help="overlap decay certificate")
    _point_args(p, with_b=True)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--m-table", type=int, dest="m_table")

    p = sub.add_parser("pipeline", parents=[common], help="lambda -> classify -> verify -> gns -> certify")
    _point_args(p, with_b=True)
    p.add_argument("--stages", default="lambda,classify,verify-rep,gns-compare,certify")
    p.add_argument("--epsilon", type=float)

    p = sub.add_parser("batch", parents=[common], help="pipeline over many points, one per line")
    p.add_argument("--matrix", "-m", required=True)
    p.add_argument("points", help="file with one parameter vector per line")
    p.add_argument("--stages", default="lambda,classify")
    p.add_argument("--workers", type=int)

    sub.add_parser("fixtures", parents=[common], help="list shipped fixtures")
    return parser


def _config(args) -> RunConfig:
    cfg = load_config(args.config)
    return cfg.updated(tol=args.tol, max_len=args.max_len, pmax=args.pmax, qmax=args.qmax,
                       exact=args.exact, output=args.output,
                       epsilon=getattr(args, "epsilon", None), m_table=getattr(args, "m_table", None),
                       workers=getattr(args, "workers", None))


def _matrix_and_vector(args, cfg: RunConfig, which: str = "a"):
    fixture = getattr(args, "fixture" if which == "a" else "fixture_b", None)
    text = getattr(args, which, None)
    if fixture and text is None:
        f = load_fixture(fixture)
        a = f.a if cfg.exact or not f.exact else tuple(map(float, f.a))
        return f.A, a
    if args.matrix:
        A = read_matrix(args.matrix)
    elif args.fixture:
        A = load_fixture(args.fixture).A
    else:
        raise MalformedInputError("give --matrix with --a, or --fixture")
    if text is None:
        raise MalformedInputError(f"missing --{which}")
    return A, parse_vector(text, exact=cfg.exact)


def _point(args, cfg: RunConfig, which: str = "a") -> LambdaPoint:
    A, a = _matrix_and_vector(args, cfg, which)
    return check_lambda_membership(A, a, tol=cfg.tol)


# commands ---------------------------------------------------------------------

def cmd_check_matrix(args, cfg):
    A = read_matrix(args.path)
    d = validate_ck_matrix(A)
    report = {"n": A.n, "admissible": d.admissible, "nondegenerate": d.nondegenerate,
              "irreducible": d.irreducible, "permutation": d.permutation,
              "witness": list(d.witness) if d.witness else None, "reason": d.reason()}
    if not d.admissible:
        raise StageFailure(report)
    return report


def cmd_lambda(args, cfg):
    if args.action == "check":
        return {"accepted": True, **_point_json(_point(args, cfg))}
    A, partial = _matrix_and_vector(args, cfg)
    p = solve_last_coordinate(A, partial, lambda_tol=cfg.tol)
    return {"solved": True, **_point_json(p)}


def cmd_classify(args, cfg):
    if args.matrix or args.fixture:
        _, a = _matrix_and_vector(args, cfg)
    elif args.a:
        a = parse_vector(args.a, exact=cfg.exact)
    else:
        raise MalformedInputError("give --a or --fixture")
    return classify_type(a, pmax=cfg.pmax, qmax=cfg.qmax).to_json()


def cmd_state(args, cfg):
    p = _point(args, cfg)
    f = parse_formal_sum(p.A, args.expr, exact=cfg.exact)
    value = quasifree_eval(p, f)
    sys_ = build_interval_system(p)
    via_gns = gns_moment(sys_, f)
    return {"expr": args.expr, "normal_form": str(f), "value": format_scalar(value),
            "gns_value": format_scalar(via_gns), "point": _point_json(p)}


def _verify(p: LambdaPoint, depth: int = 1) -> dict:
    sys_ = build_interval_system(p)
    report = verify_ck_relations(sys_, sys_.cell_indicators(depth))
    gp = gp_fixed_point_check(sys_, [sqrt(ai) for ai in sys_.point.a], require_unit=False)
    out = {"c": _vec(sys_.c), "ck_residual": report.max_residual, "relations": report.residuals,
           "probes": report.probes, "gp_residual": gp, "rate_shift": sys_.rate_shift,
           "exact": report.exact,
           "passed": report.passed and (gp == 0 if report.exact else gp <= report.tol)}
    return out


def cmd_verify_rep(args, cfg):
    report = _verify(_point(args, cfg), args.depth)
    if not report["passed"]:
        raise StageFailure(report)
    return report


def _gns(p: LambdaPoint, cfg: RunConfig, carrier: str = "interval", table: bool = True) -> dict:
    if carrier == "sequence":
        if not p.A.is_all_ones or p.n != 2:
            raise MalformedInputError("the sequence carrier needs the all-ones 2x2 matrix")
        rep = EtaPrime(*p.a)
    else:
        rep = build_interval_system(p)
    comparison = compare_states(rep, cfg.max_len, tol=max(cfg.tol * 1e-3, 1e-12))
    return {"carrier": carrier, **comparison.to_json(table=table)}


def cmd_gns_compare(args, cfg):
    report = _gns(_point(args, cfg), cfg, args.carrier, table=not args.no_table)
    if not report["passed"]:
        raise StageFailure(report)
    return report


def _pair_points(args, cfg):
    if getattr(args, "pair", None):
        return fixture_pair(args.pair)
    p_a = _point(args, cfg, "a")
    if args.b is None and not args.fixture_b:
        raise MalformedInputError("certify needs a second point (--b, --fixture-b or --pair)")
    return p_a, _point(args, cfg, "b")


def cmd_certify(args, cfg):
    p_a, p_b = _pair_points(args, cfg)
    cert = inequivalence_certificate(p_a.A, p_a, p_b, cfg.epsilon, m_table=cfg.m_table,
                                     m_cap=cfg.m_cap)
    return cert.to_json()


def _pipeline(p: LambdaPoint, stages: list[str], cfg: RunConfig, p_b: LambdaPoint | None = None) -> dict:
    out: dict = {"x": _vec(p.x), "a": _vec(p.a), "scalar_mode": p.scalar_mode}
    ok = True
    for stage in stages:
        if stage == "lambda":
            out["lambda"] = {"accepted": True, "residual": float(p.residual)}
        elif stage == "classify":
            cls = classify_type(p.a, pmax=cfg.pmax, qmax=cfg.qmax)
            out["class"] = cls.to_json()
        elif stage == "verify-rep":
            rep = _verify(p)
            out["ck_residual"] = rep["ck_residual"]
            out["gp_residual"] = rep["gp_residual"]
            ok &= rep["passed"]
        elif stage == "gns-compare":
            g = _gns(p, cfg, table=False)
            out["gns_max_dev"] = g["max_deviation"]
            ok &= g["passed"]
        elif stage == "certify":
            if p_b is None:
                continue
            out["certificate"] = inequivalence_certificate(
                p.A, p, p_b, cfg.epsilon, m_table=cfg.m_table, m_cap=cfg.m_cap).to_json()
        else:
            raise MalformedInputError(f"unknown stage {stage!r}")
    out["passed"] = bool(ok)
    return out


def _stage_list(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def cmd_pipeline(args, cfg):
    p = _point(args, cfg)
    p_b = None
    if args.b is not None or args.fixture_b or args.pair:
        p_b = fixture_pair(args.pair)[1] if args.pair else _point(args, cfg, "b")
    report = _pipeline(p, _stage_list(args.stages), cfg, p_b)
    if not report["passed"]:
        raise StageFailure(report)
    return report


def cmd_batch(args, cfg):
    A = read_matrix(args.matrix)
    stages = _stage_list(args.stages)
    try:
        text = Path(args.points).read_text()
    except OSError as exc:
        raise MalformedInputError(f"cannot read {args.points}: {exc.strerror}") from None
    lines = [(k, ln) for k, ln in enumerate(text.splitlines(), start=1)
             if ln.split("#", 1)[0].strip()]

    def run(item):
        lineno, text = item
        try:
            a = parse_vector(text.split("#", 1)[0], exact=cfg.exact)
            return {"line": lineno, **_pipeline(check_lambda_membership(A, a, cfg.tol), stages, cfg)}
        except CKError as exc:
            return {"line": lineno, "passed": False, "error": _error_json(exc)}

    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        results = list(pool.map(run, lines))  # map keeps input order
    report = {"points": len(results), "passed": all(r["passed"] for r in results),
              "results": results}
    if not report["passed"]:
        raise StageFailure(report)
    return report


def cmd_fixtures(args, cfg):
    out = {}
    for name in fixture_names():
        f = load_fixture(name)
        out[name] = {"matrix": f.matrix_file, "a": [str(v) for v in f.a],
                     "mode": "exact" if f.exact else "float", "note": f.note}
    return {"fixtures": out, "pairs": pair_names()}


COMMANDS = {
    "check-matrix": cmd_check_matrix, "lambda": cmd_lambda, "classify": cmd_classify,
    "state": cmd_state, "verify-rep": cmd_verify_rep, "gns-compare": cmd_gns_compare,
    "certify": cmd_certify, "pipeline": cmd_pipeline, "batch": cmd_batch,
    "fixtures": cmd_fixtures,
}


def _error_json(exc: Exception) -> dict:
    out = {"type": type(exc).__name__, "message": str(exc)}
    line = getattr(exc, "line", None)
    if line is not None:
        out["line"] = line
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command + (f" {args.action}" if getattr(args, "action", None) else "")
    head = {"schema_version": SCHEMA_VERSION, "command": command}
    try:
        cfg = _config(args)
    except MalformedInputError as exc:
        print(json.dumps({**head, "ok": False, "error": _error_json(exc)}), file=sys.stdout)
        return 2
    try:
        report = COMMANDS[args.command](args, cfg)
    except StageFailure as exc:
        emit({**head, "ok": False, **exc.report}, cfg)
        return 1
    except MalformedInputError as exc:
        emit({**head, "ok": False, "error": _error_json(exc)}, cfg)
        return 2
    except CKError as exc:
        emit({**head, "ok": False, "error": _error_json(exc)}, cfg)
        return 1
    emit({**head, "ok": True, **report}, cfg)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
