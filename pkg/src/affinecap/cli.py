"""Command-line verifier.

Verbs cover constants, single-body functionals, capacity bounds, the radial
profile optimizer, chain verification, seeded fuzzing, and asymmetry-curve
data.  Results go to --out or standard output; diagnostics go to standard
error.  Exit status: 0 all checks pass, 1 a mathematical inequality failed,
2 bad input or configuration.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from .bodies import parse_body, volume, sp_surface_area, PolytopeF, StarBody
from .capacity import cap_bounds, profile_optimize, variational_capacity_ball, \
    affine_capacity_ball
from .chain import FuzzConfig, default_rule, fuzz_report_doc, run_fuzz, \
    verify_chain, write_csv_report, write_json_report
from .errors import (
    ConvergenceError,
    DomainError,
    InequalityViolationError,
    IntegrationError,
    SchemaError,
    UnsupportedQueryError,
)
from .projection import integral_affine_area, tau_curve
from .quadrature import build_rule, calibrate_rule
from .special import cosine_moment, profile_constant, unit_ball_volume

__all__ = ["main"]


def _parse_rule_spec(spec: str):
    kind, sep, size = spec.partition(":")
    if not sep or not size.isdigit():
        raise DomainError(f"rule spec must look like kind:size, got {spec!r}")
    return kind, int(size)


def _resolve_rule(args, n: int):
    """Build and calibrate the quadrature rule for dimension n."""
    if getattr(args, "rule", None):
        kind, size = _parse_rule_spec(args.rule)
    elif n == 2:
        kind, size = "circle", 1024
    elif n == 3:
        kind, size = "fibonacci", 10_000
    else:
        kind, size = "monte-carlo", 100_000
    seed = getattr(args, "seed", None) if kind == "monte-carlo" else None
    if kind == "monte-carlo" and seed is None:
        raise DomainError("monte-carlo rules need --seed")
    return calibrate_rule(build_rule(n, kind, size, seed))


def _emit(doc, args):
    text = json.dumps(doc, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rule_info(rule):
    return {
        "kind": rule.kind,
        "size": rule.size,
        "n": rule.n,
        "seed": rule.seed,
        "error_estimate": rule.error_estimate,
    }


def _floats(text):
    try:
        return tuple(float(x) for x in text.split(","))
    except ValueError:
        raise DomainError(f"expected a comma-separated list of numbers, got {text!r}")


# ---------------------------------------------------------------------------
# verbs


def _cmd_constants(args):
    n, p, tau = args.n, args.p, args.tau
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    doc = {
        "n": n,
        "p": p,
        "tau": tau,
        "unit_ball_volume": unit_ball_volume(n),
        "sphere_area": n * unit_ball_volume(n),
        "cosine_moment": cosine_moment(n, p),
        "phi_ball": n * unit_ball_volume(n) * cosine_moment(n, p),
        "capacity_trivial": p >= n,
        "cp_ball": variational_capacity_ball(n, p),
        "cptau_ball": affine_capacity_ball(n, p, tau),
    }
    if p < n:
        doc["profile_constant"] = profile_constant(n, p)
    _emit(doc, args)
    return 0


def _cmd_body_info(args):
    body = parse_body(args.body)
    doc = {"kind": type(body).__name__, "n": body.n}
    if isinstance(body, StarBody):
        rule = _resolve_rule(args, body.n)
        doc["volume"] = float(volume(body, rule))
        doc["rule"] = _rule_info(rule)
    else:
        doc["volume"] = float(volume(body))
    if isinstance(body, PolytopeF):
        doc["facets"] = int(body.normals.shape[0])
        doc["closure_defect"] = float(np.linalg.norm(body.normals.T @ body.areas))
    _emit(doc, args)
    return 0


def _cmd_phi(args):
    body = parse_body(args.body)
    rule = _resolve_rule(args, body.n)
    val = integral_affine_area(body, args.p, args.tau, rule)
    _emit({"phi": float(val), "p": args.p, "tau": args.tau, "n": body.n,
           "rule": _rule_info(rule)}, args)
    return 0


def _cmd_sp(args):
    body = parse_body(args.body)
    if isinstance(body, PolytopeF):
        val = sp_surface_area(body, args.p)
        doc = {"sp": float(val), "p": args.p, "n": body.n}
    else:
        rule = _resolve_rule(args, body.n)
        val = sp_surface_area(body, args.p, rule)
        doc = {"sp": float(val), "p": args.p, "n": body.n, "rule": _rule_info(rule)}
    _emit(doc, args)
    return 0


def _cmd_cap_bounds(args):
    body = parse_body(args.body)
    rule = _resolve_rule(args, body.n)
    bounds = cap_bounds(body, args.p, args.tau, rule, body_id=args.body)
    _emit({
        "n": bounds.n,
        "p": bounds.p,
        "tau": bounds.tau,
        "lower": bounds.lower,
        "upper_phi": bounds.upper_phi,
        "upper_var": bounds.upper_var,
        "tighter_upper": bounds.tighter_upper,
        "width": bounds.width,
        "rule": _rule_info(rule),
    }, args)
    return 0


def _cmd_profile_opt(args):
    energy, fit = profile_optimize(args.n, args.p, args.m, args.s_max)
    _emit({
        "n": args.n,
        "p": args.p,
        "grid_size": args.m,
        "s_max": args.s_max,
        "energy": energy,
        "energy_truncated": fit.energy,
        "kkt_residual": fit.kkt_residual,
    }, args)
    return 0


def _cmd_verify_chain(args):
    body = parse_body(args.body)
    rule = default_rule(body.n, seed=args.seed,
                        kind=(_parse_rule_spec(args.rule)[0] if args.rule else ""),
                        size=(_parse_rule_spec(args.rule)[1] if args.rule else 0))
    report = verify_chain(body, args.p, args.tau, rule,
                          tol_mult=args.tol_mult, body_id=args.body)
    doc = {
        "body_id": report.body_id,
        "n": report.n,
        "p": report.p,
        "tau": report.tau,
        "terms": report.terms,
        "links": [
            {"name": l.name, "slack": l.slack, "tolerance": l.tolerance,
             "passed": l.passed}
            for l in report.links
        ],
        "passed": report.passed,
        "rule": _rule_info(rule),
    }
    _emit(doc, args)
    if not report.passed:
        print("chain verification failed:", file=sys.stderr)
        for l in report.links:
            if not l.passed:
                print(f"  {l.name}: slack {l.slack:.3e} < -{l.tolerance:.3e}",
                      file=sys.stderr)
        return 1
    return 0


def _cmd_fuzz(args):
    kind, size = ("", 0)
    if args.rule:
        kind, size = _parse_rule_spec(args.rule)
    config = FuzzConfig(
        seed=args.seed,
        count=args.count,
        n=args.n,
        p_list=_floats(args.p) if args.p else FuzzConfig.p_list,
        tau_list=_floats(args.tau) if args.tau else FuzzConfig.tau_list,
        cond_max=args.cond_max,
        rule_kind=kind,
        rule_size=size,
        tol_mult=args.tol_mult,
    )
    result = run_fuzz(config)
    if args.format == "csv":
        if args.out:
            with open(args.out, "w") as fh:
                write_csv_report(result.reports, fh)
        else:
            write_csv_report(result.reports, sys.stdout)
    else:
        doc = fuzz_report_doc(result, config)
        if args.out:
            with open(args.out, "w") as fh:
                write_json_report(doc, fh)
        else:
            write_json_report(doc, sys.stdout)
    summary = result.summary
    print(
        f"fuzz: {summary['bodies']} bodies, {summary['reports']} reports, "
        f"{summary['violations']} violations",
        file=sys.stderr,
    )
    return 0 if result.passed else 1


def _cmd_tau_curve(args):
    body = parse_body(args.body)
    rule = _resolve_rule(args, body.n)
    taus = _floats(args.tau) if args.tau else [i / 10 - 1.0 for i in range(21)]
    curve = tau_curve(body, args.p, taus, rule)
    if args.format == "json":
        _emit({"p": args.p, "n": body.n,
               "curve": [{"tau": t, "phi_p_tau": float(v)} for t, v in curve],
               "rule": _rule_info(rule)}, args)
    else:
        fh = open(args.out, "w") if args.out else sys.stdout
        try:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["tau", "phi_p_tau"])
            for t, v in curve:
                writer.writerow([repr(t), repr(float(v))])
        finally:
            if args.out:
                fh.close()
    return 0


# ---------------------------------------------------------------------------
# argument plumbing


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="affinecap",
        description="Verify affine isocapacitary and isoperimetric "
                    "inequality chains on convex and star bodies.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write output to this path instead of stdout")
        return p

    p = add("constants", _cmd_constants, help="ball constants for (n, p, tau)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--tau", type=float, default=0.0)

    p = add("body-info", _cmd_body_info, help="summary of a body JSON file")
    p.add_argument("--body", required=True)
    p.add_argument("--rule", help="quadrature spec kind:size")
    p.add_argument("--seed", type=int)

    for name, func in (("phi", _cmd_phi), ("cap-bounds", _cmd_cap_bounds)):
        p = add(name, func,
                help="integral affine surface area" if name == "phi"
                else "certified capacity bounds")
        p.add_argument("--body", required=True)
        p.add_argument("--p", type=float, required=True)
        p.add_argument("--tau", type=float, default=0.0)
        p.add_argument("--rule", help="quadrature spec kind:size")
        p.add_argument("--seed", type=int)

    p = add("sp", _cmd_sp, help="p-surface area")
    p.add_argument("--body", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--rule", help="quadrature spec kind:size")
    p.add_argument("--seed", type=int)

    p = add("profile-opt", _cmd_profile_opt, help="radial profile optimizer")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--m", type=int, default=2000)
    p.add_argument("--s-max", type=float, default=200.0)

    p = add("verify-chain", _cmd_verify_chain,
            help="check the normalized inequality chain for one body")
    p.add_argument("--body", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--tau", type=float, default=0.0)
    p.add_argument("--rule", help="quadrature spec kind:size")
    p.add_argument("--seed", type=int)
    p.add_argument("--tol-mult", type=float, default=5.0)

    p = add("fuzz", _cmd_fuzz, help="seeded random-body chain fuzzing")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--p", help="comma-separated exponent list")
    p.add_argument("--tau", help="comma-separated asymmetry list")
    p.add_argument("--rule", help="quadrature spec kind:size")
    p.add_argument("--cond-max", type=float, default=20.0)
    p.add_argument("--tol-mult", type=float, default=5.0)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = add("tau-curve", _cmd_tau_curve, help="asymmetry curve of the "
            "integral affine surface area")
    p.add_argument("--body", required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--tau", help="comma-separated asymmetry list")
    p.add_argument("--rule", help="quadrature spec kind:size")
    p.add_argument("--seed", type=int)
    p.add_argument("--format", choices=("json", "csv"), default="csv")

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except SchemaError as exc:
        print(f"error: invalid body: {exc}", file=sys.stderr)
        return 2
    except (DomainError, UnsupportedQueryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InequalityViolationError, IntegrationError, ConvergenceError) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
