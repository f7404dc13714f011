"""Inequality-chain verification and the seeded fuzzing harness.

Every functional in the package slots into one ordered chain once it is
normalized by its value on the unit ball and raised to the homogenizing
power: the volume term can never exceed the capacity lower bound term, which
can never exceed the integral-affine-area terms, which are dominated by the
p-surface-area term.  ``verify_chain`` evaluates all terms for one body and
reports the slack of every adjacent link against a tolerance derived from
the quadrature rule's calibrated error; ``run_fuzz`` drives that check over
a seeded corpus of random bodies and aggregates the worst slacks.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass

import numpy as np

from .bodies import (
    Ball,
    Body,
    Ellipsoid,
    PolytopeF,
    StarBody,
    cross_polytope,
    cube,
    linear_image,
    simplex,
    sp_surface_area,
    volume,
)
from .errors import DomainError
from .projection import tau_curve
from .quadrature import SphereRule, build_rule, calibrate_rule, symmetrize_rule
from .special import cosine_moment, profile_constant, unit_ball_volume

__all__ = [
    "ChainLink",
    "ChainReport",
    "FuzzConfig",
    "FuzzResult",
    "verify_chain",
    "chain_reports",
    "generate_body",
    "run_fuzz",
    "fuzz_report_doc",
    "write_json_report",
    "write_csv_report",
]

_EXACT_TOL = 1e-10

# ordered chain of normalized terms; each name must not exceed its successor
_CHAIN_ORDER = [
    "volume",
    "cap_lower",
    "cap_upper_phi",
    "phi_tau",
    "phi_0",
    "sp",
]
# consistency link outside the main ordering: the affine upper bound should
# not exceed the variational-route upper bound by more than quadrature noise
# whenever the first chain inequality holds
_EXTRA_LINK = ("cap_upper_phi", "cap_upper_var")


@dataclass(frozen=True)
class ChainLink:
    """One verified inequality left <= right with its slack and tolerance."""

    name: str
    left: float
    right: float
    slack: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class ChainReport:
    """All chain terms for one (body, p, tau), normalized to the unit ball.

    Terms are ratios to the ball value raised to 1/(n-p) (1/n for the
    volume), so every equality case reads as 1.0 and the chain is a single
    nondecreasing sequence.
    """

    body_id: str
    n: int
    p: float
    tau: float
    terms: dict
    raw: dict
    links: list

    @property
    def passed(self) -> bool:
        return all(link.passed for link in self.links)

    @property
    def min_slack(self) -> float:
        return min(link.slack for link in self.links)


@dataclass(frozen=True)
class FuzzConfig:
    """Deterministic fuzzing campaign description."""

    seed: int
    count: int = 20
    n: int = 3
    p_list: tuple = (1.2, 1.5, 2.0, 2.5)
    tau_list: tuple = (0.0, 0.3, -0.3, 0.7, -0.7, 1.0, -1.0)
    kinds: tuple = (
        "gl-cube",
        "gl-crosspolytope",
        "gl-simplex",
        "ellipsoid",
        "qball",
        "perturbed-ball",
    )
    cond_max: float = 20.0
    rule_kind: str = ""
    rule_size: int = 0
    tol_mult: float = 5.0

    def __post_init__(self):
        if self.count < 1:
            raise DomainError(f"fuzz count must be >= 1, got {self.count}")
        if not self.p_list or not self.tau_list or not self.kinds:
            raise DomainError("p, tau and body-kind lists must be non-empty")
        if any(not 1 <= p < self.n for p in self.p_list):
            raise DomainError(
                f"every exponent must satisfy 1 <= p < n={self.n}, got {self.p_list}"
            )
        if any(not -1 <= t <= 1 for t in self.tau_list):
            raise DomainError(f"asymmetry grid must lie in [-1, 1], got {self.tau_list}")


@dataclass(frozen=True)
class FuzzResult:
    reports: list
    summary: dict
    rule: SphereRule

    @property
    def passed(self) -> bool:
        return self.summary["violations"] == 0


# ---------------------------------------------------------------------------
# chain evaluation


def _exactness(body: Body):
    """Which functionals avoid sphere quadrature entirely for this body."""
    ball = isinstance(body, Ball) and body.centered
    polytope = isinstance(body, PolytopeF)
    return {
        "volume": ball or polytope or isinstance(body, Ellipsoid),
        "sp": ball or polytope,
        "phi": ball,
    }


def _term_values(body: Body, p: float, grid, rule: SphereRule):
    """Normalized chain terms over a tau grid for one rule.

    Returns (per-tau terms dict keyed by tau, per-tau raw dict).  The
    boundary reduction is performed once; each tau is a fixed linear
    combination of the two one-sided parts, so a whole grid costs barely
    more than a single value.
    """
    n = body.n
    phi_map = dict(tau_curve(body, p, grid, rule))
    vol = float(volume(body, rule) if isinstance(body, StarBody) else volume(body))
    sp = float(sp_surface_area(body, p, rule))

    omega = unit_ball_volume(n)
    phi_ball = n * omega * cosine_moment(n, p)
    cap_ball = profile_constant(n, p) * phi_ball
    ex = 1.0 / (n - p)

    terms, raws = {}, {}
    phi_0 = float(phi_map[0.0])
    cap_up_var = cosine_moment(n, p) * profile_constant(n, p) * sp
    cap_lo = cap_ball * (vol / omega) ** ((n - p) / n)
    for tau in grid:
        phi_t = float(phi_map[tau])
        cap_up_phi = profile_constant(n, p) * phi_t
        raws[tau] = {
            "volume": vol,
            "phi_tau": phi_t,
            "phi_0": phi_0,
            "sp": sp,
            "cap_lower": cap_lo,
            "cap_upper_phi": cap_up_phi,
            "cap_upper_var": cap_up_var,
        }
        terms[tau] = {
            "volume": (vol / omega) ** (1.0 / n),
            "cap_lower": (cap_lo / cap_ball) ** ex,
            "cap_upper_phi": (cap_up_phi / cap_ball) ** ex,
            "cap_upper_var": (cap_up_var / cap_ball) ** ex,
            "phi_tau": (phi_t / phi_ball) ** ex,
            "phi_0": (phi_0 / phi_ball) ** ex,
            "sp": (sp / sp_ball_term(n)) ** ex,
        }
    return terms, raws


def sp_ball_term(n: int) -> float:
    return n * unit_ball_volume(n)


def chain_reports(body: Body, p: float, taus, rule: SphereRule,
                  tol_mult: float = 5.0, body_id: str = "",
                  coarse_rule: SphereRule | None = None) -> list:
    """Chain reports for one body and exponent across an asymmetry grid.

    Tolerances for quadrature-backed terms come from the rule's calibrated
    error estimate; when ``coarse_rule`` is given, every quadrature-backed
    term is additionally re-evaluated on it and the observed two-scale
    difference widens the budget, so rough bodies (large anisotropy) get an
    honest per-body error figure instead of the generic zonal calibration.
    """
    n = body.n
    if not 1 <= p < n:
        raise DomainError(f"need 1 <= p < n, got p={p}, n={n}")
    taus = [float(t) for t in taus]
    grid = sorted(set(taus) | {0.0})

    terms_by_tau, raw_by_tau = _term_values(body, p, grid, rule)
    exact = _exactness(body)
    term_exact = {
        "volume": exact["volume"],
        "cap_lower": exact["volume"],
        "cap_upper_phi": exact["phi"],
        "cap_upper_var": exact["sp"],
        "phi_tau": exact["phi"],
        "phi_0": exact["phi"],
        "sp": exact["sp"],
    }

    all_exact = all(term_exact.values())
    if coarse_rule is not None and not all_exact:
        coarse_by_tau, _ = _term_values(body, p, grid, coarse_rule)
    else:
        coarse_by_tau = None

    reports = []
    pairs = list(zip(_CHAIN_ORDER[:-1], _CHAIN_ORDER[1:])) + [_EXTRA_LINK]
    for tau in taus:
        terms = terms_by_tau[tau]
        err = {}
        for name, val in terms.items():
            if term_exact[name]:
                err[name] = 0.0
            elif coarse_by_tau is not None:
                err[name] = max(rule.error_estimate,
                                abs(val - coarse_by_tau[tau][name]))
            else:
                err[name] = rule.error_estimate
        links = []
        for lo_name, hi_name in pairs:
            left = terms[lo_name]
            right = terms[hi_name]
            base = max(err[lo_name], err[hi_name])
            base = _EXACT_TOL if base == 0.0 else tol_mult * base
            tol = base * max(1.0, abs(left), abs(right))
            slack = right - left
            links.append(ChainLink(
                name=f"{lo_name}<={hi_name}",
                left=left,
                right=right,
                slack=slack,
                tolerance=tol,
                passed=slack >= -tol,
            ))
        reports.append(ChainReport(
            body_id=body_id, n=n, p=p, tau=tau,
            terms=terms, raw=raw_by_tau[tau], links=links,
        ))
    return reports


def verify_chain(body: Body, p: float, tau: float, rule: SphereRule,
                 tol_mult: float = 5.0, body_id: str = "") -> ChainReport:
    """Evaluate and check the full normalized inequality chain for one body."""
    return chain_reports(body, p, [tau], rule, tol_mult, body_id)[0]


# ---------------------------------------------------------------------------
# body generation


def _random_matrix(n: int, rng: np.random.Generator, cond_max: float) -> np.ndarray:
    for _ in range(1000):
        t = rng.standard_normal((n, n))
        if np.linalg.cond(t) <= cond_max:
            return t
    raise DomainError(
        f"could not draw a matrix with condition number <= {cond_max} in 1000 tries"
    )


def generate_body(kind: str, n: int, rng: np.random.Generator,
                  cond_max: float = 20.0) -> Body:
    """Draw one deterministic random body of the requested kind.

    Polytope kinds are GL(n) images of the canonical facet lists, so every
    facet invariant holds exactly by construction.  The q-ball exponent is
    kept away from the kink-heavy extremes so quadrature stays honest.
    """
    if kind == "gl-cube":
        return linear_image(cube(n), _random_matrix(n, rng, cond_max))
    if kind == "gl-crosspolytope":
        return linear_image(cross_polytope(n), _random_matrix(n, rng, cond_max))
    if kind == "gl-simplex":
        return linear_image(simplex(n), _random_matrix(n, rng, cond_max))
    if kind == "ellipsoid":
        return Ellipsoid(_random_matrix(n, rng, cond_max))
    if kind == "qball":
        return StarBody(n=n, family="qball", q=float(rng.uniform(1.5, 4.0)))
    if kind == "perturbed-ball":
        return StarBody(
            n=n,
            family="perturbed",
            eps=float(rng.uniform(-0.3, 0.3)),
            axis=int(rng.integers(n)),
        )
    raise DomainError(f"unknown body kind {kind!r}")


def default_rule(n: int, seed=None, kind: str = "", size: int = 0) -> SphereRule:
    """Build, calibrate and antipodally symmetrize the verification rule."""
    if not kind:
        if n == 2:
            kind, size = "circle", 1024
        elif n == 3:
            kind, size = "fibonacci", 2000
        else:
            kind, size = "monte-carlo", 20000
    if kind == "monte-carlo" and seed is None:
        raise DomainError("monte-carlo rules require a seed")
    rule = calibrate_rule(build_rule(n, kind, size,
                                     seed if kind == "monte-carlo" else None))
    return symmetrize_rule(rule)


def _coarse_companion(rule: SphereRule) -> SphereRule:
    """Half-resolution sibling of a verification rule for two-scale error
    estimation."""
    kind = rule.kind.removesuffix("+mirror")
    base = rule.size // 2 if rule.kind.endswith("+mirror") else rule.size
    half = max(2, (base // 2) // 2 * 2)
    rule = calibrate_rule(build_rule(rule.n, kind, half, rule.seed))
    return symmetrize_rule(rule)


# ---------------------------------------------------------------------------
# fuzzing harness


def run_fuzz(config: FuzzConfig) -> FuzzResult:
    """Run the chain verifier over a seeded corpus of random bodies.

    Body #0 is always the unit ball, whose chain must be all equalities; it
    guards the normalization itself.  The campaign is deterministic for a
    fixed config: same seed, same bodies, same reports.
    """
    rule = default_rule(config.n, seed=config.seed,
                        kind=config.rule_kind, size=config.rule_size)
    coarse = _coarse_companion(rule)
    rng = np.random.default_rng(config.seed)

    cases = [("ball", Ball(config.n, 1.0))]
    for i in range(config.count):
        kind = config.kinds[i % len(config.kinds)]
        body = generate_body(kind, config.n, rng, config.cond_max)
        cases.append((f"{kind}-{i:03d}", body))

    reports = []
    for body_id, body in cases:
        for p in config.p_list:
            reports.extend(chain_reports(
                body, p, config.tau_list, rule, config.tol_mult, body_id,
                coarse_rule=coarse,
            ))

    min_slack = {}
    violations = 0
    for rep in reports:
        for link in rep.links:
            cur = min_slack.get(link.name)
            if cur is None or link.slack < cur:
                min_slack[link.name] = link.slack
            if not link.passed:
                violations += 1
    summary = {
        "bodies": len(cases),
        "reports": len(reports),
        "violations": violations,
        "min_slack": min_slack,
    }
    return FuzzResult(reports=reports, summary=summary, rule=rule)


# ---------------------------------------------------------------------------
# report emission


def _report_dict(rep: ChainReport) -> dict:
    return {
        "body_id": rep.body_id,
        "n": rep.n,
        "p": rep.p,
        "tau": rep.tau,
        "terms": rep.terms,
        "raw": rep.raw,
        "links": [
            {
                "name": link.name,
                "left": link.left,
                "right": link.right,
                "slack": link.slack,
                "tolerance": link.tolerance,
                "passed": link.passed,
            }
            for link in rep.links
        ],
        "passed": rep.passed,
    }


def fuzz_report_doc(result: FuzzResult, config: FuzzConfig) -> dict:
    """Assemble the full JSON report document with a stable key order."""
    rule = result.rule
    return {
        "version": 1,
        "seed": config.seed,
        "rule": {
            "kind": rule.kind,
            "size": rule.size,
            "n": rule.n,
            "seed": rule.seed,
            "error_estimate": rule.error_estimate,
        },
        "config": {
            "count": config.count,
            "n": config.n,
            "p_list": list(config.p_list),
            "tau_list": list(config.tau_list),
            "kinds": list(config.kinds),
            "cond_max": config.cond_max,
            "tol_mult": config.tol_mult,
        },
        "bodies": [_report_dict(rep) for rep in result.reports],
        "summary": result.summary,
    }


def write_json_report(doc: dict, fh) -> None:
    json.dump(doc, fh, indent=2)
    fh.write("\n")


def write_csv_report(reports, fh) -> None:
    """Flat table: one row per (body, p, tau, link)."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(
        ["body_id", "n", "p", "tau", "link", "left", "right",
         "slack", "tolerance", "passed"]
    )
    for rep in reports:
        for link in rep.links:
            writer.writerow([
                rep.body_id, rep.n, rep.p, rep.tau, link.name,
                repr(link.left), repr(link.right), repr(link.slack),
                repr(link.tolerance), link.passed,
            ])
