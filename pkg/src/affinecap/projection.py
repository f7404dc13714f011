"""The asymmetric L_p projection functional and the p-integral affine surface
area built from it.

For a body K and outer direction theta the projection function is the
boundary integral of w_tau(theta . nu)^p |x . nu|^(1-p); its p-th root is the
support function of the associated projection body.  Splitting the weight
into one-sided parts lets a single boundary pass serve every asymmetry
value, which is what the kernel backends compute.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .bodies import Ball, Body, Ellipsoid, PolytopeF, StarBody, boundary_data
from .errors import DomainError
from .quadrature import SphereRule, integrate_values
from .special import cosine_moment, unit_ball_volume

__all__ = [
    "projection_parts_grid",
    "projection_function",
    "projection_support",
    "integral_affine_area",
    "tau_curve",
]

_POSITIVITY_GUARD = 1e-14


def _combine(iplus, iminus, tau):
    return 0.5 * (1.0 + tau) * iplus + 0.5 * (1.0 - tau) * iminus


def projection_parts_grid(body: Body, thetas: np.ndarray, p: float,
                          rule: SphereRule | None = None):
    """One-sided projection integrals (iplus, iminus) over a theta grid.

    Exact facet sums for polytopes, closed form for centered balls, boundary
    quadrature (over ``rule``) for ellipsoids and star bodies.  The value for
    asymmetry tau is (1+tau)/2 * iplus + (1-tau)/2 * iminus.
    """
    if p < 1:
        raise DomainError(f"exponent must be >= 1, got {p}")
    thetas = np.ascontiguousarray(thetas, dtype=np.float64)
    n = body.n
    if isinstance(body, Ball) and body.centered:
        val = body.radius ** (n - p) * n * unit_ball_volume(n) * cosine_moment(n, p)
        const = np.full(thetas.shape[0], val)
        return const, const.copy()
    if isinstance(body, PolytopeF):
        body.require_origin_interior()
        w = body.offsets ** (1.0 - p) * body.areas
        return kernels.projection_parts(thetas, body.normals, w, p)
    if isinstance(body, (Ellipsoid, StarBody, Ball)):
        if rule is None or rule.n != n:
            raise DomainError("star-quadrature path needs a rule of matching dimension")
        rho, nu, cos = boundary_data(body, rule.nodes)
        # surface measure element rho^(n-p) (u.nu)^(-p) relative to sigma
        w = rho ** (n - p) * cos ** (-p) * (n * unit_ball_volume(n) * rule.weights)
        return kernels.projection_parts(thetas, nu, w, p)
    raise DomainError(f"unknown body type {type(body).__name__}")


def projection_function(body: Body, theta, p: float, tau: float,
                        rule: SphereRule | None = None) -> float:
    """The p-th power of the projection body support function at theta."""
    theta = np.asarray(theta, dtype=np.float64)
    iplus, iminus = projection_parts_grid(body, theta[None, :], p, rule)
    return float(_combine(iplus, iminus, tau)[0])


def projection_support(body: Body, theta, p: float, tau: float,
                       rule: SphereRule | None = None) -> float:
    """Support function of the projection body at theta."""
    return projection_function(body, theta, p, tau, rule) ** (1.0 / p)


def _phi_from_parts(iplus, iminus, tau, p, n, rule):
    v = _combine(iplus, iminus, tau)
    low = v < _POSITIVITY_GUARD
    if low.any():
        i = int(np.argmax(low))
        raise DomainError(
            f"projection function not positive ({v[i]}) at direction "
            f"{rule.nodes[i]}; the body data is inconsistent"
        )
    return integrate_values(rule, v ** (-n / p)) ** (-p / n)


def integral_affine_area(body: Body, p: float, tau: float,
                         rule: SphereRule) -> float:
    """The p-integral affine surface area.

    The outer integral always runs over ``rule``; the boundary side is exact
    for polytopes and centered balls, and shares the same rule's nodes for
    ellipsoids and star bodies.
    """
    if not -1.0 <= tau <= 1.0:
        raise DomainError(f"asymmetry must lie in [-1, 1], got {tau}")
    if rule is None or rule.n != body.n:
        raise DomainError("integral affine area needs a rule of matching dimension")
    if isinstance(body, Ball) and body.centered:
        n = body.n
        return body.radius ** (n - p) * n * unit_ball_volume(n) * cosine_moment(n, p)
    iplus, iminus = projection_parts_grid(body, rule.nodes, p, rule)
    return _phi_from_parts(iplus, iminus, tau, p, body.n, rule)


def tau_curve(body: Body, p: float, taus, rule: SphereRule):
    """(tau, integral affine area) pairs sharing one boundary pass."""
    taus = [float(t) for t in taus]
    if isinstance(body, Ball) and body.centered:
        val = integral_affine_area(body, p, 0.0, rule)
        return [(t, val) for t in taus]
    iplus, iminus = projection_parts_grid(body, rule.nodes, p, rule)
    return [
        (t, _phi_from_parts(iplus, iminus, t, p, body.n, rule)) for t in taus
    ]
