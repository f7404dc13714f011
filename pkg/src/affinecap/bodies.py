"""Convex and star body representations with exact evaluation.

Four families are supported: balls, ellipsoids (linear images of the ball),
facet-list polytopes, and analytic star bodies (q-balls and low-degree radial
perturbations of the ball).  Everything a downstream functional needs reduces
to support/radial values, facet sums, or boundary samples (rho, normal,
cosine) on quadrature nodes.

Bodies are immutable values; all evaluation is pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Union

import numpy as np

from .errors import DomainError, SchemaError, UnsupportedQueryError
from .special import unit_ball_volume

__all__ = [
    "Ball",
    "Ellipsoid",
    "PolytopeF",
    "StarBody",
    "BoundaryPoint",
    "Body",
    "support",
    "radial",
    "polar_check",
    "volume",
    "sp_surface_area",
    "linear_image",
    "translate",
    "normal_at",
    "boundary_data",
    "cube",
    "cross_polytope",
    "simplex",
    "body_from_json",
    "body_to_json",
    "parse_body",
]

_UNIT_TOL = 1e-12
_CLOSURE_TOL = 1e-10


def _vec(x, n=None):
    a = np.asarray(x, dtype=np.float64)
    if n is not None and a.shape != (n,):
        raise DomainError(f"expected a vector of length {n}, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class Ball:
    n: int
    radius: float
    center: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"dimension must be >= 1, got {self.n}")
        if self.radius <= 0:
            raise DomainError(f"radius must be positive, got {self.radius}")
        if self.center is not None:
            object.__setattr__(self, "center", _vec(self.center, self.n))

    @property
    def centered(self) -> bool:
        return self.center is None or not np.any(self.center)


@dataclass(frozen=True)
class Ellipsoid:
    """Linear image T B_n of the unit ball, optionally translated."""

    matrix: np.ndarray
    center: Optional[np.ndarray] = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError(f"matrix must be square, got shape {m.shape}")
        if abs(np.linalg.det(m)) == 0.0:
            raise DomainError("ellipsoid matrix is singular")
        object.__setattr__(self, "matrix", m)
        if self.center is not None:
            object.__setattr__(self, "center", _vec(self.center, m.shape[0]))

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @property
    def centered(self) -> bool:
        return self.center is None or not np.any(self.center)


@dataclass(frozen=True)
class PolytopeF:
    """Facet representation: unit normals, offsets, facet areas.

    The facet data is exactly the discrete surface area measure, so every
    boundary integral in the package is an exact finite sum.  Offsets may go
    non-positive after a translation; operations that need the origin in the
    interior check that at the point of use.
    """

    normals: np.ndarray  # (m, n)
    offsets: np.ndarray  # (m,)
    areas: np.ndarray  # (m,)

    def __post_init__(self):
        nu = np.asarray(self.normals, dtype=np.float64)
        h = np.asarray(self.offsets, dtype=np.float64)
        a = np.asarray(self.areas, dtype=np.float64)
        if nu.ndim != 2 or h.shape != (nu.shape[0],) or a.shape != (nu.shape[0],):
            raise DomainError("inconsistent facet array shapes")
        norms = np.linalg.norm(nu, axis=1)
        if np.any(np.abs(norms - 1.0) > 1e-9):
            i = int(np.argmax(np.abs(norms - 1.0)))
            raise DomainError(f"facet normal {i} is not unit (|nu|={norms[i]!r})")
        nu = nu / norms[:, None]  # renormalize sub-1e-9 defects
        if np.any(a <= 0):
            raise DomainError("facet areas must be positive")
        defect = np.linalg.norm(nu.T @ a)
        if defect > _CLOSURE_TOL * a.sum():
            raise DomainError(
                f"facet data violates closedness: |sum a_i nu_i| = {defect:.3e}"
            )
        for arr in (nu, h, a):
            arr.setflags(write=False)
        object.__setattr__(self, "normals", np.ascontiguousarray(nu))
        object.__setattr__(self, "offsets", h)
        object.__setattr__(self, "areas", a)

    @property
    def n(self) -> int:
        return self.normals.shape[1]

    def require_origin_interior(self):
        if np.any(self.offsets <= 0):
            i = int(np.argmin(self.offsets))
            raise DomainError(
                f"origin is not interior: facet {i} has offset {self.offsets[i]}"
            )


@dataclass(frozen=True)
class StarBody:
    """Analytic radial family.

    family 'qball':     rho(u) = ||u||_q^{-1},  q in [1, inf]
    family 'perturbed': rho(u) = 1 + eps * P2(u . e_axis), |eps| <= 0.3,
                        with P2 the degree-2 Legendre polynomial.
    """

    n: int
    family: str
    q: Optional[float] = None
    eps: Optional[float] = None
    axis: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"dimension must be >= 2, got {self.n}")
        if self.family == "qball":
            if self.q is None or not (self.q >= 1.0):
                raise DomainError(f"qball needs q in [1, inf], got {self.q}")
        elif self.family == "perturbed":
            if self.eps is None or abs(self.eps) > 0.3:
                raise DomainError(f"perturbed ball needs |eps| <= 0.3, got {self.eps}")
            if not 0 <= self.axis < self.n:
                raise DomainError(f"axis {self.axis} out of range for n={self.n}")
        else:
            raise DomainError(f"unknown star family {self.family!r}")


@dataclass(frozen=True)
class BoundaryPoint:
    direction: np.ndarray
    point: np.ndarray
    normal: np.ndarray
    cosine: float


Body = Union[Ball, Ellipsoid, PolytopeF, StarBody]


def dimension(body: Body) -> int:
    return body.n


# ---------------------------------------------------------------------------
# support / radial / polar


def support(body: Body, u) -> float:
    """Support function h(u) = max over the body of y . u."""
    u = _vec(u, body.n)
    if isinstance(body, Ball):
        base = 0.0 if body.center is None else float(body.center @ u)
        return base + body.radius
    if isinstance(body, Ellipsoid):
        base = 0.0 if body.center is None else float(body.center @ u)
        return base + float(np.linalg.norm(body.matrix.T @ u))
    if isinstance(body, PolytopeF):
        dots = body.normals @ u
        hits = np.flatnonzero(dots > 1.0 - 1e-9)
        if hits.size:
            return float(body.offsets[hits[0]])
        raise UnsupportedQueryError(
            "facet polytopes answer support queries only at facet normals"
        )
    raise UnsupportedQueryError(f"support not defined for {type(body).__name__}")


def _ellipsoid_radial(matrix, center, u):
    tinv = np.linalg.inv(matrix)
    a = tinv @ u
    if center is None or not np.any(center):
        return 1.0 / float(np.linalg.norm(a))
    b = tinv @ center
    bb = float(b @ b)
    if bb >= 1.0:
        raise DomainError("origin is not interior to the ellipsoid")
    ab = float(a @ b)
    aa = float(a @ a)
    return (ab + math.sqrt(ab * ab + aa * (1.0 - bb))) / aa


def radial(body: Body, u) -> float:
    """Radial function rho(u): the largest t with t*u inside the body."""
    u = _vec(u, body.n)
    if isinstance(body, Ball):
        if body.centered:
            return body.radius
        c = body.center
        uc = float(u @ c)
        disc = uc * uc - float(c @ c) + body.radius**2
        if disc <= 0:
            raise DomainError("origin is not interior to the ball")
        return uc + math.sqrt(disc)
    if isinstance(body, Ellipsoid):
        return _ellipsoid_radial(body.matrix, body.center, u)
    if isinstance(body, PolytopeF):
        body.require_origin_interior()
        dots = body.normals @ u
        pos = dots > 0
        if not pos.any():
            raise DomainError("direction escapes the polytope (unbounded ray)")
        return float(np.min(body.offsets[pos] / dots[pos]))
    if isinstance(body, StarBody):
        return float(star_radial(body, u[None, :])[0])
    raise DomainError(f"unknown body type {type(body).__name__}")


def polar_check(body: Body, u) -> tuple[float, float]:
    """Evaluate both sides of rho_polar(u) = 1 / h(u) for centered bodies.

    The polar of T B_n is T^{-t} B_n; the returned pair must agree to 1e-12.
    """
    u = _vec(u, body.n)
    if isinstance(body, Ball):
        if not body.centered:
            raise DomainError("polar comparison needs an origin-centered ball")
        return 1.0 / body.radius, 1.0 / support(body, u)
    if isinstance(body, Ellipsoid):
        if not body.centered:
            raise DomainError("polar comparison needs an origin-centered ellipsoid")
        polar = Ellipsoid(np.linalg.inv(body.matrix).T)
        return radial(polar, u), 1.0 / support(body, u)
    raise UnsupportedQueryError("polar comparison is defined for balls and ellipsoids")


# ---------------------------------------------------------------------------
# star-body boundary sampling (vectorized)


def star_radial(body: Body, nodes: np.ndarray) -> np.ndarray:
    """Radial function on an array of unit directions (rows)."""
    nodes = np.asarray(nodes, dtype=np.float64)
    if isinstance(body, Ball):
        if body.centered:
            return np.full(nodes.shape[0], body.radius)
        uc = nodes @ body.center
        disc = uc * uc - float(body.center @ body.center) + body.radius**2
        if np.any(disc <= 0):
            raise DomainError("origin is not interior to the ball")
        return uc + np.sqrt(disc)
    if isinstance(body, Ellipsoid):
        tinv = np.linalg.inv(body.matrix)
        a = nodes @ tinv.T
        aa = np.einsum("ij,ij->i", a, a)
        if body.centered:
            return 1.0 / np.sqrt(aa)
        b = tinv @ body.center
        bb = float(b @ b)
        if bb >= 1.0:
            raise DomainError("origin is not interior to the ellipsoid")
        ab = a @ b
        return (ab + np.sqrt(ab * ab + aa * (1.0 - bb))) / aa
    if isinstance(body, StarBody):
        if body.family == "qball":
            q = body.q
            if math.isinf(q):
                nrm = np.max(np.abs(nodes), axis=1)
            elif q == 1.0:
                nrm = np.sum(np.abs(nodes), axis=1)
            elif q == 2.0:
                nrm = np.linalg.norm(nodes, axis=1)
            else:
                nrm = np.sum(np.abs(nodes) ** q, axis=1) ** (1.0 / q)
            return 1.0 / nrm
        t = nodes[:, body.axis]
        return 1.0 + body.eps * 0.5 * (3.0 * t * t - 1.0)
    if isinstance(body, PolytopeF):
        body.require_origin_interior()
        dots = nodes @ body.normals.T
        with np.errstate(divide="ignore"):
            ratios = np.where(dots > 0, body.offsets / np.maximum(dots, 1e-300), np.inf)
        return np.min(ratios, axis=1)
    raise DomainError(f"unknown body type {type(body).__name__}")


def _star_normals(body: Body, nodes: np.ndarray) -> np.ndarray:
    """Unnormalized outward normal directions at rho(u)*u for each row u."""
    if isinstance(body, Ball):
        if body.centered:
            return nodes.copy()
        rho = star_radial(body, nodes)
        return rho[:, None] * nodes - body.center
    if isinstance(body, Ellipsoid):
        m = np.linalg.inv(body.matrix @ body.matrix.T)
        if body.centered:
            return nodes @ m.T
        rho = star_radial(body, nodes)
        return (rho[:, None] * nodes - body.center) @ m.T
    if isinstance(body, StarBody):
        if body.family == "qball":
            q = body.q
            if math.isinf(q):
                # subgradient choice: the (first) maximal coordinate
                z = np.zeros_like(nodes)
                idx = np.argmax(np.abs(nodes), axis=1)
                rows = np.arange(nodes.shape[0])
                z[rows, idx] = np.sign(nodes[rows, idx])
                return z
            if q == 1.0:
                return np.sign(nodes)
            return np.sign(nodes) * np.abs(nodes) ** (q - 1.0)
        # perturbed ball: normal direction rho(u) u - grad_S rho(u)
        t = nodes[:, body.axis]
        rho = 1.0 + body.eps * 0.5 * (3.0 * t * t - 1.0)
        grad_t = body.eps * 3.0 * t  # d/dt of the radial profile
        tangent = -grad_t[:, None] * nodes * t[:, None]
        tangent[:, body.axis] += grad_t
        return rho[:, None] * nodes - tangent
    raise DomainError(f"unknown body type {type(body).__name__}")


def boundary_data(body: Body, nodes: np.ndarray):
    """Sample the boundary over unit directions: (rho, unit normals, u . nu).

    The cosines are the Jacobian factor linking spherical and boundary
    integrals; they must be positive for the supported families.
    """
    nodes = np.ascontiguousarray(nodes, dtype=np.float64)
    rho = star_radial(body, nodes)
    raw = _star_normals(body, nodes)
    norms = np.linalg.norm(raw, axis=1)
    bad = norms <= 0
    if bad.any():
        # measure-zero kink directions (q=1 / q=inf ties): nudge and retry
        jit = nodes[bad] + 1e-9
        jit /= np.linalg.norm(jit, axis=1, keepdims=True)
        raw[bad] = _star_normals(body, jit)
        norms = np.linalg.norm(raw, axis=1)
    nu = raw / norms[:, None]
    cos = np.einsum("ij,ij->i", nodes, nu)
    if np.any(cos <= 0):
        i = int(np.argmin(cos))
        raise DomainError(
            f"non-positive boundary cosine {cos[i]} at direction {nodes[i]}"
        )
    return rho, nu, cos


def normal_at(body: Body, u) -> BoundaryPoint:
    """Boundary point and outward unit normal above direction u."""
    u = _vec(u, body.n)
    u = u / np.linalg.norm(u)
    rho, nu, cos = boundary_data(body, u[None, :])
    return BoundaryPoint(
        direction=u, point=rho[0] * u, normal=nu[0], cosine=float(cos[0])
    )


# ---------------------------------------------------------------------------
# volume and p-surface area


def volume(body: Body, rule=None) -> float:
    """Exact volume for balls/ellipsoids/polytopes; radial-power quadrature
    for analytic star bodies (pass a SphereRule of matching dimension)."""
    if isinstance(body, Ball):
        return unit_ball_volume(body.n) * body.radius**body.n
    if isinstance(body, Ellipsoid):
        return abs(np.linalg.det(body.matrix)) * unit_ball_volume(body.n)
    if isinstance(body, PolytopeF):
        return float(body.offsets @ body.areas) / body.n
    if isinstance(body, StarBody):
        rule = _require_rule(body, rule)
        rho = star_radial(body, rule.nodes)
        mean = float(rule.weights @ rho**body.n)
        return unit_ball_volume(body.n) * mean
    raise DomainError(f"unknown body type {type(body).__name__}")


def sp_surface_area(body: Body, p: float, rule=None) -> float:
    """Boundary integral of |x . nu|^(1-p).

    Facet sum for polytopes, closed form for balls, radial quadrature for
    ellipsoids and star bodies.
    """
    if p < 1:
        raise DomainError(f"exponent must be >= 1, got {p}")
    if isinstance(body, Ball) and body.centered:
        n = body.n
        return n * unit_ball_volume(n) * body.radius ** (n - p)
    if isinstance(body, PolytopeF):
        body.require_origin_interior()
        return float((body.offsets ** (1.0 - p)) @ body.areas)
    if isinstance(body, (Ellipsoid, StarBody, Ball)):
        rule = _require_rule(body, rule)
        rho, _, cos = boundary_data(body, rule.nodes)
        n = body.n
        vals = rho ** (n - p) * cos ** (-p)
        return n * unit_ball_volume(n) * float(rule.weights @ vals)
    raise DomainError(f"unknown body type {type(body).__name__}")


def _require_rule(body, rule):
    if rule is None:
        from .quadrature import build_rule

        n = body.n
        if n == 2:
            return build_rule(2, "circle", 128)
        if n == 3:
            return build_rule(3, "fibonacci", 10_000)
        raise DomainError(
            f"quadrature over S^{n - 1} needs an explicit (seeded) rule"
        )
    if rule.n != body.n:
        raise DomainError(f"rule dimension {rule.n} does not match body {body.n}")
    return rule


# ---------------------------------------------------------------------------
# transforms


def linear_image(body: Body, T) -> Body:
    """Image of the body under an invertible linear map.

    Facet polytopes transform exactly (normals, offsets and areas), which
    preserves the closedness invariant to rounding.
    """
    T = np.asarray(T, dtype=np.float64)
    det = np.linalg.det(T)
    if det == 0.0:
        raise DomainError("transform matrix is singular")
    if isinstance(body, Ball):
        center = None if body.center is None else T @ body.center
        return Ellipsoid(body.radius * T, center)
    if isinstance(body, Ellipsoid):
        center = None if body.center is None else T @ body.center
        return Ellipsoid(T @ body.matrix, center)
    if isinstance(body, PolytopeF):
        cof = np.linalg.inv(T).T
        img = body.normals @ cof.T
        scale = np.linalg.norm(img, axis=1)
        return PolytopeF(
            normals=img / scale[:, None],
            offsets=body.offsets / scale,
            areas=body.areas * abs(det) * scale,
        )
    raise UnsupportedQueryError("analytic star bodies do not support linear images")


def translate(body: Body, a) -> Body:
    """Translate by a.  Operations that need the origin inside will reject
    the result themselves if the origin left the interior."""
    a = _vec(a, body.n)
    if not np.any(a):
        return body
    if isinstance(body, Ball):
        base = a if body.center is None else body.center + a
        return replace(body, center=base)
    if isinstance(body, Ellipsoid):
        base = a if body.center is None else body.center + a
        return Ellipsoid(body.matrix, base)
    if isinstance(body, PolytopeF):
        return PolytopeF(
            normals=body.normals,
            offsets=body.offsets + body.normals @ a,
            areas=body.areas,
        )
    raise UnsupportedQueryError("analytic star bodies do not support translation")


# ---------------------------------------------------------------------------
# canonical polytopes


def cube(n: int) -> PolytopeF:
    """The cube [-1, 1]^n as a facet list."""
    eye = np.eye(n)
    normals = np.concatenate([eye, -eye], axis=0)
    return PolytopeF(
        normals=normals,
        offsets=np.ones(2 * n),
        areas=np.full(2 * n, 2.0 ** (n - 1)),
    )


def cross_polytope(n: int) -> PolytopeF:
    """Convex hull of the +-e_i vertices, n in {2, 3}."""
    if n not in (2, 3):
        raise DomainError("cross-polytope facet lists are shipped for n in {2, 3}")
    signs = np.array(
        [[sx, sy] for sx in (1, -1) for sy in (1, -1)]
        if n == 2
        else [[sx, sy, sz] for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)],
        dtype=np.float64,
    )
    normals = signs / math.sqrt(n)
    offsets = np.full(len(signs), 1.0 / math.sqrt(n))
    # each facet is the simplex on the coordinate vertices it touches
    area = math.sqrt(2.0) if n == 2 else math.sqrt(3.0) / 2.0
    return PolytopeF(normals, offsets, np.full(len(signs), area))


def simplex(n: int) -> PolytopeF:
    """Regular simplex with circumradius 1 and centroid at the origin,
    n in {2, 3}."""
    if n == 2:
        verts = np.array(
            [
                [math.cos(a), math.sin(a)]
                for a in (math.pi / 2, math.pi / 2 + 2 * math.pi / 3,
                          math.pi / 2 + 4 * math.pi / 3)
            ]
        )
        side = math.sqrt(3.0)
        inradius = 0.5
    elif n == 3:
        verts = np.array(
            [[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=np.float64
        ) / math.sqrt(3.0)
        side = math.sqrt(8.0 / 3.0)
        inradius = 1.0 / 3.0
    else:
        raise DomainError("regular simplex facet lists are shipped for n in {2, 3}")
    normals = -verts  # facet opposite each vertex faces away from it
    if n == 2:
        facet_area = side
    else:
        facet_area = math.sqrt(3.0) / 4.0 * side**2
    m = len(verts)
    return PolytopeF(normals, np.full(m, inradius), np.full(m, facet_area))


# ---------------------------------------------------------------------------
# JSON interface


def _need(obj, key, path):
    if key not in obj:
        raise SchemaError(f"missing required field {key!r}", path)
    return obj[key]


def _as_number(val, path, positive=False):
    if isinstance(val, bool) or not isinstance(val, (int, float)):
        raise SchemaError(f"expected a number, got {type(val).__name__}", path)
    if positive and not val > 0:
        raise SchemaError(f"expected a positive number, got {val}", path)
    return float(val)


def _as_vector(val, n, path):
    if not isinstance(val, list) or len(val) != n:
        raise SchemaError(f"expected a list of {n} numbers", path)
    return np.array(
        [_as_number(v, f"{path}[{i}]") for i, v in enumerate(val)], dtype=np.float64
    )


def body_from_json(obj) -> Body:
    """Validate a JSON body description and build the Body.

    Raises :class:`SchemaError` with the offending field path on any
    violation, including the facet closedness invariant.
    """
    if not isinstance(obj, dict):
        raise SchemaError("body description must be a JSON object")
    kind = _need(obj, "kind", "")
    n = _need(obj, "n", "")
    if not isinstance(n, int) or n < 2:
        raise SchemaError(f"expected an integer >= 2, got {n!r}", "n")
    if kind == "ball":
        radius = _as_number(_need(obj, "radius", ""), "radius", positive=True)
        center = obj.get("center")
        c = None if center is None else _as_vector(center, n, "center")
        return Ball(n=n, radius=radius, center=c)
    if kind == "ellipsoid":
        rows = _need(obj, "matrix", "")
        if not isinstance(rows, list) or len(rows) != n:
            raise SchemaError(f"expected {n} rows", "matrix")
        m = np.stack([_as_vector(r, n, f"matrix[{i}]") for i, r in enumerate(rows)])
        if abs(np.linalg.det(m)) < 1e-300:
            raise SchemaError("matrix is singular", "matrix")
        center = obj.get("center")
        c = None if center is None else _as_vector(center, n, "center")
        return Ellipsoid(matrix=m, center=c)
    if kind == "polytope":
        facets = _need(obj, "facets", "")
        if not isinstance(facets, list) or not facets:
            raise SchemaError("expected a non-empty list of facets", "facets")
        normals, offsets, areas = [], [], []
        for i, f in enumerate(facets):
            path = f"facets[{i}]"
            if not isinstance(f, dict):
                raise SchemaError("expected a facet object", path)
            nu = _as_vector(_need(f, "normal", path), n, f"{path}.normal")
            nrm = float(np.linalg.norm(nu))
            if abs(nrm - 1.0) > 1e-9:
                raise SchemaError(f"normal is not unit (|nu|={nrm!r})", f"{path}.normal")
            normals.append(nu / nrm)
            offsets.append(_as_number(_need(f, "offset", path), f"{path}.offset",
                                      positive=True))
            areas.append(_as_number(_need(f, "area", path), f"{path}.area",
                                    positive=True))
        nu = np.stack(normals)
        a = np.array(areas)
        defect = float(np.linalg.norm(nu.T @ a))
        if defect > _CLOSURE_TOL * a.sum():
            raise SchemaError(
                f"facet data violates closedness: |sum a_i nu_i| = {defect:.6e}, "
                f"defect vector {list(nu.T @ a)}",
                "facets",
            )
        return PolytopeF(nu, np.array(offsets), a)
    if kind == "star":
        family = _need(obj, "family", "")
        if family == "qball":
            qval = _need(obj, "q", "")
            if qval == "inf":
                q = math.inf
            else:
                q = _as_number(qval, "q")
            if q < 1:
                raise SchemaError(f"expected q >= 1, got {q}", "q")
            return StarBody(n=n, family="qball", q=q)
        if family == "perturbed":
            eps = _as_number(_need(obj, "eps", ""), "eps")
            if abs(eps) > 0.3:
                raise SchemaError(f"expected |eps| <= 0.3, got {eps}", "eps")
            poly = obj.get("poly", "legendre2-axis0")
            prefix = "legendre2-axis"
            if not (isinstance(poly, str) and poly.startswith(prefix)):
                raise SchemaError(f"unknown perturbation {poly!r}", "poly")
            try:
                axis = int(poly[len(prefix):])
            except ValueError:
                raise SchemaError(f"unknown perturbation {poly!r}", "poly")
            if not 0 <= axis < n:
                raise SchemaError(f"axis {axis} out of range for n={n}", "poly")
            return StarBody(n=n, family="perturbed", eps=eps, axis=axis)
        raise SchemaError(f"unknown star family {family!r}", "family")
    raise SchemaError(f"unknown body kind {kind!r}", "kind")


def body_to_json(body: Body) -> dict:
    if isinstance(body, Ball):
        out = {"kind": "ball", "n": body.n, "radius": body.radius}
        if body.center is not None:
            out["center"] = body.center.tolist()
        return out
    if isinstance(body, Ellipsoid):
        out = {"kind": "ellipsoid", "n": body.n, "matrix": body.matrix.tolist()}
        if body.center is not None:
            out["center"] = body.center.tolist()
        return out
    if isinstance(body, PolytopeF):
        return {
            "kind": "polytope",
            "n": body.n,
            "facets": [
                {"normal": nu.tolist(), "offset": float(h), "area": float(a)}
                for nu, h, a in zip(body.normals, body.offsets, body.areas)
            ],
        }
    if isinstance(body, StarBody):
        if body.family == "qball":
            q = "inf" if math.isinf(body.q) else body.q
            return {"kind": "star", "n": body.n, "family": "qball", "q": q}
        return {
            "kind": "star",
            "n": body.n,
            "family": "perturbed",
            "eps": body.eps,
            "poly": f"legendre2-axis{body.axis}",
        }
    raise DomainError(f"unknown body type {type(body).__name__}")


def parse_body(path) -> Body:
    """Load and validate a body JSON file."""
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON at line {exc.lineno}, column "
                              f"{exc.colno}: {exc.msg}") from exc
    return body_from_json(obj)
