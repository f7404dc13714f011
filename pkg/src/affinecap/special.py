"""Closed-form constants: Gamma/Beta, ball volumes, the zonal cosine moment,
and the asymmetric one-sided weight that drives every functional in the package.

All values are plain double precision floats; everything here is pure and
thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "Params",
    "gamma",
    "beta",
    "unit_ball_volume",
    "sphere_area",
    "cosine_moment",
    "asymmetric_weight",
    "eta_to_tau",
    "profile_constant",
]


@dataclass(frozen=True)
class Params:
    """The (n, p, tau) triple every functional is parameterized by.

    ``capacity=True`` additionally requires p < n (capacity operations are
    trivial at p >= n).
    """

    n: int
    p: float
    tau: float = 0.0

    def validate(self, capacity: bool = False) -> "Params":
        if self.n < 2:
            raise DomainError(f"dimension must be >= 2, got {self.n}")
        if self.p < 1:
            raise DomainError(f"exponent must be >= 1, got {self.p}")
        if capacity and not self.p < self.n:
            raise DomainError(
                f"capacity operations need p < n, got p={self.p}, n={self.n}"
            )
        if not -1.0 <= self.tau <= 1.0:
            raise DomainError(f"asymmetry must lie in [-1, 1], got {self.tau}")
        return self


def gamma(x: float) -> float:
    """Gamma function for positive real arguments."""
    if x <= 0:
        raise DomainError(f"gamma requires x > 0, got {x}")
    return math.gamma(x)


def beta(x: float, y: float) -> float:
    """Beta function B(x, y) for positive arguments, via log-Gamma."""
    if x <= 0 or y <= 0:
        raise DomainError(f"beta requires positive arguments, got ({x}, {y})")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))


def unit_ball_volume(n: int) -> float:
    """Volume of the unit Euclidean ball in dimension n."""
    if n < 1:
        raise DomainError(f"dimension must be >= 1, got {n}")
    return math.pi ** (n / 2.0) / gamma(1.0 + n / 2.0)


def sphere_area(n: int) -> float:
    """Surface area of the unit sphere in R^n, i.e. n * unit_ball_volume(n)."""
    return n * unit_ball_volume(n)


def cosine_moment(n: int, p: float) -> float:
    """Normalized spherical average of the one-sided cosine power.

    For any fixed pole v, this is the integral of max(u.v, 0)^p over the
    sphere under the normalized measure.  The asymmetric weight averages to
    the same value for every asymmetry parameter, so this single constant
    controls all the ball closed forms.
    """
    if n < 2:
        raise DomainError(f"dimension must be >= 2, got {n}")
    if p <= 0:
        raise DomainError(f"exponent must be positive, got {p}")
    pref = (n - 1) * unit_ball_volume(n - 1) / (2.0 * n * unit_ball_volume(n))
    return pref * beta((p + 1) / 2.0, (n - 1) / 2.0)


def asymmetric_weight(t: float, p: float, tau: float) -> float:
    """One-sided weight ((1+tau)/2)^(1/p) * t_+  +  ((1-tau)/2)^(1/p) * t_-.

    Positively homogeneous of degree 1 in t and subadditive.  tau = 1 keeps
    only the positive part, tau = -1 only the negative part, tau = 0 gives
    2^(-1/p) |t|.
    """
    if p < 1:
        raise DomainError(f"exponent must be >= 1, got {p}")
    if not -1.0 <= tau <= 1.0:
        raise DomainError(f"asymmetry must lie in [-1, 1], got {tau}")
    tp = t if t > 0 else 0.0
    tm = -t if t < 0 else 0.0
    return ((1.0 + tau) / 2.0) ** (1.0 / p) * tp + ((1.0 - tau) / 2.0) ** (1.0 / p) * tm


def eta_to_tau(eta: float, p: float) -> tuple[float, float]:
    """Convert the |t| + eta*t parameterization to the (tau, scale) form.

    Returns (tau, scale) with (|t| + eta*t)^p == scale * w_tau(t)^p where
    w_tau is :func:`asymmetric_weight`.
    """
    if p < 1:
        raise DomainError(f"exponent must be >= 1, got {p}")
    if not -1.0 <= eta <= 1.0:
        raise DomainError(f"eta must lie in [-1, 1], got {eta}")
    up = (1.0 + eta) ** p
    dn = (1.0 - eta) ** p
    return (up - dn) / (up + dn), up + dn


def profile_constant(n: int, p: float) -> float:
    """((n-p)/(p-1))^(p-1), with the p = 1 limit defined as 1.

    This is the radial-profile energy of the extremal capacity test function;
    it multiplies the surface-area-type upper bounds.  The p = 1 branch is an
    explicit limit rather than a 0^0 evaluation.
    """
    if not 1 <= p < n:
        raise DomainError(f"need 1 <= p < n, got p={p}, n={n}")
    if p == 1:
        return 1.0
    return ((n - p) / (p - 1.0)) ** (p - 1.0)
