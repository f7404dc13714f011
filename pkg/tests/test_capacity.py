import math

import numpy as np
import pytest

from affinecap.bodies import Ball, Ellipsoid, cube, linear_image
from affinecap.capacity import (
    CapBounds,
    Profile,
    affine_capacity_ball,
    cap_bounds,
    cap_lower,
    cap_upper_phi,
    cap_upper_var,
    lower_bound_from_volume,
    profile_energy,
    profile_optimize,
    tail_fraction,
    upper_bound_from_phi,
    upper_bound_from_sp,
    variational_capacity_ball,
)
from affinecap.errors import DomainError


def test_variational_capacity_ball():
    assert variational_capacity_ball(3, 2.0) == pytest.approx(4 * math.pi, rel=1e-13)
    assert variational_capacity_ball(3, 1.0) == pytest.approx(4 * math.pi, rel=1e-13)
    assert variational_capacity_ball(3, 2.0, r=2.0) == pytest.approx(
        8 * math.pi, rel=1e-13
    )
    assert variational_capacity_ball(3, 3.0) == 0.0
    assert variational_capacity_ball(3, 5.0) == 0.0
    with pytest.raises(DomainError):
        variational_capacity_ball(3, 0.5)
    with pytest.raises(DomainError):
        variational_capacity_ball(3, 2.0, r=-1.0)


def test_affine_capacity_ball():
    assert affine_capacity_ball(3, 2.0) == pytest.approx(2 * math.pi / 3, rel=1e-13)
    assert affine_capacity_ball(3, 1.0) == pytest.approx(math.pi, rel=1e-13)
    for tau in (-1.0, -0.3, 0.5, 1.0):
        assert affine_capacity_ball(3, 2.0, tau) == affine_capacity_ball(3, 2.0)
    assert affine_capacity_ball(3, 3.0) == 0.0
    with pytest.raises(DomainError):
        affine_capacity_ball(3, 2.0, tau=1.5)


def test_bound_helpers_reject_bad_exponents():
    for fn in (lower_bound_from_volume, ):
        with pytest.raises(DomainError):
            fn(3, 3.0, 0.0, 1.0)
    with pytest.raises(DomainError):
        upper_bound_from_phi(3, 0.5, 1.0)
    with pytest.raises(DomainError):
        upper_bound_from_sp(3, 4.0, 1.0)


def test_cap_lower_cube():
    want = (2 * math.pi / 3) * (6.0 / math.pi) ** (1.0 / 3.0)
    assert cap_lower(cube(3), 2.0, 0.0) == pytest.approx(want, rel=1e-13)
    assert want == pytest.approx(2.5985180598138355, rel=1e-12)


def test_cap_upper_cube(fib_rule):
    assert cap_upper_phi(cube(3), 2.0, 0.0, fib_rule) == pytest.approx(4.0, rel=1e-12)
    assert cap_upper_var(cube(3), 2.0, 0.0) == pytest.approx(4.0, rel=1e-13)


def test_cap_bounds_cube(fib_rule):
    cb = cap_bounds(cube(3), 2.0, 0.0, fib_rule, body_id="cube")
    want_lower = (2 * math.pi / 3) * (6.0 / math.pi) ** (1.0 / 3.0)
    assert cb.lower == pytest.approx(want_lower, abs=1e-9)
    assert cb.upper_phi == pytest.approx(4.0, abs=1e-9)
    assert cb.upper_var == pytest.approx(4.0, abs=1e-9)
    assert cb.width == pytest.approx(4.0 - want_lower, abs=1e-9)
    assert cb.body_id == "cube"


def test_cap_bounds_ball_pinch(fib_rule):
    cb = cap_bounds(Ball(3, 1.0), 2.0, 0.3, fib_rule)
    want = 2 * math.pi / 3
    assert cb.lower == pytest.approx(want, rel=1e-12)
    assert cb.upper_phi == pytest.approx(want, rel=1e-12)
    assert cb.upper_var == pytest.approx(want, rel=1e-12)
    assert cb.tighter_upper in ("phi", "var")


def test_cap_bounds_ellipsoid_pinch(fib_rule):
    # lower and phi-upper bounds coincide on centered ellipsoids up to the
    # outer quadrature defect
    t = np.array([[1.5, 0.2, 0.0], [0.0, 0.8, 0.1], [0.0, 0.0, 1.2]])
    cb = cap_bounds(Ellipsoid(t), 2.0, 0.0, fib_rule)
    assert abs(cb.upper_phi - cb.lower) <= 2.0 * fib_rule.error_estimate * cb.lower


def test_cap_lower_homogeneity():
    n, p = 3, 1.7
    base = cap_lower(cube(n), p, 0.2)
    for lam in (0.5, 2.0, 3.7):
        scaled = cap_lower(linear_image(cube(n), lam * np.eye(n)), p, 0.2)
        assert scaled == pytest.approx(lam ** (n - p) * base, rel=1e-12)
    assert affine_capacity_ball(3, 2.0, r=2.0) == pytest.approx(
        2.0 * affine_capacity_ball(3, 2.0), rel=1e-13
    )


def test_cap_bounds_tau_symmetric(mirrored_rule):
    body = cube(3)
    for tau in (0.3, 0.7, 1.0):
        a = cap_bounds(body, 1.5, tau, mirrored_rule)
        b = cap_bounds(body, 1.5, -tau, mirrored_rule)
        assert a.lower == pytest.approx(b.lower, rel=1e-13)
        assert abs(a.upper_phi - b.upper_phi) <= 1e-12 * a.upper_phi
        assert a.upper_var == pytest.approx(b.upper_var, rel=1e-13)


# ---------------------------------------------------------------------------
# radial profile


def test_profile_validation():
    s = np.array([1.0, 2.0, 3.0])
    Profile(s, np.array([1.0, 0.5, 0.0]))
    with pytest.raises(DomainError):
        Profile(np.array([1.0, 3.0, 2.0]), np.array([1.0, 0.5, 0.0]))
    with pytest.raises(DomainError):
        Profile(np.array([0.5, 2.0, 3.0]), np.array([1.0, 0.5, 0.0]))
    with pytest.raises(DomainError):
        Profile(s, np.array([1.0, 0.4, 0.5]))  # increasing tail
    with pytest.raises(DomainError):
        Profile(s, np.array([1.0, 0.5, 0.1]))  # does not reach zero
    with pytest.raises(DomainError):
        Profile(s, np.array([0.9, 0.5, 0.0]))  # does not start at one


def test_profile_energy_ramp():
    # g = 2 - s on [1, 2]: slope 1, energy integral of s^2 is 7/3
    s = np.linspace(1.0, 2.0, 2001)
    prof = Profile(s, 2.0 - s)
    # midpoint rule is exact up to O(h^2) on the quadratic integrand
    assert profile_energy(prof, 3, 2.0) == pytest.approx(7.0 / 3.0, rel=1e-6)
    with pytest.raises(DomainError):
        profile_energy(prof, 3, 0.5)


def test_profile_energy_truncated_power_law():
    # the truncated extremal for (n, p) = (3, 2) is (1/s - 1/s_max) rescaled
    # to hit 1 at s=1; correcting for the truncation recovers energy 1
    s_max = 100.0
    s = np.exp(np.linspace(0.0, math.log(s_max), 8001))
    s[0], s[-1] = 1.0, s_max
    g = (1.0 / s - 1.0 / s_max) / (1.0 - 1.0 / s_max)
    g[-1] = 0.0
    prof = Profile(s, g)
    raw = profile_energy(prof, 3, 2.0)
    corrected = raw * (1.0 - tail_fraction(3, 2.0, s_max))
    assert corrected == pytest.approx(1.0, abs=5e-6)


def test_tail_fraction():
    assert tail_fraction(3, 2.0, 100.0) == pytest.approx(0.01, rel=1e-13)
    assert tail_fraction(4, 2.0, 10.0) == pytest.approx(0.01, rel=1e-13)


@pytest.mark.parametrize(
    "n,p",
    [(3, 2.0), (4, 2.0), (3, 1.5)],
)
def test_profile_optimize_recovers_sharp_energy(n, p):
    want = ((n - p) / (p - 1.0)) ** (p - 1.0)
    energy, fit = profile_optimize(n, p, m=2000, s_max=200.0)
    assert abs(energy - want) <= 1e-3
    assert fit.kkt_residual <= 1e-8
    # the corrected profile tracks the extremal power law away from the tail
    beta = (n - p) / (p - 1.0)
    s = fit.profile.s_grid
    inside = (s >= 1.0) & (s <= 50.0)
    ref = s[inside] ** (-beta)
    assert np.max(np.abs(fit.corrected_values[inside] - ref)) <= 1e-3


def test_profile_optimize_rejections():
    with pytest.raises(DomainError):
        profile_optimize(3, 1.0)
    with pytest.raises(DomainError):
        profile_optimize(3, 3.0)
    with pytest.raises(DomainError):
        profile_optimize(3, 2.0, m=10)
    with pytest.raises(DomainError):
        profile_optimize(3, 2.0, s_max=5.0)
