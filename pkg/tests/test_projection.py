import math

import numpy as np
import pytest

from affinecap.bodies import Ball, Ellipsoid, StarBody, cross_polytope, cube, simplex
from affinecap.errors import DomainError
from affinecap.projection import (
    integral_affine_area,
    projection_function,
    projection_support,
    tau_curve,
)
from affinecap.special import cosine_moment, unit_ball_volume
from tests.conftest import random_unit


def test_projection_function_cube_constant():
    # each facet pair of the cube contributes both signs, so the one-sided
    # parts are already direction-free and the value is 4 for every tau
    rng = np.random.default_rng(0)
    thetas = [np.array([1.0, 0, 0])] + [random_unit(rng, 3) for _ in range(20)]
    for theta in thetas:
        for tau in (-1.0, -0.4, 0.0, 0.7, 1.0):
            assert projection_function(cube(3), theta, 2.0, tau) == pytest.approx(
                4.0, rel=1e-13
            )


def test_projection_function_ball():
    theta = np.array([0.0, 1.0, 0.0])
    want = 3 * unit_ball_volume(3) * cosine_moment(3, 2.0)  # = 2 pi / 3
    assert want == pytest.approx(2 * math.pi / 3, rel=1e-13)
    for tau in (0.0, 0.5, -1.0):
        assert projection_function(Ball(3, 1.0), theta, 2.0, tau) == pytest.approx(
            want, rel=1e-13
        )


def test_projection_support_values():
    theta = np.array([1.0, 0, 0])
    assert projection_support(cube(3), theta, 2.0, 0.3) == pytest.approx(2.0)
    assert projection_support(Ball(3, 1.0), theta, 2.0, 0.0) == pytest.approx(
        math.sqrt(2 * math.pi / 3)
    )


def test_projection_p1_reflection_symmetry():
    # at p = 1 the closedness identity sum a_i nu_i = 0 makes the two
    # one-sided parts equal, hence v(theta) = v(-theta) and tau drops out
    rng = np.random.default_rng(4)
    for body in (cube(3), cross_polytope(3), simplex(3)):
        for _ in range(10):
            theta = random_unit(rng, 3)
            base = projection_function(body, theta, 1.0, 0.0)
            for tau in (-1.0, 0.3, 1.0):
                assert projection_function(body, theta, 1.0, tau) == pytest.approx(
                    base, rel=1e-12
                )
                assert projection_function(body, -theta, 1.0, tau) == pytest.approx(
                    base, rel=1e-12
                )


def test_projection_function_rejects_bad_args(fib_rule):
    with pytest.raises(DomainError):
        projection_function(cube(3), np.array([1.0, 0, 0]), 0.5, 0.0)
    with pytest.raises(DomainError):
        # star-quadrature path without a rule
        projection_function(StarBody(3, "qball", q=3.0), np.array([1.0, 0, 0]), 2.0, 0.0)
    with pytest.raises(DomainError):
        integral_affine_area(cube(3), 2.0, 1.5, fib_rule)
    with pytest.raises(DomainError):
        integral_affine_area(cube(3), 2.0, 0.0, None)


def test_integral_affine_area_ball_closed_form(fib_rule):
    assert integral_affine_area(Ball(3, 1.0), 1.0, 0.0, fib_rule) == pytest.approx(
        math.pi, rel=1e-13
    )
    assert integral_affine_area(Ball(3, 1.0), 2.0, 0.6, fib_rule) == pytest.approx(
        2 * math.pi / 3, rel=1e-13
    )
    # r^{n-p} homogeneity
    assert integral_affine_area(Ball(3, 2.0), 2.0, 0.0, fib_rule) == pytest.approx(
        2.0 * 2 * math.pi / 3, rel=1e-13
    )


def test_integral_affine_area_cube(fib_rule):
    # the projection function is constant 4, so the outer mean collapses
    for tau in (0.0, 0.5, -1.0):
        assert integral_affine_area(cube(3), 2.0, tau, fib_rule) == pytest.approx(
            4.0, rel=1e-12
        )


@pytest.mark.parametrize("p,tau", [(1.0, 0.0), (1.5, 0.4), (2.0, 0.3), (2.5, -0.6)])
def test_integral_affine_area_ellipsoid_covariance(p, tau, fib_rule):
    # primary self-test: quadrature on a linear image of the ball against
    # the |det T|^{(n-p)/n} covariance of the ball closed form
    rng = np.random.default_rng(23)
    for _ in range(3):
        t = rng.standard_normal((3, 3))
        while np.linalg.cond(t) > 5:
            t = rng.standard_normal((3, 3))
        got = integral_affine_area(Ellipsoid(t), p, tau, fib_rule)
        ref = (
            abs(np.linalg.det(t)) ** ((3 - p) / 3)
            * 3 * unit_ball_volume(3) * cosine_moment(3, p)
        )
        assert abs(got - ref) <= 10.0 * fib_rule.error_estimate * ref


def test_tau_curve_ball_constant(fib_rule):
    pairs = tau_curve(Ball(3, 1.0), 2.0, np.linspace(-1, 1, 9), fib_rule)
    assert [t for t, _ in pairs] == pytest.approx(list(np.linspace(-1, 1, 9)))
    for _, val in pairs:
        assert val == pytest.approx(2 * math.pi / 3, rel=1e-13)


def test_tau_symmetry_exact_with_mirrored_rule(mirrored_rule):
    # antipodally symmetric outer nodes turn the reflection identity into an
    # exact statement about finite sums
    for body in (simplex(3), cross_polytope(3)):
        for p in (1.5, 2.0):
            for tau in (0.3, 0.7, 1.0):
                a = integral_affine_area(body, p, tau, mirrored_rule)
                b = integral_affine_area(body, p, -tau, mirrored_rule)
                assert abs(a - b) <= 1e-12 * max(1.0, a)


def test_tau_ordering_and_concavity(mirrored_rule):
    rng = np.random.default_rng(9)
    grid = np.linspace(-1.0, 1.0, 9)
    for seed_body in (cube(3), simplex(3), cross_polytope(3)):
        t = rng.standard_normal((3, 3))
        while np.linalg.cond(t) > 8:
            t = rng.standard_normal((3, 3))
        from affinecap.bodies import linear_image

        body = linear_image(seed_body, t)
        for p in (1.3, 2.0):
            vals = [integral_affine_area(body, p, tau, mirrored_rule) for tau in grid]
            peak = integral_affine_area(body, p, 0.0, mirrored_rule)
            ends = integral_affine_area(body, p, 1.0, mirrored_rule)
            for v in vals:
                assert ends - 1e-12 * peak <= v <= peak + 1e-12 * peak
            # midpoint concavity along the grid
            for i in range(1, len(grid) - 1):
                defect = vals[i] - 0.5 * (vals[i - 1] + vals[i + 1])
                assert defect >= -1e-10 * peak


def test_integral_affine_area_star_bodies_sane(fib_rule):
    # q-balls interpolate between the cross-polytope and the cube; the
    # functional must stay positive, finite, and between the ball values of
    # the enclosing radii
    for q in (1.5, 3.0):
        body = StarBody(3, "qball", q=q)
        val = integral_affine_area(body, 2.0, 0.2, fib_rule)
        assert 0 < val < 3 * unit_ball_volume(3) * cosine_moment(3, 2.0) * 3 ** (1 / 2)
