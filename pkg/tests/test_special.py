import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from affinecap.errors import DomainError
from affinecap.quadrature import zonal_integral
from affinecap.special import (
    Params,
    asymmetric_weight,
    beta,
    cosine_moment,
    eta_to_tau,
    gamma,
    profile_constant,
    unit_ball_volume,
)

# values frozen from a 30-digit mpmath run
GAMMA_ORACLE = {
    0.5: 1.7724538509055160273,
    3.7: 4.1706517837966031654,
    27.25: 9.1610955382784963851e26,
}


def test_gamma_basic():
    assert gamma(1.0) == 1.0
    assert gamma(5.0) == 24.0
    for x, ref in GAMMA_ORACLE.items():
        assert gamma(x) == pytest.approx(ref, rel=1e-13)


def test_gamma_accuracy_contract():
    # recurrence self-consistency over the contracted range
    for x in np.linspace(0.5, 49.0, 195):
        assert gamma(x + 1.0) == pytest.approx(x * gamma(x), rel=1e-12)


def test_gamma_domain():
    with pytest.raises(DomainError):
        gamma(0.0)
    with pytest.raises(DomainError):
        gamma(-2.5)


def test_beta_values():
    assert beta(1.0, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert beta(1.5, 1.0) == pytest.approx(2.0 / 3.0, rel=1e-14)
    assert beta(0.5, 0.5) == pytest.approx(math.pi, rel=1e-13)


def test_beta_matches_gamma_ratio():
    rng = np.random.default_rng(5)
    for _ in range(200):
        x, y = rng.uniform(0.1, 20.0, 2)
        ref = gamma(x) * gamma(y) / gamma(x + y)
        assert beta(x, y) == pytest.approx(ref, rel=1e-12)


def test_beta_domain():
    with pytest.raises(DomainError):
        beta(-1.0, 2.0)
    with pytest.raises(DomainError):
        beta(1.0, 0.0)


def test_unit_ball_volume():
    assert unit_ball_volume(1) == pytest.approx(2.0, rel=1e-15)
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-15)
    assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0, rel=1e-14)
    with pytest.raises(DomainError):
        unit_ball_volume(0)


def test_cosine_moment_closed_forms():
    assert cosine_moment(3, 2.0) == pytest.approx(1.0 / 6.0, rel=1e-13)
    assert cosine_moment(3, 1.0) == pytest.approx(1.0 / 4.0, rel=1e-13)
    assert cosine_moment(2, 1.0) == pytest.approx(1.0 / math.pi, rel=1e-13)


@pytest.mark.parametrize("n,p", [(3, 2.0), (3, 1.0), (2, 1.0), (4, 1.7), (5, 2.3)])
def test_cosine_moment_dual_route(n, p):
    # independent 1-D quadrature of the one-sided cosine power
    quad = zonal_integral(lambda t: max(t, 0.0) ** p, n)
    assert abs(quad - cosine_moment(n, p)) <= 1e-10


def test_asymmetric_weight_examples():
    assert asymmetric_weight(-3.0, 2.0, 1.0) == 0.0
    assert asymmetric_weight(5.0, 2.0, 0.0) == pytest.approx(5.0 / math.sqrt(2.0))
    assert asymmetric_weight(-2.0, 1.0, -1.0) == pytest.approx(2.0)


@given(
    t=st.floats(-50, 50),
    lam=st.floats(0, 20),
    p=st.floats(1, 5),
    tau=st.floats(-1, 1),
)
def test_asymmetric_weight_homogeneous(t, lam, p, tau):
    lhs = asymmetric_weight(lam * t, p, tau)
    rhs = lam * asymmetric_weight(t, p, tau)
    assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


@given(
    t1=st.floats(-50, 50),
    t2=st.floats(-50, 50),
    p=st.floats(1, 5),
    tau=st.floats(-1, 1),
)
def test_asymmetric_weight_subadditive(t1, t2, p, tau):
    lhs = asymmetric_weight(t1 + t2, p, tau)
    rhs = asymmetric_weight(t1, p, tau) + asymmetric_weight(t2, p, tau)
    assert lhs <= rhs + 1e-10 * (1.0 + abs(rhs))


@given(t=st.floats(-50, 50), p=st.floats(1, 5), tau=st.floats(-1, 1))
def test_asymmetric_weight_reflection_pairing(t, p, tau):
    # the two-sided sum is asymmetry-free, and flipping both the argument
    # and the asymmetry leaves the weight unchanged
    lhs = asymmetric_weight(t, p, tau) ** p + asymmetric_weight(-t, p, tau) ** p
    rhs = asymmetric_weight(t, p, -tau) ** p + asymmetric_weight(-t, p, -tau) ** p
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)
    assert asymmetric_weight(-t, p, -tau) == pytest.approx(
        asymmetric_weight(t, p, tau), rel=1e-12, abs=1e-12
    )


@given(
    t=st.floats(-20, 20),
    p=st.floats(1, 4),
    tau=st.floats(-1, 1),
    gam=st.floats(-1, 1),
    lam=st.floats(0, 1),
)
def test_asymmetric_weight_pth_power_affine_in_tau(t, p, tau, gam, lam):
    mid = lam * tau + (1.0 - lam) * gam
    lhs = asymmetric_weight(t, p, mid) ** p
    rhs = (
        lam * asymmetric_weight(t, p, tau) ** p
        + (1.0 - lam) * asymmetric_weight(t, p, gam) ** p
    )
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)


def test_eta_to_tau():
    assert eta_to_tau(0.0, 3.0) == (0.0, 2.0)
    assert eta_to_tau(1.0, 2.0) == (1.0, 4.0)
    tau, scale = eta_to_tau(0.5, 1.0)
    assert tau == pytest.approx(0.5)
    assert scale == pytest.approx(2.0)
    with pytest.raises(DomainError):
        eta_to_tau(1.5, 2.0)


@given(eta=st.floats(-0.99, 0.99), p=st.floats(1, 4), t=st.floats(-10, 10))
def test_eta_to_tau_reproduces_the_weight(eta, p, t):
    tau, scale = eta_to_tau(eta, p)
    lhs = (abs(t) + eta * t) ** p
    rhs = scale * asymmetric_weight(t, p, tau) ** p
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


def test_profile_constant():
    assert profile_constant(3, 1.0) == 1.0
    assert profile_constant(3, 2.0) == pytest.approx(1.0)
    assert profile_constant(4, 2.0) == pytest.approx(2.0)
    assert profile_constant(3, 1.5) == pytest.approx(math.sqrt(3.0))
    with pytest.raises(DomainError):
        profile_constant(3, 3.0)


def test_params_validation():
    Params(3, 2.0, 0.5).validate(capacity=True)
    Params(3, 5.0).validate()  # projection-side exponents may exceed n
    with pytest.raises(DomainError):
        Params(1, 2.0).validate()
    with pytest.raises(DomainError):
        Params(3, 0.5).validate()
    with pytest.raises(DomainError):
        Params(3, 2.0, 1.5).validate()
    with pytest.raises(DomainError):
        Params(3, 3.0).validate(capacity=True)
