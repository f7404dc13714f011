"""Numerical toolkit for asymmetric affine capacities of convex and star
bodies: projection functionals, integral affine surface areas, certified
capacity bounds, and inequality-chain verification."""

from .bodies import (
    Ball,
    Ellipsoid,
    PolytopeF,
    StarBody,
    body_from_json,
    cross_polytope,
    cube,
    linear_image,
    normal_at,
    parse_body,
    polar_check,
    radial,
    simplex,
    sp_surface_area,
    support,
    translate,
    volume,
)
from .capacity import (
    CapBounds,
    Profile,
    affine_capacity_ball,
    cap_bounds,
    cap_lower,
    cap_upper_phi,
    cap_upper_var,
    profile_energy,
    profile_optimize,
    variational_capacity_ball,
)
from .chain import (
    ChainLink,
    ChainReport,
    FuzzConfig,
    FuzzResult,
    chain_reports,
    generate_body,
    run_fuzz,
    verify_chain,
)
from .projection import (
    integral_affine_area,
    projection_function,
    projection_support,
    tau_curve,
)
from .quadrature import (
    SphereRule,
    build_rule,
    calibrate_rule,
    image_rule,
    integrate,
    symmetrize_rule,
    zonal_integral,
)
from .special import (
    Params,
    asymmetric_weight,
    beta,
    cosine_moment,
    eta_to_tau,
    gamma,
    profile_constant,
    unit_ball_volume,
)

__version__ = "0.1.0"
