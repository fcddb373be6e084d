"""Conal orders, monotone maps and isospectral flows on SPD matrices."""

from ._spdorder import (
    ConeSpec,
    FlowTrajectory,
    SmoothMap,
    SpdOrderError,
    check_differential_positivity,
    conal_path_min_margin,
    cone_cross_section,
    cone_membership,
    expm,
    geodesic,
    geometric_mean,
    hyperboloid_leaf,
    integrate_flow,
    log_det,
    logm,
    order_compare,
    phi,
    phi_inverse,
    powm,
    random_spd,
    riemannian_distance,
    riemannian_exp,
    riemannian_log,
    spd_validate,
    sqrtm,
    strict_contraction_witness,
)

__all__ = [
    "ConeSpec",
    "FlowTrajectory",
    "SmoothMap",
    "SpdOrderError",
    "check_differential_positivity",
    "conal_path_min_margin",
    "cone_cross_section",
    "cone_membership",
    "expm",
    "geodesic",
    "geometric_mean",
    "hyperboloid_leaf",
    "integrate_flow",
    "log_det",
    "logm",
    "order_compare",
    "phi",
    "phi_inverse",
    "powm",
    "random_spd",
    "riemannian_distance",
    "riemannian_exp",
    "riemannian_log",
    "spd_validate",
    "sqrtm",
    "strict_contraction_witness",
]
