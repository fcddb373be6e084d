#pragma once

#include "spdorder/spd_core.hpp"

namespace spdorder {

/// Parameter of the affine-invariant metric family
///   <X, Y>_S = tr(S^-1 X S^-1 Y) + mu_metric tr(S^-1 X) tr(S^-1 Y).
/// Kept distinct from the cone parameter: the ranges differ ((-1/n, inf) here,
/// (0, n) for cones).
struct MetricSpec {
  double mu_metric = 0.0;
};

double inner_product(const MetricSpec& m, const SpdMatrix& sigma, const SymTangent& x,
                     const SymTangent& y);

/// S1^{1/2} exp(t log(S1^{-1/2} S2 S1^{-1/2})) S1^{1/2}, defined for every real t.
SpdMatrix geodesic(const SpdMatrix& s1, const SpdMatrix& s2, double t);

/// d/dt of geodesic(s1, s2, t): S1^{1/2} L exp(tL) S1^{1/2}, L the log of the
/// whitened endpoint.
SymTangent geodesic_velocity(const SpdMatrix& s1, const SpdMatrix& s2, double t);

/// S^{1/2} exp(S^{-1/2} X S^{-1/2}) S^{1/2}.
SpdMatrix riemannian_exp(const SpdMatrix& sigma, const SymTangent& x);
/// Inverse of riemannian_exp: S1^{1/2} log(S1^{-1/2} S2 S1^{-1/2}) S1^{1/2}.
SymTangent riemannian_log(const SpdMatrix& s1, const SpdMatrix& s2);

/// Midpoint of the geodesic: S1^{1/2} (S1^{-1/2} S2 S1^{-1/2})^{1/2} S1^{1/2}.
SpdMatrix geometric_mean(const SpdMatrix& s1, const SpdMatrix& s2);

/// ||log(S1^{-1/2} S2 S1^{-1/2})||_F, the mu_metric = 0 distance.
double riemannian_distance(const SpdMatrix& s1, const SpdMatrix& s2);

/// log det via Cholesky; labels the leaf of the determinant foliation.
double det_leaf(const SpdMatrix& sigma);

/// S1^{-1/2} S2 S1^{-1/2} as a validated value (IllConditioned when it is not).
SpdMatrix whitened(const SpdMatrix& s1, const SpdMatrix& s2);

}  // namespace spdorder
