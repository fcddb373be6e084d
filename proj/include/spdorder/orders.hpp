#pragma once

#include <cstdint>
#include <vector>

#include "spdorder/cones.hpp"

namespace spdorder {

enum class Relation { LessEqual, GreaterEqual, Equal, Incomparable };
const char* to_string(Relation r);

/// Comparison of (S1, S2) under the order of a cone field. `forward_margin`
/// measures S1 <= S2, `reverse_margin` measures S2 <= S1; a relation holds
/// when its margin is >= -tol. For the half-space preorder `Equal` means the
/// two points lie on the same determinant leaf.
struct OrderVerdict {
  Relation relation = Relation::Incomparable;
  double forward_margin = 0.0;
  double reverse_margin = 0.0;

  /// S1 <= S2 (including equality).
  bool forward() const { return relation == Relation::LessEqual || relation == Relation::Equal; }
  bool reverse() const {
    return relation == Relation::GreaterEqual || relation == Relation::Equal;
  }
};

/// Global order test.
///  - QuadraticAffine(mu): log-eigenvalues of S1^{-1/2} S2 S1^{-1/2} tested
///    against the spectral cone K^mu (reverse: negated logs).
///  - Loewner: S2 - S1 positive semidefinite.
///  - QuadraticTranslation(mu): eigenvalues of S2 - S1 in K^mu.
///  - HalfSpaceAffine: log det S2 - log det S1 >= 0.
///  - RayAffine: S2 = c S1 with c >= 1.
/// Pairs within relative Frobenius distance 1e-10 are reported Equal directly.
OrderVerdict order_compare(const ConeSpec& spec, const SpdMatrix& s1, const SpdMatrix& s2,
                           double tol = kDefaultTol);

/// The Loewner order decided through its affine-invariant form: every
/// eigenvalue of S1^{-1/2} S2 S1^{-1/2} at least 1. Must agree with
/// order_compare(loewner, ...).
OrderVerdict loewner_compare_affine(const SpdMatrix& s1, const SpdMatrix& s2,
                                    double tol = kDefaultTol);

/// log lambda_i(S1^{-1/2} S2 S1^{-1/2}), ascending.
Vector order_log_spectrum(const SpdMatrix& s1, const SpdMatrix& s2);
/// The same values through the nonsymmetric product S2 S1^{-1} (general
/// eigensolver, real parts), ascending. Exists to cross-check the symmetric route.
Vector order_log_spectrum_product(const SpdMatrix& s1, const SpdMatrix& s2);

/// Smallest cone margin of the velocity along the path from S1 to S2,
/// sampled at `samples` equispaced parameters. Affine-invariant fields use the
/// affine-invariant geodesic, translation-invariant ones (QuadraticTranslation,
/// Loewner) the straight segment.
double conal_path_min_margin(const ConeSpec& spec, const SpdMatrix& s1, const SpdMatrix& s2,
                             int samples, double tol = kDefaultTol);

/// Independent check of order_compare: true iff the path above is conal,
/// i.e. every sampled margin is >= -10 tol.
bool conal_path_oracle(const ConeSpec& spec, const SpdMatrix& s1, const SpdMatrix& s2,
                       int samples, double tol = kDefaultTol);

/// Points S with S1 <= S <= S2, each re-verified with order_compare. The
/// first is the midpoint of the path (geometric mean for affine fields). The
/// others are path points perturbed by random congruences, falling back to
/// the unperturbed path point when no perturbation verifies.
/// Throws NotOrdered unless S1 <= S2.
std::vector<SpdMatrix> order_interval_sample(const ConeSpec& spec, const SpdMatrix& s1,
                                             const SpdMatrix& s2, std::uint64_t seed,
                                             int count, double tol = kDefaultTol);

/// A random S' with S <= S'. Affine fields step a distance in (0.1, 1.5)
/// along the geodesic in a cone direction drawn at I; translation fields add a cone element small enough to
/// stay positive definite. `on_boundary` draws the direction on the cone
/// boundary.
SpdMatrix random_successor(const ConeSpec& spec, const SpdMatrix& sigma, Rng& rng,
                           bool on_boundary = false);

}  // namespace spdorder
