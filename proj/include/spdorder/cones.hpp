#pragma once

#include <string>

#include "spdorder/random.hpp"
#include "spdorder/spd_core.hpp"

namespace spdorder {

enum class ConeKind {
  QuadraticAffine,       // (tr S^-1 X)^2 - mu tr((S^-1 X)^2) >= 0, tr S^-1 X >= 0
  QuadraticTranslation,  // the same cone at I, translated to every point
  Loewner,               // X positive semidefinite
  HalfSpaceAffine,       // tr S^-1 X >= 0 (a wedge, not pointed)
  RayAffine,             // X = c S, c >= 0
};

const char* to_string(ConeKind kind);
ConeKind cone_kind_from_string(const std::string& s);

/// The order-defining cone field. Quadratic variants require 0 < mu < n; the
/// mu -> 0 and mu -> n limits are the HalfSpaceAffine and RayAffine variants.
class ConeSpec {
 public:
  static ConeSpec quadratic_affine(int n, double mu);
  static ConeSpec quadratic_translation(int n, double mu);
  static ConeSpec loewner(int n);
  static ConeSpec half_space(int n);
  static ConeSpec ray(int n);

  ConeKind kind() const { return kind_; }
  int dim() const { return n_; }
  /// Meaningful for the quadratic variants only.
  double mu() const { return mu_; }

  bool is_quadratic() const {
    return kind_ == ConeKind::QuadraticAffine || kind_ == ConeKind::QuadraticTranslation;
  }
  /// True when the cone at Sigma is Sigma^{1/2} K(I) Sigma^{1/2}. Loewner is
  /// both affine- and translation-invariant and answers true.
  bool is_affine_invariant() const { return kind_ != ConeKind::QuadraticTranslation; }
  /// True when orders are tested along straight lines (constant cone field).
  bool is_translation_invariant() const {
    return kind_ == ConeKind::QuadraticTranslation || kind_ == ConeKind::Loewner;
  }
  /// Pointed cones give partial orders; the half-space wedge only a preorder.
  bool is_pointed() const { return kind_ != ConeKind::HalfSpaceAffine; }

 private:
  ConeSpec(ConeKind kind, int n, double mu) : kind_(kind), n_(n), mu_(mu) {}
  ConeKind kind_;
  int n_;
  double mu_;
};

enum class BindingConstraint { TraceSign, QuadraticForm, EigenvalueMin, RayDeviation };
const char* to_string(BindingConstraint b);

/// Result of a pointwise cone test.
///
/// Margins are scale-free in X. For the quadratic cones, with W the whitened
/// tangent (Sigma^{-1/2} X Sigma^{-1/2}, or X itself for the translation
/// variant) and t = tr W:
///   trace margin      t / ||W||_F
///   quadratic margin  (t^2 - mu ||W||_F^2) / ||W||_F^2
/// and `margin` is the smaller of the two. The zero tangent is inside every
/// cone with margin +1.
struct MembershipReport {
  bool inside = true;
  double margin = 1.0;
  BindingConstraint binding = BindingConstraint::QuadraticForm;
  /// Unnormalized t and t^2 - mu tr(W^2) (quadratic cones); zero otherwise.
  double trace_value = 0.0;
  double quadratic_value = 0.0;
};

MembershipReport cone_membership(const ConeSpec& spec, const SpdMatrix& sigma,
                                 const SymTangent& x, double tol = kDefaultTol);

/// margin > tol.
bool strictly_inside(const MembershipReport& r, double tol = kDefaultTol);

/// The Loewner cone written in its affine-invariant form: eigenvalues of
/// Sigma^{-1/2} X Sigma^{-1/2} nonnegative. Margin is the smallest such
/// eigenvalue over the Frobenius norm of the whitened tangent.
MembershipReport loewner_affine_membership(const SpdMatrix& sigma, const SymTangent& x,
                                           double tol = kDefaultTol);

/// Permutation-invariant quadratic cone in R^n:
/// (sum l)^2 - mu sum l^2 >= 0, sum l >= 0.
class SpectralCone {
 public:
  SpectralCone(int n, double mu);

  int dim() const { return n_; }
  double mu() const { return mu_; }

  /// Q_mu: 1 - mu on the diagonal, 1 elsewhere.
  Matrix form() const;
  /// Closed-form inverse of Q_mu: (mu-(n-1))/(mu(n-mu)) on the diagonal,
  /// 1/(mu(n-mu)) elsewhere.
  Matrix form_inverse() const;

 private:
  int n_;
  double mu_;
};

MembershipReport spectral_membership(const SpectralCone& cone, const Vector& lambda,
                                     double tol = kDefaultTol);

/// (K^mu)* = K^{n-mu} under the standard inner product on R^n.
SpectralCone dual_spectral_cone(const SpectralCone& cone);

enum class FormClass { PositiveDefinite, Lorentzian, Degenerate, Other };
const char* to_string(FormClass c);

/// Signature class of Q_ab(X) = a (tr X)^2 / n + b ||pi(X)||^2.
FormClass classify_quadratic_form(double alpha, double beta, int n);
double quadratic_form_value(double alpha, double beta, const SymTangent& x);

/// pi(X) = X - (tr X / n) I.
SymTangent traceless_projection(const SymTangent& x);

/// Draws a tangent in K(Sigma). With `on_boundary` the result has zero
/// margin (for the half-space: tr Sigma^-1 X = 0; for Loewner: a zero
/// eigenvalue); otherwise it is drawn from the interior. Quadratic cones are
/// sampled as Sigma^{1/2} ((tau/n) I + rho P) Sigma^{1/2} with P a random unit
/// traceless direction and rho solving the boundary quadratic for tau.
SymTangent sample_cone_tangent(const ConeSpec& spec, const SpdMatrix& sigma, Rng& rng,
                               bool on_boundary);

/// Same construction in R^n for a spectral cone.
Vector sample_spectral_vector(const SpectralCone& cone, Rng& rng, bool on_boundary);

}  // namespace spdorder
