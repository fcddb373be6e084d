#include "spdorder/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spdorder {

const char* to_string(ConeKind kind) {
  switch (kind) {
    case ConeKind::QuadraticAffine: return "quad-affine";
    case ConeKind::QuadraticTranslation: return "quad-translate";
    case ConeKind::Loewner: return "loewner";
    case ConeKind::HalfSpaceAffine: return "half-space";
    case ConeKind::RayAffine: return "ray";
  }
  return "unknown";
}

ConeKind cone_kind_from_string(const std::string& s) {
  if (s == "quad-affine") return ConeKind::QuadraticAffine;
  if (s == "quad-translate") return ConeKind::QuadraticTranslation;
  if (s == "loewner") return ConeKind::Loewner;
  if (s == "half-space") return ConeKind::HalfSpaceAffine;
  if (s == "ray") return ConeKind::RayAffine;
  throw Error(ErrorKind::InvalidParameters, "unknown cone kind '" + s + "'");
}

const char* to_string(BindingConstraint b) {
  switch (b) {
    case BindingConstraint::TraceSign: return "trace_sign";
    case BindingConstraint::QuadraticForm: return "quadratic_form";
    case BindingConstraint::EigenvalueMin: return "eigenvalue_min";
    case BindingConstraint::RayDeviation: return "ray_deviation";
  }
  return "unknown";
}

const char* to_string(FormClass c) {
  switch (c) {
    case FormClass::PositiveDefinite: return "positive_definite";
    case FormClass::Lorentzian: return "lorentzian";
    case FormClass::Degenerate: return "degenerate";
    case FormClass::Other: return "other";
  }
  return "unknown";
}

// --- ConeSpec ---------------------------------------------------------------

namespace {

void require_dim(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw Error(ErrorKind::InvalidParameters, "cone dimension out of range");
  }
}

void require_mu(int n, double mu) {
  if (!(mu > 0.0 && mu < n)) {
    std::ostringstream os;
    os << "mu = " << mu << " must lie strictly inside (0, " << n << ")";
    throw Error(ErrorKind::InvalidParameters, os.str());
  }
}

}  // namespace

ConeSpec ConeSpec::quadratic_affine(int n, double mu) {
  require_dim(n);
  require_mu(n, mu);
  return ConeSpec(ConeKind::QuadraticAffine, n, mu);
}

ConeSpec ConeSpec::quadratic_translation(int n, double mu) {
  require_dim(n);
  require_mu(n, mu);
  return ConeSpec(ConeKind::QuadraticTranslation, n, mu);
}

ConeSpec ConeSpec::loewner(int n) {
  require_dim(n);
  return ConeSpec(ConeKind::Loewner, n, 0.0);
}

ConeSpec ConeSpec::half_space(int n) {
  require_dim(n);
  return ConeSpec(ConeKind::HalfSpaceAffine, n, 0.0);
}

ConeSpec ConeSpec::ray(int n) {
  require_dim(n);
  return ConeSpec(ConeKind::RayAffine, n, static_cast<double>(n));
}

// --- membership -------------------------------------------------------------

namespace {

/// Sigma^{-1/2} X Sigma^{-1/2} expressed in the eigenbasis of Sigma. It is
/// orthogonally similar to the whitened tangent, so traces and norms agree.
Matrix whitened_in_eigenbasis(const SpdMatrix& sigma, const Matrix& x) {
  const Spectrum& s = sigma.spectrum();
  Matrix xp = s.vectors.transpose() * x * s.vectors;
  const Vector d = s.values.array().rsqrt().matrix();
  return d.asDiagonal() * xp * d.asDiagonal();
}

MembershipReport quadratic_report(double t, double norm2, double mu, double tol) {
  MembershipReport r;
  r.trace_value = t;
  r.quadratic_value = t * t - mu * norm2;
  if (norm2 == 0.0) return r;  // zero tangent
  const double trace_margin = t / std::sqrt(norm2);
  const double quad_margin = t * t / norm2 - mu;
  r.margin = std::min(trace_margin, quad_margin);
  // Both constraints vanish together only on the degenerate ray; report the
  // quadratic form then.
  if (std::abs(trace_margin - quad_margin) <= tol) {
    r.binding = BindingConstraint::QuadraticForm;
  } else {
    r.binding = trace_margin < quad_margin ? BindingConstraint::TraceSign
                                           : BindingConstraint::QuadraticForm;
  }
  r.inside = r.margin >= -tol;
  return r;
}

}  // namespace

MembershipReport cone_membership(const ConeSpec& spec, const SpdMatrix& sigma,
                                 const SymTangent& x, double tol) {
  require_same_dim(spec.dim(), sigma.dim(), "cone_membership (spec vs point)");
  require_same_dim(sigma.dim(), x.dim(), "cone_membership (point vs tangent)");
  const int n = sigma.dim();
  const double xnorm = x.norm();

  MembershipReport r;
  switch (spec.kind()) {
    case ConeKind::QuadraticAffine: {
      const Matrix w = whitened_in_eigenbasis(sigma, x.matrix());
      return quadratic_report(w.trace(), w.squaredNorm(), spec.mu(), tol);
    }
    case ConeKind::QuadraticTranslation:
      return quadratic_report(x.trace(), x.matrix().squaredNorm(), spec.mu(), tol);
    case ConeKind::Loewner: {
      r.binding = BindingConstraint::EigenvalueMin;
      if (xnorm == 0.0) return r;
      const double lmin = sym_eig(x.matrix()).values(0);
      r.margin = lmin / xnorm;
      r.inside = r.margin >= -tol;
      return r;
    }
    case ConeKind::HalfSpaceAffine: {
      r.binding = BindingConstraint::TraceSign;
      const Matrix w = whitened_in_eigenbasis(sigma, x.matrix());
      r.trace_value = w.trace();
      const double wn = w.norm();
      if (wn == 0.0) return r;
      r.margin = r.trace_value / wn;
      r.inside = r.margin >= -tol;
      return r;
    }
    case ConeKind::RayAffine: {
      if (xnorm == 0.0) {
        r.binding = BindingConstraint::RayDeviation;
        return r;
      }
      const Matrix w = whitened_in_eigenbasis(sigma, x.matrix());
      const double t = w.trace();
      r.trace_value = t;
      const double trace_margin = t / w.norm();
      const double deviation = (x.matrix() - (t / n) * sigma.matrix()).norm() / xnorm;
      if (-deviation < trace_margin) {
        r.margin = -deviation;
        r.binding = BindingConstraint::RayDeviation;
      } else {
        r.margin = trace_margin;
        r.binding = BindingConstraint::TraceSign;
      }
      r.inside = r.margin >= -tol;
      return r;
    }
  }
  return r;
}

bool strictly_inside(const MembershipReport& r, double tol) { return r.margin > tol; }

MembershipReport loewner_affine_membership(const SpdMatrix& sigma, const SymTangent& x,
                                           double tol) {
  require_same_dim(sigma.dim(), x.dim(), "loewner_affine_membership");
  MembershipReport r;
  r.binding = BindingConstraint::EigenvalueMin;
  const Matrix w = whitened_in_eigenbasis(sigma, x.matrix());
  const double wn = w.norm();
  if (wn == 0.0) return r;
  r.margin = sym_eig(w).values(0) / wn;
  r.inside = r.margin >= -tol;
  return r;
}

// --- spectral cones ---------------------------------------------------------

SpectralCone::SpectralCone(int n, double mu) : n_(n), mu_(mu) {
  require_dim(n);
  require_mu(n, mu);
}

Matrix SpectralCone::form() const {
  Matrix q = Matrix::Ones(n_, n_);
  q.diagonal().array() = 1.0 - mu_;
  return q;
}

Matrix SpectralCone::form_inverse() const {
  const double denom = mu_ * (n_ - mu_);
  Matrix q = Matrix::Constant(n_, n_, 1.0 / denom);
  q.diagonal().array() = (mu_ - (n_ - 1)) / denom;
  return q;
}

MembershipReport spectral_membership(const SpectralCone& cone, const Vector& lambda, double tol) {
  require_same_dim(cone.dim(), static_cast<int>(lambda.size()), "spectral_membership");
  return quadratic_report(lambda.sum(), lambda.squaredNorm(), cone.mu(), tol);
}

SpectralCone dual_spectral_cone(const SpectralCone& cone) {
  return SpectralCone(cone.dim(), cone.dim() - cone.mu());
}

// --- quadratic forms --------------------------------------------------------

FormClass classify_quadratic_form(double alpha, double beta, int n) {
  if (n < 2) throw Error(ErrorKind::InvalidParameters, "classify_quadratic_form needs n >= 2");
  if (alpha == 0.0 || beta == 0.0) return FormClass::Degenerate;
  if (alpha > 0.0 && beta > 0.0) return FormClass::PositiveDefinite;
  if (alpha > 0.0 && beta < 0.0) return FormClass::Lorentzian;
  return FormClass::Other;
}

SymTangent traceless_projection(const SymTangent& x) {
  Matrix p = x.matrix();
  p.diagonal().array() -= x.trace() / x.dim();
  return SymTangent::symmetric_part(p);
}

double quadratic_form_value(double alpha, double beta, const SymTangent& x) {
  const double t = x.trace();
  return alpha * t * t / x.dim() + beta * traceless_projection(x).matrix().squaredNorm();
}

// --- sampling ---------------------------------------------------------------

namespace {

/// (tau / n) I + rho P with rho on or inside the boundary of K^mu at I.
Matrix quadratic_tangent_at_identity(int n, double mu, Rng& rng, bool on_boundary) {
  const double tau = rng.uniform(0.5, 2.0);
  const double rho_max = tau * std::sqrt((n - mu) / (n * mu));
  const double rho = on_boundary ? rho_max : rho_max * rng.uniform();
  Matrix w = rho * random_traceless_unit(n, rng);
  w.diagonal().array() += tau / n;
  return w;
}

Matrix push_forward(const SpdMatrix& sigma, const Matrix& w) {
  const Matrix s = matrix_function(sigma, MatrixFunction::sqrt());
  return s * w * s;
}

}  // namespace

SymTangent sample_cone_tangent(const ConeSpec& spec, const SpdMatrix& sigma, Rng& rng,
                               bool on_boundary) {
  require_same_dim(spec.dim(), sigma.dim(), "sample_cone_tangent");
  const int n = spec.dim();
  switch (spec.kind()) {
    case ConeKind::QuadraticAffine:
      return SymTangent::symmetric_part(
          push_forward(sigma, quadratic_tangent_at_identity(n, spec.mu(), rng, on_boundary)));
    case ConeKind::QuadraticTranslation:
      return SymTangent::symmetric_part(
          quadratic_tangent_at_identity(n, spec.mu(), rng, on_boundary));
    case ConeKind::Loewner: {
      const Matrix v = random_orthogonal(n, rng);
      Vector d(n);
      for (int i = 0; i < n; ++i) d(i) = std::abs(rng.normal()) + 0.05;
      if (on_boundary) d(rng.uniform_int(0, n - 1)) = 0.0;
      return SymTangent::symmetric_part(v * d.asDiagonal() * v.transpose());
    }
    case ConeKind::HalfSpaceAffine: {
      const double tau = on_boundary ? 0.0 : rng.uniform(0.5, 2.0);
      Matrix w = 3.0 * std::abs(rng.normal()) * random_traceless_unit(n, rng);
      w.diagonal().array() += tau / n;
      return SymTangent::symmetric_part(push_forward(sigma, w));
    }
    case ConeKind::RayAffine:
      return SymTangent::symmetric_part(rng.uniform(0.5, 2.0) * sigma.matrix());
  }
  return SymTangent::zero(n);
}

Vector sample_spectral_vector(const SpectralCone& cone, Rng& rng, bool on_boundary) {
  const int n = cone.dim();
  const double tau = rng.uniform(0.5, 2.0);
  const double rho_max = tau * std::sqrt((n - cone.mu()) / (n * cone.mu()));
  const double rho = on_boundary ? rho_max : rho_max * rng.uniform();
  Vector p(n);
  for (int i = 0; i < n; ++i) p(i) = rng.normal();
  p.array() -= p.mean();
  const double pn = p.norm();
  if (pn > 0.0) p /= pn;
  return Vector::Constant(n, tau / n) + rho * p;
}

}  // namespace spdorder
