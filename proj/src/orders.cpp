#include "spdorder/orders.hpp"

#include <algorithm>
#include <cmath>

#include "spdorder/geometry.hpp"

namespace spdorder {

const char* to_string(Relation r) {
  switch (r) {
    case Relation::LessEqual: return "less_equal";
    case Relation::GreaterEqual: return "greater_equal";
    case Relation::Equal: return "equal";
    case Relation::Incomparable: return "incomparable";
  }
  return "unknown";
}

namespace {

OrderVerdict make_verdict(double fwd, double rev, double tol) {
  OrderVerdict v;
  v.forward_margin = fwd;
  v.reverse_margin = rev;
  const bool f = fwd >= -tol;
  const bool r = rev >= -tol;
  if (f && r) {
    v.relation = Relation::Equal;
  } else if (f) {
    v.relation = Relation::LessEqual;
  } else if (r) {
    v.relation = Relation::GreaterEqual;
  } else {
    v.relation = Relation::Incomparable;
  }
  return v;
}

bool nearly_equal(const SpdMatrix& a, const SpdMatrix& b) {
  const double scale = std::max(a.matrix().norm(), b.matrix().norm());
  return (a.matrix() - b.matrix()).norm() <= 1e-10 * scale;
}

}  // namespace

Vector order_log_spectrum(const SpdMatrix& s1, const SpdMatrix& s2) {
  return whitened(s1, s2).spectrum().values.array().log().matrix();
}

Vector order_log_spectrum_product(const SpdMatrix& s1, const SpdMatrix& s2) {
  require_same_dim(s1.dim(), s2.dim(), "order_log_spectrum_product");
  const Matrix prod = s2.matrix() * matrix_function(s1, MatrixFunction::inv());
  Eigen::EigenSolver<Matrix> solver(prod, false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "general eigensolver did not converge");
  }
  Vector vals = solver.eigenvalues().real();
  std::sort(vals.data(), vals.data() + vals.size());
  if (vals(0) <= 0.0) {
    throw Error(ErrorKind::IllConditioned, "S2 S1^-1 has a nonpositive eigenvalue estimate");
  }
  return vals.array().log().matrix();
}

OrderVerdict order_compare(const ConeSpec& spec, const SpdMatrix& s1, const SpdMatrix& s2,
                           double tol) {
  require_same_dim(s1.dim(), s2.dim(), "order_compare");
  require_same_dim(spec.dim(), s1.dim(), "order_compare (spec)");
  const int n = s1.dim();

  if (nearly_equal(s1, s2)) return make_verdict(0.0, 0.0, tol);

  switch (spec.kind()) {
    case ConeKind::QuadraticAffine: {
      const SpectralCone cone(n, spec.mu());
      const Vector l = order_log_spectrum(s1, s2);
      const double fwd = spectral_membership(cone, l, tol).margin;
      const double rev = spectral_membership(cone, -l, tol).margin;
      return make_verdict(fwd, rev, tol);
    }
    case ConeKind::QuadraticTranslation: {
      const SpectralCone cone(n, spec.mu());
      const Vector d = sym_eig(s2.matrix() - s1.matrix()).values;
      const double fwd = spectral_membership(cone, d, tol).margin;
      const double rev = spectral_membership(cone, -d, tol).margin;
      return make_verdict(fwd, rev, tol);
    }
    case ConeKind::Loewner: {
      const Matrix d = s2.matrix() - s1.matrix();
      const double dn = d.norm();
      const Vector ev = sym_eig(d).values;
      return make_verdict(ev(0) / dn, -ev(n - 1) / dn, tol);
    }
    case ConeKind::HalfSpaceAffine: {
      const double diff = det_leaf(s2) - det_leaf(s1);
      return make_verdict(diff, -diff, tol);
    }
    case ConeKind::RayAffine: {
      const Matrix s1inv = matrix_function(s1, MatrixFunction::inv());
      const double c = (s1inv * s2.matrix()).trace() / n;
      const double dev = (s2.matrix() - c * s1.matrix()).norm() / s2.matrix().norm();
      const double lc = std::log(c);
      return make_verdict(std::min(lc, -dev), std::min(-lc, -dev), tol);
    }
  }
  return make_verdict(-1.0, -1.0, tol);
}

OrderVerdict loewner_compare_affine(const SpdMatrix& s1, const SpdMatrix& s2, double tol) {
  require_same_dim(s1.dim(), s2.dim(), "loewner_compare_affine");
  if (nearly_equal(s1, s2)) return make_verdict(0.0, 0.0, tol);
  // log W in the psd cone at I, i.e. W - I psd, i.e. the smallest log-eigenvalue >= 0.
  const Vector l = order_log_spectrum(s1, s2);
  const double ln = l.norm();
  return make_verdict(l(0) / ln, -l(l.size() - 1) / ln, tol);
}

double conal_path_min_margin(const ConeSpec& spec, const SpdMatrix& s1, const SpdMatrix& s2,
                             int samples, double tol) {
  require_same_dim(s1.dim(), s2.dim(), "conal_path_oracle");
  require_same_dim(spec.dim(), s1.dim(), "conal_path_oracle (spec)");
  if (samples < 2) throw Error(ErrorKind::InvalidParameters, "conal_path_oracle needs samples >= 2");

  double worst = 1.0;
  if (spec.is_translation_invariant()) {
    const SymTangent velocity = SymTangent::symmetric_part(s2.matrix() - s1.matrix());
    for (int k = 0; k < samples; ++k) {
      const double t = static_cast<double>(k) / (samples - 1);
      const SpdMatrix point = SpdMatrix::derived((1.0 - t) * s1.matrix() + t * s2.matrix());
      worst = std::min(worst, cone_membership(spec, point, velocity, tol).margin);
    }
    return worst;
  }

  const SpdMatrix w = whitened(s1, s2);
  const Matrix sq = matrix_function(s1, MatrixFunction::sqrt());
  for (int k = 0; k < samples; ++k) {
    const double t = static_cast<double>(k) / (samples - 1);
    const Matrix wt = w.map([t](double x) { return std::exp(t * std::log(x)); });
    const Matrix lwt = w.map([t](double x) {
      const double l = std::log(x);
      return l * std::exp(t * l);
    });
    const SpdMatrix point = SpdMatrix::derived(sq * wt * sq);
    const SymTangent velocity = SymTangent::symmetric_part(sq * lwt * sq);
    worst = std::min(worst, cone_membership(spec, point, velocity, tol).margin);
  }
  return worst;
}

bool conal_path_oracle(const ConeSpec& spec, const SpdMatrix& s1, const SpdMatrix& s2,
                       int samples, double tol) {
  return conal_path_min_margin(spec, s1, s2, samples, tol) >= -10.0 * tol;
}

namespace {

SpdMatrix path_point(const ConeSpec& spec, const SpdMatrix& s1, const SpdMatrix& s2, double t) {
  if (spec.is_translation_invariant()) {
    return SpdMatrix::derived((1.0 - t) * s1.matrix() + t * s2.matrix());
  }
  return geodesic(s1, s2, t);
}

bool between(const ConeSpec& spec, const SpdMatrix& lo, const SpdMatrix& s, const SpdMatrix& hi,
             double tol) {
  return order_compare(spec, lo, s, tol).forward() && order_compare(spec, s, hi, tol).forward();
}

}  // namespace

std::vector<SpdMatrix> order_interval_sample(const ConeSpec& spec, const SpdMatrix& s1,
                                             const SpdMatrix& s2, std::uint64_t seed,
                                             int count, double tol) {
  if (count < 1) throw Error(ErrorKind::InvalidParameters, "order_interval_sample needs count >= 1");
  if (!order_compare(spec, s1, s2, tol).forward()) {
    throw Error(ErrorKind::NotOrdered, "order_interval_sample: endpoints are not ordered");
  }
  const int n = s1.dim();
  std::vector<SpdMatrix> out;
  out.reserve(count);

  const SpdMatrix mid = path_point(spec, s1, s2, 0.5);
  const SpdMatrix& first = between(spec, s1, mid, s2, tol) ? mid : s1;
  out.push_back(first);

  for (int k = 1; k < count; ++k) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const double t = rng.uniform(0.05, 0.95);
    const SpdMatrix base = path_point(spec, s1, s2, t);
    bool accepted = false;
    double eps = 0.2;
    for (int attempt = 0; attempt < 16 && !accepted; ++attempt, eps *= 0.5) {
      Matrix a = Matrix::Identity(n, n) + eps * random_traceless_unit(n, rng) +
                 eps * rng.normal() / n * Matrix::Identity(n, n);
      const SpdMatrix candidate = SpdMatrix::derived(a * base.matrix() * a.transpose());
      if (between(spec, s1, candidate, s2, tol)) {
        out.push_back(candidate);
        accepted = true;
      }
    }
    if (!accepted) out.push_back(between(spec, s1, base, s2, tol) ? base : first);
  }
  return out;
}

SpdMatrix random_successor(const ConeSpec& spec, const SpdMatrix& sigma, Rng& rng,
                           bool on_boundary) {
  require_same_dim(spec.dim(), sigma.dim(), "random_successor");
  const int n = sigma.dim();
  const SpdMatrix id = SpdMatrix::identity(n);
  const SymTangent dir = sample_cone_tangent(spec, id, rng, on_boundary);
  const double step = rng.uniform(0.1, 1.5);

  if (spec.kind() == ConeKind::QuadraticTranslation) {
    const double dnorm = sym_eig(dir.matrix()).values.cwiseAbs().maxCoeff();
    const double room = sigma.spectrum().values(0);
    const double s = dnorm > 0.0 ? step * 0.5 * room / dnorm : 0.0;
    return SpdMatrix::derived(sigma.matrix() + s * dir.matrix());
  }
  const Matrix sq = matrix_function(sigma, MatrixFunction::sqrt());
  const double dn = dir.norm();
  const SpdMatrix e = expm(dn > 0.0 ? (step / dn) * dir : dir);
  return SpdMatrix::derived(sq * e.matrix() * sq);
}

}  // namespace spdorder
