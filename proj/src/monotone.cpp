#include "spdorder/monotone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spdorder/geometry.hpp"
#include "spdorder/orders.hpp"

namespace spdorder {

SmoothMap SmoothMap::power(double r) {
  if (!std::isfinite(r)) throw Error(ErrorKind::InvalidParameters, "power exponent must be finite");
  return SmoothMap(Kind::Power, r, Matrix(), true);
}

SmoothMap SmoothMap::inversion() { return SmoothMap(Kind::Inversion, -1.0, Matrix(), true); }

SmoothMap SmoothMap::congruence(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::DimensionMismatch, "congruence matrix must be square");
  const int n = static_cast<int>(a.rows());
  if (std::abs(a.determinant()) <= 1e-12 * std::pow(a.norm(), n)) {
    throw Error(ErrorKind::SingularTransform, "congruence matrix is singular");
  }
  return SmoothMap(Kind::Congruence, 0.0, a, true);
}

SmoothMap SmoothMap::scaling(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw Error(ErrorKind::InvalidParameters, "scaling factor must be positive");
  }
  return SmoothMap(Kind::Scaling, lambda, Matrix(), true);
}

SmoothMap SmoothMap::translation(const Matrix& c) {
  const SymTangent sym = SymTangent::from(c);
  const Vector ev = sym_eig(sym.matrix()).values;
  const bool psd = ev(0) >= -kDefiniteTol * std::max(1.0, ev.cwiseAbs().maxCoeff());
  return SmoothMap(Kind::Translation, 0.0, sym.matrix(), psd);
}

std::string SmoothMap::tag() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Power: os << "power:" << param_; break;
    case Kind::Inversion: os << "inv"; break;
    case Kind::Congruence: os << "congruence"; break;
    case Kind::Scaling: os << "scale:" << param_; break;
    case Kind::Translation: os << "translate"; break;
  }
  return os.str();
}

namespace {

void require_operand_dim(const SmoothMap& m, int n) {
  if ((m.kind() == SmoothMap::Kind::Congruence || m.kind() == SmoothMap::Kind::Translation) &&
      m.operand().rows() != n) {
    throw Error(ErrorKind::DimensionMismatch, "map operand dimension does not match the point");
  }
}

// (a^r - b^r) / (a - b), evaluated as b^{r-1} expm1(r l) / expm1(l) with
// l = log(a / b) to stay accurate for nearby eigenvalues.
double power_divided_difference(double a, double b, double r) {
  const double l = std::log(a / b);
  if (l == 0.0) return r * std::pow(b, r - 1.0);
  return std::pow(b, r - 1.0) * std::expm1(r * l) / std::expm1(l);
}

SymTangent power_differential(const SpdMatrix& sigma, double r, const SymTangent& x) {
  const Spectrum& s = sigma.spectrum();
  const int n = s.dim();
  Matrix xp = s.vectors.transpose() * x.matrix() * s.vectors;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      xp(i, j) *= power_divided_difference(s.values(i), s.values(j), r);
    }
  }
  return SymTangent::symmetric_part(s.vectors * xp * s.vectors.transpose());
}

Matrix matrix_power_int(const Matrix& a, int k) {
  Matrix out = Matrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

double relative_slack(double greater, double lesser) {
  const double scale = std::abs(greater) + std::abs(lesser);
  return scale > 0.0 ? (greater - lesser) / scale : 0.0;
}

}  // namespace

SpdMatrix apply_map(const SmoothMap& m, const SpdMatrix& sigma) {
  require_operand_dim(m, sigma.dim());
  switch (m.kind()) {
    case SmoothMap::Kind::Power: return powm(sigma, m.parameter());
    case SmoothMap::Kind::Inversion: return inverse(sigma);
    case SmoothMap::Kind::Congruence: return congruence(m.operand(), sigma);
    case SmoothMap::Kind::Scaling: return SpdMatrix::derived(m.parameter() * sigma.matrix());
    case SmoothMap::Kind::Translation: return SpdMatrix::derived(sigma.matrix() + m.operand());
  }
  return sigma;
}

SymTangent map_differential(const SmoothMap& m, const SpdMatrix& sigma, const SymTangent& x) {
  require_same_dim(sigma.dim(), x.dim(), "map_differential");
  require_operand_dim(m, sigma.dim());
  switch (m.kind()) {
    case SmoothMap::Kind::Power: return power_differential(sigma, m.parameter(), x);
    case SmoothMap::Kind::Inversion: {
      const Matrix inv = matrix_function(sigma, MatrixFunction::inv());
      return SymTangent::symmetric_part(-inv * x.matrix() * inv);
    }
    case SmoothMap::Kind::Congruence:
      return SymTangent::symmetric_part(m.operand() * x.matrix() * m.operand().transpose());
    case SmoothMap::Kind::Scaling: return m.parameter() * x;
    case SmoothMap::Kind::Translation: return x;
  }
  return x;
}

double differential_fd_error(const SmoothMap& m, const SpdMatrix& sigma, const SymTangent& x) {
  const double xn = x.norm();
  if (xn == 0.0) return 0.0;
  const double h = 1e-5 * sigma.matrix().norm();
  const Matrix unit = x.matrix() / xn;
  const SpdMatrix plus = SpdMatrix::derived(sigma.matrix() + h * unit);
  const SpdMatrix minus = SpdMatrix::derived(sigma.matrix() - h * unit);
  const Matrix fd =
      (apply_map(m, plus).matrix() - apply_map(m, minus).matrix()) * (xn / (2.0 * h));
  return relative_error(fd, map_differential(m, sigma, x).matrix());
}

double sylvester_residual(const SpdMatrix& sigma, int p, const SymTangent& x) {
  if (p < 1) throw Error(ErrorKind::InvalidParameters, "sylvester_residual needs p >= 1");
  const Matrix root = matrix_function(sigma, MatrixFunction::power(1.0 / p));
  const Matrix y = map_differential(SmoothMap::power(1.0 / p), sigma, x).matrix();
  Matrix acc = Matrix::Zero(sigma.dim(), sigma.dim());
  for (int j = 0; j < p; ++j) {
    acc += matrix_power_int(root, p - 1 - j) * y * matrix_power_int(root, j);
  }
  const double xn = x.norm();
  return xn > 0.0 ? (acc - x.matrix()).norm() / xn : acc.norm();
}

PositivityReport check_differential_positivity(const SmoothMap& m, const ConeSpec& spec,
                                               std::uint64_t seed, int n_points,
                                               int n_directions, double scale, double tol) {
  if (n_points < 1 || n_directions < 1) {
    throw Error(ErrorKind::InvalidParameters, "n_points and n_directions must be >= 1");
  }
  const int n = spec.dim();
  require_operand_dim(m, n);
  PositivityReport report{m.tag(), spec, 0, {}, 0, 1.0};
  for (int i = 0; i < n_points; ++i) {
    const std::uint64_t point_seed = derive_seed(seed, static_cast<std::uint64_t>(i));
    const SpdMatrix sigma = random_spd(n, point_seed, scale);
    const SpdMatrix image = apply_map(m, sigma);
    for (int j = 0; j < n_directions; ++j) {
      Rng rng(derive_seed(point_seed, static_cast<std::uint64_t>(j)));
      const SymTangent x = sample_cone_tangent(spec, sigma, rng, j % 2 == 0);
      const SymTangent y = map_differential(m, sigma, x);
      const MembershipReport out = cone_membership(spec, image, y, tol);
      ++report.samples_tested;
      report.min_output_margin = std::min(report.min_output_margin, out.margin);
      if (!out.inside) {
        ++report.violation_count;
        if (static_cast<int>(report.violations.size()) < PositivityReport::kMaxStoredViolations) {
          report.violations.push_back({sigma, x, out.margin});
        }
      }
    }
  }
  return report;
}

double trace_identity_residual(double r, const SpdMatrix& sigma, const SymTangent& x) {
  if (!(r > 0.0)) throw Error(ErrorKind::InvalidParameters, "trace identity needs r > 0");
  require_same_dim(sigma.dim(), x.dim(), "trace_identity_residual");
  const Matrix image_inv = matrix_function(sigma, MatrixFunction::power(-r));
  const Matrix y = map_differential(SmoothMap::power(r), sigma, x).matrix();
  const double lhs = (image_inv * y).trace();
  const double rhs = r * (matrix_function(sigma, MatrixFunction::inv()) * x.matrix()).trace();
  return std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
}

double power_trace_lemma_slack(const Matrix& a, const Matrix& b, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidParameters, "power trace lemma needs m >= 1");
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "power_trace_lemma_slack");
  const double lhs = matrix_power_int(a * b, 2 * m).trace();
  const double rhs = (matrix_power_int(a, 2 * m) * matrix_power_int(b, 2 * m)).trace();
  return relative_slack(rhs, lhs);
}

double shift_inequality_slack(const SpdMatrix& sigma, const SymTangent& x, int k) {
  if (k < 0) throw Error(ErrorKind::InvalidParameters, "shift inequality needs k >= 0");
  require_same_dim(sigma.dim(), x.dim(), "shift_inequality_slack");
  auto pw = [&](double r) { return matrix_function(sigma, MatrixFunction::power(r)); };
  const Matrix& xm = x.matrix();
  const double greater = (pw(-2.0 - k) * xm * pw(k) * xm).trace();
  const double lesser = (pw(-1.0 - k) * xm * pw(-1.0 + k) * xm).trace();
  return relative_slack(greater, lesser);
}

double trace_inequality_fuzz(TraceInequality kind, std::uint64_t seed, int count) {
  if (count < 1) throw Error(ErrorKind::InvalidParameters, "count must be >= 1");
  double worst = 1.0;
  for (int i = 0; i < count; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    const int n = rng.uniform_int(2, 5);
    double slack = 0.0;
    if (kind.kind == TraceInequality::Kind::PowerTraceLemma) {
      const Matrix a = random_symmetric(n, rng);
      const Matrix b = random_symmetric(n, rng);
      slack = power_trace_lemma_slack(a, b, kind.order);
    } else {
      const SpdMatrix sigma = random_spd(n, rng.next_seed(), 0.5);
      const SymTangent x = SymTangent::symmetric_part(random_symmetric(n, rng));
      slack = shift_inequality_slack(sigma, x, kind.order);
    }
    worst = std::min(worst, slack);
  }
  return worst;
}

ContractionWitness strict_contraction_witness(double mu, int n, double sigma1, double sigma2) {
  if (n < 2 || n > kMaxDimension) throw Error(ErrorKind::InvalidParameters, "witness needs n >= 2");
  if (!(mu > 0.0 && mu < n)) throw Error(ErrorKind::InvalidParameters, "mu must lie in (0, n)");
  if (!(sigma2 > 0.0 && sigma1 >= sigma2) || !std::isfinite(sigma1)) {
    throw Error(ErrorKind::InvalidParameters, "witness needs sigma1 >= sigma2 > 0");
  }
  Vector diag = Vector::Ones(n);
  diag(0) = sigma1;
  diag(1) = sigma2;
  const double delta = std::sqrt(n * (n - mu) * sigma1 * sigma2 / (2.0 * mu));
  Matrix x = diag.asDiagonal();
  x(0, 1) = delta;
  x(1, 0) = delta;
  const SpdMatrix sigma = SpdMatrix::validate(diag.asDiagonal().toDenseMatrix());
  const Vector inv = diag.cwiseInverse();
  const Matrix sx = inv.asDiagonal() * x;
  const double mixed = (sx * sx).trace();
  const double squared = (inv.cwiseProduct(inv).asDiagonal() * x * x).trace();
  const double slack = squared - mixed;
  return {sigma, SymTangent::from(x), delta, sigma1 > sigma2 && slack > 0.0, slack};
}

std::optional<Counterexample> counterexample_from_violation(const SmoothMap& m,
                                                            const ConeSpec& spec,
                                                            const SpdMatrix& sigma,
                                                            const SymTangent& x, double tol) {
  const double wn = spec.is_translation_invariant()
                        ? x.norm()
                        : (matrix_function(sigma, MatrixFunction::inv()) * x.matrix()).norm();
  if (wn == 0.0) return std::nullopt;
  const SymTangent unit = (1.0 / wn) * x;
  for (const double eps : {1e-1, 1e-2, 1e-3}) {
    try {
      const SpdMatrix upper = spec.is_translation_invariant()
                                  ? SpdMatrix::derived(sigma.matrix() + eps * unit.matrix())
                                  : riemannian_exp(sigma, eps * unit);
      if (!order_compare(spec, sigma, upper, tol).forward()) continue;
      const OrderVerdict image = order_compare(spec, apply_map(m, sigma), apply_map(m, upper), tol);
      if (!image.forward()) {
        std::optional<Matrix> offset;
        if (m.kind() == SmoothMap::Kind::Translation) offset = m.operand();
        return Counterexample{sigma, upper, offset, image.forward_margin};
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IllConditioned) throw;
    }
  }
  return std::nullopt;
}

namespace {

template <typename MapFor>
SearchOutcome run_search(const ConeSpec& spec, std::uint64_t seed, int budget, double tol,
                         MapFor&& map_for) {
  if (budget < 1) throw Error(ErrorKind::InvalidParameters, "budget must be >= 1");
  const int n = spec.dim();
  SearchOutcome out;
  for (int k = 0; k < budget; ++k) {
    ++out.evaluations;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    const SpdMatrix sigma = random_spd(n, rng.next_seed(), rng.uniform(0.2, 1.5));
    const SmoothMap m = map_for(rng);
    const SymTangent x = sample_cone_tangent(spec, sigma, rng, true);
    SpdMatrix image = sigma;
    try {
      image = apply_map(m, sigma);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IllConditioned) throw;
      continue;
    }
    const MembershipReport rep = cone_membership(spec, image, map_differential(m, sigma, x), tol);
    if (rep.inside) continue;
    if (auto found = counterexample_from_violation(m, spec, sigma, x, tol)) {
      out.witness = std::move(found);
      return out;
    }
  }
  return out;
}

}  // namespace

SearchOutcome search_monotonicity_counterexample(const SmoothMap& m, const ConeSpec& spec,
                                                 std::uint64_t seed, int budget, double tol) {
  require_operand_dim(m, spec.dim());
  return run_search(spec, seed, budget, tol, [&m](Rng&) { return m; });
}

SearchOutcome search_translation_counterexample(const ConeSpec& spec, std::uint64_t seed,
                                                int budget, double tol) {
  const int n = spec.dim();
  return run_search(spec, seed, budget, tol, [n](Rng& rng) {
    const Matrix g = random_gaussian(n, n, rng);
    return SmoothMap::translation(symmetrize(g * g.transpose()));
  });
}

}  // namespace spdorder
