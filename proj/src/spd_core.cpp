#include "spdorder/spd_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "spdorder/random.hpp"

namespace spdorder {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotSymmetric: return "NotSymmetric";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::SingularTransform: return "SingularTransform";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::NotOrdered: return "NotOrdered";
    case ErrorKind::SpectrumDrift: return "SpectrumDrift";
    case ErrorKind::OutsideCone: return "OutsideCone";
    case ErrorKind::EmptySection: return "EmptySection";
    case ErrorKind::MismatchedTrajectories: return "MismatchedTrajectories";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

void require_same_dim(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimensions " << a << " and " << b << " differ";
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
}

Matrix symmetrize(const Matrix& a) { return 0.5 * (a + a.transpose()); }

double relative_error(const Matrix& actual, const Matrix& expected) {
  const double scale = expected.norm();
  const double diff = (actual - expected).norm();
  return scale > 0.0 ? diff / scale : diff;
}

Spectrum sym_eig(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "sym_eig: matrix is not square");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetrize(a));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorKind::ConvergenceFailure, "symmetric eigensolver did not converge");
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix Spectrum::reconstruct() const {
  return symmetrize(vectors * values.asDiagonal() * vectors.transpose());
}

Matrix Spectrum::map(const std::function<double(double)>& f) const {
  Vector fv = values.unaryExpr(f);
  return symmetrize(vectors * fv.asDiagonal() * vectors.transpose());
}

// --- SymTangent -------------------------------------------------------------

namespace {

void require_square_finite(const Matrix& raw, const char* what) {
  if (raw.rows() != raw.cols() || raw.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": matrix must be square and non-empty");
  }
  if (raw.rows() > kMaxDimension) {
    throw Error(ErrorKind::InvalidParameters, std::string(what) + ": dimension exceeds 64");
  }
  if (!raw.allFinite()) {
    throw Error(ErrorKind::NonFinite, std::string(what) + ": non-finite entry");
  }
}

void require_symmetric(const Matrix& raw, const char* what) {
  const double bound = kSymmetryTol * (1.0 + raw.cwiseAbs().maxCoeff());
  const double asym = (raw - raw.transpose()).cwiseAbs().maxCoeff();
  if (asym > bound) {
    std::ostringstream os;
    os << what << ": asymmetry " << asym << " exceeds " << bound;
    throw Error(ErrorKind::NotSymmetric, os.str());
  }
}

}  // namespace

SymTangent SymTangent::from(const Matrix& raw) {
  require_square_finite(raw, "SymTangent");
  require_symmetric(raw, "SymTangent");
  return SymTangent(symmetrize(raw));
}

SymTangent SymTangent::symmetric_part(const Matrix& a) { return SymTangent(symmetrize(a)); }

SymTangent SymTangent::zero(int n) { return SymTangent(Matrix::Zero(n, n)); }

// --- SpdMatrix --------------------------------------------------------------

SpdMatrix SpdMatrix::checked(Matrix sym, ErrorKind on_failure) {
  Spectrum s = sym_eig(sym);
  const int n = s.dim();
  const double lo = s.values(0);
  const double hi = s.values(n - 1);
  if (!(hi > 0.0) || !(lo > n * kDefiniteTol * hi)) {
    std::ostringstream os;
    os << "eigenvalue range [" << lo << ", " << hi << "] fails lambda_min > " << n
       << " * 1e-12 * lambda_max";
    throw Error(on_failure, os.str());
  }
  return SpdMatrix(std::move(sym), std::move(s));
}

SpdMatrix SpdMatrix::validate(const Matrix& raw) {
  require_square_finite(raw, "spd_validate");
  require_symmetric(raw, "spd_validate");
  return checked(symmetrize(raw), ErrorKind::NotPositiveDefinite);
}

SpdMatrix SpdMatrix::derived(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "derived SPD value is not square");
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::IllConditioned, "derived SPD value has non-finite entries");
  }
  return checked(symmetrize(a), ErrorKind::IllConditioned);
}

SpdMatrix SpdMatrix::from_spectrum(const Vector& values, const Matrix& vectors) {
  const int n = static_cast<int>(values.size());
  if (!values.allFinite()) {
    throw Error(ErrorKind::IllConditioned, "spectrum has non-finite values");
  }
  // Keep the ascending-order invariant when f reversed the order.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return values(a) < values(b); });
  Spectrum s{Vector(n), Matrix(vectors.rows(), n)};
  for (int k = 0; k < n; ++k) {
    s.values(k) = values(idx[k]);
    s.vectors.col(k) = vectors.col(idx[k]);
  }
  const double lo = s.values(0);
  const double hi = s.values(n - 1);
  if (!(hi > 0.0) || !(lo > n * kDefiniteTol * hi)) {
    std::ostringstream os;
    os << "eigenvalue range [" << lo << ", " << hi << "] leaves the well-conditioned SPD set";
    throw Error(ErrorKind::IllConditioned, os.str());
  }
  Matrix m = s.reconstruct();
  return SpdMatrix(std::move(m), std::move(s));
}

SpdMatrix SpdMatrix::identity(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw Error(ErrorKind::InvalidParameters, "identity: dimension out of range");
  }
  return SpdMatrix(Matrix::Identity(n, n), Spectrum{Vector::Ones(n), Matrix::Identity(n, n)});
}

// --- matrix functions -------------------------------------------------------

double MatrixFunction::operator()(double x) const {
  switch (kind) {
    case Kind::Sqrt: return std::sqrt(x);
    case Kind::Log: return std::log(x);
    case Kind::Inv: return 1.0 / x;
    case Kind::Power: return std::pow(x, exponent);
  }
  return x;
}

Matrix matrix_function(const SpdMatrix& a, MatrixFunction f) {
  return a.map([f](double x) { return f(x); });
}

namespace {

SpdMatrix spectral_spd(const SpdMatrix& a, const std::function<double(double)>& f) {
  const Spectrum& s = a.spectrum();
  return SpdMatrix::from_spectrum(s.values.unaryExpr(f), s.vectors);
}

}  // namespace

SpdMatrix sqrtm(const SpdMatrix& a) {
  return spectral_spd(a, [](double x) { return std::sqrt(x); });
}

SpdMatrix inv_sqrtm(const SpdMatrix& a) {
  return spectral_spd(a, [](double x) { return 1.0 / std::sqrt(x); });
}

SpdMatrix inverse(const SpdMatrix& a) {
  return spectral_spd(a, [](double x) { return 1.0 / x; });
}

SpdMatrix powm(const SpdMatrix& a, double r) {
  if (r == 1.0) return a;
  if (r == 0.0) return SpdMatrix::identity(a.dim());
  return spectral_spd(a, [r](double x) { return std::pow(x, r); });
}

SymTangent logm(const SpdMatrix& a) {
  return SymTangent::symmetric_part(a.map([](double x) { return std::log(x); }));
}

SpdMatrix expm(const SymTangent& x) {
  Spectrum s = sym_eig(x.matrix());
  return SpdMatrix::from_spectrum(s.values.array().exp().matrix(), s.vectors);
}

double log_det(const SpdMatrix& a) {
  Eigen::LLT<Matrix> llt(a.matrix());
  if (llt.info() == Eigen::Success) {
    const Matrix& l = llt.matrixL();
    double acc = 0.0;
    for (int i = 0; i < a.dim(); ++i) acc += std::log(l(i, i));
    return 2.0 * acc;
  }
  // Cholesky can only fail here through rounding; fall back on the cached spectrum.
  return a.spectrum().values.array().log().sum();
}

SpdMatrix congruence(const Matrix& a, const SpdMatrix& sigma) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "congruence: transform is not square");
  }
  require_same_dim(static_cast<int>(a.rows()), sigma.dim(), "congruence");
  const int n = sigma.dim();
  const double det = a.determinant();
  const double bound = 1e-12 * std::pow(a.norm(), n);
  if (!(std::abs(det) > bound)) {
    throw Error(ErrorKind::SingularTransform, "congruence: transform is singular");
  }
  return SpdMatrix::derived(a * sigma.matrix() * a.transpose());
}

SpdMatrix random_spd(int n, std::uint64_t seed, double scale) {
  if (n < 1 || n > kMaxDimension) {
    throw Error(ErrorKind::InvalidParameters, "random_spd: dimension out of range");
  }
  Rng rng(seed);
  Matrix s = random_symmetric(n, rng);
  return expm(SymTangent::symmetric_part(scale * s));
}

}  // namespace spdorder
