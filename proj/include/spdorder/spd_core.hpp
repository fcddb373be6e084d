#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

#include "spdorder/error.hpp"

namespace spdorder {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Relative asymmetry accepted on input: |a_ij - a_ji| <= kSymmetryTol * (1 + max|a|).
inline constexpr double kSymmetryTol = 1e-12;
/// Definiteness floor: lambda_min > n * kDefiniteTol * lambda_max.
inline constexpr double kDefiniteTol = 1e-12;
/// Default evaluation tolerance for cone and order predicates.
inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kMaxDimension = 64;

/// Eigendecomposition of a symmetric matrix, eigenvalues ascending.
struct Spectrum {
  Vector values;
  Matrix vectors;

  int dim() const { return static_cast<int>(values.size()); }
  Matrix reconstruct() const;
  /// V f(Lambda) V^T, exactly symmetrized.
  Matrix map(const std::function<double(double)>& f) const;
};

/// Symmetric eigensolver. Throws ConvergenceFailure if the solver does not converge.
Spectrum sym_eig(const Matrix& a);

Matrix symmetrize(const Matrix& a);
double relative_error(const Matrix& actual, const Matrix& expected);

/// A symmetric matrix used as a tangent vector.
class SymTangent {
 public:
  SymTangent() = default;

  /// Checks symmetry to kSymmetryTol and stores the symmetric part.
  static SymTangent from(const Matrix& raw);
  /// Stores (A + A^T)/2 without a tolerance check; for results that are symmetric
  /// up to rounding.
  static SymTangent symmetric_part(const Matrix& a);
  static SymTangent zero(int n);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double norm() const { return m_.norm(); }
  double trace() const { return m_.trace(); }

  SymTangent operator+(const SymTangent& o) const { return symmetric_part(m_ + o.m_); }
  SymTangent operator-(const SymTangent& o) const { return symmetric_part(m_ - o.m_); }
  SymTangent operator*(double s) const { return symmetric_part(s * m_); }
  SymTangent operator-() const { return symmetric_part(-m_); }

 private:
  explicit SymTangent(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

inline SymTangent operator*(double s, const SymTangent& x) { return x * s; }

/// A validated symmetric positive definite matrix. Immutable; the
/// eigendecomposition computed during validation is kept alongside the entries.
class SpdMatrix {
 public:
  /// Validates user input. Errors: DimensionMismatch (not square), NonFinite,
  /// NotSymmetric, NotPositiveDefinite.
  static SpdMatrix validate(const Matrix& raw);

  /// Wraps an intermediate result. Same invariants as validate, but a failed
  /// definiteness test raises IllConditioned: the inputs were fine, the
  /// computation left the representable range.
  static SpdMatrix derived(const Matrix& a);

  /// Builds V diag(values) V^T from a spectrum with positive values.
  static SpdMatrix from_spectrum(const Vector& values, const Matrix& vectors);

  static SpdMatrix identity(int n);

  const Matrix& matrix() const { return m_; }
  const Spectrum& spectrum() const { return spec_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double condition() const { return spec_.values(spec_.dim() - 1) / spec_.values(0); }

  /// V f(Lambda) V^T for an arbitrary scalar function.
  Matrix map(const std::function<double(double)>& f) const { return spec_.map(f); }

 private:
  SpdMatrix(Matrix m, Spectrum s) : m_(std::move(m)), spec_(std::move(s)) {}
  static SpdMatrix checked(Matrix sym, ErrorKind on_failure);

  Matrix m_;
  Spectrum spec_;
};

/// Scalar functions applied through the eigendecomposition.
struct MatrixFunction {
  enum class Kind { Sqrt, Log, Inv, Power };
  Kind kind = Kind::Sqrt;
  double exponent = 1.0;

  static MatrixFunction sqrt() { return {Kind::Sqrt, 0.5}; }
  static MatrixFunction log() { return {Kind::Log, 0.0}; }
  static MatrixFunction inv() { return {Kind::Inv, -1.0}; }
  static MatrixFunction power(double r) { return {Kind::Power, r}; }

  double operator()(double x) const;
};

/// V f(Lambda) V^T.
Matrix matrix_function(const SpdMatrix& a, MatrixFunction f);

SpdMatrix sqrtm(const SpdMatrix& a);
SpdMatrix inv_sqrtm(const SpdMatrix& a);
SpdMatrix inverse(const SpdMatrix& a);
SpdMatrix powm(const SpdMatrix& a, double r);
SymTangent logm(const SpdMatrix& a);
/// Matrix exponential of a symmetric matrix.
SpdMatrix expm(const SymTangent& x);

double log_det(const SpdMatrix& a);

/// tau_A(Sigma) = A Sigma A^T. Throws SingularTransform when
/// |det A| <= 1e-12 * ||A||_F^n.
SpdMatrix congruence(const Matrix& a, const SpdMatrix& sigma);

/// exp(scale * S) with S the symmetric part of an i.i.d. standard normal
/// matrix. Deterministic in (n, seed, scale).
SpdMatrix random_spd(int n, std::uint64_t seed, double scale = 1.0);

void require_same_dim(int a, int b, const char* what);

}  // namespace spdorder
