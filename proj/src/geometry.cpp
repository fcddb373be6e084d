#include "spdorder/geometry.hpp"

#include <cmath>
#include <sstream>

namespace spdorder {

double inner_product(const MetricSpec& m, const SpdMatrix& sigma, const SymTangent& x,
                     const SymTangent& y) {
  require_same_dim(sigma.dim(), x.dim(), "inner_product");
  require_same_dim(sigma.dim(), y.dim(), "inner_product");
  const int n = sigma.dim();
  if (!(m.mu_metric > -1.0 / n)) {
    std::ostringstream os;
    os << "metric parameter " << m.mu_metric << " must exceed -1/" << n;
    throw Error(ErrorKind::InvalidParameters, os.str());
  }
  const Matrix sinv = matrix_function(sigma, MatrixFunction::inv());
  const Matrix a = sinv * x.matrix();
  const Matrix b = sinv * y.matrix();
  // tr(AB) without forming the product.
  const double cross = (a.transpose().array() * b.array()).sum();
  return cross + m.mu_metric * a.trace() * b.trace();
}

SpdMatrix whitened(const SpdMatrix& s1, const SpdMatrix& s2) {
  require_same_dim(s1.dim(), s2.dim(), "whitened");
  const Matrix isq = matrix_function(s1, MatrixFunction::power(-0.5));
  return SpdMatrix::derived(isq * s2.matrix() * isq);
}

SpdMatrix geodesic(const SpdMatrix& s1, const SpdMatrix& s2, double t) {
  const SpdMatrix w = whitened(s1, s2);
  const Matrix sq = matrix_function(s1, MatrixFunction::sqrt());
  const Matrix wt = w.map([t](double x) { return std::exp(t * std::log(x)); });
  return SpdMatrix::derived(sq * wt * sq);
}

SymTangent geodesic_velocity(const SpdMatrix& s1, const SpdMatrix& s2, double t) {
  const SpdMatrix w = whitened(s1, s2);
  const Matrix sq = matrix_function(s1, MatrixFunction::sqrt());
  // L exp(tL) shares the eigenbasis of W.
  const Matrix lw = w.map([t](double x) {
    const double l = std::log(x);
    return l * std::exp(t * l);
  });
  return SymTangent::symmetric_part(sq * lw * sq);
}

SpdMatrix riemannian_exp(const SpdMatrix& sigma, const SymTangent& x) {
  require_same_dim(sigma.dim(), x.dim(), "riemannian_exp");
  const Matrix sq = matrix_function(sigma, MatrixFunction::sqrt());
  const Matrix isq = matrix_function(sigma, MatrixFunction::power(-0.5));
  const SpdMatrix e = expm(SymTangent::symmetric_part(isq * x.matrix() * isq));
  return SpdMatrix::derived(sq * e.matrix() * sq);
}

SymTangent riemannian_log(const SpdMatrix& s1, const SpdMatrix& s2) {
  const SpdMatrix w = whitened(s1, s2);
  const Matrix sq = matrix_function(s1, MatrixFunction::sqrt());
  return SymTangent::symmetric_part(sq * logm(w).matrix() * sq);
}

SpdMatrix geometric_mean(const SpdMatrix& s1, const SpdMatrix& s2) {
  const SpdMatrix w = whitened(s1, s2);
  const Matrix sq = matrix_function(s1, MatrixFunction::sqrt());
  return SpdMatrix::derived(sq * matrix_function(w, MatrixFunction::sqrt()) * sq);
}

double riemannian_distance(const SpdMatrix& s1, const SpdMatrix& s2) {
  return whitened(s1, s2).spectrum().values.array().log().matrix().norm();
}

double det_leaf(const SpdMatrix& sigma) { return log_det(sigma); }

}  // namespace spdorder
