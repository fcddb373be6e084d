#include "spdorder/random.hpp"

#include <cmath>

namespace spdorder {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix random_gaussian(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  // Fill in row-major order so the stream layout is easy to reason about.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = rng.normal();
  }
  return g;
}

Matrix random_symmetric(int n, Rng& rng) { return symmetrize(random_gaussian(n, n, rng)); }

Matrix random_orthogonal(int n, Rng& rng) {
  Matrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

Matrix random_invertible(int n, Rng& rng, double spread) {
  Matrix q1 = random_orthogonal(n, rng);
  Matrix q2 = random_orthogonal(n, rng);
  Vector d(n);
  for (int i = 0; i < n; ++i) {
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
    d(i) = sign * std::exp(spread * rng.normal());
  }
  return q1 * d.asDiagonal() * q2;
}

Matrix random_traceless_unit(int n, Rng& rng) {
  Matrix s = random_symmetric(n, rng);
  s.diagonal().array() -= s.trace() / n;
  const double nrm = s.norm();
  if (nrm == 0.0) return s;
  return s / nrm;
}

}  // namespace spdorder
