#pragma once

#include <cstdint>
#include <random>

#include "spdorder/spd_core.hpp"

namespace spdorder {

/// Stream splitting: a well-mixed seed for sample `index` of a run seeded
/// with `seed` (splitmix64 finalizer). Aggregates that derive every sample's
/// stream this way do not depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::uint64_t next_seed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

Matrix random_gaussian(int rows, int cols, Rng& rng);
/// Symmetric part of an i.i.d. standard normal matrix.
Matrix random_symmetric(int n, Rng& rng);
/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
Matrix random_orthogonal(int n, Rng& rng);
/// Q1 diag(exp(spread * g)) Q2 with random signs; condition number stays
/// bounded by exp(2 * spread * max|g|).
Matrix random_invertible(int n, Rng& rng, double spread = 0.5);
/// Unit-Frobenius-norm traceless symmetric matrix.
Matrix random_traceless_unit(int n, Rng& rng);

}  // namespace spdorder
