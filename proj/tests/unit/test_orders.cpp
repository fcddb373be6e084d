#include <cmath>

#include "spdorder/geometry.hpp"
#include "spdorder/orders.hpp"
#include "test_helpers.hpp"

using namespace spdorder;
using test::diag;
using test::error_kind_of;

namespace {

std::vector<ConeSpec> all_specs(int n) {
  return {ConeSpec::quadratic_affine(n, 0.5), ConeSpec::quadratic_affine(n, n - 0.5),
          ConeSpec::quadratic_translation(n, n / 2.0), ConeSpec::loewner(n),
          ConeSpec::half_space(n), ConeSpec::ray(n)};
}

}  // namespace

TEST_CASE("scalar multiple of the identity is above the identity") {
  const OrderVerdict v = order_compare(ConeSpec::quadratic_affine(2, 1.0), SpdMatrix::identity(2),
                                       SpdMatrix::validate(std::exp(1.0) * Matrix::Identity(2, 2)));
  CHECK(v.relation == Relation::LessEqual);
  CHECK(v.forward_margin > 0.0);
  CHECK(v.reverse_margin < 0.0);
}

TEST_CASE("unimodular traceless-log pair is incomparable") {
  const double e = std::exp(1.0);
  const OrderVerdict v = order_compare(ConeSpec::quadratic_affine(2, 1.0), SpdMatrix::identity(2),
                                       SpdMatrix::validate(diag({e, 1.0 / e})));
  CHECK(v.relation == Relation::Incomparable);
  const OrderVerdict l = order_compare(ConeSpec::loewner(2), SpdMatrix::identity(2),
                                       SpdMatrix::validate(diag({2.0, 0.5})));
  CHECK(l.relation == Relation::Incomparable);
}

TEST_CASE("equal inputs are equal under every spec") {
  const SpdMatrix s = random_spd(3, 5, 1.0);
  for (const ConeSpec& spec : all_specs(3)) CHECK(order_compare(spec, s, s).relation == Relation::Equal);
}

TEST_CASE("half-space preorder compares determinants") {
  const SpdMatrix a = SpdMatrix::validate(diag({2.0, 0.5}));
  const SpdMatrix b = SpdMatrix::validate(diag({0.5, 2.0}));
  CHECK(order_compare(ConeSpec::half_space(2), a, b).relation == Relation::Equal);
  CHECK(order_compare(ConeSpec::half_space(2), a, SpdMatrix::validate(diag({3.0, 0.5}))).relation ==
        Relation::LessEqual);
}

TEST_CASE("ray order only relates scalar multiples") {
  const SpdMatrix s = random_spd(3, 6, 1.0);
  CHECK(order_compare(ConeSpec::ray(3), s, SpdMatrix::derived(1.5 * s.matrix())).relation ==
        Relation::LessEqual);
  CHECK(order_compare(ConeSpec::ray(3), SpdMatrix::derived(1.5 * s.matrix()), s).relation ==
        Relation::GreaterEqual);
  CHECK(order_compare(ConeSpec::ray(3), s, random_spd(3, 7, 1.0)).relation == Relation::Incomparable);
}

TEST_CASE("verdict invariants hold for every spec") {
  for (int k = 0; k < 300; ++k) {
    Rng rng(derive_seed(21, k));
    const int n = 2 + k % 4;
    const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
    for (const ConeSpec& spec : all_specs(n)) {
      const SpdMatrix b = k % 2 ? random_spd(n, rng.next_seed(), 1.0) : random_successor(spec, a, rng);
      const OrderVerdict v = order_compare(spec, a, b);
      if (v.relation == Relation::Equal) {
        CHECK(v.forward_margin >= -kDefaultTol);
        CHECK(v.reverse_margin >= -kDefaultTol);
      }
      if (v.relation == Relation::Incomparable) {
        CHECK(v.forward_margin < -kDefaultTol);
        CHECK(v.reverse_margin < -kDefaultTol);
      }
      // swapping arguments swaps the margins; the ray margin is measured
      // relative to the first argument and has no such symmetry
      if (spec.kind() == ConeKind::RayAffine) continue;
      const OrderVerdict w = order_compare(spec, b, a);
      CHECK(w.forward_margin == doctest::Approx(v.reverse_margin).epsilon(1e-6).scale(1e-9));
    }
  }
}

TEST_CASE("random successors are ordered after their seed point") {
  for (int k = 0; k < 300; ++k) {
    Rng rng(derive_seed(22, k));
    const int n = 2 + k % 4;
    const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
    for (const ConeSpec& spec : all_specs(n)) {
      CHECK(order_compare(spec, a, random_successor(spec, a, rng, k % 2 == 0)).forward());
    }
  }
}

TEST_CASE("reflexivity and transitivity over chains") {
  for (int k = 0; k < 1000; ++k) {
    Rng rng(derive_seed(23, k));
    const int n = 2 + k % 4;
    const ConeSpec spec = all_specs(n)[k % 6];
    const SpdMatrix s1 = random_spd(n, rng.next_seed(), 0.7);
    const SpdMatrix s2 = random_successor(spec, s1, rng, k % 3 == 0);
    const SpdMatrix s3 = random_successor(spec, s2, rng, k % 5 == 0);
    REQUIRE(order_compare(spec, s1, s1).forward());
    REQUIRE(order_compare(spec, s1, s2, 1e-9).forward());
    REQUIRE(order_compare(spec, s2, s3, 1e-9).forward());
    REQUIRE(order_compare(spec, s1, s3, 1e-9).forward());
  }
}

TEST_CASE("antisymmetry: a double order forces equality except for the half-space") {
  for (int k = 0; k < 500; ++k) {
    Rng rng(derive_seed(24, k));
    const int n = 2 + k % 4;
    const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
    // nearby points make near-double orders likely if antisymmetry failed
    const Matrix g = Matrix::Identity(n, n) + 1e-3 * random_gaussian(n, n, rng);
    const SpdMatrix b = congruence(g, a);
    for (const ConeSpec& spec : all_specs(n)) {
      if (!spec.is_pointed()) continue;
      const OrderVerdict v = order_compare(spec, a, b);
      if (v.forward() && v.reverse()) CHECK((a.matrix() - b.matrix()).norm() <= 1e-8);
    }
  }
  // unimodular congruences keep the determinant, so the wedge relates both ways
  const SpdMatrix a = random_spd(3, 1, 1.0);
  const SpdMatrix b = congruence(test::mat({{1, 0.3, 0}, {0, 1, 0}, {0, 0, 1}}), a);
  CHECK(order_compare(ConeSpec::half_space(3), a, b).relation == Relation::Equal);
  CHECK((a.matrix() - b.matrix()).norm() > 1e-3);
}

TEST_CASE("congruence invariance of the quadratic affine order") {
  for (int k = 0; k < 300; ++k) {
    Rng rng(derive_seed(25, k));
    const int n = 2 + k % 4;
    const ConeSpec spec = ConeSpec::quadratic_affine(n, rng.uniform(0.1, n - 0.1));
    const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
    const SpdMatrix b = k % 2 ? random_spd(n, rng.next_seed(), 1.0) : random_successor(spec, a, rng);
    const Matrix t = random_invertible(n, rng);
    const OrderVerdict v = order_compare(spec, a, b);
    const OrderVerdict w = order_compare(spec, congruence(t, a), congruence(t, b));
    if (std::abs(v.forward_margin) > 1e-8 && std::abs(v.reverse_margin) > 1e-8) {
      CHECK(v.relation == w.relation);
    }
    CHECK(v.forward_margin == doctest::Approx(w.forward_margin).epsilon(1e-7).scale(1e-9));
  }
}

TEST_CASE("determinant strictly increases along affine orders") {
  for (int k = 0; k < 300; ++k) {
    Rng rng(derive_seed(26, k));
    const int n = 2 + k % 4;
    const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
    for (const ConeSpec& spec : {ConeSpec::quadratic_affine(n, rng.uniform(0.1, n - 0.1)),
                                 ConeSpec::loewner(n), ConeSpec::ray(n)}) {
      const SpdMatrix b = random_successor(spec, a, rng, k % 2 == 0);
      CHECK(det_leaf(b) > det_leaf(a));
    }
  }
}

TEST_CASE("mu = 1 on 2x2 matrices: affine and translation orders coincide") {
  const ConeSpec aff = ConeSpec::quadratic_affine(2, 1.0);
  const ConeSpec tra = ConeSpec::quadratic_translation(2, 1.0);
  for (int k = 0; k < 1000; ++k) {
    Rng rng(derive_seed(27, k));
    const SpdMatrix a = random_spd(2, rng.next_seed(), 1.0);
    const SpdMatrix b = k % 2 ? random_spd(2, rng.next_seed(), 1.0) : random_successor(tra, a, rng);
    CHECK(order_compare(aff, a, b).relation == order_compare(tra, a, b).relation);
  }
}

TEST_CASE("log spectrum from the symmetric and the product routes agree") {
  for (int k = 0; k < 300; ++k) {
    const int n = 2 + k % 5;
    const SpdMatrix a = random_spd(n, 1000 + k, 1.0);
    const SpdMatrix b = random_spd(n, 2000 + k, 1.0);
    const Vector x = order_log_spectrum(a, b);
    const Vector y = order_log_spectrum_product(a, b);
    CHECK((x - y).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("conal path oracle basics") {
  const SpdMatrix s = random_spd(3, 4, 1.0);
  CHECK(conal_path_oracle(ConeSpec::quadratic_affine(3, 1.0), s, s, 10));
  const SpdMatrix up = SpdMatrix::derived(s.matrix() + Matrix::Identity(3, 3));
  CHECK(conal_path_oracle(ConeSpec::loewner(3), s, up, 10));
  CHECK_FALSE(conal_path_oracle(ConeSpec::loewner(3), up, s, 10));
  CHECK(error_kind_of([&] { conal_path_oracle(ConeSpec::loewner(3), s, up, 1); }) ==
        ErrorKind::InvalidParameters);
}

TEST_CASE("conal path oracle agrees with the spectral test for translation cones") {
  for (int k = 0; k < 200; ++k) {
    Rng rng(derive_seed(28, k));
    const int n = 2 + k % 4;
    const ConeSpec spec = ConeSpec::quadratic_translation(n, rng.uniform(0.1, n - 0.1));
    const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
    const SpdMatrix b = k % 2 ? random_spd(n, rng.next_seed(), 1.0) : random_successor(spec, a, rng);
    const OrderVerdict v = order_compare(spec, a, b);
    if (std::abs(v.forward_margin) <= 1e-9) continue;
    CHECK(v.forward() == conal_path_oracle(spec, a, b, 20));
  }
}

TEST_CASE("interval samples lie between their endpoints") {
  for (int k = 0; k < 60; ++k) {
    Rng rng(derive_seed(29, k));
    const int n = 2 + k % 4;
    const ConeSpec spec = all_specs(n)[k % 6];
    const SpdMatrix lo = random_spd(n, rng.next_seed(), 1.0);
    const SpdMatrix hi = random_successor(spec, lo, rng);
    const auto pts = order_interval_sample(spec, lo, hi, 99 + k, 6);
    CHECK(pts.size() == 6);
    for (const SpdMatrix& p : pts) {
      CHECK(order_compare(spec, lo, p).forward());
      CHECK(order_compare(spec, p, hi).forward());
    }
    if (!spec.is_translation_invariant()) {
      CHECK(relative_error(pts.front().matrix(), geometric_mean(lo, hi).matrix()) < 1e-12);
    }
  }
  // degenerate interval: both endpoints equal
  const SpdMatrix s = random_spd(3, 8, 1.0);
  CHECK(order_interval_sample(ConeSpec::quadratic_affine(3, 1.0), s, s, 1, 3).size() == 3);
}

TEST_CASE("interval sampling rejects unordered endpoints") {
  const double e = std::exp(1.0);
  CHECK(error_kind_of([&] {
          order_interval_sample(ConeSpec::quadratic_affine(2, 1.0), SpdMatrix::identity(2),
                                SpdMatrix::validate(diag({e, 1.0 / e})), 1, 2);
        }) == ErrorKind::NotOrdered);
}

TEST_CASE("dimension mismatch is reported") {
  CHECK(error_kind_of([] {
          order_compare(ConeSpec::loewner(2), SpdMatrix::identity(2), SpdMatrix::identity(3));
        }) == ErrorKind::DimensionMismatch);
}
