// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "spdorder/flows.hpp"
#include "spdorder/geometry.hpp"
#include "spdorder/monotone.hpp"
#include "spdorder/orders.hpp"
#include "spdorder/viz2.hpp"

using namespace spdorder;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<int> dims() { return {2, 3, 5}; }
std::vector<double> mus(int n) { return {0.5, n / 2.0, n - 0.5}; }

// Mixture of unrelated pairs, strictly ordered pairs and pairs near the
// boundary of the order (successor followed by a small random congruence).
std::pair<SpdMatrix, SpdMatrix> mixed_pair(const ConeSpec& spec, std::uint64_t seed, int k) {
  const int n = spec.dim();
  Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
  const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
  switch (k % 4) {
    case 0: return {a, random_spd(n, rng.next_seed(), 1.0)};
    case 1: return {a, random_successor(spec, a, rng, false)};
    case 2: {
      const SpdMatrix b = random_successor(spec, a, rng, true);
      const Matrix g = Matrix::Identity(n, n) + 0.01 * random_gaussian(n, n, rng);
      return {a, congruence(g, b)};
    }
    default: return {random_successor(spec, a, rng, false), a};
  }
}

Outcome ac1() {
  const auto start = std::chrono::steady_clock::now();
  int disagreements = 0, compared = 0, skipped = 0, ordered = 0;
  for (int n : dims()) {
    for (double mu : mus(n)) {
      const ConeSpec spec = ConeSpec::quadratic_affine(n, mu);
      for (int k = 0; k < 500; ++k) {
        const auto [a, b] = mixed_pair(spec, 1000 + n * 17 + static_cast<int>(mu * 4), k);
        const OrderVerdict v = order_compare(spec, a, b);
        if (std::abs(v.forward_margin) <= 1e-9) {
          ++skipped;
          continue;
        }
        ++compared;
        if (v.forward()) ++ordered;
        if (v.forward() != conal_path_oracle(spec, a, b, 100)) ++disagreements;
      }
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {disagreements == 0 && secs < 60.0,
          fmt("%d disagreements over %d pairs (%d ordered, %d in the 1e-9 band), %.1f s",
              disagreements, compared, ordered, skipped, secs)};
}

Outcome ac2() {
  int violations = 0, pairs = 0;
  double worst = 1.0;
  for (double r : {0.25, 0.5, 0.75, 1.0}) {
    const SmoothMap f = SmoothMap::power(r);
    for (int n : dims()) {
      for (double mu : mus(n)) {
        const ConeSpec spec = ConeSpec::quadratic_affine(n, mu);
        for (int k = 0; k < 100; ++k) {
          Rng rng(derive_seed(2000 + n * 31 + static_cast<int>(mu * 4), k));
          const SpdMatrix lo = random_spd(n, rng.next_seed(), 1.0);
          const SpdMatrix hi = random_successor(spec, lo, rng, k % 2 == 0);
          const auto mids = order_interval_sample(spec, lo, hi, rng.next_seed(), 5);
          for (const SpdMatrix& m : mids) {
            for (const auto& [p, q] : {std::pair{&lo, &m}, std::pair{&m, &hi}}) {
              const OrderVerdict v = order_compare(spec, apply_map(f, *p), apply_map(f, *q));
              worst = std::min(worst, v.forward_margin);
              ++pairs;
              if (v.forward_margin < -1e-9) ++violations;
            }
          }
        }
      }
    }
  }
  return {violations == 0,
          fmt("%d violations over %d ordered pairs, worst image margin %.3g", violations, pairs,
              worst)};
}

Outcome ac3() {
  const SmoothMap sq = SmoothMap::power(2.0);
  const SearchOutcome loew = search_monotonicity_counterexample(sq, ConeSpec::loewner(2), 3001);
  std::string detail = fmt("loewner n=2: %s after %d evaluations",
                           loew.found() ? "found" : "not found", loew.evaluations);
  int found = 0, total = 0;
  for (int n : dims()) {
    for (double mu : mus(n)) {
      const SearchOutcome s =
          search_monotonicity_counterexample(sq, ConeSpec::quadratic_affine(n, mu), 3100 + n);
      ++total;
      if (s.found()) ++found;
      detail += fmt("; quad n=%d mu=%g: %s/%d", n, mu, s.found() ? "found" : "none", s.evaluations);
    }
  }
  detail += fmt(" (%d/%d quadratic found)", found, total);
  return {loew.found(), detail};
}

double worst_pairing(const SpectralCone& a, const SpectralCone& b, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> xs, ys;
  for (int i = 0; i < 200; ++i) xs.push_back(sample_spectral_vector(a, rng, true));
  for (int i = 0; i < 200; ++i) ys.push_back(sample_spectral_vector(b, rng, true));
  double worst = 1.0;
  for (const Vector& x : xs) {
    for (const Vector& y : ys) worst = std::min(worst, x.dot(y) / (x.norm() * y.norm()));
  }
  return worst;
}

bool dual_inside(const SpectralCone& cone, std::uint64_t seed) {
  Rng rng(seed);
  const SpectralCone dual = dual_spectral_cone(cone);
  for (int i = 0; i < 200; ++i) {
    if (!spectral_membership(cone, sample_spectral_vector(dual, rng, true), 1e-9).inside) return false;
  }
  return true;
}

Outcome ac4() {
  bool ok = true;
  double worst_dual = 1.0, best_wider = -1.0;
  int self_dual_hits = 0, self_dual_misses = 0, seeds = 0;
  for (int n : dims()) {
    for (double mu : mus(n)) {
      const SpectralCone cone(n, mu);
      worst_dual = std::min(worst_dual, worst_pairing(cone, dual_spectral_cone(cone), 4000 + seeds++));
      const double wider_mu = n - mu - 0.25;
      if (wider_mu > 0.0) {
        const double w = worst_pairing(cone, SpectralCone(n, wider_mu), 4100 + seeds++);
        best_wider = std::max(best_wider, w);
        if (!(w < -1e-6)) ok = false;
      }
    }
    for (int step = 1; step < 4 * n; ++step) {
      const double mu = step * 0.25;
      const SpectralCone cone(n, mu);
      const bool self_dual =
          worst_pairing(cone, cone, 4200 + seeds++) >= -1e-9 && dual_inside(cone, 4300 + seeds++);
      const bool expected = std::abs(mu - n / 2.0) < 1e-12;
      if (self_dual == expected) {
        ++self_dual_hits;
      } else {
        ++self_dual_misses;
      }
    }
  }
  ok = ok && worst_dual >= -1e-9 && self_dual_misses == 0;
  return {ok, fmt("worst dual pairing %.3g; widened-cone witnesses all <= %.3g; self-duality "
                  "classified correctly at %d/%d mu values",
                  worst_dual, best_wider, self_dual_hits, self_dual_hits + self_dual_misses)};
}

Outcome ac5() {
  const ConeSpec aff = ConeSpec::quadratic_affine(2, 1.0);
  const ConeSpec tra = ConeSpec::quadratic_translation(2, 1.0);
  int mismatch = 0;
  for (int k = 0; k < 1000; ++k) {
    Rng rng(derive_seed(5000, k));
    const SpdMatrix a = random_spd(2, rng.next_seed(), 1.0);
    const SpdMatrix b = k % 2 ? random_spd(2, rng.next_seed(), 1.0) : random_successor(aff, a, rng);
    if (order_compare(aff, a, b).relation != order_compare(tra, a, b).relation) ++mismatch;
  }
  int loewner_mismatch = 0;
  for (int n : dims()) {
    const ConeSpec lw = ConeSpec::loewner(n);
    for (int k = 0; k < 1000; ++k) {
      Rng rng(derive_seed(5100 + n, k));
      const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
      const SpdMatrix b = k % 2 ? random_spd(n, rng.next_seed(), 1.0) : random_successor(lw, a, rng);
      if (order_compare(lw, a, b).relation != loewner_compare_affine(a, b).relation) ++loewner_mismatch;
    }
  }
  return {mismatch == 0 && loewner_mismatch == 0,
          fmt("mu=1 affine vs translation: %d mismatches / 1000; loewner affine vs plain: %d "
              "mismatches / 3000",
              mismatch, loewner_mismatch)};
}

Outcome ac6() {
  int not_increasing = 0;
  for (int k = 0; k < 100; ++k) {
    Rng rng(derive_seed(6000, k));
    const int n = dims()[k % 3];
    const ConeSpec spec = ConeSpec::quadratic_affine(n, rng.uniform(0.1, n - 0.1));
    const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
    const SpdMatrix b = random_successor(spec, a, rng);
    double prev = det_leaf(a);
    for (int i = 1; i < 100; ++i) {
      const double cur = det_leaf(geodesic(a, b, i / 99.0));
      if (!(cur > prev)) ++not_increasing;
      prev = cur;
    }
  }
  double worst_leaf = 0.0;
  for (int k = 0; k < 100; ++k) {
    Rng rng(derive_seed(6100, k));
    const int n = dims()[k % 3];
    const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
    SpdMatrix b = random_spd(n, rng.next_seed(), 1.0);
    b = SpdMatrix::derived(std::exp((det_leaf(a) - det_leaf(b)) / n) * b.matrix());
    const Matrix sq = matrix_function(a, MatrixFunction::sqrt());
    const SymTangent x = SymTangent::symmetric_part(sq * random_traceless_unit(n, rng) * sq);
    for (int i = 0; i < 100; ++i) {
      const double t = i / 99.0;
      worst_leaf = std::max(worst_leaf, std::abs(det_leaf(geodesic(a, b, t)) - det_leaf(a)));
      worst_leaf =
          std::max(worst_leaf, std::abs(det_leaf(riemannian_exp(a, (2.0 * t) * x)) - det_leaf(a)));
    }
  }
  return {not_increasing == 0 && worst_leaf <= 1e-9,
          fmt("%d non-increasing steps on 100 conal geodesics; worst log-det change on "
              "equal-determinant geodesics %.3g",
              not_increasing, worst_leaf)};
}

Outcome ac7() {
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    Rng rng(derive_seed(7000, k));
    const int n = rng.uniform_int(2, 5);
    const SpdMatrix s = random_spd(n, rng.next_seed(), 0.7);
    const SymTangent x = SymTangent::symmetric_part(random_symmetric(n, rng));
    SmoothMap m = SmoothMap::inversion();
    switch (k % 5) {
      case 0: m = SmoothMap::power(rng.uniform(-2.0, 3.0)); break;
      case 1: break;
      case 2: m = SmoothMap::congruence(random_invertible(n, rng)); break;
      case 3: m = SmoothMap::scaling(rng.uniform(0.1, 5.0)); break;
      default: {
        const Matrix g = random_gaussian(n, n, rng);
        m = SmoothMap::translation(g * g.transpose());
      }
    }
    worst = std::max(worst, differential_fd_error(m, s, x));
  }
  double worst_syl = 0.0;
  for (int k = 0; k < 200; ++k) {
    Rng rng(derive_seed(7100, k));
    const int n = rng.uniform_int(2, 5);
    const SpdMatrix s = random_spd(n, rng.next_seed(), 1.0);
    const SymTangent x = SymTangent::symmetric_part(random_symmetric(n, rng));
    worst_syl = std::max(worst_syl, sylvester_residual(s, 2 + k % 4, x));
  }
  return {worst <= 1e-6 && worst_syl <= 1e-8,
          fmt("worst finite-difference error %.3g over 1000 triples; worst Sylvester residual %.3g",
              worst, worst_syl)};
}

Outcome ac8() {
  double worst_id = 0.0;
  for (double r : {1.0 / 3.0, 0.5, 2.0, 3.7}) {
    for (int k = 0; k < 1000; ++k) {
      Rng rng(derive_seed(8000 + static_cast<int>(r * 10), k));
      const int n = rng.uniform_int(2, 5);
      const SpdMatrix s = random_spd(n, rng.next_seed(), 0.5);
      const SymTangent x = SymTangent::symmetric_part(random_symmetric(n, rng));
      worst_id = std::max(worst_id, trace_identity_residual(r, s, x));
    }
  }
  double worst_lemma = 1.0, worst_shift = 1.0;
  for (int m = 1; m <= 3; ++m) {
    worst_lemma = std::min(worst_lemma, trace_inequality_fuzz(
        {TraceInequality::Kind::PowerTraceLemma, m}, 8100 + m, 10000));
  }
  for (int k = 0; k <= 3; ++k) {
    worst_shift = std::min(worst_shift, trace_inequality_fuzz(
        {TraceInequality::Kind::ShiftInequality, k}, 8200 + k, 10000));
  }
  return {worst_id <= 1e-8 && worst_lemma >= -1e-10 && worst_shift >= -1e-10,
          fmt("identity residual %.3g; power-trace slack %.3g; shift slack %.3g", worst_id,
              worst_lemma, worst_shift)};
}

Outcome ac9() {
  double worst_drift = 0.0, worst_decrease = 0.0;
  for (FlowKind kind : {FlowKind::Toda, FlowKind::QR}) {
    for (int n : {3, 5, 8}) {
      Rng rng(derive_seed(9000 + n, kind == FlowKind::QR));
      const Matrix x0 = kind == FlowKind::QR ? random_spd(n, rng.next_seed(), 0.5).matrix()
                                             : Matrix(0.5 * random_symmetric(n, rng));
      const FlowTrajectory traj = integrate_flow(kind, x0, 10.0, 1e-3, 10);
      worst_drift = std::max(worst_drift, traj.max_drift);
      for (int r = 1; r <= n; ++r) {
        const auto ev = projected_eigenvalues(traj, r);
        for (std::size_t i = 1; i < ev.size(); ++i) {
          worst_decrease = std::max(worst_decrease, (ev[i - 1] - ev[i]).maxCoeff());
        }
      }
    }
  }
  std::string ratios;
  bool order_ok = true;
  for (FlowKind kind : {FlowKind::Toda, FlowKind::QR}) {
    Rng rng(derive_seed(9100, kind == FlowKind::QR));
    const Matrix x0 = kind == FlowKind::QR ? random_spd(4, rng.next_seed(), 0.7).matrix()
                                           : Matrix(random_symmetric(4, rng));
    const double h = 0.1;
    auto terminal = [&](double step) {
      return integrate_flow(kind, x0, 1.0, step, 1000000, 1.0).states.back();
    };
    const Matrix ref = terminal(h / 4);
    const double ratio = (terminal(h) - ref).norm() / (terminal(h / 2) - ref).norm();
    order_ok = order_ok && ratio >= 8.0 && ratio <= 32.0;
    ratios += fmt(" %s %.2f", to_string(kind), ratio);
  }
  return {worst_drift <= 1e-6 && worst_decrease <= 1e-8 && order_ok,
          fmt("max drift %.3g; worst projected decrease %.3g; step-halving ratio%s", worst_drift,
              worst_decrease, ratios.c_str())};
}

Outcome ac10() {
  double worst_sym = 0.0, worst_cong = 0.0;
  int between_fail = 0, mono_fail = 0, ordered = 0;
  for (int k = 0; k < 500; ++k) {
    Rng rng(derive_seed(10000, k));
    const int n = dims()[k % 3];
    const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
    const SpdMatrix b = random_spd(n, rng.next_seed(), 1.0);
    worst_sym = std::max(worst_sym, relative_error(geometric_mean(a, b).matrix(),
                                                   geometric_mean(b, a).matrix()));
    const Matrix t = random_invertible(n, rng);
    const Matrix lhs = geometric_mean(congruence(t.transpose(), a), congruence(t.transpose(), b)).matrix();
    const Matrix rhs = congruence(t.transpose(), geometric_mean(a, b)).matrix();
    worst_cong = std::max(worst_cong, relative_error(lhs, rhs));
  }
  for (int n : dims()) {
    for (double mu : mus(n)) {
      const ConeSpec spec = ConeSpec::quadratic_affine(n, mu);
      for (int k = 0; k < 500; ++k) {
        Rng rng(derive_seed(10100 + n * 7 + static_cast<int>(mu * 4), k));
        const SpdMatrix a = random_spd(n, rng.next_seed(), 1.0);
        const SpdMatrix b = random_successor(spec, a, rng, k % 3 == 0);
        const SpdMatrix m = geometric_mean(a, b);
        ++ordered;
        if (!order_compare(spec, a, m, 1e-9).forward() || !order_compare(spec, m, b, 1e-9).forward()) {
          ++between_fail;
        }
        const SpdMatrix c = random_spd(n, rng.next_seed(), 1.0);
        const bool first = k % 2 == 0;
        const SpdMatrix lo = first ? geometric_mean(a, c) : geometric_mean(c, a);
        const SpdMatrix hi = first ? geometric_mean(b, c) : geometric_mean(c, b);
        if (!order_compare(spec, lo, hi, 1e-9).forward()) ++mono_fail;
      }
    }
  }
  return {worst_sym <= 1e-9 && worst_cong <= 1e-8 && between_fail == 0 && mono_fail == 0,
          fmt("symmetry %.3g; congruence %.3g; betweenness failures %d/%d; monotonicity failures "
              "%d/%d",
              worst_sym, worst_cong, between_fail, ordered, mono_fail, ordered)};
}

Outcome ac11() {
  int violations = 0, pairs = 0;
  const ConeSpec spec = ConeSpec::half_space(3);
  for (double r : {0.5, 2.0, 3.7}) {
    const SmoothMap f = SmoothMap::power(r);
    int tested = 0;
    for (int k = 0; tested < 1000; ++k) {
      Rng rng(derive_seed(11000 + static_cast<int>(r * 10), k));
      const SpdMatrix a = random_spd(3, rng.next_seed(), 0.5);
      const SpdMatrix b = k % 2 ? random_spd(3, rng.next_seed(), 0.5)
                                : random_successor(spec, a, rng, k % 4 == 0);
      const OrderVerdict before = order_compare(spec, a, b);
      if (!before.forward()) continue;
      ++pairs;
      ++tested;
      if (order_compare(spec, apply_map(f, a), apply_map(f, b), 1e-9).forward_margin < -1e-9) {
        ++violations;
      }
    }
  }
  return {violations == 0, fmt("%d violations over %d determinant-ordered pairs", violations, pairs)};
}

Outcome ac12() {
  int disagreements = 0, compared = 0;
  for (int k = 0; k < 1000; ++k) {
    Rng rng(derive_seed(12000, k));
    const double mu = rng.uniform(0.05, 1.95);
    ConeSpec spec = ConeSpec::half_space(2);
    switch (k % 4) {
      case 0: spec = ConeSpec::quadratic_affine(2, mu); break;
      case 1: spec = ConeSpec::quadratic_translation(2, mu); break;
      case 2: spec = ConeSpec::loewner(2); break;
      default: break;
    }
    const SpdMatrix s = random_spd(2, rng.next_seed(), 1.0);
    const ConePoint3 p = phi(s);
    Vec3 d(rng.normal(), rng.normal(), rng.normal());
    if (k % 8 < 4) d += 2.0 * p.vec().normalized();  // bias toward the cone
    const MembershipReport abstract = cone_membership(spec, phi_inverse(p), phi_inverse_tangent(d));
    if (std::abs(abstract.margin) <= 1e-9) continue;
    ++compared;
    if (coordinate_membership(spec, p, d).inside() != abstract.inside) ++disagreements;
  }
  double worst_roundtrip = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const SpdMatrix s = random_spd(2, derive_seed(12100, k), 1.0);
    worst_roundtrip = std::max(worst_roundtrip, relative_error(phi_inverse(phi(s)).matrix(), s.matrix()));
  }
  return {disagreements == 0 && worst_roundtrip <= 1e-12,
          fmt("%d sign disagreements over %d samples; worst roundtrip error %.3g", disagreements,
              compared, worst_roundtrip)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"AC1 order test vs conal geodesic oracle", ac1},
      {"AC2 powers r<=1 preserve quadratic orders", ac2},
      {"AC3 squaring breaks the Loewner order", ac3},
      {"AC4 dual spectral cones and self-duality", ac4},
      {"AC5 mu=1 coincidence and Loewner forms", ac5},
      {"AC6 determinant foliation", ac6},
      {"AC7 analytic differentials", ac7},
      {"AC8 trace identities and inequalities", ac8},
      {"AC9 isospectral flows", ac9},
      {"AC10 geometric mean axioms", ac10},
      {"AC11 powers preserve the determinant preorder", ac11},
      {"AC12 2x2 coordinate formulas", ac12},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o{false, ""};
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
