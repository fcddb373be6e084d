#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spdorder/cones.hpp"

namespace spdorder {

/// A smooth self-map of the SPD manifold with an analytic differential.
class SmoothMap {
 public:
  enum class Kind { Power, Inversion, Congruence, Scaling, Translation };

  /// Sigma -> Sigma^r.
  static SmoothMap power(double r);
  /// Sigma -> Sigma^-1.
  static SmoothMap inversion();
  /// Sigma -> A Sigma A^T. Throws SingularTransform for a singular A.
  static SmoothMap congruence(const Matrix& a);
  /// Sigma -> lambda Sigma, lambda > 0.
  static SmoothMap scaling(double lambda);
  /// Sigma -> Sigma + C with C symmetric. A C that is not positive
  /// semidefinite may leave the manifold; apply_map then raises IllConditioned.
  static SmoothMap translation(const Matrix& c);

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  const Matrix& operand() const { return operand_; }
  /// Short label: "power:0.5", "inv", "congruence", "scale:2", "translate".
  std::string tag() const;
  /// False for a translation by a matrix that is not positive semidefinite.
  bool preserves_definiteness() const { return preserves_; }

 private:
  SmoothMap(Kind kind, double param, Matrix operand, bool preserves)
      : kind_(kind), param_(param), operand_(std::move(operand)), preserves_(preserves) {}
  Kind kind_;
  double param_;
  Matrix operand_;
  bool preserves_;
};

SpdMatrix apply_map(const SmoothMap& m, const SpdMatrix& sigma);

/// df|_Sigma X. Powers use first divided differences in the eigenbasis of
/// Sigma; the other maps are linear or have a closed form.
SymTangent map_differential(const SmoothMap& m, const SpdMatrix& sigma, const SymTangent& x);

/// Relative Frobenius error between map_differential and a central
/// difference quotient with step 1e-5 ||Sigma||_F along X / ||X||_F.
double differential_fd_error(const SmoothMap& m, const SpdMatrix& sigma, const SymTangent& x);

/// For Y = d(Sigma^{1/p}) X: || sum_j R^{p-1-j} Y R^j - X ||_F / ||X||_F with
/// R = Sigma^{1/p}.
double sylvester_residual(const SpdMatrix& sigma, int p, const SymTangent& x);

struct Violation {
  SpdMatrix sigma;
  SymTangent direction;
  double output_margin;
};

struct PositivityReport {
  std::string map_tag;
  ConeSpec cone;
  int samples_tested = 0;
  /// The first kMaxStoredViolations witnesses; violation_count has the total.
  std::vector<Violation> violations;
  int violation_count = 0;
  double min_output_margin = 1.0;

  static constexpr int kMaxStoredViolations = 64;
};

/// Samples n_points base points (random_spd with the given scale) and
/// n_directions cone tangents at each, alternating boundary and interior
/// draws, and tests df X against the cone at f(Sigma). Each (point,
/// direction) sample has its own stream derived from the seed, so the result
/// does not depend on evaluation order.
PositivityReport check_differential_positivity(const SmoothMap& m, const ConeSpec& spec,
                                               std::uint64_t seed, int n_points,
                                               int n_directions, double scale = 1.0,
                                               double tol = kDefaultTol);

/// |tr(f_r(Sigma)^-1 df_r X) - r tr(Sigma^-1 X)| / (1 + |r tr(Sigma^-1 X)|).
double trace_identity_residual(double r, const SpdMatrix& sigma, const SymTangent& x);

/// Relative slack of tr[A^{2m} B^{2m}] - tr[(AB)^{2m}], divided by the sum
/// of the absolute values of both sides (zero when both vanish).
double power_trace_lemma_slack(const Matrix& a, const Matrix& b, int m);

/// Relative slack of tr(S^{-2-k} X S^k X) - tr(S^{-1-k} X S^{-1+k} X).
double shift_inequality_slack(const SpdMatrix& sigma, const SymTangent& x, int k);

struct TraceInequality {
  enum class Kind { PowerTraceLemma, ShiftInequality };
  Kind kind;
  /// m for the power-trace lemma (>= 1), k for the shift inequality (>= 0).
  int order;
};

/// Minimum relative slack over `count` random inputs with n in [2, 5].
/// Symmetric A, B for the lemma; SPD Sigma and symmetric X for the shift.
double trace_inequality_fuzz(TraceInequality kind, std::uint64_t seed, int count);

struct ContractionWitness {
  SpdMatrix sigma;
  SymTangent tangent;
  double delta;
  /// tr(S^-1 X S^-1 X) < tr(S^-2 X^2) strictly; false when sigma1 == sigma2.
  bool strict;
  /// tr(S^-2 X^2) - tr(S^-1 X S^-1 X).
  double slack;
};

/// Sigma = diag(sigma1, sigma2, 1, ..., 1) and X = Sigma with delta in
/// positions (0,1), (1,0), where delta^2 = n (n - mu) sigma1 sigma2 / (2 mu)
/// puts X on the boundary of the quadratic cone K^mu(Sigma).
/// Requires sigma1 >= sigma2 > 0 and 0 < mu < n.
ContractionWitness strict_contraction_witness(double mu, int n, double sigma1, double sigma2);

/// An ordered pair whose image under a map is no longer ordered.
struct Counterexample {
  SpdMatrix lower;
  SpdMatrix upper;
  /// Translation searches record the offending C here.
  std::optional<Matrix> offset;
  double image_margin;
};

struct SearchOutcome {
  std::optional<Counterexample> witness;
  int evaluations = 0;
  bool found() const { return witness.has_value(); }
};

/// Turns a differential violation (X in K(Sigma), df X outside K(f(Sigma)))
/// into an order-level pair Sigma <= Sigma' with f(Sigma) not <= f(Sigma'),
/// stepping along the conal curve with initial velocity X.
std::optional<Counterexample> counterexample_from_violation(const SmoothMap& m,
                                                            const ConeSpec& spec,
                                                            const SpdMatrix& sigma,
                                                            const SymTangent& x,
                                                            double tol = kDefaultTol);

/// Random restarts over base points and boundary cone directions; directions
/// whose image margin is negative are followed to an ordered pair. Stops at
/// the first confirmed pair or after `budget` evaluations.
SearchOutcome search_monotonicity_counterexample(const SmoothMap& m, const ConeSpec& spec,
                                                 std::uint64_t seed, int budget = 10000,
                                                 double tol = kDefaultTol);

/// Same search for translations Sigma -> Sigma + C, drawing a fresh positive
/// semidefinite C for every evaluation.
SearchOutcome search_translation_counterexample(const ConeSpec& spec, std::uint64_t seed,
                                                int budget = 10000, double tol = kDefaultTol);

}  // namespace spdorder
