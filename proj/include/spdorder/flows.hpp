#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spdorder/spd_core.hpp"

namespace spdorder {

enum class FlowKind {
  Toda,  // X' = [X, pi_s(X)]
  QR,    // S' = [S, pi_s(log S)], S positive definite
};

const char* to_string(FlowKind k);
FlowKind flow_kind_from_string(const std::string& s);

struct FlowTrajectory {
  FlowKind kind = FlowKind::Toda;
  double step = 0.0;
  std::vector<double> times;
  std::vector<Matrix> states;
  /// Sorted spectrum of the initial state.
  Vector initial_spectrum;
  /// Largest sorted-spectrum deviation seen during integration.
  double max_drift = 0.0;

  int dim() const { return states.empty() ? 0 : static_cast<int>(states.front().rows()); }
};

/// Strictly lower part of X minus its transpose: out(i,j) = X(i,j) for i > j,
/// -X(j,i) for i < j, zero diagonal.
Matrix skew_projection(const Matrix& x);

/// [A, B] = AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Right-hand side of the flow at X.
Matrix flow_vector_field(FlowKind kind, const Matrix& x);

/// Fixed-step classical Runge-Kutta from t = 0 to t_end. The last step is
/// shortened if step does not divide t_end. Every state is re-symmetrized.
/// States are recorded every `record_every` steps plus the final one.
/// Throws SpectrumDrift when a sorted eigenvalue moves more than drift_tol
/// from its initial value.
FlowTrajectory integrate_flow(FlowKind kind, const Matrix& x0, double t_end, double step,
                              int record_every = 1, double drift_tol = 1e-5);

/// Sorted eigenvalues of the leading r x r block of every recorded state.
std::vector<Vector> projected_eigenvalues(const FlowTrajectory& traj, int r);

/// Nondecreasing scalar functions for the trace monitor.
enum class ScalarFn { Identity, Exp, Log, Atan };
const char* to_string(ScalarFn f);
ScalarFn scalar_fn_from_string(const std::string& s);

struct PreorderReport {
  /// F(t) = tr f(leading r x r block of X(t)^alpha) is nondecreasing along
  /// each trajectory, within tol per recorded step.
  bool each_nondecreasing = true;
  /// The initial traces satisfy tr X(0) >= tr Y(0), so the difference bound applies.
  bool bound_applies = false;
  /// F_X(t) - F_Y(t) >= tr(X(0) - Y(0)) - tol at every recorded time.
  bool difference_bound_holds = true;
  /// Minimum of F_X(t) - F_Y(t) - tr(X(0) - Y(0)) over recorded times.
  double worst_slack = 0.0;
  /// Largest per-step decrease of either F.
  double worst_decrease = 0.0;

  bool holds() const { return each_nondecreasing && difference_bound_holds; }
};

/// Compares two trajectories sampled on the same grid. alpha != 1 needs
/// positive definite states (the QR flow). Throws MismatchedTrajectories
/// when times or dimensions differ.
PreorderReport preorder_monitor(const FlowTrajectory& a, const FlowTrajectory& b, ScalarFn f,
                                int r, double alpha = 1.0, double tol = 1e-8);

/// CSV with header t,a11,a12,...,ann (all n^2 entries, row-major) and 17
/// significant digits. Indices are joined with '_' when n >= 10.
void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj);

}  // namespace spdorder
