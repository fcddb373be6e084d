#include "spdorder/flows.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace spdorder {

const char* to_string(FlowKind k) { return k == FlowKind::Toda ? "toda" : "qr"; }

FlowKind flow_kind_from_string(const std::string& s) {
  if (s == "toda") return FlowKind::Toda;
  if (s == "qr") return FlowKind::QR;
  throw Error(ErrorKind::InvalidParameters, "unknown flow kind '" + s + "'");
}

const char* to_string(ScalarFn f) {
  switch (f) {
    case ScalarFn::Identity: return "identity";
    case ScalarFn::Exp: return "exp";
    case ScalarFn::Log: return "log";
    case ScalarFn::Atan: return "atan";
  }
  return "unknown";
}

ScalarFn scalar_fn_from_string(const std::string& s) {
  if (s == "identity") return ScalarFn::Identity;
  if (s == "exp") return ScalarFn::Exp;
  if (s == "log") return ScalarFn::Log;
  if (s == "atan") return ScalarFn::Atan;
  throw Error(ErrorKind::InvalidParameters, "unknown scalar function '" + s + "'");
}

Matrix skew_projection(const Matrix& x) {
  const Eigen::Index n = x.rows();
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j + 1; i < n; ++i) {
      out(i, j) = x(i, j);
      out(j, i) = -x(i, j);
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix flow_vector_field(FlowKind kind, const Matrix& x) {
  if (kind == FlowKind::Toda) return commutator(x, skew_projection(x));
  const Spectrum s = sym_eig(x);
  if (s.values(0) <= 0.0) {
    throw Error(ErrorKind::SpectrumDrift, "QR flow state lost positive definiteness");
  }
  return commutator(x, skew_projection(s.map([](double v) { return std::log(v); })));
}

namespace {

void check_flow_input(FlowKind kind, const Matrix& x0, double t_end, double step) {
  if (!(step > 0.0) || !(t_end > 0.0) || !std::isfinite(step) || !std::isfinite(t_end)) {
    throw Error(ErrorKind::InvalidParameters, "flow needs step > 0 and t_end > 0");
  }
  if (x0.rows() != x0.cols() || x0.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, "flow initial state must be square");
  }
  if (kind == FlowKind::QR) {
    SpdMatrix::validate(x0);
  } else {
    SymTangent::from(x0);
  }
}

}  // namespace

FlowTrajectory integrate_flow(FlowKind kind, const Matrix& x0, double t_end, double step,
                              int record_every, double drift_tol) {
  check_flow_input(kind, x0, t_end, step);
  if (record_every < 1) throw Error(ErrorKind::InvalidParameters, "record_every must be >= 1");

  FlowTrajectory traj;
  traj.kind = kind;
  traj.step = step;
  Matrix x = symmetrize(x0);
  traj.initial_spectrum = sym_eig(x).values;
  traj.times.push_back(0.0);
  traj.states.push_back(x);

  const auto full_steps = static_cast<long>(std::floor(t_end / step + 1e-9));
  const double remainder = t_end - static_cast<double>(full_steps) * step;
  const long total = full_steps + (remainder > 1e-12 * t_end ? 1 : 0);

  for (long k = 1; k <= total; ++k) {
    const double h = k <= full_steps ? step : remainder;
    const Matrix k1 = flow_vector_field(kind, x);
    const Matrix k2 = flow_vector_field(kind, x + 0.5 * h * k1);
    const Matrix k3 = flow_vector_field(kind, x + 0.5 * h * k2);
    const Matrix k4 = flow_vector_field(kind, x + h * k3);
    x = symmetrize(x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));

    const double drift = (sym_eig(x).values - traj.initial_spectrum).cwiseAbs().maxCoeff();
    traj.max_drift = std::max(traj.max_drift, drift);
    if (!(drift <= drift_tol)) {
      throw Error(ErrorKind::SpectrumDrift,
                  "spectrum drifted by " + std::to_string(drift) + "; reduce the step");
    }
    if (k % record_every == 0 || k == total) {
      traj.times.push_back(k <= full_steps ? static_cast<double>(k) * step : t_end);
      traj.states.push_back(x);
    }
  }
  return traj;
}

std::vector<Vector> projected_eigenvalues(const FlowTrajectory& traj, int r) {
  if (r < 1 || r > traj.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "projection size must lie in [1, n]");
  }
  std::vector<Vector> out;
  out.reserve(traj.states.size());
  for (const Matrix& x : traj.states) out.push_back(sym_eig(x.topLeftCorner(r, r)).values);
  return out;
}

namespace {

double apply_scalar(ScalarFn f, double v) {
  switch (f) {
    case ScalarFn::Identity: return v;
    case ScalarFn::Exp: return std::exp(v);
    case ScalarFn::Log:
      if (!(v > 0.0)) throw Error(ErrorKind::InvalidParameters, "log monitor needs positive blocks");
      return std::log(v);
    case ScalarFn::Atan: return std::atan(v);
  }
  return v;
}

std::vector<double> trace_series(const FlowTrajectory& traj, ScalarFn f, int r, double alpha) {
  std::vector<double> out;
  out.reserve(traj.states.size());
  for (const Matrix& x : traj.states) {
    Matrix state = x;
    if (alpha != 1.0) {
      state = matrix_function(SpdMatrix::validate(x), MatrixFunction::power(alpha));
    }
    const Vector ev = sym_eig(state.topLeftCorner(r, r)).values;
    double acc = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) acc += apply_scalar(f, ev(i));
    out.push_back(acc);
  }
  return out;
}

}  // namespace

PreorderReport preorder_monitor(const FlowTrajectory& a, const FlowTrajectory& b, ScalarFn f,
                                int r, double alpha, double tol) {
  if (a.dim() != b.dim() || a.times.size() != b.times.size()) {
    throw Error(ErrorKind::MismatchedTrajectories, "trajectories differ in size");
  }
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12 * (1.0 + std::abs(a.times[i]))) {
      throw Error(ErrorKind::MismatchedTrajectories, "trajectories sampled at different times");
    }
  }
  if (r < 1 || r > a.dim()) throw Error(ErrorKind::DimensionMismatch, "projection size must lie in [1, n]");
  if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidParameters, "alpha must be positive");

  const std::vector<double> fa = trace_series(a, f, r, alpha);
  const std::vector<double> fb = trace_series(b, f, r, alpha);
  PreorderReport rep;
  for (const auto* series : {&fa, &fb}) {
    for (std::size_t i = 1; i < series->size(); ++i) {
      const double decrease = (*series)[i - 1] - (*series)[i];
      rep.worst_decrease = std::max(rep.worst_decrease, decrease);
      if (decrease > tol * (1.0 + std::abs((*series)[i]))) rep.each_nondecreasing = false;
    }
  }
  const double gap0 = a.states.front().trace() - b.states.front().trace();
  rep.bound_applies = gap0 >= 0.0;
  rep.worst_slack = fa.front() - fb.front() - gap0;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    rep.worst_slack = std::min(rep.worst_slack, fa[i] - fb[i] - gap0);
  }
  rep.difference_bound_holds = !rep.bound_applies || rep.worst_slack >= -tol;
  return rep;
}

void write_trajectory_csv(std::ostream& os, const FlowTrajectory& traj) {
  const int n = traj.dim();
  const char* sep = n >= 10 ? "_" : "";
  os << "t";
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) os << ",a" << i << sep << j;
  }
  os << '\n';
  char buf[32];
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", traj.times[k]);
    os << buf;
    const Matrix& x = traj.states[k];
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", x(i, j));
        os << ',' << buf;
      }
    }
    os << '\n';
  }
}

}  // namespace spdorder
