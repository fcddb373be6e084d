#include "spdorder/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "spdorder/flows.hpp"
#include "spdorder/geometry.hpp"
#include "spdorder/io.hpp"
#include "spdorder/viz2.hpp"

namespace spdorder::cli {

namespace {

using io::Json;

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitInput = 2;

struct Config {
  double tol = kDefaultTol;
  std::string cone;
  std::vector<std::string> inputs;
  std::string at;
  std::string dir;
  double t = 0.5;
  std::string map;
  std::uint64_t seed = 1;
  int points = 100;
  int dirs = 10;
  double scale = 1.0;
  std::string flow_kind = "toda";
  double t_end = 1.0;
  double step = 1e-3;
  int r = 1;
  int record_every = 1;
  std::string csv;
  std::string out_dir;
  int resolution = 64;
  double level = 2.0;
  double radius = 2.0;
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IllConditioned:
    case ErrorKind::ConvergenceFailure:
    case ErrorKind::SpectrumDrift:
      return kExitFinding;
    default:
      return kExitInput;
  }
}

SpdMatrix read_spd(const std::string& path) { return SpdMatrix::validate(io::read_matrix_file(path)); }

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

SmoothMap parse_map(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  auto number = [&]() {
    try {
      std::size_t used = 0;
      const double v = std::stod(arg, &used);
      if (used != arg.size()) throw std::invalid_argument(arg);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "map '" + text + "' needs a numeric argument");
    }
  };
  if (head == "power") return SmoothMap::power(number());
  if (head == "inv" && arg.empty()) return SmoothMap::inversion();
  if (head == "scale") return SmoothMap::scaling(number());
  if (head == "translate" && !arg.empty()) return SmoothMap::translation(io::read_matrix_file(arg));
  if (head == "congruence" && !arg.empty()) return SmoothMap::congruence(io::read_matrix_file(arg));
  throw Error(ErrorKind::ParseError,
              "unknown map '" + text + "' (power:<r>|inv|scale:<l>|translate:<c.json>|congruence:<a.json>)");
}

int cmd_validate(const Config& c, std::ostream& out) {
  const Matrix raw = io::read_matrix_file(c.inputs.at(0));
  Json j;
  try {
    const SpdMatrix m = SpdMatrix::validate(raw);
    j["valid"] = true;
    j["n"] = m.dim();
    j["min_eigenvalue"] = m.spectrum().values(0);
    j["max_eigenvalue"] = m.spectrum().values(m.dim() - 1);
    j["condition"] = m.condition();
    emit(out, j);
    return kExitOk;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    j["valid"] = false;
    j["error"] = to_string(e.kind());
    j["message"] = e.what();
    emit(out, j);
    return kExitFinding;
  }
}

int cmd_order(const Config& c, std::ostream& out) {
  const ConeSpec spec = io::read_cone_spec_file(c.cone);
  const SpdMatrix a = read_spd(c.inputs.at(0));
  const SpdMatrix b = read_spd(c.inputs.at(1));
  emit(out, io::to_json(order_compare(spec, a, b, c.tol)));
  return kExitOk;
}

int cmd_cone_member(const Config& c, std::ostream& out) {
  const ConeSpec spec = io::read_cone_spec_file(c.cone);
  const SpdMatrix at = read_spd(c.at);
  const SymTangent x = SymTangent::from(io::read_matrix_file(c.dir));
  emit(out, io::to_json(cone_membership(spec, at, x, c.tol)));
  return kExitOk;
}

int cmd_geodesic(const Config& c, std::ostream& out) {
  const SpdMatrix a = read_spd(c.inputs.at(0));
  const SpdMatrix b = read_spd(c.inputs.at(1));
  out << io::format_matrix(geodesic(a, b, c.t).matrix()) << '\n';
  return kExitOk;
}

int cmd_mean(const Config& c, std::ostream& out) {
  const SpdMatrix a = read_spd(c.inputs.at(0));
  const SpdMatrix b = read_spd(c.inputs.at(1));
  out << io::format_matrix(geometric_mean(a, b).matrix()) << '\n';
  return kExitOk;
}

int cmd_monotone(const Config& c, std::ostream& out) {
  const SmoothMap m = parse_map(c.map);
  const ConeSpec spec = io::read_cone_spec_file(c.cone);
  const PositivityReport rep =
      check_differential_positivity(m, spec, c.seed, c.points, c.dirs, c.scale, c.tol);
  emit(out, io::to_json(rep));
  return rep.violation_count > 0 ? kExitFinding : kExitOk;
}

int cmd_flow(const Config& c, std::ostream& out) {
  const FlowKind kind = flow_kind_from_string(c.flow_kind);
  const Matrix x0 = io::read_matrix_file(c.inputs.at(0));
  const FlowTrajectory traj = integrate_flow(kind, x0, c.t_end, c.step, c.record_every);
  const std::vector<Vector> proj = projected_eigenvalues(traj, c.r);

  double worst_decrease = 0.0;
  for (std::size_t k = 1; k < proj.size(); ++k) {
    worst_decrease = std::max(worst_decrease, (proj[k - 1] - proj[k]).maxCoeff());
  }
  double max_change = 0.0;
  for (const Matrix& s : traj.states) max_change = std::max(max_change, (s - traj.states.front()).norm());
  const bool nondecreasing = worst_decrease <= 1e-8;

  if (!c.csv.empty()) {
    std::ofstream f(c.csv);
    if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + c.csv + "'");
    write_trajectory_csv(f, traj);
  }
  auto vec = [](const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  Json j;
  j["kind"] = to_string(kind);
  j["n"] = traj.dim();
  j["step"] = c.step;
  j["t_end"] = traj.times.back();
  j["recorded_states"] = traj.states.size();
  j["max_spectrum_drift"] = traj.max_drift;
  j["max_state_change"] = max_change;
  j["initial_spectrum"] = vec(traj.initial_spectrum);
  j["r"] = c.r;
  j["projected_initial"] = vec(proj.front());
  j["projected_final"] = vec(proj.back());
  j["projected_nondecreasing"] = nondecreasing;
  j["projected_worst_decrease"] = worst_decrease;
  emit(out, j);
  return nondecreasing ? kExitOk : kExitFinding;
}

void write_csv_output(const Config& c, const std::string& name, std::ostream& out,
                      const std::function<void(std::ostream&)>& writer, std::size_t rows) {
  if (c.out_dir.empty()) {
    writer(out);
    return;
  }
  std::error_code ec;
  std::filesystem::create_directories(c.out_dir, ec);
  const std::filesystem::path path = std::filesystem::path(c.out_dir) / name;
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + path.string() + "'");
  writer(f);
  Json j;
  j["file"] = path.string();
  j["rows"] = rows;
  emit(out, j);
}

int cmd_viz2_section(const Config& c, std::ostream& out) {
  const ConeSpec spec = io::read_cone_spec_file(c.cone);
  const ConePoint3 p = phi(read_spd(c.at));
  const std::vector<Vec3> section = cone_cross_section(spec, p, c.resolution);
  write_csv_output(c, section_filename(spec), out,
                   [&](std::ostream& os) { write_section_csv(os, section); }, section.size());
  return kExitOk;
}

int cmd_viz2_leaf(const Config& c, std::ostream& out) {
  const LeafGrid leaf = hyperboloid_leaf(c.level, c.resolution, c.radius);
  write_csv_output(c, leaf_filename(c.level), out,
                   [&](std::ostream& os) { write_leaf_csv(os, leaf); }, leaf.points.size());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Orders, cones and flows on symmetric positive definite matrices", "spdorder"};
  app.require_subcommand(1);
  // SPD_ORDER_TOL is applied by hand: CLI11 silently drops environment
  // values that fail validation, and an out-of-range tolerance must be an error.
  app.add_option("--tol", c.tol, "Evaluation tolerance (env SPD_ORDER_TOL)")
                  ->check(CLI::Range(1e-14, 1e-4));

  auto* validate = app.add_subcommand("validate", "Check that a matrix file holds an SPD matrix");
  validate->add_option("matrix", c.inputs, "Matrix JSON file")->required()->expected(1);

  auto* order = app.add_subcommand("order", "Compare two matrices under a cone order");
  order->add_option("--cone", c.cone, "Cone spec JSON file")->required();
  order->add_option("matrices", c.inputs, "Matrix JSON files")->required()->expected(2);

  auto* member = app.add_subcommand("cone-member", "Test a tangent against the cone at a point");
  member->add_option("--cone", c.cone, "Cone spec JSON file")->required();
  member->add_option("--at", c.at, "Base point matrix JSON file")->required();
  member->add_option("--dir", c.dir, "Tangent matrix JSON file")->required();

  auto* geo = app.add_subcommand("geodesic", "Point of the affine-invariant geodesic");
  geo->add_option("--t", c.t, "Geodesic parameter")->required();
  geo->add_option("matrices", c.inputs, "Matrix JSON files")->required()->expected(2);

  auto* mean = app.add_subcommand("mean", "Geometric mean of two matrices");
  mean->add_option("matrices", c.inputs, "Matrix JSON files")->required()->expected(2);

  auto* mono = app.add_subcommand("monotone", "Sample the differential positivity of a map");
  mono->add_option("--map", c.map, "power:<r>|inv|scale:<l>|translate:<c.json>|congruence:<a.json>")
      ->required();
  mono->add_option("--cone", c.cone, "Cone spec JSON file")->required();
  mono->add_option("--seed", c.seed, "Random seed");
  mono->add_option("--points", c.points, "Base points")->check(CLI::PositiveNumber);
  mono->add_option("--dirs", c.dirs, "Directions per point")->check(CLI::PositiveNumber);
  mono->add_option("--scale", c.scale, "Spread of the random base points")->check(CLI::PositiveNumber);

  auto* flow = app.add_subcommand("flow", "Integrate the Toda or QR flow");
  flow->add_option("--kind", c.flow_kind, "toda|qr")->check(CLI::IsMember({"toda", "qr"}));
  flow->add_option("--t-end", c.t_end, "Final time")->required();
  flow->add_option("--step", c.step, "Runge-Kutta step")->required();
  flow->add_option("--r", c.r, "Size of the leading block to monitor");
  flow->add_option("--record-every", c.record_every, "Record every k-th step")
      ->check(CLI::PositiveNumber);
  flow->add_option("--csv", c.csv, "Write the trajectory to this CSV file");
  flow->add_option("x0", c.inputs, "Initial matrix JSON file")->required()->expected(1);

  auto* viz = app.add_subcommand("viz2", "Export 2x2 cone pictures as CSV");
  viz->require_subcommand(1);
  auto* section = viz->add_subcommand("section", "Boundary of the cone at a point");
  section->add_option("--cone", c.cone, "Cone spec JSON file (n = 2)")->required();
  section->add_option("--at", c.at, "Base point matrix JSON file")->required();
  section->add_option("--resolution", c.resolution, "Number of meridians")->check(CLI::Range(8, 100000));
  section->add_option("--out-dir", c.out_dir, "Write section_<kind>_<mu>.csv here instead of stdout");
  auto* leaf = viz->add_subcommand("leaf", "Grid on the hyperboloid z^2 - x^2 - y^2 = C");
  leaf->add_option("--c", c.level, "Leaf level C >= 0")->check(CLI::NonNegativeNumber);
  leaf->add_option("--resolution", c.resolution, "Grid size")->check(CLI::Range(8, 100000));
  leaf->add_option("--radius", c.radius, "Largest radius")->check(CLI::PositiveNumber);
  leaf->add_option("--out-dir", c.out_dir, "Write leaf_<C>.csv here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (const char* env = std::getenv("SPD_ORDER_TOL");
      env != nullptr && std::none_of(args.begin(), args.end(),
                                     [](const std::string& a) { return a.starts_with("--tol"); })) {
    reversed.push_back(env);
    reversed.push_back("--tol");
  }
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(c, out);
    if (order->parsed()) return cmd_order(c, out);
    if (member->parsed()) return cmd_cone_member(c, out);
    if (geo->parsed()) return cmd_geodesic(c, out);
    if (mean->parsed()) return cmd_mean(c, out);
    if (mono->parsed()) return cmd_monotone(c, out);
    if (flow->parsed()) return cmd_flow(c, out);
    if (section->parsed()) return cmd_viz2_section(c, out);
    if (leaf->parsed()) return cmd_viz2_leaf(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  err << "error: no subcommand\n";
  return kExitInput;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace spdorder::cli
