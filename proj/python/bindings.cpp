#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spdorder/flows.hpp"
#include "spdorder/geometry.hpp"
#include "spdorder/monotone.hpp"
#include "spdorder/orders.hpp"
#include "spdorder/viz2.hpp"

namespace py = pybind11;
using namespace spdorder;

namespace {

// Matrices cross the boundary as numpy arrays and are validated on entry.
SpdMatrix spd(const Matrix& m) { return SpdMatrix::validate(m); }
SymTangent tangent(const Matrix& m) { return SymTangent::from(m); }

py::dict verdict_dict(const OrderVerdict& v) {
  py::dict d;
  d["relation"] = to_string(v.relation);
  d["forward_margin"] = v.forward_margin;
  d["reverse_margin"] = v.reverse_margin;
  return d;
}

py::dict membership_dict(const MembershipReport& r) {
  py::dict d;
  d["inside"] = r.inside;
  d["margin"] = r.margin;
  d["binding"] = to_string(r.binding);
  return d;
}

py::dict positivity_dict(const PositivityReport& r) {
  py::dict d;
  d["map"] = r.map_tag;
  d["samples_tested"] = r.samples_tested;
  d["violations"] = r.violation_count;
  d["min_output_margin"] = r.min_output_margin;
  py::list witnesses;
  for (const Violation& v : r.violations) {
    py::dict w;
    w["sigma"] = v.sigma.matrix();
    w["direction"] = v.direction.matrix();
    w["output_margin"] = v.output_margin;
    witnesses.append(w);
  }
  d["witnesses"] = witnesses;
  return d;
}

// Rows of 3-vectors as a (k, 3) array.
Eigen::MatrixX3d stack(const std::vector<Vec3>& rows) {
  Eigen::MatrixX3d out(static_cast<Eigen::Index>(rows.size()), 3);
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  return out;
}

ConePoint3 cone_point(const Eigen::Vector3d& p) { return ConePoint3::make(p.x(), p.y(), p.z()); }

}  // namespace

PYBIND11_MODULE(_spdorder, m) {
  m.doc() = "Conal orders, monotone maps and isospectral flows on SPD matrices";

  static py::exception<Error> error_type(m, "SpdOrderError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const py::object& cls = error_type;
      py::object inst = cls(py::str(e.what()));
      inst.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type.ptr(), inst.ptr());
    }
  });

  // matrices
  m.def("spd_validate", [](const Matrix& a) { return spd(a).matrix(); }, py::arg("a"));
  m.def("sqrtm", [](const Matrix& a) { return sqrtm(spd(a)).matrix(); }, py::arg("a"));
  m.def("logm", [](const Matrix& a) { return logm(spd(a)).matrix(); }, py::arg("a"));
  m.def("expm", [](const Matrix& x) { return expm(tangent(x)).matrix(); }, py::arg("x"));
  m.def("powm", [](const Matrix& a, double r) { return powm(spd(a), r).matrix(); }, py::arg("a"), py::arg("r"));
  m.def("log_det", [](const Matrix& a) { return log_det(spd(a)); }, py::arg("a"));
  m.def("random_spd", [](int n, std::uint64_t seed, double scale) { return random_spd(n, seed, scale).matrix(); },
        py::arg("n"), py::arg("seed"), py::arg("scale") = 1.0);

  // geometry
  m.def("geodesic", [](const Matrix& a, const Matrix& b, double t) { return geodesic(spd(a), spd(b), t).matrix(); },
        py::arg("a"), py::arg("b"), py::arg("t"));
  m.def("geometric_mean", [](const Matrix& a, const Matrix& b) { return geometric_mean(spd(a), spd(b)).matrix(); },
        py::arg("a"), py::arg("b"));
  m.def("riemannian_distance", [](const Matrix& a, const Matrix& b) { return riemannian_distance(spd(a), spd(b)); },
        py::arg("a"), py::arg("b"));
  m.def("riemannian_exp", [](const Matrix& s, const Matrix& x) { return riemannian_exp(spd(s), tangent(x)).matrix(); },
        py::arg("sigma"), py::arg("x"));
  m.def("riemannian_log", [](const Matrix& a, const Matrix& b) { return riemannian_log(spd(a), spd(b)).matrix(); },
        py::arg("a"), py::arg("b"));

  // cones and orders
  py::class_<ConeSpec>(m, "ConeSpec")
      .def_static("quadratic_affine", &ConeSpec::quadratic_affine, py::arg("n"), py::arg("mu"))
      .def_static("quadratic_translation", &ConeSpec::quadratic_translation, py::arg("n"), py::arg("mu"))
      .def_static("loewner", &ConeSpec::loewner, py::arg("n"))
      .def_static("half_space", &ConeSpec::half_space, py::arg("n"))
      .def_static("ray", &ConeSpec::ray, py::arg("n"))
      .def_property_readonly("kind", [](const ConeSpec& s) { return std::string(to_string(s.kind())); })
      .def_property_readonly("n", &ConeSpec::dim)
      .def_property_readonly("mu", [](const ConeSpec& s) -> py::object {
        if (s.is_quadratic()) return py::float_(s.mu());
        return py::none();
      })
      .def("__repr__", [](const ConeSpec& s) {
        std::string r = std::string("ConeSpec(") + to_string(s.kind()) + ", n=" + std::to_string(s.dim());
        if (s.is_quadratic()) r += ", mu=" + py::repr(py::float_(s.mu())).cast<std::string>();
        return r + ")";
      });

  m.def("cone_membership",
        [](const ConeSpec& spec, const Matrix& s, const Matrix& x, double tol) {
          return membership_dict(cone_membership(spec, spd(s), tangent(x), tol));
        },
        py::arg("spec"), py::arg("sigma"), py::arg("x"), py::arg("tol") = kDefaultTol);
  m.def("order_compare",
        [](const ConeSpec& spec, const Matrix& a, const Matrix& b, double tol) {
          return verdict_dict(order_compare(spec, spd(a), spd(b), tol));
        },
        py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("tol") = kDefaultTol);
  m.def("conal_path_min_margin",
        [](const ConeSpec& spec, const Matrix& a, const Matrix& b, int samples) {
          return conal_path_min_margin(spec, spd(a), spd(b), samples);
        },
        py::arg("spec"), py::arg("a"), py::arg("b"), py::arg("samples") = 257);

  // monotone maps
  py::class_<SmoothMap>(m, "SmoothMap")
      .def_static("power", &SmoothMap::power, py::arg("r"))
      .def_static("inversion", &SmoothMap::inversion)
      .def_static("scaling", &SmoothMap::scaling, py::arg("factor"))
      .def_static("congruence", &SmoothMap::congruence, py::arg("a"))
      .def_static("translation", &SmoothMap::translation, py::arg("c"))
      .def_property_readonly("tag", &SmoothMap::tag)
      .def("apply", [](const SmoothMap& f, const Matrix& s) { return apply_map(f, spd(s)).matrix(); },
           py::arg("sigma"))
      .def("differential",
           [](const SmoothMap& f, const Matrix& s, const Matrix& x) {
             return map_differential(f, spd(s), tangent(x)).matrix();
           },
           py::arg("sigma"), py::arg("x"))
      .def("__repr__", [](const SmoothMap& f) { return "SmoothMap(" + f.tag() + ")"; });

  m.def("check_differential_positivity",
        [](const SmoothMap& f, const ConeSpec& spec, std::uint64_t seed, int n_points, int n_directions,
           double scale, double tol) {
          return positivity_dict(check_differential_positivity(f, spec, seed, n_points, n_directions, scale, tol));
        },
        py::arg("map"), py::arg("spec"), py::arg("seed") = 0, py::arg("n_points") = 100,
        py::arg("n_directions") = 10, py::arg("scale") = 1.0, py::arg("tol") = kDefaultTol);
  m.def("strict_contraction_witness",
        [](double mu, int n, double s1, double s2) {
          const ContractionWitness w = strict_contraction_witness(mu, n, s1, s2);
          py::dict d;
          d["sigma"] = w.sigma.matrix();
          d["tangent"] = w.tangent.matrix();
          d["delta"] = w.delta;
          d["strict"] = w.strict;
          d["slack"] = w.slack;
          return d;
        },
        py::arg("mu"), py::arg("n"), py::arg("sigma1"), py::arg("sigma2"));

  // flows
  py::class_<FlowTrajectory>(m, "FlowTrajectory")
      .def_property_readonly("kind", [](const FlowTrajectory& t) { return std::string(to_string(t.kind)); })
      .def_readonly("times", &FlowTrajectory::times)
      .def_readonly("states", &FlowTrajectory::states)
      .def_readonly("initial_spectrum", &FlowTrajectory::initial_spectrum)
      .def_readonly("max_drift", &FlowTrajectory::max_drift)
      .def("projected_eigenvalues", &projected_eigenvalues, py::arg("r"));
  m.def("integrate_flow",
        [](const std::string& kind, const Matrix& x0, double t_end, double step, int record_every) {
          return integrate_flow(flow_kind_from_string(kind), x0, t_end, step, record_every);
        },
        py::arg("kind"), py::arg("x0"), py::arg("t_end"), py::arg("step"), py::arg("record_every") = 1);

  // 2x2 pictures
  m.def("phi", [](const Matrix& s) { return Eigen::Vector3d(phi(spd(s)).vec()); }, py::arg("sigma"));
  m.def("phi_inverse", [](const Eigen::Vector3d& p) { return phi_inverse(cone_point(p)).matrix(); }, py::arg("p"));
  m.def("cone_cross_section",
        [](const ConeSpec& spec, const Eigen::Vector3d& p, int resolution) {
          return stack(cone_cross_section(spec, cone_point(p), resolution));
        },
        py::arg("spec"), py::arg("p"), py::arg("resolution") = 64);
  m.def("hyperboloid_leaf",
        [](double c, int resolution, double radius) {
          const LeafGrid g = hyperboloid_leaf(c, resolution, radius);
          py::dict d;
          d["rows"] = g.rows;
          d["cols"] = g.cols;
          d["points"] = stack(g.points);
          d["d_radial"] = stack(g.d_radial);
          d["d_angular"] = stack(g.d_angular);
          return d;
        },
        py::arg("c"), py::arg("resolution") = 32, py::arg("radius") = 2.0);
}
