#include "spdorder/viz2.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

namespace spdorder {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_2x2(int n, const char* what) {
  if (n != 2) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " needs 2x2 input");
}

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_row(std::ostream& os, std::initializer_list<double> values) {
  char buf[32];
  bool first = true;
  for (const double v : values) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    if (!first) os << ',';
    os << buf;
    first = false;
  }
  os << '\n';
}

}  // namespace

ConePoint3 ConePoint3::make(double x, double y, double z) {
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
    throw Error(ErrorKind::NonFinite, "cone point has non-finite coordinates");
  }
  if (!(z > 0.0) || !(z * z - x * x - y * y > 0.0)) {
    throw Error(ErrorKind::OutsideCone, "point is not inside the open cone z^2 > x^2 + y^2, z > 0");
  }
  return ConePoint3(Vec3(x, y, z));
}

ConePoint3 phi(const SpdMatrix& sigma) {
  require_2x2(sigma.dim(), "phi");
  const Matrix& m = sigma.matrix();
  return ConePoint3::make(kSqrt2 * m(0, 1), (m(0, 0) - m(1, 1)) / kSqrt2,
                          (m(0, 0) + m(1, 1)) / kSqrt2);
}

SpdMatrix phi_inverse(const ConePoint3& p) {
  Matrix m(2, 2);
  m << (p.z() + p.y()) / kSqrt2, p.x() / kSqrt2, p.x() / kSqrt2, (p.z() - p.y()) / kSqrt2;
  try {
    return SpdMatrix::validate(m);
  } catch (const Error&) {
    throw Error(ErrorKind::OutsideCone, "cone point too close to the boundary");
  }
}

Vec3 phi_tangent(const SymTangent& x) {
  require_2x2(x.dim(), "phi_tangent");
  const Matrix& m = x.matrix();
  return Vec3(kSqrt2 * m(0, 1), (m(0, 0) - m(1, 1)) / kSqrt2, (m(0, 0) + m(1, 1)) / kSqrt2);
}

SymTangent phi_inverse_tangent(const Vec3& d) {
  Matrix m(2, 2);
  m << (d.z() + d.y()) / kSqrt2, d.x() / kSqrt2, d.x() / kSqrt2, (d.z() - d.y()) / kSqrt2;
  return SymTangent::symmetric_part(m);
}

CoordinateVerdict coordinate_membership(const ConeSpec& spec, const ConePoint3& p,
                                        const Vec3& d) {
  require_2x2(spec.dim(), "coordinate_membership");
  const double x = p.x(), y = p.y(), z = p.z();
  const double dx = d.x(), dy = d.y(), dz = d.z();
  const double half_space = z * dz - x * dx - y * dy;
  auto translation = [&](double mu) {
    return CoordinateVerdict{dz, (2.0 / mu - 1.0) * dz * dz - dx * dx - dy * dy};
  };
  switch (spec.kind()) {
    case ConeKind::QuadraticAffine: {
      const double lin = x * dx + y * dy - z * dz;
      const double bracket = (z * z + x * x - y * y) * dx * dx + (z * z - x * x + y * y) * dy * dy +
                             (x * x + y * y + z * z) * dz * dz + 4.0 * x * y * dx * dy -
                             4.0 * x * z * dx * dz - 4.0 * y * z * dy * dz;
      return {half_space, 2.0 * lin * lin - spec.mu() * bracket};
    }
    case ConeKind::QuadraticTranslation: return translation(spec.mu());
    case ConeKind::Loewner: return translation(1.0);
    case ConeKind::HalfSpaceAffine: return {half_space, 1.0};
    case ConeKind::RayAffine: {
      const Vec3 pv = p.vec();
      return {half_space, -d.cross(pv).squaredNorm() / pv.squaredNorm()};
    }
  }
  return {half_space, 1.0};
}

std::vector<Vec3> cone_cross_section(const ConeSpec& spec, const ConePoint3& p, int resolution) {
  require_2x2(spec.dim(), "cone_cross_section");
  if (resolution < 8) throw Error(ErrorKind::InvalidParameters, "resolution must be >= 8");
  if (spec.kind() == ConeKind::RayAffine) {
    throw Error(ErrorKind::EmptySection, "the ray field has no two-dimensional cross-section");
  }
  const Vec3 axis = spec.is_translation_invariant() ? Vec3(0.0, 0.0, 1.0) : p.vec().normalized();
  const Vec3 u = axis.unitOrthogonal();
  const Vec3 v = axis.cross(u);
  auto inside = [&](const Vec3& d) { return coordinate_membership(spec, p, d).inside(); };

  constexpr int kCoarse = 256;
  std::vector<Vec3> out;
  out.reserve(resolution);
  for (int k = 0; k < resolution; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / resolution;
    const Vec3 w = std::cos(theta) * u + std::sin(theta) * v;
    auto meridian = [&](double s) { return Vec3(std::cos(s) * axis + std::sin(s) * w); };
    double lo = 0.0;
    double hi = std::numbers::pi;
    for (int i = 1; i <= kCoarse; ++i) {
      const double s = std::numbers::pi * i / kCoarse;
      if (!inside(meridian(s))) {
        hi = s;
        break;
      }
      lo = s;
    }
    while (hi - lo > 1e-10) {
      const double mid = 0.5 * (lo + hi);
      (inside(meridian(mid)) ? lo : hi) = mid;
    }
    out.push_back(meridian(0.5 * (lo + hi)));
  }
  return out;
}

LeafGrid hyperboloid_leaf(double c, int resolution, double radius) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw Error(ErrorKind::InvalidParameters, "leaf level must be >= 0");
  if (resolution < 8) throw Error(ErrorKind::InvalidParameters, "resolution must be >= 8");
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidParameters, "radius must be positive");
  LeafGrid g;
  g.cols = resolution;
  const int first = c == 0.0 ? 1 : 0;
  g.rows = resolution - first;
  for (int i = first; i < resolution; ++i) {
    const double r = radius * i / (resolution - 1);
    const double z = std::sqrt(c + r * r);
    for (int j = 0; j < resolution; ++j) {
      const double ang = 2.0 * std::numbers::pi * j / resolution;
      const double cs = std::cos(ang), sn = std::sin(ang);
      g.points.emplace_back(r * cs, r * sn, z);
      g.d_radial.emplace_back(cs, sn, r / z);
      g.d_angular.emplace_back(-r * sn, r * cs, 0.0);
    }
  }
  return g;
}

std::string section_filename(const ConeSpec& spec) {
  return std::string("section_") + to_string(spec.kind()) + "_" +
         fmt_g(spec.is_quadratic() ? spec.mu() : 0.0) + ".csv";
}

std::string leaf_filename(double c) { return "leaf_" + fmt_g(c) + ".csv"; }

void write_section_csv(std::ostream& os, const std::vector<Vec3>& section) {
  os << "dx,dy,dz\n";
  for (const Vec3& d : section) write_row(os, {d.x(), d.y(), d.z()});
}

void write_leaf_csv(std::ostream& os, const LeafGrid& leaf) {
  os << "x,y,z,dr_x,dr_y,dr_z,dv_x,dv_y,dv_z\n";
  for (std::size_t i = 0; i < leaf.points.size(); ++i) {
    const Vec3& p = leaf.points[i];
    const Vec3& a = leaf.d_radial[i];
    const Vec3& b = leaf.d_angular[i];
    write_row(os, {p.x(), p.y(), p.z(), a.x(), a.y(), a.z(), b.x(), b.y(), b.z()});
  }
}

}  // namespace spdorder
