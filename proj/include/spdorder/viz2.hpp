#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spdorder/cones.hpp"

namespace spdorder {

using Vec3 = Eigen::Vector3d;

/// A point of the open cone z^2 - x^2 - y^2 > 0, z > 0 in R^3, the image of
/// a 2x2 SPD matrix under phi.
class ConePoint3 {
 public:
  /// Throws OutsideCone unless the point is strictly inside.
  static ConePoint3 make(double x, double y, double z);

  double x() const { return v_.x(); }
  double y() const { return v_.y(); }
  double z() const { return v_.z(); }
  const Vec3& vec() const { return v_; }
  /// z^2 - x^2 - y^2, twice the determinant of the matrix.
  double lorentz_norm() const { return v_.z() * v_.z() - v_.x() * v_.x() - v_.y() * v_.y(); }

 private:
  explicit ConePoint3(Vec3 v) : v_(std::move(v)) {}
  Vec3 v_;
};

/// [[a, b], [b, c]] -> (sqrt2 b, (a - c)/sqrt2, (a + c)/sqrt2).
ConePoint3 phi(const SpdMatrix& sigma);
/// a = (z + y)/sqrt2, b = x/sqrt2, c = (z - y)/sqrt2.
SpdMatrix phi_inverse(const ConePoint3& p);
/// phi is linear in the entries, so tangents transport by the same formulas.
Vec3 phi_tangent(const SymTangent& x);
SymTangent phi_inverse_tangent(const Vec3& d);

/// The cone conditions written in (x, y, z) coordinates. `linear` is the
/// trace condition and `quadratic` the quadratic one; the direction is inside
/// when both are >= 0.
///  - QuadraticAffine: z dz - x dx - y dy, and (symmetric under x <-> y)
///    2 (x dx + y dy - z dz)^2 - mu [(z^2+x^2-y^2) dx^2 + (z^2-x^2+y^2) dy^2
///      + (x^2+y^2+z^2) dz^2 + 4xy dx dy - 4xz dx dz - 4yz dy dz]
///  - QuadraticTranslation: dz, and (2/mu - 1) dz^2 - dx^2 - dy^2
///  - Loewner: the translation formulas with mu = 1
///  - HalfSpaceAffine: z dz - x dx - y dy, quadratic fixed at +1
///  - RayAffine: z dz - x dx - y dy, and -|d x p|^2 / |p|^2
struct CoordinateVerdict {
  double linear;
  double quadratic;
  bool inside() const { return linear >= 0.0 && quadratic >= 0.0; }
};

CoordinateVerdict coordinate_membership(const ConeSpec& spec, const ConePoint3& p,
                                        const Vec3& d);

/// Unit directions on the boundary of the cone at p, one per meridian around
/// an interior axis (p/|p| for the affine fields, (0,0,1) for the translation
/// ones), located by bisection to 1e-10 along each meridian. `resolution`
/// meridians, resolution >= 8. Throws EmptySection for the ray field.
std::vector<Vec3> cone_cross_section(const ConeSpec& spec, const ConePoint3& p, int resolution);

/// Parametric grid of the leaf z^2 - x^2 - y^2 = C: points
/// (r cos v, r sin v, sqrt(C + r^2)) for r in [0, radius] and v in [0, 2 pi),
/// with the analytic tangents d/dr and d/dv. For C = 0 the apex r = 0 is
/// left out. Points are plain vectors: the C = 0 leaf is the cone boundary.
struct LeafGrid {
  int rows = 0;  // radial samples
  int cols = 0;  // angular samples
  std::vector<Vec3> points;
  std::vector<Vec3> d_radial;
  std::vector<Vec3> d_angular;
};

LeafGrid hyperboloid_leaf(double c, int resolution, double radius = 2.0);

/// "section_<kind>_<mu>.csv" (mu printed with %g, "0" for non-quadratic kinds).
std::string section_filename(const ConeSpec& spec);
/// "leaf_<C>.csv" with C printed with %g.
std::string leaf_filename(double c);

/// Header dx,dy,dz; 17 significant digits.
void write_section_csv(std::ostream& os, const std::vector<Vec3>& section);
/// Header x,y,z,dr_x,dr_y,dr_z,dv_x,dv_y,dv_z; 17 significant digits.
void write_leaf_csv(std::ostream& os, const LeafGrid& leaf);

}  // namespace spdorder
