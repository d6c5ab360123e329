#pragma once

/// \file spaces.hpp
/// \brief Geometry traits for the two ambient spaces a network can live in.
///
/// A Space provides a Point type, a tangent Vector type, geodesic distance,
/// exp/log maps, a tangent basis and geodesic interpolation. Network, current
/// and harness code are written once against this interface.

#include <Eigen/Dense>

#include <array>
#include <string_view>
#include <utility>

#include "steiner/sphere_geom.hpp"

namespace steiner {

enum class SpaceTag { Sphere, Plane };

inline std::string_view to_string(SpaceTag t) { return t == SpaceTag::Sphere ? "sphere" : "plane"; }

struct Sphere {
  using Point = SpherePoint;
  using Vector = Eigen::Vector3d;
  static constexpr SpaceTag tag = SpaceTag::Sphere;

  static double distance(const Point& p, const Point& q) { return geodesic_distance(p, q); }
  static Vector log(const Point& p, const Point& q) { return log_map(p, q).vec(); }
  static Point exp(const Point& p, const Vector& v) { return exp_map(p, v); }
  static Vector unit_tangent(const Point& from, const Point& to) {
    return unit_tangent_toward(from, to).vec();
  }
  static Point interpolate(const Point& a, const Point& b, double t) {
    return arc_point(GeodesicArc(a, b), t);
  }
  /// Position and unit velocity at fraction t along the arc from a to b.
  static std::pair<Point, Vector> point_and_tangent(const Point& a, const Point& b, double t) {
    const Vector u = unit_tangent(a, b);
    const double s = t * distance(a, b);
    const Eigen::Vector3d x = std::cos(s) * a.coords() + std::sin(s) * u;
    const Eigen::Vector3d tau = -std::sin(s) * a.coords() + std::cos(s) * u;
    return {SpherePoint::normalized(x), tau};
  }
  static std::array<Vector, 2> basis(const Point& p) { return tangent_basis(p); }
  static Vector zero() { return Vector::Zero(); }
  static const Eigen::Vector3d& ambient(const Point& p) { return p.coords(); }
};

struct Plane {
  using Point = Eigen::Vector2d;
  using Vector = Eigen::Vector2d;
  static constexpr SpaceTag tag = SpaceTag::Plane;

  static double distance(const Point& p, const Point& q) { return (q - p).norm(); }
  static Vector log(const Point& p, const Point& q) { return q - p; }
  static Point exp(const Point& p, const Vector& v) { return p + v; }
  static Vector unit_tangent(const Point& from, const Point& to) {
    const Vector d = to - from;
    const double n = d.norm();
    if (n <= tol::kCoincident) throw Error("unit_tangent: direction undefined");
    return d / n;
  }
  static Point interpolate(const Point& a, const Point& b, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error("interpolate: parameter outside [0,1]");
    if (t == 1.0) return b;
    return a + t * (b - a);
  }
  static std::pair<Point, Vector> point_and_tangent(const Point& a, const Point& b, double t) {
    return {Point(a + t * (b - a)), unit_tangent(a, b)};
  }
  static std::array<Vector, 2> basis(const Point&) { return {Vector(1.0, 0.0), Vector(0.0, 1.0)}; }
  static Vector zero() { return Vector::Zero(); }
  static Eigen::Vector3d ambient(const Point& p) { return {p.x(), p.y(), 0.0}; }
};

/// Angle between two tangent vectors in [0, pi].
template <class V>
double vector_angle(const V& a, const V& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  const Eigen::Vector3d a3 = [&] {
    if constexpr (V::RowsAtCompileTime == 2) return Eigen::Vector3d(a.x(), a.y(), 0.0);
    else return Eigen::Vector3d(a);
  }();
  const Eigen::Vector3d b3 = [&] {
    if constexpr (V::RowsAtCompileTime == 2) return Eigen::Vector3d(b.x(), b.y(), 0.0);
    else return Eigen::Vector3d(b);
  }();
  const double s = a3.cross(b3).norm() / (a.norm() * b.norm());
  return std::atan2(s, c);
}

/// Chart given by the exponential map at `center` with the space's tangent
/// basis; for the plane this is a translation.
template <class Space>
class NormalChart {
 public:
  using Point = typename Space::Point;
  using Vector = typename Space::Vector;

  explicit NormalChart(const Point& center) : center_(center), basis_(Space::basis(center)) {}

  const Point& center() const { return center_; }

  Point to_point(const Eigen::Vector2d& uv) const {
    return Space::exp(center_, Vector(uv.x() * basis_[0] + uv.y() * basis_[1]));
  }
  Eigen::Vector2d to_coords(const Point& p) const {
    const Vector v = Space::log(center_, p);
    return {v.dot(basis_[0]), v.dot(basis_[1])};
  }

 private:
  Point center_;
  std::array<Vector, 2> basis_;
};

}  // namespace steiner
