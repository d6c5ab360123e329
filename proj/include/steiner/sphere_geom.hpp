#pragma once

/// \file sphere_geom.hpp
/// \brief Closed-form geometry of the unit sphere S^2 in R^3.
///
/// Points are ambient unit vectors, tangent vectors are ambient vectors
/// orthogonal to their base point. Every formula below is an inner product,
/// a cross product or a trigonometric function of one; there are no charts
/// and therefore no pole singularities.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>

#include "steiner/error.hpp"

namespace steiner {

namespace tol {
/// Allowed deviation of |coords| from 1 before normalization is refused.
inline constexpr double kUnitInput = 1e-9;
/// Orthogonality slack for tangent vectors.
inline constexpr double kTangent = 1e-12;
/// Two points closer than this have no well-defined direction between them.
inline constexpr double kCoincident = 1e-12;
/// <p,q> at or below -1 + kAntipodal is treated as antipodal.
inline constexpr double kAntipodal = 1e-9;
}  // namespace tol

/// A point of S^2, stored as a unit vector of R^3.
class SpherePoint {
 public:
  SpherePoint() : coords_(0.0, 0.0, 1.0) {}

  /// Accepts a vector whose norm is within 1e-9 of one and renormalizes it.
  explicit SpherePoint(const Eigen::Vector3d& v) {
    const double n = v.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > tol::kUnitInput)
      throw Error("SpherePoint: coordinates are not a unit vector (norm " +
                  std::to_string(n) + ")");
    coords_ = v / n;
  }
  SpherePoint(double x, double y, double z) : SpherePoint(Eigen::Vector3d(x, y, z)) {}

  /// Radial projection of an arbitrary nonzero vector onto the sphere.
  static SpherePoint normalized(const Eigen::Vector3d& v) {
    const double n = v.norm();
    if (!(n > 0.0) || !std::isfinite(n))
      throw Error("SpherePoint: cannot normalize a zero or non-finite vector");
    return SpherePoint(Eigen::Vector3d(v / n));
  }

  static SpherePoint north_pole() { return SpherePoint(0.0, 0.0, 1.0); }

  /// Point at the given polar angle from the north pole and azimuth.
  static SpherePoint from_polar(double polar, double azimuth) {
    return SpherePoint(std::sin(polar) * std::cos(azimuth),
                       std::sin(polar) * std::sin(azimuth), std::cos(polar));
  }

  const Eigen::Vector3d& coords() const { return coords_; }
  double dot(const SpherePoint& o) const { return coords_.dot(o.coords_); }

 private:
  Eigen::Vector3d coords_;
};

/// An element of T_p S^2.
class TangentVec {
 public:
  TangentVec(const SpherePoint& base, const Eigen::Vector3d& vec) : base_(base), vec_(vec) {
    const double scale = std::max(1.0, vec.norm());
    if (std::abs(base.coords().dot(vec)) > tol::kTangent * scale)
      throw Error("TangentVec: vector is not orthogonal to its base point");
  }

  /// Orthogonal projection of an ambient vector into T_p S^2.
  static TangentVec project(const SpherePoint& base, const Eigen::Vector3d& v) {
    const Eigen::Vector3d& p = base.coords();
    return TangentVec(base, Eigen::Vector3d(v - p.dot(v) * p));
  }

  static TangentVec zero(const SpherePoint& base) {
    return TangentVec(base, Eigen::Vector3d::Zero());
  }

  const SpherePoint& base() const { return base_; }
  const Eigen::Vector3d& vec() const { return vec_; }
  double norm() const { return vec_.norm(); }

  TangentVec scaled(double s) const { return TangentVec(base_, Eigen::Vector3d(s * vec_)); }

 private:
  SpherePoint base_;
  Eigen::Vector3d vec_;
};

/// Great-circle distance in radians. Antipodal points are at distance pi.
inline double geodesic_distance(const SpherePoint& p, const SpherePoint& q) {
  const Eigen::Vector3d& a = p.coords();
  const Eigen::Vector3d& b = q.coords();
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

inline bool antipodal(const SpherePoint& p, const SpherePoint& q) {
  return p.dot(q) <= -1.0 + tol::kAntipodal;
}

inline SpherePoint exp_map(const SpherePoint& p, const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (n >= std::numbers::pi) throw Error("exp_map: outside injectivity radius");
  if (n == 0.0) return p;
  return SpherePoint::normalized(std::cos(n) * p.coords() + (std::sin(n) / n) * v);
}

inline SpherePoint exp_map(const TangentVec& v) { return exp_map(v.base(), v.vec()); }

namespace detail {
/// Component of q - p orthogonal to p; proportional to the initial velocity
/// of the geodesic from p to q. Written via q - p to avoid cancellation when
/// the points are close.
inline Eigen::Vector3d tangent_direction(const SpherePoint& p, const SpherePoint& q) {
  const Eigen::Vector3d d = q.coords() - p.coords();
  return d - p.coords().dot(d) * p.coords();
}
}  // namespace detail

inline TangentVec log_map(const SpherePoint& p, const SpherePoint& q) {
  if (antipodal(p, q)) throw Error("log_map: log map undefined at cut locus");
  const Eigen::Vector3d w = detail::tangent_direction(p, q);
  const double wn = w.norm();
  if (wn == 0.0) return TangentVec::zero(p);
  return TangentVec(p, Eigen::Vector3d(geodesic_distance(p, q) / wn * w));
}

inline TangentVec unit_tangent_toward(const SpherePoint& p, const SpherePoint& q) {
  if (antipodal(p, q)) throw Error("unit_tangent_toward: log map undefined at cut locus");
  if (geodesic_distance(p, q) <= tol::kCoincident)
    throw Error("unit_tangent_toward: direction undefined");
  const Eigen::Vector3d w = detail::tangent_direction(p, q);
  return TangentVec(p, Eigen::Vector3d(w / w.norm()));
}

/// Minimizing great-circle arc between two non-antipodal points.
class GeodesicArc {
 public:
  GeodesicArc(const SpherePoint& start, const SpherePoint& end) : start_(start), end_(end) {
    if (antipodal(start, end)) throw Error("GeodesicArc: endpoints are antipodal");
    length_ = geodesic_distance(start, end);
  }
  const SpherePoint& start() const { return start_; }
  const SpherePoint& end() const { return end_; }
  double length() const { return length_; }

 private:
  SpherePoint start_;
  SpherePoint end_;
  double length_;
};

/// Constant-speed parametrization of an arc over t in [0,1].
inline SpherePoint arc_point(const GeodesicArc& arc, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw Error("arc_point: parameter outside [0,1]");
  if (t == 0.0) return arc.start();
  if (t == 1.0) return arc.end();
  return exp_map(arc.start(), t * log_map(arc.start(), arc.end()).vec());
}

/// Interior angle at `vertex` of the geodesic triangle (vertex, a, b), in [0, pi].
inline double spherical_angle(const SpherePoint& vertex, const SpherePoint& a, const SpherePoint& b) {
  const Eigen::Vector3d u = unit_tangent_toward(vertex, a).vec();
  const Eigen::Vector3d w = unit_tangent_toward(vertex, b).vec();
  return std::atan2(u.cross(w).norm(), u.dot(w));
}

/// Largest R with 2*pi*(1 - cos R) <= pi/3, i.e. arccos(5/6).
inline double max_admissible_radius() { return std::acos(5.0 / 6.0); }

/// Area of the spherical cap of geodesic radius r.
inline double cap_area(double r) { return 2.0 * std::numbers::pi * (1.0 - std::cos(r)); }

inline bool is_admissible_radius(double r) {
  return r > 0.0 && r < std::numbers::pi / 2.0 && cap_area(r) < std::numbers::pi / 3.0;
}

/// Orthonormal basis (e1, e2) of T_p S^2, right-handed with p as the normal.
inline std::array<Eigen::Vector3d, 2> tangent_basis(const SpherePoint& p) {
  const Eigen::Vector3d& n = p.coords();
  // Seed with the coordinate axis least aligned with n.
  Eigen::Index k = 0;
  n.cwiseAbs().minCoeff(&k);
  Eigen::Vector3d seed = Eigen::Vector3d::Zero();
  seed[k] = 1.0;
  Eigen::Vector3d e1 = (seed - n.dot(seed) * n).normalized();
  Eigen::Vector3d e2 = n.cross(e1);
  return {e1, e2};
}

/// Closed geodesic ball B_R(center) with 0 < R < pi/2.
class GeodesicBall {
 public:
  GeodesicBall(const SpherePoint& center, double radius) : center_(center), radius_(radius) {
    if (!(radius > 0.0 && radius < std::numbers::pi / 2.0))
      throw Error("GeodesicBall: radius must lie in (0, pi/2)");
  }
  const SpherePoint& center() const { return center_; }
  double radius() const { return radius_; }

  /// Area constraint: cap area strictly below pi/3.
  bool admissible() const { return is_admissible_radius(radius_); }

  bool contains(const SpherePoint& p, double slack = 1e-12) const {
    return geodesic_distance(center_, p) <= radius_ + slack;
  }

 private:
  SpherePoint center_;
  double radius_;
};

}  // namespace steiner
