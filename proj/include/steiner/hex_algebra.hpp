#pragma once

/// \file hex_algebra.hpp
/// \brief The triangular lattice G in R^2, its hexagonal norm, and the dual
/// norm (comass) of constant R^2-valued 1-forms on the plane.
///
/// G is generated by g1 = (1,0) and g2 = (-1/2, sqrt3/2); g3 = -(g1 + g2).
/// The unit ball of the hexagonal norm is the regular hexagon with vertices
/// +-g1, +-g2, +-g3.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <ostream>

#include "steiner/error.hpp"

namespace steiner {

struct Generators {
  Eigen::Vector2d g1;
  Eigen::Vector2d g2;
  Eigen::Vector2d g3;
};

inline Generators generators() {
  const double h = std::numbers::sqrt3 / 2.0;
  return {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(-0.5, h), Eigen::Vector2d(-0.5, -h)};
}

/// Element m*g1 + n*g2 of G, with exact integer coordinates.
struct GroupElement {
  std::int64_t m = 0;
  std::int64_t n = 0;

  static constexpr GroupElement zero() { return {0, 0}; }
  static constexpr GroupElement g1() { return {1, 0}; }
  static constexpr GroupElement g2() { return {0, 1}; }
  static constexpr GroupElement g3() { return {-1, -1}; }

  /// The generator g_i for i in {1,2,3}.
  static GroupElement generator(int i) {
    switch (i) {
      case 1: return g1();
      case 2: return g2();
      case 3: return g3();
      default: throw Error("GroupElement::generator: index must be 1, 2 or 3");
    }
  }

  constexpr bool is_zero() const { return m == 0 && n == 0; }

  Eigen::Vector2d vector() const {
    const Generators g = generators();
    return static_cast<double>(m) * g.g1 + static_cast<double>(n) * g.g2;
  }

  constexpr GroupElement operator-() const { return {-m, -n}; }
  constexpr GroupElement& operator+=(const GroupElement& o) {
    m += o.m;
    n += o.n;
    return *this;
  }
  constexpr GroupElement& operator-=(const GroupElement& o) {
    m -= o.m;
    n -= o.n;
    return *this;
  }
  friend constexpr GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend constexpr GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  friend constexpr GroupElement operator*(std::int64_t k, const GroupElement& a) {
    return {k * a.m, k * a.n};
  }
  friend constexpr bool operator==(const GroupElement&, const GroupElement&) = default;

  friend std::ostream& operator<<(std::ostream& os, const GroupElement& e) {
    return os << "(" << e.m << "," << e.n << ")";
  }
};

/// The six lattice elements of unit hexagonal norm, ordered by angle
/// 0, 60, ..., 300 degrees: g1, -g3, g2, -g1, g3, -g2.
inline std::array<GroupElement, 6> unit_group_elements() {
  return {GroupElement::g1(), -GroupElement::g3(), GroupElement::g2(),
          -GroupElement::g1(), GroupElement::g3(), -GroupElement::g2()};
}

/// Minkowski functional of the regular hexagon with vertices +-g_i.
///
/// v is written as a*u + b*w with u, w the two hexagon vertices bounding the
/// 60-degree sector containing v; then a, b >= 0 and the norm is a + b.
inline double hex_norm(const Eigen::Vector2d& v) {
  if (v.isZero(0.0)) return 0.0;
  constexpr double kSector = std::numbers::pi / 3.0;
  double angle = std::atan2(v.y(), v.x());
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  const int k = static_cast<int>(std::floor(angle / kSector)) % 6;
  const Eigen::Vector2d u(std::cos(k * kSector), std::sin(k * kSector));
  const Eigen::Vector2d w(std::cos((k + 1) * kSector), std::sin((k + 1) * kSector));
  auto cross = [](const Eigen::Vector2d& x, const Eigen::Vector2d& y) {
    return x.x() * y.y() - x.y() * y.x();
  };
  const double det = cross(u, w);  // sin 60
  const double a = cross(v, w) / det;
  const double b = cross(u, v) / det;
  return std::abs(a) + std::abs(b);
}

/// hex_norm(m*g1 + n*g2), evaluated exactly in integers.
///
/// For m, n of equal sign the element is |n| copies of -+g3 plus |m - n|
/// copies of +-g1 (or +-g2), two adjacent vertices, so the norm is
/// max(|m|, |n|). For opposite signs it splits over g1 and -g2, again
/// adjacent, giving |m| + |n|.
inline double group_norm(const GroupElement& e) {
  const std::int64_t a = std::llabs(e.m);
  const std::int64_t b = std::llabs(e.n);
  if ((e.m >= 0) == (e.n >= 0) || e.m == 0 || e.n == 0)
    return static_cast<double>(std::max(a, b));
  return static_cast<double>(a + b);
}

/// Constant R^2-valued 1-form on the plane: omega(nu) = entries * nu.
struct MatrixForm {
  Eigen::Matrix2d entries = Eigen::Matrix2d::Identity();

  static MatrixForm identity() { return {Eigen::Matrix2d::Identity()}; }
  static MatrixForm zero() { return {Eigen::Matrix2d::Zero()}; }

  Eigen::Vector2d operator()(const Eigen::Vector2d& nu) const { return entries * nu; }
};

/// <omega(nu), e> for a unit direction nu.
inline double dual_pairing(const MatrixForm& omega, const Eigen::Vector2d& nu, const GroupElement& e) {
  if (std::abs(nu.norm() - 1.0) > 1e-12) throw Error("dual_pairing: direction is not a unit vector");
  return omega(nu).dot(e.vector());
}

/// sup over unit nu and unit-norm lattice elements g of |<omega(nu), g>|.
/// For fixed g the supremum over nu is attained at omega^T g / |omega^T g|,
/// so it equals |omega^T g|.
inline double comass(const MatrixForm& omega) {
  double best = 0.0;
  for (const GroupElement& g : unit_group_elements())
    best = std::max(best, (omega.entries.transpose() * g.vector()).norm());
  return best;
}

}  // namespace steiner

template <>
struct std::hash<steiner::GroupElement> {
  std::size_t operator()(const steiner::GroupElement& e) const noexcept {
    return std::hash<std::int64_t>{}(e.m) * 1000003u ^ std::hash<std::int64_t>{}(e.n);
  }
};
