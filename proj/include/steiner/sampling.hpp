#pragma once

/// \file sampling.hpp
/// \brief Seeded random sampling on the sphere: uniform points in a geodesic
/// ball, random tangents, random rotations, random geodesic polylines.
///
/// Every sampler takes the generator explicitly. Batch routines derive one
/// generator per sample from (seed, index) so results do not depend on the
/// order in which samples are processed.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "steiner/sphere_geom.hpp"

namespace steiner {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer applied to seed and index.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline Rng sample_rng(std::uint64_t seed, std::uint64_t index) { return Rng(sample_seed(seed, index)); }

inline double uniform(Rng& rng, double a = 0.0, double b = 1.0) {
  return std::uniform_real_distribution<double>(a, b)(rng);
}

inline SpherePoint uniform_on_sphere(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (;;) {
    const Eigen::Vector3d v(n(rng), n(rng), n(rng));
    if (v.norm() > 1e-6) return SpherePoint::normalized(v);
  }
}

/// Point of `ball` at geodesic distance r from its center and azimuth phi.
inline SpherePoint ball_point(const GeodesicBall& ball, double r, double phi) {
  const auto [e1, e2] = tangent_basis(ball.center());
  return exp_map(ball.center(), r * (std::cos(phi) * e1 + std::sin(phi) * e2));
}

/// Area-uniform sample of the geodesic ball (cos of the radius is uniform).
inline SpherePoint uniform_in_ball(const GeodesicBall& ball, Rng& rng) {
  const double z = uniform(rng, std::cos(ball.radius()), 1.0);
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return ball_point(ball, std::acos(std::min(1.0, z)), phi);
}

/// Unit tangent at p with uniformly distributed direction.
inline Eigen::Vector3d random_unit_tangent(const SpherePoint& p, Rng& rng) {
  const auto [e1, e2] = tangent_basis(p);
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return std::cos(phi) * e1 + std::sin(phi) * e2;
}

/// Haar-random rotation from a normalized Gaussian quaternion.
inline Eigen::Matrix3d random_rotation(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

inline SpherePoint rotate(const Eigen::Matrix3d& R, const SpherePoint& p) {
  return SpherePoint::normalized(R * p.coords());
}

/// Piecewise-geodesic path from a to b through `knots` interior points.
/// Knot k starts on the arc at fraction k/(knots+1) and is pushed sideways
/// by a random tangent of length up to `spread`, resampled until it lies in
/// the ball.
inline std::vector<SpherePoint> random_polyline(const SpherePoint& a, const SpherePoint& b,
                                                const GeodesicBall& ball, int knots, double spread,
                                                Rng& rng) {
  std::vector<SpherePoint> path = {a};
  const GeodesicArc arc(a, b);
  for (int k = 1; k <= knots; ++k) {
    const SpherePoint base = arc_point(arc, static_cast<double>(k) / (knots + 1));
    for (int attempt = 0;; ++attempt) {
      const double r = spread * std::sqrt(uniform(rng));
      const SpherePoint q = exp_map(base, r * random_unit_tangent(base, rng));
      if (ball.contains(q, 0.0)) {
        path.push_back(q);
        break;
      }
      if (attempt > 1000) throw Error("random_polyline: cannot place a knot inside the ball");
    }
  }
  path.push_back(b);
  return path;
}

inline double polyline_length(const std::vector<SpherePoint>& path) {
  double len = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) len += geodesic_distance(path[i - 1], path[i]);
  return len;
}

}  // namespace steiner
