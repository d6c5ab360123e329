#pragma once

/// \file steiner_solver.hpp
/// \brief Three-terminal Steiner (Fermat) point in the plane and on the
/// sphere, with the degenerate-vertex case and 120-degree certification.
///
/// Plane: Weiszfeld iteration from the centroid. Sphere: Riemannian gradient
/// descent on h(x) = d(x,A) + d(x,B) + d(x,C) with Armijo backtracking from
/// a Barzilai-Borwein trial step, and the exponential map as retraction. Both first test whether some vertex
/// angle of the triangle is at least 2*pi/3, in which case the optimum is
/// that vertex and the network has two edges.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "steiner/error.hpp"
#include "steiner/network.hpp"
#include "steiner/spaces.hpp"

namespace steiner {

inline constexpr double kTwoThirdsPi = 2.0 * std::numbers::pi / 3.0;
/// Vertex angles within this distance of 2*pi/3 are flagged as boundary cases.
inline constexpr double kDegenerateAngleTol = 1e-12;

struct SolverConfig {
  double grad_tol = 1e-10;
  int max_iters = 10000;
  double step_init = 1.0;
  double armijo_c = 1e-4;
  double backtrack = 0.5;

  void validate() const {
    if (!(grad_tol > 0.0 && max_iters > 0 && step_init > 0.0 && armijo_c > 0.0))
      throw Error("SolverConfig: parameters must be positive");
    if (!(backtrack > 0.0 && backtrack < 1.0)) throw Error("SolverConfig: backtrack must lie in (0,1)");
  }
};

template <class Space>
using Triple = std::array<typename Space::Point, 3>;

inline constexpr std::array<const char*, 3> kTerminalIds = {"A", "B", "C"};
inline constexpr const char* kJunctionId = "S";

template <class Space>
struct SteinerResult {
  typename Space::Point junction;
  /// Index (0,1,2 for A,B,C) of the terminal the optimum collapses onto.
  std::optional<int> degenerate_at;
  EmbeddedNetwork<Space> network;
  double tangent_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Largest vertex angle within kDegenerateAngleTol of 2*pi/3.
  bool boundary_case = false;
  /// h at every accepted iterate, starting with the initial point.
  std::vector<double> objective_history;
  std::string message;

  double length() const { return network_length(network); }
};

template <class Space>
double distance_sum(const typename Space::Point& x, const Triple<Space>& P) {
  double h = 0.0;
  for (const auto& p : P) {
    if constexpr (Space::tag == SpaceTag::Sphere) {
      if (antipodal(x, p)) throw Error("distance_sum: point is antipodal to a terminal");
    }
    h += Space::distance(x, p);
  }
  return h;
}

/// Gradient of the distance sum: minus the sum of unit tangents toward the terminals.
template <class Space>
typename Space::Vector distance_sum_gradient(const typename Space::Point& x, const Triple<Space>& P) {
  typename Space::Vector g = Space::zero();
  for (const auto& p : P) {
    if (Space::distance(x, p) <= tol::kCoincident) throw Error("distance_sum_gradient: nonsmooth point");
    g -= Space::unit_tangent(x, p);
  }
  return g;
}

/// Interior angle of the triangle P at vertex i.
template <class Space>
double vertex_angle(const Triple<Space>& P, int i) {
  const auto& v = P[i];
  return vector_angle(Space::unit_tangent(v, P[(i + 1) % 3]), Space::unit_tangent(v, P[(i + 2) % 3]));
}

/// Y-network with terminals A, B, C and junction S, edges oriented S -> terminal.
template <class Space>
EmbeddedNetwork<Space> make_y_network(const Triple<Space>& P, const typename Space::Point& S) {
  EmbeddedNetwork<Space> net;
  std::array<std::size_t, 3> t{};
  for (int i = 0; i < 3; ++i) t[i] = net.add_vertex(kTerminalIds[i], P[i]);
  const std::size_t s = net.add_vertex(kJunctionId, S);
  for (int i = 0; i < 3; ++i) {
    net.mark_terminal(t[i]);
    net.add_edge(s, t[i]);
  }
  net.mark_junction(s);
  return net;
}

/// Two-edge network centred on terminal i.
template <class Space>
EmbeddedNetwork<Space> make_vertex_network(const Triple<Space>& P, int i) {
  EmbeddedNetwork<Space> net;
  std::array<std::size_t, 3> t{};
  for (int k = 0; k < 3; ++k) {
    t[k] = net.add_vertex(kTerminalIds[k], P[k]);
    net.mark_terminal(t[k]);
  }
  net.add_edge(t[i], t[(i + 1) % 3]);
  net.add_edge(t[i], t[(i + 2) % 3]);
  return net;
}

namespace detail {

template <class Space>
void require_distinct(const Triple<Space>& P) {
  for (int i = 0; i < 3; ++i)
    if (Space::distance(P[i], P[(i + 1) % 3]) <= tol::kCoincident)
      throw Error("steiner solver: terminals must be pairwise distinct");
}

/// Vertex whose angle is at least 2*pi/3 (largest such), if any.
template <class Space>
std::optional<int> obtuse_vertex(const Triple<Space>& P, bool& boundary_case) {
  std::optional<int> out;
  double best = -1.0;
  boundary_case = false;
  for (int i = 0; i < 3; ++i) {
    const double a = vertex_angle<Space>(P, i);
    if (std::abs(a - kTwoThirdsPi) <= kDegenerateAngleTol) boundary_case = true;
    if (a >= kTwoThirdsPi - kDegenerateAngleTol && a > best) {
      best = a;
      out = i;
    }
  }
  return out;
}

template <class Space>
SteinerResult<Space> degenerate_result(const Triple<Space>& P, int i, bool boundary_case) {
  SteinerResult<Space> r;
  r.junction = P[i];
  r.degenerate_at = i;
  r.network = make_vertex_network<Space>(P, i);
  r.tangent_residual =
      (Space::unit_tangent(P[i], P[(i + 1) % 3]) + Space::unit_tangent(P[i], P[(i + 2) % 3])).norm();
  r.converged = true;
  r.boundary_case = boundary_case;
  r.objective_history = {distance_sum<Space>(P[i], P)};
  r.message = std::string("degenerate: optimum at terminal ") + kTerminalIds[i];
  return r;
}

}  // namespace detail

/// Planar Fermat point by Weiszfeld iteration.
inline SteinerResult<Plane> solve_planar(const Triple<Plane>& P, const SolverConfig& cfg = {}) {
  cfg.validate();
  detail::require_distinct<Plane>(P);
  bool boundary = false;
  if (auto i = detail::obtuse_vertex<Plane>(P, boundary)) return detail::degenerate_result<Plane>(P, *i, boundary);

  const double scale = std::max({(P[0] - P[1]).norm(), (P[1] - P[2]).norm(), (P[2] - P[0]).norm()});
  SteinerResult<Plane> r;
  r.boundary_case = boundary;
  Eigen::Vector2d x = (P[0] + P[1] + P[2]) / 3.0;
  r.objective_history.push_back(distance_sum<Plane>(x, P));
  double residual = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < cfg.max_iters; ++it) {
    // Terminal-collision guard: step off along the descent direction.
    for (int i = 0; i < 3; ++i) {
      if ((x - P[i]).norm() < 1e-9 * scale) {
        const Eigen::Vector2d d =
            Plane::unit_tangent(P[i], P[(i + 1) % 3]) + Plane::unit_tangent(P[i], P[(i + 2) % 3]);
        x = P[i] + 1e-6 * scale * d.normalized();
      }
    }
    residual = distance_sum_gradient<Plane>(x, P).norm();
    if (residual < cfg.grad_tol) break;
    Eigen::Vector2d num = Eigen::Vector2d::Zero();
    double den = 0.0;
    for (const auto& p : P) {
      const double w = 1.0 / (x - p).norm();
      num += w * p;
      den += w;
    }
    const Eigen::Vector2d next = num / den;
    const double step = (next - x).norm();
    x = next;
    r.objective_history.push_back(distance_sum<Plane>(x, P));
    if (step <= 1e-16 * scale) {
      residual = distance_sum_gradient<Plane>(x, P).norm();
      break;
    }
  }
  r.junction = x;
  r.iterations = it;
  r.tangent_residual = residual;
  r.converged = residual < cfg.grad_tol;
  r.network = make_y_network<Plane>(P, x);
  r.message = r.converged ? "converged" : "iteration limit reached before the gradient tolerance";
  return r;
}

struct SphericalSolveOptions {
  /// Refuse balls whose cap area is not below pi/3.
  bool strict_radius = true;
};

/// Spherical Fermat point by Riemannian steepest descent inside `ball`.
inline SteinerResult<Sphere> solve_spherical(const Triple<Sphere>& P, const GeodesicBall& ball,
                                             const SolverConfig& cfg = {},
                                             const SphericalSolveOptions& opt = {}) {
  cfg.validate();
  if (opt.strict_radius && !ball.admissible())
    throw Error("solve_spherical: ball radius " + std::to_string(ball.radius()) +
                " is not admissible (must be below arccos(5/6) = " +
                std::to_string(max_admissible_radius()) + ")");
  for (const auto& p : P)
    if (!ball.contains(p, 1e-12)) throw Error("solve_spherical: terminal outside the geodesic ball");
  detail::require_distinct<Sphere>(P);
  bool boundary = false;
  if (auto i = detail::obtuse_vertex<Sphere>(P, boundary)) return detail::degenerate_result<Sphere>(P, *i, boundary);

  SteinerResult<Sphere> r;
  r.boundary_case = boundary;
  SpherePoint x = SpherePoint::normalized(P[0].coords() + P[1].coords() + P[2].coords());
  double h = distance_sum<Sphere>(x, P);
  r.objective_history.push_back(h);
  Eigen::Vector3d g = distance_sum_gradient<Sphere>(x, P);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Barzilai-Borwein estimate used as the first trial step after the first
  // iteration; Armijo backtracking still decides acceptance.
  double t_first = cfg.step_init;
  int it = 0;
  for (; it < cfg.max_iters && g.norm() >= cfg.grad_tol; ++it) {
    const double g2 = g.squaredNorm();
    double t = t_first;
    bool accepted = false;
    while (t > 1e-20) {
      const Eigen::Vector3d step = -t * g;
      if (step.norm() < std::numbers::pi) {
        const SpherePoint y = exp_map(x, step);
        if (ball.contains(y, 0.0)) {
          const double hy = distance_sum<Sphere>(y, P);
          Eigen::Vector3d gy;
          bool ok = false;
          if (cfg.armijo_c * t * g2 > 64.0 * eps * h) {
            ok = hy <= h - cfg.armijo_c * t * g2;
            if (ok) gy = distance_sum_gradient<Sphere>(y, P);
          } else {
            // The Armijo decrease is below the rounding resolution of h:
            // accept on gradient progress instead.
            gy = distance_sum_gradient<Sphere>(y, P);
            ok = hy <= h + 64.0 * eps * h && gy.norm() < g.norm();
          }
          if (ok) {
            const Eigen::Vector3d s_amb = y.coords() - x.coords();
            const double sy = s_amb.dot(gy - g);
            t_first = sy > 0.0 ? std::min(s_amb.squaredNorm() / sy, 1e3 * cfg.step_init) : cfg.step_init;
            x = y;
            h = hy;
            g = gy;
            r.objective_history.push_back(h);
            accepted = true;
            break;
          }
        }
      }
      t *= cfg.backtrack;
    }
    if (!accepted) break;
  }
  if (!ball.contains(x, 0.0)) throw Error("solve_spherical: left geodesic ball");
  r.junction = x;
  r.iterations = it;
  r.tangent_residual = g.norm();
  r.converged = r.tangent_residual < cfg.grad_tol;
  r.network = make_y_network<Sphere>(P, x);
  r.message = r.converged ? "converged" : "stopped before the gradient tolerance (line search stalled or iteration limit)";
  return r;
}

/// Certification of the 120-degree condition at a junction.
struct JunctionCertificate {
  bool degenerate = false;
  /// Terminal index the junction coincides with, when degenerate.
  int vertex = -1;
  /// |tau_SA + tau_SB + tau_SC| (non-degenerate case).
  double residual = 0.0;
  /// Pairwise angles (BSC, CSA, ASB); in the degenerate case only angles[0]
  /// is meaningful: the angle at the vertex between its two edges.
  std::array<double, 3> angles{};
  bool boundary_case = false;
  bool pass = false;
};

template <class Space>
JunctionCertificate certify_junction(const typename Space::Point& S, const Triple<Space>& P, double tol) {
  JunctionCertificate c;
  for (int i = 0; i < 3; ++i) {
    if (Space::distance(S, P[i]) <= tol::kCoincident) {
      c.degenerate = true;
      c.vertex = i;
      c.angles[0] = vertex_angle<Space>(P, i);
      c.angles[1] = c.angles[2] = std::numeric_limits<double>::quiet_NaN();
      c.residual =
          (Space::unit_tangent(P[i], P[(i + 1) % 3]) + Space::unit_tangent(P[i], P[(i + 2) % 3])).norm();
      c.boundary_case = std::abs(c.angles[0] - kTwoThirdsPi) <= kDegenerateAngleTol;
      c.pass = c.angles[0] >= kTwoThirdsPi - kDegenerateAngleTol;
      return c;
    }
  }
  std::array<typename Space::Vector, 3> tau;
  for (int i = 0; i < 3; ++i) tau[i] = Space::unit_tangent(S, P[i]);
  c.residual = (tau[0] + tau[1] + tau[2]).norm();
  for (int i = 0; i < 3; ++i) c.angles[i] = vector_angle(tau[(i + 1) % 3], tau[(i + 2) % 3]);
  c.pass = c.residual < tol;
  for (double a : c.angles) c.pass = c.pass && std::abs(a - kTwoThirdsPi) <= tol;
  return c;
}

}  // namespace steiner
