#pragma once

/// \file calibration.hpp
/// \brief Explicit calibrations and numerical verification of their axioms.
///
/// Sphere: the scalar Lipschitz form omega = df with
///   f(x) = max_i { r_i - d_i(x) },  r_i = d(S, P_i),
/// a maximum of 1-Lipschitz functions whose active branch along edge S P_i
/// is the i-th one. Plane: the constant identity matrix paired with lattice
/// multiplicities.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "steiner/current.hpp"
#include "steiner/error.hpp"
#include "steiner/hex_algebra.hpp"
#include "steiner/network.hpp"
#include "steiner/quadrature.hpp"
#include "steiner/sampling.hpp"
#include "steiner/spaces.hpp"
#include "steiner/sphere_geom.hpp"

namespace steiner {

/// Scalar 1-form: (point, tangent) -> R, linear in the tangent. `smooth`
/// identifies points off the ridge where the form is continuous.
template <class Space>
struct ScalarForm {
  std::function<double(const typename Space::Point&, const typename Space::Vector&)> eval;
  std::function<bool(const typename Space::Point&)> smooth;

  double operator()(const typename Space::Point& x, const typename Space::Vector& v) const {
    return eval(x, v);
  }
};

/// Branch index of f, or kTie when the top two branches differ by less than 1e-12.
inline constexpr int kTie = -1;

struct FValue {
  double value = 0.0;
  int branch = kTie;
  /// Index of the largest branch, even when tied.
  int top = 0;
  /// Difference between the largest and second largest branch values.
  double gap = 0.0;
};

class BranchCalibration {
 public:
  /// Radii are the distances from the junction to the terminals.
  BranchCalibration(const std::array<SpherePoint, 3>& terminals, const SpherePoint& junction)
      : terminals_(terminals), junction_(junction) {
    for (int i = 0; i < 3; ++i) radii_[i] = geodesic_distance(junction, terminals[i]);
  }

  /// Arbitrary radii, for perturbation experiments.
  static BranchCalibration with_radii(const std::array<SpherePoint, 3>& terminals,
                                      const SpherePoint& junction, const std::array<double, 3>& radii) {
    BranchCalibration c(terminals, junction);
    c.radii_ = radii;
    return c;
  }

  const std::array<SpherePoint, 3>& terminals() const { return terminals_; }
  const SpherePoint& junction() const { return junction_; }
  const std::array<double, 3>& radii() const { return radii_; }

  double branch_value(int i, const SpherePoint& x) const {
    return radii_[i] - geodesic_distance(x, terminals_[i]);
  }

 private:
  std::array<SpherePoint, 3> terminals_;
  SpherePoint junction_;
  std::array<double, 3> radii_{};
};

inline FValue f_value(const BranchCalibration& cal, const SpherePoint& x) {
  std::array<double, 3> v{};
  for (int i = 0; i < 3; ++i) {
    if (antipodal(x, cal.terminals()[i])) throw Error("f_value: point is antipodal to a terminal");
    v[i] = cal.branch_value(i, x);
  }
  std::array<int, 3> idx = {0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return v[a] > v[b]; });
  FValue out;
  out.value = v[idx[0]];
  out.top = idx[0];
  out.gap = v[idx[0]] - v[idx[1]];
  out.branch = out.gap < 1e-12 ? kTie : idx[0];
  return out;
}

/// Gradient of the active branch: the unit tangent toward its terminal.
inline TangentVec f_gradient(const BranchCalibration& cal, const SpherePoint& x) {
  const FValue fv = f_value(cal, x);
  if (fv.branch == kTie) throw Error("f_gradient: nonsmooth point");
  const SpherePoint& target = cal.terminals()[fv.branch];
  if (geodesic_distance(x, target) <= tol::kCoincident)
    throw Error("f_gradient: point coincides with the active terminal");
  return unit_tangent_toward(x, target);
}

/// omega = df as a scalar form on the sphere.
inline ScalarForm<Sphere> df_form(const BranchCalibration& cal) {
  return {[cal](const SpherePoint& x, const Eigen::Vector3d& v) { return f_gradient(cal, x).vec().dot(v); },
          [cal](const SpherePoint& x) { return f_value(cal, x).branch != kTie; }};
}

namespace detail {

/// Splits [t0, t1] of the geodesic from a to b into pieces with a single
/// active branch. Branch differences are 2-Lipschitz in arc length, so a
/// piece whose endpoints share the top branch with gaps of at least
/// len * (t1 - t0) keeps that branch throughout. Uncertified pieces are
/// bisected down to a width of 1e-14.
template <class PointAt>
void active_pieces(const BranchCalibration& cal, const PointAt& point, double len, double t0, double t1,
                   const FValue& f0, const FValue& f1, std::vector<std::pair<double, int>>& out) {
  const double w = t1 - t0;
  if (f0.top == f1.top && std::min(f0.gap, f1.gap) >= len * w) {
    out.emplace_back(t1, f0.top);
    return;
  }
  const double mid = 0.5 * (t0 + t1);
  const FValue fm = f_value(cal, point(mid));
  if (w < 1e-14) {
    out.emplace_back(t1, fm.top);
    return;
  }
  active_pieces(cal, point, len, t0, mid, f0, fm, out);
  active_pieces(cal, point, len, mid, t1, fm, f1, out);
}

}  // namespace detail

/// Integral of df along the geodesic from a to b. The segment is split into
/// pieces with a single active branch; each piece is integrated with
/// composite Gauss-Legendre quadrature using that branch's gradient.
inline double integrate_df_segment(const BranchCalibration& cal, const SpherePoint& a,
                                   const SpherePoint& b, const QuadratureOptions& opt = {}) {
  const double len = geodesic_distance(a, b);
  if (len <= tol::kCoincident) return 0.0;
  const Eigen::Vector3d& pa = a.coords();
  const Eigen::Vector3d u = unit_tangent_toward(a, b).vec();
  auto point = [&](double t) { return SpherePoint::normalized(std::cos(t * len) * pa + std::sin(t * len) * u); };

  // (end parameter, branch) of consecutive pieces, merged by branch.
  std::vector<std::pair<double, int>> pieces;
  detail::active_pieces(cal, point, len, 0.0, 1.0, f_value(cal, a), f_value(cal, b), pieces);
  std::vector<std::pair<double, int>> merged;
  for (const auto& p : pieces) {
    if (!merged.empty() && merged.back().second == p.second) merged.back().first = p.first;
    else merged.push_back(p);
  }

  // Arc x(s) = cos(s) a + sin(s) u with unit velocity tau(s); the gradient
  // of branch i is the unit tangent toward P_i, so with x . tau = 0 the
  // integrand is <P_i, tau> / |P_i - <x, P_i> x|.
  double total = 0.0, t0 = 0.0;
  for (const auto& [t1, branch] : merged) {
    const Eigen::Vector3d& q = cal.terminals()[branch].coords();
    auto integrand = [&](double t) {
      const double c = std::cos(t * len), sn = std::sin(t * len);
      const Eigen::Vector3d x = c * pa + sn * u;
      const Eigen::Vector3d tau = -sn * pa + c * u;
      const double n = (q - x.dot(q) * x).norm();
      return n <= tol::kCoincident ? 0.0 : q.dot(tau) / n;
    };
    total += len * integrate_adaptive(integrand, t0, t1, opt, 1.0).value;
    t0 = t1;
  }
  return total;
}

/// Integral of df along a piecewise-geodesic path.
inline double integrate_df_path(const BranchCalibration& cal, const std::vector<SpherePoint>& path,
                                const QuadratureOptions& opt = {}) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) total += integrate_df_segment(cal, path[i - 1], path[i], opt);
  return total;
}

struct AxiomReport {
  struct Closedness {
    bool exact = false;
    int loops_tested = 0;
    /// max |loop integral| / loop length.
    double max_loop_integral = 0.0;
    int path_pairs_tested = 0;
    double max_path_discrepancy = 0.0;
    bool pass = false;
  };
  struct Comass {
    int pairs_tested = 0;
    double max_lipschitz_ratio = 0.0;
    /// max of |f(x) - f(y)| - d(x, y).
    double max_lipschitz_excess = -std::numeric_limits<double>::infinity();
    /// Dual-norm comass of a constant form (planar case).
    double comass_value = std::numeric_limits<double>::quiet_NaN();
    bool pass = false;
  };
  struct CalibrationCondition {
    int edge_samples = 0;
    double max_deviation_from_1 = 0.0;
    bool pass = false;
  };
  struct RidgeClearance {
    /// Lower bound (half the branch gap) on the distance from sampled edge
    /// points to the ridge.
    double min_distance_from_edges_to_ridge = std::numeric_limits<double>::infinity();
    /// min over samples of that bound divided by the distance to the junction.
    double min_clearance_rate = std::numeric_limits<double>::infinity();
    bool except_at_junction = true;
  };

  Closedness closedness;
  Comass comass;
  CalibrationCondition calibration_condition;
  RidgeClearance ridge_clearance;
  double tol = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;

  bool pass() const { return closedness.pass && comass.pass && calibration_condition.pass; }

  std::vector<std::string> failing() const {
    std::vector<std::string> out;
    if (!closedness.pass) out.push_back("closedness");
    if (!comass.pass) out.push_back("comass");
    if (!calibration_condition.pass) out.push_back("calibration_condition");
    return out;
  }
};

struct SphericalAxiomOptions {
  /// Exclusion band around the ridge for loop knots.
  double ridge_band = 1e-3;
  std::uint64_t seed = 42;
  QuadratureOptions quadrature{};
};

/// Runs the three axiom checks for omega = df.
///
/// `samples` is the number of random loops, of Lipschitz pairs and of
/// points per edge; path pairs number samples / 10 (at least one).
inline AxiomReport verify_axioms_spherical(const BranchCalibration& cal, const SphereNetwork& net,
                                           const GeodesicBall& ball, int samples, double tol,
                                           const SphericalAxiomOptions& opt = {}) {
  if (samples <= 0 || !(tol > 0.0)) throw Error("verify_axioms_spherical: samples and tol must be positive");
  AxiomReport rep;
  rep.tol = tol;
  rep.seed = opt.seed;
  rep.samples = samples;
  const int loops = samples;
  const int per_edge = samples;
  const int path_pairs = std::max(1, samples / 10);

  auto off_ridge = [&](const SpherePoint& p) { return f_value(cal, p).gap / 2.0 > opt.ridge_band; };
  auto knot = [&](Rng& rng) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      const SpherePoint p = uniform_in_ball(ball, rng);
      if (off_ridge(p)) return p;
    }
    throw Error("verify_axioms_spherical: could not sample off the ridge band");
  };

  // (1) Closedness: loop integrals and path independence.
  rep.closedness.pass = true;
  for (int k = 0; k < loops; ++k) {
    Rng rng = sample_rng(opt.seed, 3 * static_cast<std::uint64_t>(k));
    const int n = 3 + static_cast<int>(rng() % 4);
    std::vector<SpherePoint> loop;
    for (int i = 0; i < n; ++i) loop.push_back(knot(rng));
    loop.push_back(loop.front());
    const double integral = integrate_df_path(cal, loop, opt.quadrature);
    const double ratio = std::abs(integral) / polyline_length(loop);
    rep.closedness.max_loop_integral = std::max(rep.closedness.max_loop_integral, ratio);
    if (!(ratio < tol)) rep.closedness.pass = false;
    ++rep.closedness.loops_tested;
    if (k >= path_pairs) continue;

    Rng prng = sample_rng(opt.seed, 3 * static_cast<std::uint64_t>(k) + 1);
    const SpherePoint p = knot(prng), q = knot(prng);
    std::vector<SpherePoint> path1 = {p}, path2 = {p};
    const int k1 = 1 + static_cast<int>(prng() % 3), k2 = 1 + static_cast<int>(prng() % 3);
    for (int i = 0; i < k1; ++i) path1.push_back(knot(prng));
    for (int i = 0; i < k2; ++i) path2.push_back(knot(prng));
    path1.push_back(q);
    path2.push_back(q);
    const double i1 = integrate_df_path(cal, path1, opt.quadrature);
    const double i2 = integrate_df_path(cal, path2, opt.quadrature);
    const double disc = std::abs(i1 - i2) / std::max(1.0, polyline_length(path1) + polyline_length(path2));
    rep.closedness.max_path_discrepancy = std::max(rep.closedness.max_path_discrepancy, disc);
    if (!(disc < tol)) rep.closedness.pass = false;
    ++rep.closedness.path_pairs_tested;
  }

  // (2) Comass, in Lipschitz form.
  rep.comass.pass = true;
  for (int k = 0; k < samples; ++k) {
    Rng rng = sample_rng(opt.seed ^ 0xC0FFEEull, static_cast<std::uint64_t>(k));
    const SpherePoint x = uniform_in_ball(ball, rng), y = uniform_in_ball(ball, rng);
    const double d = geodesic_distance(x, y);
    const double df = std::abs(f_value(cal, x).value - f_value(cal, y).value);
    const double excess = df - d;
    rep.comass.max_lipschitz_excess = std::max(rep.comass.max_lipschitz_excess, excess);
    if (d > 0.0) rep.comass.max_lipschitz_ratio = std::max(rep.comass.max_lipschitz_ratio, df / d);
    if (excess > 1e-12) rep.comass.pass = false;
    ++rep.comass.pairs_tested;
  }

  // (3) Calibration condition on each edge, oriented away from the junction,
  // plus ridge clearance at the same samples.
  rep.calibration_condition.pass = true;
  const SpherePoint& S = cal.junction();
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    SpherePoint from = net.tail(e), to = net.head(e);
    if (geodesic_distance(to, S) < geodesic_distance(from, S)) std::swap(from, to);
    int own = -1;
    for (int i = 0; i < 3; ++i)
      if (geodesic_distance(to, cal.terminals()[i]) <= 1e-10) own = i;
    for (int k = 0; k < per_edge; ++k) {
      const double t = (k + 0.5) / per_edge;
      const auto [x, tau] = Sphere::point_and_tangent(from, to, t);
      const FValue fv = f_value(cal, x);
      const double value = unit_tangent_toward(x, cal.terminals()[fv.top]).vec().dot(tau);
      const double dev = std::abs(value - 1.0);
      rep.calibration_condition.max_deviation_from_1 =
          std::max(rep.calibration_condition.max_deviation_from_1, dev);
      if (!(dev <= tol)) rep.calibration_condition.pass = false;
      ++rep.calibration_condition.edge_samples;

      auto& rc = rep.ridge_clearance;
      rc.min_distance_from_edges_to_ridge = std::min(rc.min_distance_from_edges_to_ridge, fv.gap / 2.0);
      const double s = geodesic_distance(x, S);
      if (s > 0.0) rc.min_clearance_rate = std::min(rc.min_clearance_rate, fv.gap / (2.0 * s));
      if (fv.branch == kTie || (own >= 0 && fv.top != own)) rc.except_at_junction = false;
    }
  }
  return rep;
}

/// Axioms for a constant matrix form paired with a planar current:
/// closedness is exact, comass is the dual hexagonal norm, and the extremal
/// condition <omega(tau), theta> = |theta| is checked at Gauss-Legendre
/// nodes on every edge.
inline AxiomReport verify_planar_calibration(const RectifiableCurrent<Plane>& T, const MatrixForm& omega,
                                             double tol = 1e-12) {
  if (T.multiplicity.empty()) throw Error("verify_planar_calibration: current has no edges");
  AxiomReport rep;
  rep.tol = tol;
  rep.closedness.exact = true;
  rep.closedness.pass = true;

  rep.comass.comass_value = comass(omega);
  rep.comass.pass = rep.comass.comass_value <= 1.0 + tol;

  const GaussLegendre rule(32);
  rep.calibration_condition.pass = true;
  for (std::size_t e = 0; e < T.multiplicity.size(); ++e) {
    const Eigen::Vector2d a = T.network.position(T.oriented_tail(e));
    const Eigen::Vector2d b = T.network.position(T.oriented_head(e));
    const Eigen::Vector2d theta = T.multiplicity[e].vector();
    const double mass_density = group_norm(T.multiplicity[e]);
    for (double t : rule.nodes()) {
      const auto [x, tau] = Plane::point_and_tangent(a, b, t);
      (void)x;
      const double dev = std::abs(omega(tau).dot(theta) - mass_density);
      rep.calibration_condition.max_deviation_from_1 =
          std::max(rep.calibration_condition.max_deviation_from_1, dev);
      if (!(dev <= tol)) rep.calibration_condition.pass = false;
      ++rep.calibration_condition.edge_samples;
    }
  }
  return rep;
}

/// The identity calibration of a Steiner current.
inline AxiomReport verify_planar_id_calibration(const RectifiableCurrent<Plane>& T) {
  return verify_planar_calibration(T, MatrixForm::identity(), 1e-12);
}

}  // namespace steiner
