#pragma once

/// \file minimality.hpp
/// \brief Empirical length-minimality certification: competitor networks,
/// length comparison, the mass inequality chain for planar currents with a
/// constant calibration, and a brute-force grid oracle for the optimum.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "steiner/current.hpp"
#include "steiner/error.hpp"
#include "steiner/hex_algebra.hpp"
#include "steiner/network.hpp"
#include "steiner/sampling.hpp"
#include "steiner/spaces.hpp"
#include "steiner/steiner_solver.hpp"

namespace steiner {

/// Closed disk in the plane; the planar analogue of GeodesicBall.
struct Disk {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 1.0;

  bool contains(const Eigen::Vector2d& p, double slack = 1e-12) const {
    return (p - center).norm() <= radius + slack;
  }

  /// Disk about the centroid holding the terminals with 10% margin.
  static Disk around(const Triple<Plane>& P) {
    const Eigen::Vector2d c = (P[0] + P[1] + P[2]) / 3.0;
    double r = 0.0;
    for (const auto& p : P) r = std::max(r, (p - c).norm());
    return {c, 1.1 * r};
  }
};

template <class Space>
using Region = std::conditional_t<Space::tag == SpaceTag::Sphere, GeodesicBall, Disk>;

namespace detail {
inline const SpherePoint& region_center(const GeodesicBall& b) { return b.center(); }
inline const Eigen::Vector2d& region_center(const Disk& d) { return d.center; }
inline double region_radius(const GeodesicBall& b) { return b.radius(); }
inline double region_radius(const Disk& d) { return d.radius; }

inline SpherePoint uniform_in(const GeodesicBall& b, Rng& rng) { return uniform_in_ball(b, rng); }
inline Eigen::Vector2d uniform_in(const Disk& d, Rng& rng) {
  const double r = d.radius * std::sqrt(uniform(rng));
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return d.center + r * Eigen::Vector2d(std::cos(phi), std::sin(phi));
}

inline Eigen::Vector3d unit_tangent_at(const SpherePoint& p, Rng& rng) { return random_unit_tangent(p, rng); }
inline Eigen::Vector2d unit_tangent_at(const Eigen::Vector2d&, Rng& rng) {
  const double phi = uniform(rng, 0.0, 2.0 * std::numbers::pi);
  return {std::cos(phi), std::sin(phi)};
}
}  // namespace detail

enum class CompetitorKind { PerturbedJunction, RandomJunction, PathTopology, TwoJunctionTree, Polyline };

inline constexpr std::array<CompetitorKind, 5> kAllCompetitorKinds = {
    CompetitorKind::PerturbedJunction, CompetitorKind::RandomJunction, CompetitorKind::PathTopology,
    CompetitorKind::TwoJunctionTree, CompetitorKind::Polyline};

inline std::string to_string(CompetitorKind k) {
  switch (k) {
    case CompetitorKind::PerturbedJunction: return "perturbed-junction";
    case CompetitorKind::RandomJunction: return "random-junction";
    case CompetitorKind::PathTopology: return "path-topology";
    case CompetitorKind::TwoJunctionTree: return "two-junction-tree";
    case CompetitorKind::Polyline: return "polyline";
  }
  return "unknown";
}

struct CompetitorSpec {
  CompetitorKind kind = CompetitorKind::PerturbedJunction;
  /// Perturbation radius (perturbed-junction) or knot spread (polyline).
  double radius = 0.05;
  /// Knots per edge (polyline) or the middle terminal 0/1/2 (path-topology).
  int nodes = 2;
  std::uint64_t seed = 0;
};

template <class Space>
bool network_inside(const EmbeddedNetwork<Space>& net, const Region<Space>& region, int samples_per_edge = 100) {
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    if (net.edge_length(e) <= tol::kCoincident) {
      if (!region.contains(net.tail(e))) return false;
      continue;
    }
    for (int k = 0; k <= samples_per_edge; ++k)
      if (!region.contains(net.edge_point(e, static_cast<double>(k) / samples_per_edge))) return false;
  }
  return true;
}

/// Deterministic function of (spec, terminals, reference junction, region).
template <class Space>
EmbeddedNetwork<Space> generate_competitor(const CompetitorSpec& spec, const Triple<Space>& P,
                                           const typename Space::Point& reference_junction,
                                           const Region<Space>& region) {
  using Point = typename Space::Point;
  Rng rng(sample_seed(spec.seed, static_cast<std::uint64_t>(spec.kind)));
  constexpr int kAttempts = 1000;

  auto sample_inside = [&](auto&& draw) -> Point {
    for (int a = 0; a < kAttempts; ++a) {
      const Point p = draw();
      if (region.contains(p, 0.0)) return p;
    }
    throw Error("generate_competitor: could not stay inside the region after 1000 attempts");
  };

  EmbeddedNetwork<Space> net;
  switch (spec.kind) {
    case CompetitorKind::PerturbedJunction: {
      const Point J = sample_inside([&] {
        const double r = spec.radius * std::sqrt(uniform(rng));
        return Space::exp(reference_junction, r * detail::unit_tangent_at(reference_junction, rng));
      });
      net = make_y_network<Space>(P, J);
      break;
    }
    case CompetitorKind::RandomJunction: {
      const Point J = sample_inside([&] { return detail::uniform_in(region, rng); });
      net = make_y_network<Space>(P, J);
      break;
    }
    case CompetitorKind::PathTopology: {
      if (spec.nodes < 0 || spec.nodes > 2) throw Error("generate_competitor: path middle must be 0, 1 or 2");
      net = make_vertex_network<Space>(P, spec.nodes);
      break;
    }
    case CompetitorKind::TwoJunctionTree: {
      const int alone = static_cast<int>(rng() % 3);
      const Point J1 = sample_inside([&] { return detail::uniform_in(region, rng); });
      const Point J2 = sample_inside([&] { return detail::uniform_in(region, rng); });
      std::array<std::size_t, 3> t{};
      for (int i = 0; i < 3; ++i) {
        t[i] = net.add_vertex(kTerminalIds[i], P[i]);
        net.mark_terminal(t[i]);
      }
      const std::size_t j1 = net.add_vertex("J1", J1), j2 = net.add_vertex("J2", J2);
      net.mark_junction(j1);
      net.mark_junction(j2);
      net.add_edge(j1, t[(alone + 1) % 3]);
      net.add_edge(j1, t[(alone + 2) % 3]);
      net.add_edge(j2, t[alone]);
      net.add_edge(j1, j2);
      break;
    }
    case CompetitorKind::Polyline: {
      if (spec.nodes < 1) throw Error("generate_competitor: polyline needs at least one knot per edge");
      std::array<std::size_t, 3> t{};
      for (int i = 0; i < 3; ++i) {
        t[i] = net.add_vertex(kTerminalIds[i], P[i]);
        net.mark_terminal(t[i]);
      }
      const std::size_t s = net.add_vertex(kJunctionId, reference_junction);
      net.mark_junction(s);
      for (int i = 0; i < 3; ++i) {
        std::size_t prev = s;
        for (int k = 1; k <= spec.nodes; ++k) {
          const Point base =
              Space::interpolate(reference_junction, P[i], static_cast<double>(k) / (spec.nodes + 1));
          const Point knot = sample_inside([&] {
            const double r = spec.radius * std::sqrt(uniform(rng));
            return Space::exp(base, r * detail::unit_tangent_at(base, rng));
          });
          const std::size_t v =
              net.add_vertex(std::string(kJunctionId) + kTerminalIds[i] + "_" + std::to_string(k), knot);
          net.add_edge(prev, v);
          prev = v;
        }
        net.add_edge(prev, t[i]);
      }
      break;
    }
  }
  if (!network_inside<Space>(net, region)) throw Error("generate_competitor: competitor leaves the region");
  return net;
}

/// Mixed competitor list: the three path topologies, then `count - 3`
/// specs cycling through the four random kinds with per-index seeds.
inline std::vector<CompetitorSpec> mixed_competitor_specs(int count, std::uint64_t seed,
                                                          double perturbation = 0.05, int polyline_knots = 3) {
  std::vector<CompetitorSpec> specs;
  for (int m = 0; m < 3 && static_cast<int>(specs.size()) < count; ++m)
    specs.push_back({CompetitorKind::PathTopology, 0.0, m, sample_seed(seed, static_cast<std::uint64_t>(m))});
  const std::array<CompetitorKind, 4> cycle = {CompetitorKind::PerturbedJunction, CompetitorKind::RandomJunction,
                                               CompetitorKind::TwoJunctionTree, CompetitorKind::Polyline};
  for (int i = 0; static_cast<int>(specs.size()) < count; ++i) {
    const CompetitorKind k = cycle[i % 4];
    specs.push_back({k, perturbation, k == CompetitorKind::Polyline ? polyline_knots : 0,
                     sample_seed(seed, 3 + static_cast<std::uint64_t>(i))});
  }
  return specs;
}

struct Violation {
  CompetitorSpec spec;
  double length = 0.0;
};

struct MarginHistogram {
  /// Bucket b (b >= 1) holds margins in [edges[b-1], edges[b]); bucket 0 holds
  /// negative margins and the last bucket everything from edges.back() up.
  std::vector<double> edges = {0.0, 1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  std::vector<int> counts = std::vector<int>(11, 0);

  void add(double margin) {
    if (margin < 0.0) {
      ++counts[0];
      return;
    }
    std::size_t b = 1;
    while (b < edges.size() && margin >= edges[b]) ++b;
    ++counts[b];
  }
};

struct KindSummary {
  int tested = 0;
  double min_length = std::numeric_limits<double>::infinity();
};

struct ComparisonReport {
  double reference_length = 0.0;
  int competitors_tested = 0;
  double min_competitor_length = std::numeric_limits<double>::infinity();
  std::vector<Violation> violations;
  MarginHistogram margin_histogram;
  std::unordered_map<std::string, KindSummary> per_kind;
  /// Lengths of the path topologies, indexed by middle terminal (NaN if not tested).
  std::array<double, 3> path_lengths = {std::numeric_limits<double>::quiet_NaN(),
                                        std::numeric_limits<double>::quiet_NaN(),
                                        std::numeric_limits<double>::quiet_NaN()};
  double violation_tol = 1e-9;
};

/// Lengths of competitors against the reference network. A competitor is a
/// violation when it is shorter than the reference by more than 1e-9.
template <class Space>
ComparisonReport compare_lengths(const EmbeddedNetwork<Space>& reference, const Triple<Space>& P,
                                 const typename Space::Point& reference_junction,
                                 const std::vector<CompetitorSpec>& specs, const Region<Space>& region) {
  ComparisonReport rep;
  rep.reference_length = network_length(reference);
  for (const CompetitorSpec& spec : specs) {
    const EmbeddedNetwork<Space> net = generate_competitor<Space>(spec, P, reference_junction, region);
    const double len = network_length(net);
    ++rep.competitors_tested;
    rep.min_competitor_length = std::min(rep.min_competitor_length, len);
    rep.margin_histogram.add(len - rep.reference_length);
    KindSummary& ks = rep.per_kind[to_string(spec.kind)];
    ++ks.tested;
    ks.min_length = std::min(ks.min_length, len);
    if (spec.kind == CompetitorKind::PathTopology) rep.path_lengths[spec.nodes] = len;
    if (len < rep.reference_length - rep.violation_tol) rep.violations.push_back({spec, len});
  }
  return rep;
}

/// h(exp(S, eps*u)) - h(S): the length excess of a Y-network whose junction
/// is moved by eps along unit direction u.
template <class Space>
double junction_excess(const Triple<Space>& P, const typename Space::Point& S,
                       const typename Space::Vector& u, double eps) {
  return distance_sum<Space>(Space::exp(S, eps * u), P) - distance_sum<Space>(S, P);
}

struct StokesChainEntry {
  double competitor_mass = 0.0;
  double competitor_value = 0.0;
  double stokes_discrepancy = 0.0;
  bool mass_bound = false;
  bool pass = false;
};

struct StokesChainReport {
  double mass = 0.0;
  double value = 0.0;
  double comass = 0.0;
  double calibration_gap = 0.0;
  double max_stokes_discrepancy = 0.0;
  double min_mass_margin = std::numeric_limits<double>::infinity();
  std::vector<StokesChainEntry> entries;
  bool pass = false;
};

/// M(T) = T(omega) = S(omega) <= comass(omega) M(S) for every competitor S
/// with the same G-boundary as T.
inline StokesChainReport verify_stokes_chain_planar(const RectifiableCurrent<Plane>& T, const MatrixForm& omega,
                                         const std::vector<RectifiableCurrent<Plane>>& competitors,
                                         const QuadratureOptions& quad = {}) {
  const BoundaryChain<Plane> dT = current_boundary(T);
  for (const auto& S : competitors)
    if (!(current_boundary(S) == dT)) throw Error("verify_stokes_chain_planar: not a competitor (boundary mismatch)");

  const VectorForm<Plane> form = as_form(omega);
  StokesChainReport rep;
  rep.mass = current_mass(T);
  rep.value = evaluate_current(T, form, quad);
  rep.comass = comass(omega);
  rep.calibration_gap = std::abs(rep.value - rep.mass);
  rep.pass = rep.calibration_gap <= 1e-10;
  for (const auto& S : competitors) {
    StokesChainEntry e;
    e.competitor_mass = current_mass(S);
    e.competitor_value = evaluate_current(S, form, quad);
    e.stokes_discrepancy = std::abs(e.competitor_value - rep.value);
    e.mass_bound = e.competitor_value <= e.competitor_mass * rep.comass + 1e-9;
    e.pass = e.stokes_discrepancy <= 1e-9 && e.mass_bound && rep.mass <= e.competitor_mass + 2e-9;
    rep.max_stokes_discrepancy = std::max(rep.max_stokes_discrepancy, e.stokes_discrepancy);
    rep.min_mass_margin = std::min(rep.min_mass_margin, e.competitor_mass - rep.mass);
    rep.pass = rep.pass && e.pass;
    rep.entries.push_back(e);
  }
  return rep;
}

/// Planar competitor currents for the Steiner current T: random networks with
/// the same terminals, multiplicities solved exactly from T's boundary.
inline std::vector<RectifiableCurrent<Plane>> planar_competitor_currents(const RectifiableCurrent<Plane>& T,
                                                                         int count, std::uint64_t seed) {
  // Terminals of T in A, B, C order with their boundary coefficients.
  Triple<Plane> P;
  std::array<GroupElement, 3> coeff{};
  int found = 0;
  const BoundaryChain<Plane> dT = current_boundary(T);
  for (std::size_t v : T.network.terminals()) {
    if (found == 3) break;
    P[found] = T.network.position(v);
    coeff[found] = dT.coefficient_at(P[found]);
    ++found;
  }
  if (found != 3) throw Error("planar_competitor_currents: expected three terminals");
  std::optional<Eigen::Vector2d> S;
  for (std::size_t v = 0; v < T.network.vertices().size(); ++v)
    if (!T.network.is_terminal(v)) S = T.network.position(v);
  const Eigen::Vector2d junction = S ? *S : P[0];
  const Disk region = Disk::around(P);

  std::vector<RectifiableCurrent<Plane>> out;
  std::vector<CompetitorSpec> specs = mixed_competitor_specs(count, seed, 0.2 * region.radius, 2);
  for (const CompetitorSpec& spec : specs) {
    const PlaneNetwork net = generate_competitor<Plane>(spec, P, junction, region);
    std::unordered_map<std::size_t, GroupElement> target;
    for (int i = 0; i < 3; ++i) target[*net.find_vertex(kTerminalIds[i])] = coeff[i];
    out.push_back(tree_current_with_boundary<Plane>(net, target));
  }
  return out;
}

struct OracleReport {
  int resolution = 0;
  double cell_diameter = 0.0;
  Eigen::Vector3d grid_junction = Eigen::Vector3d::Zero();
  double grid_length = 0.0;
  Eigen::Vector3d refined_junction = Eigen::Vector3d::Zero();
  double refined_length = 0.0;
  std::array<double, 3> path_lengths{};
  /// "Y" or the id of the terminal carrying the two-edge network.
  std::string best_kind;
  double best_length = 0.0;
  Eigen::Vector3d best_junction = Eigen::Vector3d::Zero();
  std::optional<double> solver_length;
  std::optional<double> junction_distance;
  bool agrees = true;
};

namespace detail {
template <class F>
double golden_section(F&& f, double a, double b, double tol = 1e-13) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}
}  // namespace detail

/// Brute-force optimum of the single-junction network: grid search over the
/// region in normal coordinates, then alternating golden-section refinement
/// in a chart at the best grid point. Path topologies are evaluated too.
template <class Space>
OracleReport oracle_global_check(const Triple<Space>& P, const Region<Space>& region, int resolution,
                                 std::optional<std::pair<typename Space::Point, double>> solver = std::nullopt) {
  using Point = typename Space::Point;
  if (resolution < 2) throw Error("oracle_global_check: resolution must be at least 2");
  OracleReport rep;
  rep.resolution = resolution;
  const NormalChart<Space> chart(detail::region_center(region));
  const double R = detail::region_radius(region);
  const double cell = 2.0 * R / (resolution - 1);
  rep.cell_diameter = std::sqrt(2.0) * cell;
  auto h = [&](const Point& x) { return distance_sum<Space>(x, P); };

  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector2d best_uv = Eigen::Vector2d::Zero();
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      const Eigen::Vector2d uv(-R + i * cell, -R + j * cell);
      if (uv.norm() > R) continue;
      const double v = h(chart.to_point(uv));
      if (v < best) best = v, best_uv = uv;
    }
  }
  const Point grid_pt = chart.to_point(best_uv);
  rep.grid_junction = Space::ambient(grid_pt);
  rep.grid_length = best;

  // Refinement in a chart centred on the best grid point.
  const NormalChart<Space> local(grid_pt);
  Eigen::Vector2d z = Eigen::Vector2d::Zero();
  auto hz = [&](const Eigen::Vector2d& w) { return h(local.to_point(w)); };
  const std::array<Eigen::Vector2d, 4> dirs = {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1),
                                               Eigen::Vector2d(1, 1).normalized(), Eigen::Vector2d(1, -1).normalized()};
  double window = 2.0 * cell;
  for (int sweep = 0; sweep < 500; ++sweep) {
    const Eigen::Vector2d before = z;
    for (const auto& d : dirs) {
      const double s = detail::golden_section([&](double t) { return hz(z + t * d); }, -window, window);
      z += s * d;
    }
    const double moved = (z - before).norm();
    if (moved < 1e-14) break;
    window = std::max(4.0 * moved, 1e-9);
  }
  const Point refined = local.to_point(z);
  rep.refined_junction = Space::ambient(refined);
  rep.refined_length = h(refined);

  rep.best_kind = "Y";
  rep.best_length = rep.refined_length;
  rep.best_junction = rep.refined_junction;
  for (int i = 0; i < 3; ++i) {
    rep.path_lengths[i] = Space::distance(P[i], P[(i + 1) % 3]) + Space::distance(P[i], P[(i + 2) % 3]);
    if (rep.path_lengths[i] < rep.best_length) {
      rep.best_length = rep.path_lengths[i];
      rep.best_kind = kTerminalIds[i];
      rep.best_junction = Space::ambient(P[i]);
    }
  }
  if (solver) {
    rep.solver_length = solver->second;
    const Eigen::Vector3d sj = Space::ambient(solver->first);
    rep.junction_distance = (sj - rep.best_junction).norm();
    rep.agrees = rep.best_length >= solver->second - 1e-9 &&
                 std::abs(rep.best_length - solver->second) <= 2.0 * rep.cell_diameter;
  }
  return rep;
}

}  // namespace steiner
