#pragma once

/// \file current.hpp
/// \brief 1-rectifiable currents with coefficients in the lattice G,
/// supported on embedded networks: mass, boundary, evaluation against
/// R^2-valued 1-forms, and the current carried by a planar Steiner tree.
///
/// Orientation and multiplicity are constant on each edge. Values at
/// vertices never enter mass or boundary, and quadrature never samples them.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "steiner/error.hpp"
#include "steiner/hex_algebra.hpp"
#include "steiner/network.hpp"
#include "steiner/quadrature.hpp"

namespace steiner {

template <class Space>
struct RectifiableCurrent {
  EmbeddedNetwork<Space> network;
  /// reversed[e] means edge e is traversed from its `to` vertex to its `from` vertex.
  std::vector<bool> reversed;
  std::vector<GroupElement> multiplicity;

  RectifiableCurrent() = default;
  RectifiableCurrent(EmbeddedNetwork<Space> net, std::vector<bool> rev, std::vector<GroupElement> mult)
      : network(std::move(net)), reversed(std::move(rev)), multiplicity(std::move(mult)) {
    if (reversed.size() != network.edges().size() || multiplicity.size() != network.edges().size())
      throw Error("RectifiableCurrent: per-edge data does not match the edge count");
  }

  std::size_t oriented_tail(std::size_t e) const {
    const auto& E = network.edges()[e];
    return reversed[e] ? E.to : E.from;
  }
  std::size_t oriented_head(std::size_t e) const {
    const auto& E = network.edges()[e];
    return reversed[e] ? E.from : E.to;
  }
};

/// Finite sum of point masses with G coefficients. Points closer than
/// `merge_radius` are identified; zero coefficients are dropped.
template <class Space>
class BoundaryChain {
 public:
  using Point = typename Space::Point;
  static constexpr double merge_radius = 1e-10;

  void add(const Point& p, const GroupElement& g) {
    for (auto it = atoms_.begin(); it != atoms_.end(); ++it) {
      if (Space::distance(it->first, p) <= merge_radius) {
        it->second += g;
        if (it->second.is_zero()) atoms_.erase(it);
        return;
      }
    }
    if (!g.is_zero()) atoms_.emplace_back(p, g);
  }

  const std::vector<std::pair<Point, GroupElement>>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }
  std::size_t size() const { return atoms_.size(); }

  GroupElement coefficient_at(const Point& p) const {
    for (const auto& [q, g] : atoms_)
      if (Space::distance(q, p) <= merge_radius) return g;
    return GroupElement::zero();
  }

  /// Exact lattice equality, with point identification up to merge_radius.
  friend bool operator==(const BoundaryChain& a, const BoundaryChain& b) {
    if (a.size() != b.size()) return false;
    for (const auto& [p, g] : a.atoms_)
      if (b.coefficient_at(p) != g) return false;
    return true;
  }

 private:
  std::vector<std::pair<Point, GroupElement>> atoms_;
};

template <class Space>
double current_mass(const RectifiableCurrent<Space>& T) {
  double m = 0.0;
  for (std::size_t e = 0; e < T.multiplicity.size(); ++e)
    m += group_norm(T.multiplicity[e]) * T.network.edge_length(e);
  return m;
}

template <class Space>
BoundaryChain<Space> current_boundary(const RectifiableCurrent<Space>& T) {
  BoundaryChain<Space> chain;
  for (std::size_t e = 0; e < T.multiplicity.size(); ++e) {
    chain.add(T.network.position(T.oriented_head(e)), T.multiplicity[e]);
    chain.add(T.network.position(T.oriented_tail(e)), -T.multiplicity[e]);
  }
  return chain;
}

/// R^2-valued 1-form: (point, unit tangent) -> R^2, linear in the tangent.
template <class Space>
struct VectorForm {
  std::function<Eigen::Vector2d(const typename Space::Point&, const typename Space::Vector&)> eval;

  Eigen::Vector2d operator()(const typename Space::Point& x, const typename Space::Vector& v) const {
    return eval(x, v);
  }
};

inline VectorForm<Plane> as_form(const MatrixForm& omega) {
  return {[omega](const Eigen::Vector2d&, const Eigen::Vector2d& v) { return omega(v); }};
}

/// T(omega) = sum over edges of the integral of <omega(tau), theta> ds.
template <class Space>
double evaluate_current(const RectifiableCurrent<Space>& T, const VectorForm<Space>& omega,
                        const QuadratureOptions& opt = {}) {
  double total = 0.0;
  for (std::size_t e = 0; e < T.multiplicity.size(); ++e) {
    if (T.multiplicity[e].is_zero()) continue;
    const auto& a = T.network.position(T.oriented_tail(e));
    const auto& b = T.network.position(T.oriented_head(e));
    const double len = Space::distance(a, b);
    const Eigen::Vector2d theta = T.multiplicity[e].vector();
    auto integrand = [&](double t) {
      const auto [x, tau] = Space::point_and_tangent(a, b, t);
      return omega(x, tau).dot(theta);
    };
    total += len * integrate_adaptive(integrand, 0.0, 1.0, opt, theta.norm()).value;
  }
  return total;
}

/// Rotation by `angle` followed by translation: x -> R x + translation.
struct RigidMotion {
  double angle = 0.0;
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();

  Eigen::Matrix2d rotation() const {
    const double c = std::cos(angle), s = std::sin(angle);
    return (Eigen::Matrix2d() << c, -s, s, c).finished();
  }
  Eigen::Vector2d apply(const Eigen::Vector2d& p) const { return rotation() * p + translation; }
};

struct SteinerCurrent {
  RectifiableCurrent<Plane> current;
  /// Maps the input network onto current.network.
  RigidMotion motion;
  std::size_t junction = 0;
};

namespace detail {
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * std::numbers::pi);
  return a;
}
}  // namespace detail

/// Moves a planar minimal Y-network so its junction sits at the origin with
/// edges along g1, g2, g3 and assigns each edge the generator it is parallel
/// to, oriented away from the junction.
inline SteinerCurrent build_steiner_current(const PlaneNetwork& net, double align_tol = 1e-9) {
  const MinimalityConditions cond = validate_minimal_network(net);
  if (!cond.all()) throw Error("build_steiner_current: not a minimal network");
  std::optional<std::size_t> junction;
  for (std::size_t v = 0; v < net.vertices().size(); ++v) {
    if (net.is_terminal(v) || net.degree(v) == 0) continue;
    if (junction) throw Error("build_steiner_current: expected a single junction");
    junction = v;
  }
  if (!junction || net.edges().size() != 3 || net.degree(*junction) != 3)
    throw Error("build_steiner_current: not a minimal network (Y-topology required)");

  const Eigen::Vector2d S = net.position(*junction);
  const auto inc = net.incident(*junction);
  const Generators gen = generators();
  const std::array<Eigen::Vector2d, 3> g = {gen.g1, gen.g2, gen.g3};

  const Eigen::Vector2d t0 = Plane::unit_tangent(S, net.position(inc[0].second));
  const double a0 = std::atan2(t0.y(), t0.x());
  double rot = 0.0, best = std::numeric_limits<double>::infinity();
  for (const auto& gi : g) {
    const double r = detail::wrap_angle(std::atan2(gi.y(), gi.x()) - a0);
    if (std::abs(r) < best) best = std::abs(r), rot = r;
  }

  RigidMotion motion;
  motion.angle = rot;
  motion.translation = -(motion.rotation() * S);
  PlaneNetwork moved = net.transformed([&](const Eigen::Vector2d& p) { return motion.apply(p); });

  std::vector<bool> reversed(3);
  std::vector<GroupElement> mult(3);
  std::array<bool, 3> used{};
  for (const auto& [edge, other] : inc) {
    const Eigen::Vector2d tau = Plane::unit_tangent(moved.position(*junction), moved.position(other));
    bool matched = false;
    for (int i = 0; i < 3; ++i) {
      if (!used[i] && (tau - g[i]).norm() <= align_tol) {
        used[i] = matched = true;
        mult[edge] = GroupElement::generator(i + 1);
        reversed[edge] = net.edges()[edge].from != *junction;
        break;
      }
    }
    if (!matched) throw Error("build_steiner_current: not a minimal network (edges not at 120 degrees)");
  }
  return {RectifiableCurrent<Plane>(std::move(moved), std::move(reversed), std::move(mult)), motion,
          *junction};
}

/// Multiplicities on a tree network whose boundary is exactly `target`
/// (vertex index -> coefficient). Edges keep their stored orientation.
template <class Space>
RectifiableCurrent<Space> tree_current_with_boundary(
    const EmbeddedNetwork<Space>& net, const std::unordered_map<std::size_t, GroupElement>& target) {
  const std::size_t nv = net.vertices().size();
  const std::size_t ne = net.edges().size();
  if (ne + 1 != nv) throw Error("tree_current_with_boundary: network is not a tree");
  (void)net.graph();  // connectivity
  GroupElement total;
  for (const auto& [v, g] : target) {
    if (v >= nv) throw Error("tree_current_with_boundary: unknown vertex");
    total += g;
  }
  if (!total.is_zero()) throw Error("tree_current_with_boundary: boundary coefficients do not sum to zero");

  // Subtree sums from a DFS rooted at vertex 0.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nv);
  for (std::size_t v = 0; v < nv; ++v) adj[v] = net.incident(v);
  std::vector<std::size_t> parent(nv, nv), parent_edge(nv, ne), order;
  std::vector<bool> seen(nv, false);
  std::vector<std::size_t> stack = {0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (const auto& [e, w] : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      parent_edge[w] = e;
      stack.push_back(w);
    }
  }
  std::vector<GroupElement> subtree(nv);
  for (const auto& [v, g] : target) subtree[v] = g;
  for (auto it = order.rbegin(); it != order.rend(); ++it)
    if (parent[*it] != nv) subtree[parent[*it]] += subtree[*it];

  std::vector<GroupElement> mult(ne);
  for (std::size_t v = 0; v < nv; ++v) {
    if (parent[v] == nv) continue;
    const std::size_t e = parent_edge[v];
    // The head collects +theta; the subtree below v must net to subtree[v].
    mult[e] = net.edges()[e].to == v ? subtree[v] : -subtree[v];
  }
  return RectifiableCurrent<Space>(net, std::vector<bool>(ne, false), std::move(mult));
}

}  // namespace steiner
