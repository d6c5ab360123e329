#pragma once

/// \file network.hpp
/// \brief Abstract graphs, embedded networks on the sphere or the plane,
/// and the minimal-network validity conditions (a)-(e).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "steiner/error.hpp"
#include "steiner/spaces.hpp"

namespace steiner {

/// One end of an edge: side 0 is the start, side 1 the end.
struct Endpoint {
  int side = 0;
  std::size_t edge = 0;
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// N edges whose 2N endpoints are glued by a partition into vertex classes.
class AbstractGraph {
 public:
  AbstractGraph(std::size_t edge_count, std::vector<std::vector<Endpoint>> classes)
      : edge_count_(edge_count), classes_(std::move(classes)) {
    if (edge_count_ == 0) throw Error("AbstractGraph: at least one edge is required");
    class_of_.assign(2 * edge_count_, npos);
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      for (const Endpoint& e : classes_[c]) {
        if (e.edge >= edge_count_ || (e.side != 0 && e.side != 1))
          throw Error("AbstractGraph: endpoint out of range");
        std::size_t& slot = class_of_[2 * e.edge + e.side];
        if (slot != npos) throw Error("AbstractGraph: endpoint assigned to two classes");
        slot = c;
      }
    }
    if (std::find(class_of_.begin(), class_of_.end(), npos) != class_of_.end())
      throw Error("AbstractGraph: endpoint not assigned to any class");
    if (!connected()) throw Error("AbstractGraph: graph is not connected");
  }

  std::size_t edge_count() const { return edge_count_; }
  const std::vector<std::vector<Endpoint>>& vertex_classes() const { return classes_; }
  std::size_t class_of(Endpoint e) const { return class_of_[2 * e.edge + e.side]; }
  std::size_t order(std::size_t vertex_class) const { return classes_.at(vertex_class).size(); }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  bool connected() const {
    std::vector<std::size_t> parent(classes_.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (std::size_t e = 0; e < edge_count_; ++e)
      parent[find(class_of_[2 * e])] = find(class_of_[2 * e + 1]);
    for (std::size_t c = 0; c < classes_.size(); ++c)
      if (find(c) != find(0)) return false;
    return true;
  }

  std::size_t edge_count_;
  std::vector<std::vector<Endpoint>> classes_;
  std::vector<std::size_t> class_of_;
};

/// A network immersed in `Space`: straight segments in the plane, minimizing
/// great-circle arcs on the sphere. Vertices carry string ids so networks
/// round-trip through JSON.
template <class Space>
class EmbeddedNetwork {
 public:
  using Point = typename Space::Point;

  struct Vertex {
    std::string id;
    Point position;
  };
  struct Edge {
    std::size_t from = 0;
    std::size_t to = 0;
  };

  std::size_t add_vertex(std::string id, const Point& p) {
    for (const Vertex& v : vertices_)
      if (v.id == id) throw Error("EmbeddedNetwork: duplicate vertex id '" + id + "'");
    vertices_.push_back({std::move(id), p});
    return vertices_.size() - 1;
  }

  std::size_t add_edge(std::size_t from, std::size_t to) {
    if (from >= vertices_.size() || to >= vertices_.size())
      throw Error("EmbeddedNetwork: edge references unknown vertex");
    if (from == to) throw Error("EmbeddedNetwork: edge joins a vertex to itself");
    if constexpr (Space::tag == SpaceTag::Sphere) {
      if (antipodal(vertices_[from].position, vertices_[to].position))
        throw Error("EmbeddedNetwork: edge endpoints are antipodal");
    }
    edges_.push_back({from, to});
    return edges_.size() - 1;
  }

  void mark_terminal(std::size_t v) { mark(terminals_, v); }
  void mark_junction(std::size_t v) { mark(junctions_, v); }

  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& terminals() const { return terminals_; }
  const std::vector<std::size_t>& junctions() const { return junctions_; }

  const Point& position(std::size_t v) const { return vertices_.at(v).position; }
  const Point& tail(std::size_t e) const { return position(edges_.at(e).from); }
  const Point& head(std::size_t e) const { return position(edges_.at(e).to); }

  std::optional<std::size_t> find_vertex(const std::string& id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (vertices_[i].id == id) return i;
    return std::nullopt;
  }

  bool is_terminal(std::size_t v) const {
    return std::find(terminals_.begin(), terminals_.end(), v) != terminals_.end();
  }

  double edge_length(std::size_t e) const { return Space::distance(tail(e), head(e)); }

  /// Point at parameter t in [0,1] along edge e, from tail to head.
  Point edge_point(std::size_t e, double t) const { return Space::interpolate(tail(e), head(e), t); }

  /// Edges incident to v, with the far endpoint of each.
  std::vector<std::pair<std::size_t, std::size_t>> incident(std::size_t v) const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edges_[e].from == v) out.emplace_back(e, edges_[e].to);
      else if (edges_[e].to == v) out.emplace_back(e, edges_[e].from);
    }
    return out;
  }

  std::size_t degree(std::size_t v) const { return incident(v).size(); }

  /// The abstract graph: one vertex class per vertex that carries an edge.
  AbstractGraph graph() const {
    std::vector<std::vector<Endpoint>> classes;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      std::vector<Endpoint> cls;
      for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].from == v) cls.push_back({0, e});
        if (edges_[e].to == v) cls.push_back({1, e});
      }
      if (!cls.empty()) classes.push_back(std::move(cls));
    }
    return AbstractGraph(edges_.size(), std::move(classes));
  }

  /// Copy with every vertex moved by `f`.
  template <class F>
  EmbeddedNetwork transformed(F&& f) const {
    EmbeddedNetwork out = *this;
    for (Vertex& v : out.vertices_) v.position = f(v.position);
    return out;
  }

 private:
  void mark(std::vector<std::size_t>& list, std::size_t v) {
    if (v >= vertices_.size()) throw Error("EmbeddedNetwork: unknown vertex");
    if (std::find(list.begin(), list.end(), v) == list.end()) list.push_back(v);
  }

  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> terminals_;
  std::vector<std::size_t> junctions_;
};

using SphereNetwork = EmbeddedNetwork<Sphere>;
using PlaneNetwork = EmbeddedNetwork<Plane>;

template <class Space>
double network_length(const EmbeddedNetwork<Space>& net) {
  double total = 0.0;
  for (std::size_t e = 0; e < net.edges().size(); ++e) total += net.edge_length(e);
  return total;
}

/// Outcome of checking conditions (a)-(e) of a minimal network.
struct MinimalityConditions {
  bool geodesic_edges = true;       // (a)
  bool disjoint_interiors = true;   // (b)
  bool distinct_endpoints = true;   // (c)
  bool junction_order = true;       // (d)
  bool balanced_junctions = true;   // (e)
  bool connected = true;
  double min_interior_separation = std::numeric_limits<double>::infinity();
  double max_tangent_residual = 0.0;
  std::vector<std::string> messages;

  bool all() const {
    return geodesic_edges && disjoint_interiors && distinct_endpoints && junction_order &&
           balanced_junctions && connected;
  }
};

struct ValidationOptions {
  double tangent_tol = 1e-8;
  double separation_tol = 1e-8;
  /// Sample spacing along each edge as a fraction of its length.
  double resolution = 1e-3;
};

namespace detail {

/// Closest approach between the interiors of edges e and f of a network.
/// A shared endpoint is excluded together with a `resolution` neighbourhood
/// of it on both edges.
template <class Space>
double edge_separation(const EmbeddedNetwork<Space>& net, std::size_t e, std::size_t f,
                       double resolution) {
  const auto& E = net.edges()[e];
  const auto& F = net.edges()[f];
  // Parameter windows [lo, hi] on each edge after removing shared ends.
  double e_lo = 0.0, e_hi = 1.0, f_lo = 0.0, f_hi = 1.0;
  auto trim = [&](std::size_t ve, bool e_start, std::size_t vf, bool f_start) {
    if (ve != vf) return;
    (e_start ? e_lo : e_hi) = e_start ? resolution : 1.0 - resolution;
    (f_start ? f_lo : f_hi) = f_start ? resolution : 1.0 - resolution;
  };
  trim(E.from, true, F.from, true);
  trim(E.from, true, F.to, false);
  trim(E.to, false, F.from, true);
  trim(E.to, false, F.to, false);

  const int n = std::max(2, static_cast<int>(std::ceil(1.0 / resolution)));
  auto pe = [&](double t) { return Space::ambient(net.edge_point(e, t)); };
  auto pf = [&](double t) { return Space::ambient(net.edge_point(f, t)); };
  auto param = [n](double lo, double hi, int i) { return lo + (hi - lo) * i / n; };

  std::vector<Eigen::Vector3d> se(n + 1), sf(n + 1);
  for (int i = 0; i <= n; ++i) {
    se[i] = pe(param(e_lo, e_hi, i));
    sf[i] = pf(param(f_lo, f_hi, i));
  }
  std::vector<double> d((n + 1) * (n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) d[i * (n + 1) + j] = (se[i] - sf[j]).norm();

  // Refine every local minimum of the sampled distance by alternating
  // golden-section searches on the two parameters.
  auto local_min = [&](int i, int j) {
    const double v = d[i * (n + 1) + j];
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        const int a = i + di, b = j + dj;
        if ((di || dj) && a >= 0 && a <= n && b >= 0 && b <= n && d[a * (n + 1) + b] < v) return false;
      }
    return true;
  };
  auto golden = [](auto&& fn, double a, double b) {
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a), dd = a + r * (b - a);
    double fc = fn(c), fd = fn(dd);
    for (int it = 0; it < 80 && b - a > 1e-16; ++it) {
      if (fc < fd) { b = dd; dd = c; fd = fc; c = b - r * (b - a); fc = fn(c); }
      else { a = c; c = dd; fc = fd; dd = a + r * (b - a); fd = fn(dd); }
    }
    return 0.5 * (a + b);
  };

  double best = std::numeric_limits<double>::infinity();
  int refined = 0;
  for (int i = 0; i <= n && refined < 64; ++i) {
    for (int j = 0; j <= n && refined < 64; ++j) {
      if (!local_min(i, j)) continue;
      ++refined;
      const double de = (e_hi - e_lo) / n, df = (f_hi - f_lo) / n;
      double s = param(e_lo, e_hi, i), t = param(f_lo, f_hi, j);
      const double s_a = std::max(e_lo, s - 2 * de), s_b = std::min(e_hi, s + 2 * de);
      const double t_a = std::max(f_lo, t - 2 * df), t_b = std::min(f_hi, t + 2 * df);
      for (int round = 0; round < 60; ++round) {
        s = golden([&](double x) { return (pe(x) - pf(t)).norm(); }, s_a, s_b);
        t = golden([&](double x) { return (pe(s) - pf(x)).norm(); }, t_a, t_b);
      }
      best = std::min({best, d[i * (n + 1) + j], (pe(s) - pf(t)).norm()});
    }
  }
  return best;
}

}  // namespace detail

/// Checks conditions (a)-(e). Non-terminal vertices are the interior
/// junctions; each must have order three with balanced unit tangents.
template <class Space>
MinimalityConditions validate_minimal_network(const EmbeddedNetwork<Space>& net,
                                              const ValidationOptions& opt = {}) {
  MinimalityConditions rep;
  const std::size_t ne = net.edges().size();
  if (ne == 0) {
    rep.connected = false;
    rep.messages.push_back("network has no edges");
    return rep;
  }
  try {
    (void)net.graph();
  } catch (const Error& e) {
    rep.connected = false;
    rep.messages.push_back(e.what());
  }

  for (std::size_t e = 0; e < ne; ++e) {
    const double len = net.edge_length(e);
    if (!(len > tol::kCoincident)) {
      rep.distinct_endpoints = false;
      rep.messages.push_back("(c) edge " + std::to_string(e) + " has coincident endpoints");
    }
    const bool too_long = Space::tag == SpaceTag::Sphere && len >= std::numbers::pi - 1e-9;
    if (!std::isfinite(len) || too_long) {
      rep.geodesic_edges = false;
      rep.messages.push_back("(a) edge " + std::to_string(e) + " is not a minimizing geodesic");
    }
  }

  if (rep.distinct_endpoints) {
    for (std::size_t e = 0; e < ne; ++e) {
      for (std::size_t f = e + 1; f < ne; ++f) {
        const double sep = detail::edge_separation(net, e, f, opt.resolution);
        rep.min_interior_separation = std::min(rep.min_interior_separation, sep);
        if (sep < opt.separation_tol) {
          rep.disjoint_interiors = false;
          rep.messages.push_back("(b) edges " + std::to_string(e) + " and " + std::to_string(f) +
                                 " meet in their interiors");
        }
      }
    }
  }

  for (std::size_t v = 0; v < net.vertices().size(); ++v) {
    if (net.is_terminal(v)) continue;
    const auto inc = net.incident(v);
    if (inc.empty()) continue;
    if (inc.size() != 3) {
      rep.junction_order = false;
      rep.messages.push_back("(d) junction '" + net.vertices()[v].id + "' has order " +
                             std::to_string(inc.size()));
      continue;
    }
    if (!rep.distinct_endpoints) continue;
    typename Space::Vector sum = Space::zero();
    for (const auto& [edge, other] : inc) sum += Space::unit_tangent(net.position(v), net.position(other));
    const double residual = sum.norm();
    rep.max_tangent_residual = std::max(rep.max_tangent_residual, residual);
    if (!(residual < opt.tangent_tol)) {
      rep.balanced_junctions = false;
      rep.messages.push_back("(e) junction '" + net.vertices()[v].id + "' tangent sum " +
                             std::to_string(residual));
    }
  }
  return rep;
}

}  // namespace steiner
