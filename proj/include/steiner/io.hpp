#pragma once

/// \file io.hpp
/// \brief JSON encoding of networks, geodesic balls and reports.
///
/// Network schema:
///   {"space": "sphere"|"plane",
///    "vertices": [{"id": str, "coords": [x,y,z] | [x,y]}],
///    "edges": [{"from": id, "to": id}],
///    "terminals": [ids], "junctions": [ids]}
/// On input a sphere vertex may give {"lon": deg, "lat": deg} instead of
/// coords (either inline or as the value of "coords"). Output always uses
/// unit 3-vectors.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <variant>

#include "json.hpp"
#include "steiner/calibration.hpp"
#include "steiner/current.hpp"
#include "steiner/error.hpp"
#include "steiner/minimality.hpp"
#include "steiner/network.hpp"
#include "steiner/spaces.hpp"
#include "steiner/sphere_geom.hpp"
#include "steiner/steiner_solver.hpp"

namespace steiner::io {

using nlohmann::json;

inline json to_json(const SpherePoint& p) { return json::array({p.coords().x(), p.coords().y(), p.coords().z()}); }
inline json to_json(const Eigen::Vector2d& p) { return json::array({p.x(), p.y()}); }
inline json to_json(const Eigen::Vector3d& p) { return json::array({p.x(), p.y(), p.z()}); }

inline SpherePoint sphere_point_from_lonlat(double lon_deg, double lat_deg) {
  const double lon = lon_deg * std::numbers::pi / 180.0, lat = lat_deg * std::numbers::pi / 180.0;
  return SpherePoint(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon), std::sin(lat));
}

inline SpherePoint sphere_point_from_json(const json& j) {
  if (j.is_object()) {
    if (j.contains("lon") && j.contains("lat"))
      return sphere_point_from_lonlat(j.at("lon").get<double>(), j.at("lat").get<double>());
    if (j.contains("coords")) return sphere_point_from_json(j.at("coords"));
    throw Error("sphere point: expected coords or lon/lat");
  }
  if (!j.is_array() || j.size() != 3) throw Error("sphere point: coords must be a 3-vector");
  return SpherePoint(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

inline Eigen::Vector2d plane_point_from_json(const json& j) {
  const json& c = j.is_object() ? j.at("coords") : j;
  if (!c.is_array() || c.size() != 2) throw Error("plane point: coords must be a 2-vector");
  return {c[0].get<double>(), c[1].get<double>()};
}

template <class Space>
typename Space::Point point_from_json(const json& j) {
  if constexpr (Space::tag == SpaceTag::Sphere) return sphere_point_from_json(j);
  else return plane_point_from_json(j);
}

template <class Space>
json network_to_json(const EmbeddedNetwork<Space>& net) {
  json j;
  j["space"] = std::string(to_string(Space::tag));
  json vs = json::array();
  for (const auto& v : net.vertices()) vs.push_back({{"id", v.id}, {"coords", to_json(v.position)}});
  j["vertices"] = vs;
  json es = json::array();
  for (const auto& e : net.edges())
    es.push_back({{"from", net.vertices()[e.from].id}, {"to", net.vertices()[e.to].id}});
  j["edges"] = es;
  json ts = json::array(), js = json::array();
  for (std::size_t t : net.terminals()) ts.push_back(net.vertices()[t].id);
  for (std::size_t t : net.junctions()) js.push_back(net.vertices()[t].id);
  j["terminals"] = ts;
  j["junctions"] = js;
  return j;
}

template <class Space>
EmbeddedNetwork<Space> network_from_json(const json& j) {
  if (!j.contains("space") || j.at("space").get<std::string>() != to_string(Space::tag))
    throw Error("network: space tag does not match");
  EmbeddedNetwork<Space> net;
  for (const json& v : j.at("vertices")) {
    const std::string id = v.at("id").get<std::string>();
    net.add_vertex(id, point_from_json<Space>(v.contains("coords") ? v.at("coords") : v));
  }
  auto index = [&](const json& id) {
    const auto i = net.find_vertex(id.get<std::string>());
    if (!i) throw Error("network: unknown vertex id '" + id.get<std::string>() + "'");
    return *i;
  };
  if (j.contains("edges"))
    for (const json& e : j.at("edges")) net.add_edge(index(e.at("from")), index(e.at("to")));
  if (j.contains("terminals"))
    for (const json& t : j.at("terminals")) net.mark_terminal(index(t));
  if (j.contains("junctions"))
    for (const json& t : j.at("junctions")) net.mark_junction(index(t));
  return net;
}

inline json ball_to_json(const GeodesicBall& b) {
  return {{"center", to_json(b.center())}, {"radius", b.radius()}, {"admissible", b.admissible()}};
}
inline GeodesicBall ball_from_json(const json& j) {
  return GeodesicBall(sphere_point_from_json(j.at("center")), j.at("radius").get<double>());
}

inline json solver_config_to_json(const SolverConfig& c) {
  return {{"grad_tol", c.grad_tol}, {"max_iters", c.max_iters}, {"step_init", c.step_init},
          {"armijo_c", c.armijo_c}, {"backtrack", c.backtrack}};
}

template <class Space>
json steiner_result_to_json(const SteinerResult<Space>& r) {
  json j;
  j["junction"] = to_json(r.junction);
  j["degenerate_at"] = r.degenerate_at ? json(kTerminalIds[*r.degenerate_at]) : json(nullptr);
  j["tangent_residual"] = r.tangent_residual;
  j["iterations"] = r.iterations;
  j["converged"] = r.converged;
  j["boundary_case"] = r.boundary_case;
  j["length"] = r.length();
  j["message"] = r.message;
  return j;
}

inline json certificate_to_json(const JunctionCertificate& c) {
  json angles = json::array();
  for (double a : c.angles) angles.push_back(std::isnan(a) ? json(nullptr) : json(a));
  return {{"degenerate", c.degenerate},
          {"vertex", c.vertex >= 0 ? json(kTerminalIds[c.vertex]) : json(nullptr)},
          {"residual", c.residual},
          {"angles", angles},
          {"boundary_case", c.boundary_case},
          {"pass", c.pass}};
}

inline json conditions_to_json(const MinimalityConditions& m) {
  return {{"geodesic_edges", m.geodesic_edges},
          {"disjoint_interiors", m.disjoint_interiors},
          {"distinct_endpoints", m.distinct_endpoints},
          {"junction_order", m.junction_order},
          {"balanced_junctions", m.balanced_junctions},
          {"connected", m.connected},
          {"min_interior_separation",
           std::isfinite(m.min_interior_separation) ? json(m.min_interior_separation) : json(nullptr)},
          {"max_tangent_residual", m.max_tangent_residual},
          {"messages", m.messages},
          {"all", m.all()}};
}

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json axiom_report_to_json(const AxiomReport& r) {
  json j;
  j["closedness"] = {{"exact", r.closedness.exact},
                     {"loops_tested", r.closedness.loops_tested},
                     {"max_loop_integral", r.closedness.max_loop_integral},
                     {"path_pairs_tested", r.closedness.path_pairs_tested},
                     {"max_path_discrepancy", r.closedness.max_path_discrepancy},
                     {"pass", r.closedness.pass}};
  j["comass"] = {{"pairs_tested", r.comass.pairs_tested},
                 {"max_lipschitz_ratio", r.comass.max_lipschitz_ratio},
                 {"max_lipschitz_excess", finite_or_null(r.comass.max_lipschitz_excess)},
                 {"comass_value", finite_or_null(r.comass.comass_value)},
                 {"pass", r.comass.pass}};
  j["calibration_condition"] = {{"edge_samples", r.calibration_condition.edge_samples},
                                {"max_deviation_from_1", r.calibration_condition.max_deviation_from_1},
                                {"pass", r.calibration_condition.pass}};
  j["ridge_clearance"] = {
      {"min_distance_from_edges_to_ridge", finite_or_null(r.ridge_clearance.min_distance_from_edges_to_ridge)},
      {"min_clearance_rate", finite_or_null(r.ridge_clearance.min_clearance_rate)},
      {"except_at_junction", r.ridge_clearance.except_at_junction}};
  j["tol"] = r.tol;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["pass"] = r.pass();
  j["failing"] = r.failing();
  return j;
}

inline json spec_to_json(const CompetitorSpec& s) {
  return {{"kind", to_string(s.kind)}, {"radius", s.radius}, {"nodes", s.nodes}, {"seed", s.seed}};
}

inline json comparison_to_json(const ComparisonReport& r) {
  json j;
  j["reference_length"] = r.reference_length;
  j["competitors_tested"] = r.competitors_tested;
  j["min_competitor_length"] = finite_or_null(r.min_competitor_length);
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"spec", spec_to_json(x.spec)}, {"length", x.length}});
  j["violations"] = v;
  j["violation_tol"] = r.violation_tol;
  j["margin_histogram"] = {{"edges", r.margin_histogram.edges}, {"counts", r.margin_histogram.counts}};
  json kinds = json::object();
  for (CompetitorKind k : kAllCompetitorKinds) {
    const auto it = r.per_kind.find(to_string(k));
    if (it == r.per_kind.end()) continue;
    kinds[to_string(k)] = {{"tested", it->second.tested}, {"min_length", it->second.min_length}};
  }
  j["per_kind"] = kinds;
  json paths = json::object();
  for (int i = 0; i < 3; ++i) {
    // Ends in alphabetical order: B-A-C, A-B-C, A-C-B.
    const int lo = std::min((i + 1) % 3, (i + 2) % 3), hi = std::max((i + 1) % 3, (i + 2) % 3);
    const std::string name = std::string(kTerminalIds[lo]) + "-" + kTerminalIds[i] + "-" + kTerminalIds[hi];
    paths[name] = finite_or_null(r.path_lengths[i]);
  }
  j["path_topologies"] = paths;
  return j;
}

inline json oracle_to_json(const OracleReport& r) {
  json j = {{"resolution", r.resolution},
            {"cell_diameter", r.cell_diameter},
            {"grid_junction", to_json(r.grid_junction)},
            {"grid_length", r.grid_length},
            {"refined_junction", to_json(r.refined_junction)},
            {"refined_length", r.refined_length},
            {"path_lengths", r.path_lengths},
            {"best_kind", r.best_kind},
            {"best_length", r.best_length},
            {"best_junction", to_json(r.best_junction)},
            {"agrees", r.agrees}};
  j["solver_length"] = r.solver_length ? json(*r.solver_length) : json(nullptr);
  j["junction_distance"] = r.junction_distance ? json(*r.junction_distance) : json(nullptr);
  return j;
}

}  // namespace steiner::io
