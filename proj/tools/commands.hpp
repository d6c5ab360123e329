#pragma once

/// \file commands.hpp
/// \brief The five CLI commands as functions from a RunConfig to an exit
/// code and a payload. Flag parsing lives in steiner_cli.cpp.
///
/// Input documents:
///   problem: {"space": "sphere"|"plane", "terminals": [p, p, p] | {"A": p, "B": p, "C": p},
///             "ball": {"center": p, "radius": r}}      (sphere only)
///             "region": {"center": [x, y], "radius": r} (plane, optional)
///   solved:  the output of `solve`, or a bare network document (see io.hpp)
///            with "ball" beside it for the sphere.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "steiner/io.hpp"
#include "steiner/steiner.hpp"

namespace steiner::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kFailure = 1, kDegenerate = 2, kInadmissible = 3 };

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"solve", "verify", "compare", "oracle", "export"};
  return names;
}

struct RunConfig {
  std::string command;
  std::string input_path;
  std::string output_path;
  std::uint64_t seed = 42;
  int samples = 10000;
  double tol = 1e-9;
  bool strict_radius = true;
  int competitors = 1000;
  int grid = 200;
  std::string format = "json";
  /// Tolerance of the 120-degree certificate.
  double certify_tol = 1e-8;
  SolverConfig solver{};

  void validate() const {
    if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
      throw Error("unknown command '" + command + "'");
    if (!(tol > 0.0)) throw Error("--tol must be positive");
    if (samples <= 0) throw Error("--samples must be positive");
    if (competitors < 3) throw Error("--competitors must be at least 3");
    if (grid < 2) throw Error("--grid must be at least 2");
    if (format != "json" && format != "svg" && format != "csv") throw Error("--format must be svg, csv or json");
    if (input_path.empty()) throw Error("--input is required");
    if (!std::filesystem::exists(input_path)) throw Error("input file '" + input_path + "' does not exist");
    solver.validate();
  }

  json to_json() const {
    return {{"command", command},     {"input", input_path},   {"output", output_path},
            {"seed", seed},           {"samples", samples},    {"tol", tol},
            {"strict_radius", strict_radius}, {"competitors", competitors}, {"grid", grid},
            {"format", format},       {"certify_tol", certify_tol}, {"solver", io::solver_config_to_json(solver)}};
  }
};

struct CommandResult {
  int code = kOk;
  std::string payload;
  std::string message;
};

/// STEINER_LOG=debug|info|quiet; logs go to stderr so stdout stays clean.
inline void init_logging() {
  static bool done = false;
  if (done) return;
  done = true;
  auto logger = spdlog::stderr_color_mt("steiner");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  const char* env = std::getenv("STEINER_LOG");
  const std::string level = env ? env : "info";
  if (level == "debug") spdlog::set_level(spdlog::level::debug);
  else if (level == "quiet") spdlog::set_level(spdlog::level::off);
  else spdlog::set_level(spdlog::level::info);
}

/// Write-temp-then-rename so readers never see a partial file.
inline void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw Error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, target);
}

inline json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error("'" + path + "' is not valid JSON: " + e.what());
  }
}

namespace detail {

inline std::string space_of(const json& doc) {
  if (doc.contains("space")) return doc.at("space").get<std::string>();
  if (doc.contains("network") && doc.at("network").contains("space"))
    return doc.at("network").at("space").get<std::string>();
  throw Error("input: missing \"space\" (sphere or plane)");
}

inline const json& network_doc(const json& doc) {
  if (doc.contains("network")) return doc.at("network");
  if (doc.contains("vertices")) return doc;
  throw Error("input: not a network file (no \"network\" or \"vertices\")");
}

inline GeodesicBall ball_of(const json& doc) {
  if (doc.contains("ball")) return io::ball_from_json(doc.at("ball"));
  if (doc.contains("network") && doc.at("network").contains("ball"))
    return io::ball_from_json(doc.at("network").at("ball"));
  throw Error("input: sphere input needs a \"ball\" {center, radius}");
}

inline Disk region_of(const json& doc, const Triple<Plane>& P) {
  if (!doc.contains("region")) return Disk::around(P);
  const json& r = doc.at("region");
  return {io::plane_point_from_json(r.at("center")), r.at("radius").get<double>()};
}

inline json region_to_json(const Disk& d) { return {{"center", io::to_json(d.center)}, {"radius", d.radius}}; }

template <class Space>
Triple<Space> terminals_of_problem(const json& doc) {
  const json& t = doc.at("terminals");
  Triple<Space> P;
  if (t.is_array()) {
    if (t.size() != 3) throw Error("input: exactly three terminals required");
    for (int i = 0; i < 3; ++i) P[i] = io::point_from_json<Space>(t[i]);
  } else {
    for (int i = 0; i < 3; ++i) {
      if (!t.contains(kTerminalIds[i])) throw Error(std::string("input: terminal ") + kTerminalIds[i] + " missing");
      P[i] = io::point_from_json<Space>(t.at(kTerminalIds[i]));
    }
  }
  return P;
}

template <class Space>
struct Solved {
  EmbeddedNetwork<Space> net;
  Triple<Space> P;
  typename Space::Point junction;
  std::optional<int> degenerate_at;
};

/// Reads a solved three-terminal network: terminals A, B, C and either one
/// order-3 junction or a terminal carrying both edges.
template <class Space>
Solved<Space> load_solved(const json& doc) {
  Solved<Space> s{io::network_from_json<Space>(network_doc(doc)), {}, {}, std::nullopt};
  for (int i = 0; i < 3; ++i) {
    const auto v = s.net.find_vertex(kTerminalIds[i]);
    if (!v || !s.net.is_terminal(*v)) throw Error(std::string("network: terminal ") + kTerminalIds[i] + " missing");
    s.P[i] = s.net.position(*v);
  }
  std::vector<std::size_t> interior;
  for (std::size_t v = 0; v < s.net.vertices().size(); ++v)
    if (!s.net.is_terminal(v) && s.net.degree(v) > 0) interior.push_back(v);
  if (interior.size() == 1 && s.net.degree(interior[0]) == 3 && s.net.edges().size() == 3) {
    s.junction = s.net.position(interior[0]);
    return s;
  }
  if (interior.empty() && s.net.edges().size() == 2) {
    for (int i = 0; i < 3; ++i) {
      if (s.net.degree(*s.net.find_vertex(kTerminalIds[i])) == 2) {
        s.degenerate_at = i;
        s.junction = s.P[i];
        return s;
      }
    }
  }
  throw Error("network: not a solved three-terminal network (need a Y or a two-edge path)");
}

inline std::optional<CommandResult> admissibility_gate(const GeodesicBall& ball, const RunConfig& cfg) {
  if (ball.admissible() || !cfg.strict_radius) {
    if (!ball.admissible()) spdlog::warn("ball radius {} exceeds arccos(5/6); continuing (--no-strict-radius)", ball.radius());
    return std::nullopt;
  }
  CommandResult r;
  r.code = kInadmissible;
  std::ostringstream msg;
  msg.precision(10);
  msg << "ball radius " << ball.radius() << " is not admissible: the cap area must stay below pi/3, i.e. radius < "
      << "arccos(5/6) = " << max_admissible_radius();
  r.message = msg.str();
  return r;
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

template <class Space>
json envelope(const RunConfig& cfg) {
  return {{"command", cfg.command}, {"config", cfg.to_json()}, {"space", std::string(to_string(Space::tag))}};
}

inline std::vector<std::string> network_failures(const MinimalityConditions& cond, const JunctionCertificate& cert) {
  std::vector<std::string> out;
  if (!cond.balanced_junctions || !cert.pass) out.push_back("junction_balance");
  if (!(cond.geodesic_edges && cond.disjoint_interiors && cond.distinct_endpoints && cond.junction_order &&
        cond.connected))
    out.push_back("network_conditions");
  return out;
}

// ---- solve ---------------------------------------------------------------

template <class Space>
CommandResult solve_impl(const RunConfig& cfg, const json& doc) {
  const Triple<Space> P = terminals_of_problem<Space>(doc);
  json out = envelope<Space>(cfg);
  SteinerResult<Space> r;
  if constexpr (Space::tag == SpaceTag::Sphere) {
    const GeodesicBall ball = ball_of(doc);
    if (auto gate = admissibility_gate(ball, cfg)) return *gate;
    r = solve_spherical(P, ball, cfg.solver, {cfg.strict_radius});
    out["ball"] = io::ball_to_json(ball);
  } else {
    r = solve_planar(P, cfg.solver);
    if (doc.contains("region")) out["region"] = doc.at("region");
  }
  const JunctionCertificate cert = certify_junction<Space>(r.junction, P, cfg.certify_tol);
  const MinimalityConditions cond = validate_minimal_network(r.network);
  out["network"] = io::network_to_json(r.network);
  out["result"] = io::steiner_result_to_json(r);
  out["certificate"] = io::certificate_to_json(cert);
  out["conditions"] = io::conditions_to_json(cond);

  CommandResult res;
  res.payload = dump(out);
  if (r.degenerate_at && cert.pass && cond.all()) {
    res.code = kDegenerate;
    res.message = std::string("degenerate: optimum at terminal ") + kTerminalIds[*r.degenerate_at];
  } else if (r.converged && cert.pass && cond.all()) {
    res.code = kOk;
    res.message = "solved, length " + std::to_string(r.length());
  } else {
    res.code = kFailure;
    res.message = "solution not certified: " + r.message;
  }
  return res;
}

// ---- verify --------------------------------------------------------------

inline CommandResult verify_sphere(const RunConfig& cfg, const json& doc) {
  const GeodesicBall ball = ball_of(doc);
  if (auto gate = admissibility_gate(ball, cfg)) return *gate;
  const Solved<Sphere> s = load_solved<Sphere>(doc);
  const MinimalityConditions cond = validate_minimal_network(s.net);
  const JunctionCertificate cert = certify_junction<Sphere>(s.junction, s.P, cfg.certify_tol);
  const BranchCalibration cal(s.P, s.junction);
  SphericalAxiomOptions opt;
  opt.seed = cfg.seed;
  spdlog::debug("verify: {} samples, tol {}", cfg.samples, cfg.tol);
  const AxiomReport rep = verify_axioms_spherical(cal, s.net, ball, cfg.samples, cfg.tol, opt);

  std::vector<std::string> failing = rep.failing();
  for (const auto& f : network_failures(cond, cert)) failing.push_back(f);
  json out = envelope<Sphere>(cfg);
  out["ball"] = io::ball_to_json(ball);
  out["axioms"] = io::axiom_report_to_json(rep);
  out["certificate"] = io::certificate_to_json(cert);
  out["conditions"] = io::conditions_to_json(cond);
  out["failing"] = failing;
  out["pass"] = failing.empty();
  return {failing.empty() ? kOk : kFailure, dump(out),
          failing.empty() ? "calibration verified" : "verification failed: " + json(failing).dump()};
}

inline CommandResult verify_plane(const RunConfig& cfg, const json& doc) {
  const Solved<Plane> s = load_solved<Plane>(doc);
  if (s.degenerate_at)
    throw Error("verify: the identity calibration needs a Y-network; this network is degenerate at terminal " +
                std::string(kTerminalIds[*s.degenerate_at]));
  const MinimalityConditions cond = validate_minimal_network(s.net);
  const JunctionCertificate cert = certify_junction<Plane>(s.junction, s.P, cfg.certify_tol);
  std::vector<std::string> failing = network_failures(cond, cert);
  json out = envelope<Plane>(cfg);
  if (failing.empty()) {
    const SteinerCurrent sc = build_steiner_current(s.net);
    const AxiomReport rep = verify_planar_id_calibration(sc.current);
    for (const auto& f : rep.failing()) failing.push_back(f);
    out["axioms"] = io::axiom_report_to_json(rep);
    out["mass"] = current_mass(sc.current);
    out["alignment"] = {{"rotation", sc.motion.angle}, {"translation", io::to_json(sc.motion.translation)}};
  } else {
    out["axioms"] = nullptr;
  }
  out["certificate"] = io::certificate_to_json(cert);
  out["conditions"] = io::conditions_to_json(cond);
  out["failing"] = failing;
  out["pass"] = failing.empty();
  return {failing.empty() ? kOk : kFailure, dump(out),
          failing.empty() ? "calibration verified" : "verification failed: " + json(failing).dump()};
}

// ---- compare -------------------------------------------------------------

template <class Space>
CommandResult compare_impl(const RunConfig& cfg, const json& doc) {
  json out = envelope<Space>(cfg);
  const auto run = [&](const Solved<Space>& s, const Region<Space>& region) {
    const auto specs = mixed_competitor_specs(cfg.competitors, cfg.seed);
    spdlog::debug("compare: {} competitors", specs.size());
    return compare_lengths<Space>(s.net, s.P, s.junction, specs, region);
  };
  ComparisonReport rep;
  if constexpr (Space::tag == SpaceTag::Sphere) {
    const GeodesicBall ball = ball_of(doc);
    if (auto gate = admissibility_gate(ball, cfg)) return *gate;
    rep = run(load_solved<Sphere>(doc), ball);
    out["ball"] = io::ball_to_json(ball);
  } else {
    const Solved<Plane> s = load_solved<Plane>(doc);
    const Disk region = region_of(doc, s.P);
    rep = run(s, region);
    out["region"] = region_to_json(region);
  }
  out["comparison"] = io::comparison_to_json(rep);
  const bool ok = rep.violations.empty();
  return {ok ? kOk : kFailure, dump(out),
          ok ? "no violations among " + std::to_string(rep.competitors_tested) + " competitors"
             : std::to_string(rep.violations.size()) + " competitors shorter than the reference"};
}

// ---- oracle --------------------------------------------------------------

template <class Space>
CommandResult oracle_impl(const RunConfig& cfg, const json& doc) {
  const Triple<Space> P =
      doc.contains("terminals") ? terminals_of_problem<Space>(doc) : load_solved<Space>(doc).P;
  json out = envelope<Space>(cfg);
  OracleReport rep;
  SteinerResult<Space> r;
  if constexpr (Space::tag == SpaceTag::Sphere) {
    const GeodesicBall ball = ball_of(doc);
    if (auto gate = admissibility_gate(ball, cfg)) return *gate;
    r = solve_spherical(P, ball, cfg.solver, {cfg.strict_radius});
    rep = oracle_global_check<Sphere>(P, ball, cfg.grid, std::make_pair(r.junction, r.length()));
    out["ball"] = io::ball_to_json(ball);
  } else {
    r = solve_planar(P, cfg.solver);
    const Disk region = region_of(doc, P);
    rep = oracle_global_check<Plane>(P, region, cfg.grid, std::make_pair(r.junction, r.length()));
    out["region"] = region_to_json(region);
  }
  out["oracle"] = io::oracle_to_json(rep);
  out["solver"] = io::steiner_result_to_json(r);
  return {rep.agrees ? kOk : kFailure, dump(out),
          rep.agrees ? "oracle agrees with the solver (best: " + rep.best_kind + ")"
                     : "oracle disagrees with the solver"};
}

// ---- export --------------------------------------------------------------

/// Samples of each edge as ambient 3-vectors (z = 0 in the plane).
template <class Space>
std::vector<std::vector<Eigen::Vector3d>> edge_polylines(const EmbeddedNetwork<Space>& net, int n = 64) {
  std::vector<std::vector<Eigen::Vector3d>> out;
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    std::vector<Eigen::Vector3d> line;
    for (int k = 0; k <= n; ++k) line.push_back(Space::ambient(net.edge_point(e, static_cast<double>(k) / n)));
    out.push_back(std::move(line));
  }
  return out;
}

template <class Space>
std::string edge_name(const EmbeddedNetwork<Space>& net, std::size_t e) {
  return net.vertices()[net.edges()[e].from].id + "-" + net.vertices()[net.edges()[e].to].id;
}

/// f(x) = max_i (d(S, P_i) - d(x, P_i)); the same construction on both spaces.
template <class Space>
double branch_max(const Solved<Space>& s, const typename Space::Point& x) {
  double f = -std::numeric_limits<double>::infinity();
  for (const auto& p : s.P) f = std::max(f, Space::distance(s.junction, p) - Space::distance(x, p));
  return f;
}

class SvgWriter {
 public:
  SvgWriter(double xmin, double ymin, double xmax, double ymax) : x0_(xmin), y0_(ymin) {
    scale_ = (kSize - 2 * kMargin) / std::max(xmax - xmin, ymax - ymin);
    out_ << R"(<svg xmlns="http://www.w3.org/2000/svg" width=")" << kSize << R"(" height=")" << kSize
         << R"(" viewBox="0 0 )" << kSize << ' ' << kSize << "\">\n";
    out_ << R"(<rect width="100%" height="100%" fill="white"/>)" << "\n";
  }

  void polyline(const std::vector<Eigen::Vector2d>& pts, const std::string& stroke, double width,
                const std::string& extra = "") {
    out_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width << "\" " << extra
         << " points=\"";
    for (const auto& p : pts) out_ << fmt(sx(p.x())) << ',' << fmt(sy(p.y())) << ' ';
    out_ << "\"/>\n";
  }

  void dot(const Eigen::Vector2d& p, const std::string& fill, double r, const std::string& label = "") {
    out_ << "<circle cx=\"" << fmt(sx(p.x())) << "\" cy=\"" << fmt(sy(p.y())) << "\" r=\"" << r << "\" fill=\""
         << fill << "\"/>\n";
    if (!label.empty())
      out_ << "<text x=\"" << fmt(sx(p.x()) + 6) << "\" y=\"" << fmt(sy(p.y()) - 6)
           << "\" font-family=\"sans-serif\" font-size=\"14\">" << label << "</text>\n";
  }

  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  static constexpr double kSize = 500.0, kMargin = 30.0;
  double sx(double x) const { return kMargin + (x - x0_) * scale_; }
  double sy(double y) const { return kSize - kMargin - (y - y0_) * scale_; }
  static std::string fmt(double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(3);
    s << v;
    return s.str();
  }

  std::ostringstream out_;
  double x0_, y0_, scale_;
};

/// Orthographic projection onto the tangent plane at the ball centre.
inline std::string svg_sphere(const Solved<Sphere>& s, const GeodesicBall& ball) {
  const auto basis = Sphere::basis(ball.center());
  auto proj = [&](const Eigen::Vector3d& x) { return Eigen::Vector2d(x.dot(basis[0]), x.dot(basis[1])); };
  const double view = std::min(1.0, 1.15 * std::sin(ball.radius()));
  SvgWriter svg(-view, -view, view, view);
  std::vector<Eigen::Vector2d> rim, cap;
  for (int k = 0; k <= 256; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 256;
    const Eigen::Vector2d dir(std::cos(a), std::sin(a));
    if (view >= 1.0) rim.push_back(dir);
    cap.push_back(proj(exp_map(ball.center(), ball.radius() * (dir.x() * basis[0] + dir.y() * basis[1])).coords()));
  }
  if (!rim.empty()) svg.polyline(rim, "#bbbbbb", 1.0);
  svg.polyline(cap, "#4a7ab5", 1.5, "stroke-dasharray=\"6,4\"");
  for (const auto& line : edge_polylines(s.net)) {
    std::vector<Eigen::Vector2d> pts;
    for (const auto& x : line) pts.push_back(proj(x));
    svg.polyline(pts, "black", 2.0);
  }
  for (int i = 0; i < 3; ++i) svg.dot(proj(s.P[i].coords()), "#c0392b", 5.0, kTerminalIds[i]);
  if (!s.degenerate_at) svg.dot(proj(s.junction.coords()), "black", 4.0, kJunctionId);
  return svg.finish();
}

inline std::string svg_plane(const Solved<Plane>& s) {
  Eigen::Vector2d lo = s.P[0], hi = s.P[0];
  for (const auto& v : s.net.vertices()) lo = lo.cwiseMin(v.position), hi = hi.cwiseMax(v.position);
  const Eigen::Vector2d pad = 0.1 * (hi - lo).cwiseMax(Eigen::Vector2d::Constant(1e-9));
  SvgWriter svg(lo.x() - pad.x(), lo.y() - pad.y(), hi.x() + pad.x(), hi.y() + pad.y());
  for (std::size_t e = 0; e < s.net.edges().size(); ++e)
    svg.polyline({s.net.tail(e), s.net.head(e)}, "black", 2.0);
  for (int i = 0; i < 3; ++i) svg.dot(s.P[i], "#c0392b", 5.0, kTerminalIds[i]);
  if (!s.degenerate_at) svg.dot(s.junction, "black", 4.0, kJunctionId);
  return svg.finish();
}

/// Rows: section,id,index,x,y,z,value. Edge rows carry the arc parameter;
/// level rows are grid points within half a grid cell of f = level.
template <class Space>
std::string csv_export(const Solved<Space>& s, const Region<Space>& region, int grid) {
  std::ostringstream out;
  out.precision(17);
  out << "section,id,index,x,y,z,value\n";
  const auto lines = edge_polylines(s.net);
  for (std::size_t e = 0; e < lines.size(); ++e)
    for (std::size_t k = 0; k < lines[e].size(); ++k) {
      const auto& x = lines[e][k];
      out << "edge," << edge_name(s.net, e) << ',' << k << ',' << x.x() << ',' << x.y() << ',' << x.z() << ','
          << static_cast<double>(k) / (lines[e].size() - 1) << '\n';
    }

  const NormalChart<Space> chart(steiner::detail::region_center(region));
  const double R = steiner::detail::region_radius(region);
  const double cell = 2.0 * R / (grid - 1);
  double rmax = 0.0;
  for (const auto& p : s.P) rmax = std::max(rmax, Space::distance(s.junction, p));
  const std::array<double, 5> levels = {0.0, 0.25 * rmax, 0.5 * rmax, 0.75 * rmax, rmax};
  std::array<int, 5> counts{};
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Eigen::Vector2d uv(-R + i * cell, -R + j * cell);
      if (uv.norm() > R) continue;
      const auto p = chart.to_point(uv);
      const double f = branch_max(s, p);
      for (std::size_t l = 0; l < levels.size(); ++l) {
        if (std::abs(f - levels[l]) > 0.5 * cell) continue;
        const Eigen::Vector3d x = Space::ambient(p);
        out << "level," << levels[l] << ',' << counts[l]++ << ',' << x.x() << ',' << x.y() << ',' << x.z() << ','
            << f << '\n';
      }
    }
  return out.str();
}

template <class Space>
CommandResult export_impl(const RunConfig& cfg, const json& doc) {
  const Solved<Space> s = load_solved<Space>(doc);
  CommandResult res;
  if (cfg.format == "json") {
    json out = envelope<Space>(cfg);
    out["network"] = io::network_to_json(s.net);
    if constexpr (Space::tag == SpaceTag::Sphere) out["ball"] = io::ball_to_json(ball_of(doc));
    res.payload = dump(out);
  } else if constexpr (Space::tag == SpaceTag::Sphere) {
    const GeodesicBall ball = ball_of(doc);
    res.payload = cfg.format == "svg" ? svg_sphere(s, ball) : csv_export<Sphere>(s, ball, cfg.grid);
  } else {
    res.payload = cfg.format == "svg" ? svg_plane(s) : csv_export<Plane>(s, region_of(doc, s.P), cfg.grid);
  }
  res.message = "exported " + cfg.format;
  return res;
}

template <class Space>
CommandResult dispatch(const RunConfig& cfg, const json& doc) {
  if (cfg.command == "solve") return solve_impl<Space>(cfg, doc);
  if (cfg.command == "compare") return compare_impl<Space>(cfg, doc);
  if (cfg.command == "oracle") return oracle_impl<Space>(cfg, doc);
  if (cfg.command == "export") return export_impl<Space>(cfg, doc);
  if constexpr (Space::tag == SpaceTag::Sphere) return verify_sphere(cfg, doc);
  else return verify_plane(cfg, doc);
}

}  // namespace detail

/// Runs one command. Library errors become exit code 1 with the message;
/// nothing is thrown.
inline CommandResult run_command(const RunConfig& cfg) {
  try {
    cfg.validate();
    const json doc = load_json(cfg.input_path);
    const std::string space = detail::space_of(doc);
    spdlog::debug("{}: {} input '{}'", cfg.command, space, cfg.input_path);
    if (space == "sphere") return detail::dispatch<Sphere>(cfg, doc);
    if (space == "plane") return detail::dispatch<Plane>(cfg, doc);
    throw Error("input: unknown space '" + space + "'");
  } catch (const std::exception& e) {
    return {kFailure, "", e.what()};
  }
}

/// Runs the command and writes the payload to cfg.output_path (atomically)
/// or to `stdout_sink` when no output path is set. Returns the exit code.
inline int execute(const RunConfig& cfg, std::ostream& stdout_sink) {
  init_logging();
  CommandResult r = run_command(cfg);
  try {
    if (!r.payload.empty()) {
      if (cfg.output_path.empty()) stdout_sink << r.payload;
      else write_atomic(cfg.output_path, r.payload);
    }
  } catch (const std::exception& e) {
    r.code = kFailure;
    r.message = e.what();
  }
  switch (r.code) {
    case kOk: spdlog::info("{}", r.message); break;
    case kDegenerate: spdlog::warn("{}", r.message); break;
    default: spdlog::error("{}", r.message); break;
  }
  return r.code;
}

}  // namespace steiner::cli
