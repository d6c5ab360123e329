#include <gtest/gtest.h>

#include <numbers>

#include "steiner/io.hpp"

using namespace steiner;
using nlohmann::json;
using std::numbers::pi;

TEST(NetworkJson, SphereRoundTrip) {
  const GeodesicBall ball(SpherePoint::north_pole(), 0.5);
  const Triple<Sphere> P = {SpherePoint::from_polar(0.3, 0.1), SpherePoint::from_polar(0.2, 2.0),
                            SpherePoint::from_polar(0.4, 4.0)};
  const auto net = solve_spherical(P, ball).network;
  const json j = io::network_to_json(net);
  EXPECT_EQ(j.at("space"), "sphere");
  const auto back = io::network_from_json<Sphere>(j);
  EXPECT_EQ(io::network_to_json(back).dump(), j.dump());
  // Text round trip keeps doubles exact.
  const auto reparsed = io::network_from_json<Sphere>(json::parse(j.dump()));
  for (std::size_t v = 0; v < net.vertices().size(); ++v)
    EXPECT_EQ(reparsed.position(v).coords(), net.position(v).coords());
  EXPECT_EQ(network_length(reparsed), network_length(net));
  EXPECT_TRUE(validate_minimal_network(reparsed).all());
}

TEST(NetworkJson, PlaneRoundTrip) {
  const Triple<Plane> P = {Eigen::Vector2d(0, 0), Eigen::Vector2d(4, 0), Eigen::Vector2d(2, 3)};
  const auto net = solve_planar(P).network;
  const json j = io::network_to_json(net);
  EXPECT_EQ(j.at("space"), "plane");
  EXPECT_EQ(j.at("vertices")[0].at("coords").size(), 2u);
  EXPECT_EQ(io::network_to_json(io::network_from_json<Plane>(json::parse(j.dump()))).dump(), j.dump());
}

TEST(NetworkJson, LonLatInputIsNormalisedToUnitVectors) {
  const json j = json::parse(R"({
    "space": "sphere",
    "vertices": [{"id": "A", "lon": 0, "lat": 90},
                 {"id": "B", "coords": {"lon": 90, "lat": 0}},
                 {"id": "C", "coords": [1, 0, 0]}],
    "edges": [{"from": "A", "to": "B"}, {"from": "A", "to": "C"}],
    "terminals": ["A", "B", "C"], "junctions": []})");
  const auto net = io::network_from_json<Sphere>(j);
  EXPECT_NEAR((net.position(0).coords() - Eigen::Vector3d(0, 0, 1)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((net.position(1).coords() - Eigen::Vector3d(0, 1, 0)).norm(), 0.0, 1e-15);
  EXPECT_NEAR(network_length(net), pi, 1e-15);
  const json out = io::network_to_json(net);
  EXPECT_EQ(out.at("vertices")[1].at("coords").size(), 3u);
}

TEST(NetworkJson, MalformedInputIsRejected) {
  const json base = json::parse(R"({"space": "sphere",
    "vertices": [{"id": "A", "coords": [0, 0, 1]}, {"id": "B", "coords": [1, 0, 0]}],
    "edges": [{"from": "A", "to": "B"}], "terminals": ["A", "B"]})");
  EXPECT_NO_THROW(io::network_from_json<Sphere>(base));
  EXPECT_THROW(io::network_from_json<Plane>(base), Error);

  json bad_edge = base;
  bad_edge["edges"][0]["to"] = "Z";
  EXPECT_THROW(io::network_from_json<Sphere>(bad_edge), Error);

  json not_unit = base;
  not_unit["vertices"][0]["coords"] = {0, 0, 1.1};
  EXPECT_THROW(io::network_from_json<Sphere>(not_unit), Error);

  json short_coords = base;
  short_coords["vertices"][0]["coords"] = {0, 1};
  EXPECT_THROW(io::network_from_json<Sphere>(short_coords), Error);

  json no_space = base;
  no_space.erase("space");
  EXPECT_THROW(io::network_from_json<Sphere>(no_space), Error);
}

TEST(ReportJson, BallAndReportsCarryTheirFields) {
  const GeodesicBall ball(SpherePoint::north_pole(), 0.5);
  const json jb = io::ball_to_json(ball);
  EXPECT_EQ(jb.at("radius"), 0.5);
  EXPECT_TRUE(jb.at("admissible").get<bool>());
  EXPECT_EQ(io::ball_from_json(jb).radius(), 0.5);

  const Triple<Sphere> P = {SpherePoint::from_polar(0.3, 0.0), SpherePoint::from_polar(0.3, 2 * pi / 3),
                            SpherePoint::from_polar(0.3, 4 * pi / 3)};
  const auto r = solve_spherical(P, ball);
  const json jr = io::steiner_result_to_json(r);
  EXPECT_TRUE(jr.at("converged").get<bool>());
  EXPECT_TRUE(jr.at("degenerate_at").is_null());
  EXPECT_NEAR(jr.at("length").get<double>(), 0.9, 1e-12);

  const BranchCalibration cal(P, r.junction);
  const json ja = io::axiom_report_to_json(verify_axioms_spherical(cal, r.network, ball, 100, 1e-9));
  for (const char* k : {"closedness", "comass", "calibration_condition", "ridge_clearance", "tol", "seed",
                        "samples", "pass", "failing"})
    EXPECT_TRUE(ja.contains(k)) << k;
  EXPECT_EQ(ja.at("samples"), 100);

  const json jc = io::comparison_to_json(
      compare_lengths<Sphere>(r.network, P, r.junction, mixed_competitor_specs(20, 42), ball));
  EXPECT_EQ(jc.at("competitors_tested"), 20);
  EXPECT_EQ(jc.at("path_topologies").size(), 3u);
  EXPECT_TRUE(jc.at("path_topologies").contains("A-B-C"));
  EXPECT_NEAR(jc.at("path_topologies").at("A-B-C").get<double>(),
              geodesic_distance(P[0], P[1]) + geodesic_distance(P[1], P[2]), 1e-15);
}
