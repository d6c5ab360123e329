#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "steiner/network.hpp"
#include "steiner/sampling.hpp"

using namespace steiner;
using std::numbers::pi;

namespace {

/// Symmetric planar Y with unit arms at 90, 210 and 330 degrees.
PlaneNetwork planar_y(const Eigen::Vector2d& junction = Eigen::Vector2d::Zero()) {
  PlaneNetwork net;
  const std::size_t s = net.add_vertex("S", junction);
  for (int i = 0; i < 3; ++i) {
    const double a = pi / 2 + 2 * pi * i / 3;
    const std::size_t t = net.add_vertex(std::string(1, char('A' + i)), Eigen::Vector2d(std::cos(a), std::sin(a)));
    net.mark_terminal(t);
    net.add_edge(s, t);
  }
  net.mark_junction(s);
  return net;
}

SphereNetwork spherical_y(double polar) {
  SphereNetwork net;
  const std::size_t s = net.add_vertex("S", SpherePoint::north_pole());
  for (int i = 0; i < 3; ++i) {
    const std::size_t t = net.add_vertex(std::string(1, char('A' + i)), SpherePoint::from_polar(polar, 2 * pi * i / 3));
    net.mark_terminal(t);
    net.add_edge(s, t);
  }
  net.mark_junction(s);
  return net;
}

}  // namespace

TEST(AbstractGraph, TriodIsConnectedWithOrderThreeJunction) {
  const AbstractGraph g(3, {{{0, 0}, {0, 1}, {0, 2}}, {{1, 0}}, {{1, 1}}, {{1, 2}}});
  EXPECT_EQ(g.order(0), 3u);
  EXPECT_EQ(g.class_of({1, 2}), 3u);
}

TEST(AbstractGraph, RejectsBadPartitions) {
  EXPECT_THROW(AbstractGraph(0, {}), Error);
  // An endpoint left out.
  EXPECT_THROW(AbstractGraph(2, {{{0, 0}, {0, 1}}, {{1, 0}}}), Error);
  // An endpoint in two classes.
  EXPECT_THROW(AbstractGraph(1, {{{0, 0}}, {{1, 0}, {0, 0}}}), Error);
  // Two disjoint segments.
  EXPECT_THROW(AbstractGraph(2, {{{0, 0}}, {{1, 0}}, {{0, 1}}, {{1, 1}}}), Error);
  EXPECT_THROW(AbstractGraph(1, {{{0, 3}}, {{1, 0}}}), Error);
}

TEST(EmbeddedNetwork, RejectsMalformedEdges) {
  PlaneNetwork net;
  const std::size_t a = net.add_vertex("A", Eigen::Vector2d(0, 0));
  EXPECT_THROW(net.add_vertex("A", Eigen::Vector2d(1, 0)), Error);
  EXPECT_THROW(net.add_edge(a, a), Error);
  EXPECT_THROW(net.add_edge(a, 7), Error);

  SphereNetwork s;
  const std::size_t p = s.add_vertex("P", SpherePoint(1, 0, 0));
  const std::size_t q = s.add_vertex("Q", SpherePoint(-1, 0, 0));
  EXPECT_THROW(s.add_edge(p, q), Error);
}

TEST(NetworkLength, Examples) {
  PlaneNetwork seg;
  seg.add_edge(seg.add_vertex("p", Eigen::Vector2d(0, 0)), seg.add_vertex("q", Eigen::Vector2d(1, 0)));
  EXPECT_EQ(network_length(seg), 1.0);
  EXPECT_NEAR(network_length(planar_y()), 3.0, 1e-15);
  EXPECT_NEAR(network_length(spherical_y(0.3)), 0.9, 1e-15);
}

TEST(NetworkLength, SphericalEdgesMatchDenseChordPolyline) {
  Rng rng(21);
  const GeodesicBall region(SpherePoint::north_pole(), 1.2);
  SphereNetwork net;
  std::size_t prev = net.add_vertex("v0", uniform_in_ball(region, rng));
  for (int i = 1; i < 30; ++i) {
    const std::size_t cur = net.add_vertex("v" + std::to_string(i), uniform_in_ball(region, rng));
    net.add_edge(prev, cur);
    prev = cur;
  }
  double expected = 0.0;
  for (std::size_t e = 0; e < net.edges().size(); ++e) {
    const double chord = oracle::polyline_arc_length(net.tail(e).coords(), net.head(e).coords(), 40000);
    EXPECT_NEAR(net.edge_length(e), chord, 1e-9);
    expected += chord;
  }
  EXPECT_NEAR(network_length(net), expected, 1e-7);
}

TEST(Validate, SymmetricPlanarYPasses) {
  const MinimalityConditions c = validate_minimal_network(planar_y());
  EXPECT_TRUE(c.all()) << (c.messages.empty() ? "" : c.messages.front());
  EXPECT_LT(c.max_tangent_residual, 1e-15);
  EXPECT_GT(c.min_interior_separation, 1e-4);
}

TEST(Validate, SymmetricSphericalYPasses) {
  const MinimalityConditions c = validate_minimal_network(spherical_y(0.3));
  EXPECT_TRUE(c.all());
  EXPECT_LT(c.max_tangent_residual, 1e-12);
}

TEST(Validate, MovedJunctionFailsBalance) {
  const MinimalityConditions c = validate_minimal_network(planar_y(Eigen::Vector2d(0.1, 0.0)));
  EXPECT_FALSE(c.balanced_junctions);
  EXPECT_TRUE(c.geodesic_edges && c.disjoint_interiors && c.distinct_endpoints && c.junction_order);
  EXPECT_FALSE(c.all());
}

TEST(Validate, OrderFourJunctionFails) {
  PlaneNetwork net;
  const std::size_t s = net.add_vertex("S", Eigen::Vector2d(0, 0));
  for (int i = 0; i < 4; ++i) {
    const double a = pi / 2 * i;
    const std::size_t t = net.add_vertex("T" + std::to_string(i), Eigen::Vector2d(std::cos(a), std::sin(a)));
    net.mark_terminal(t);
    net.add_edge(s, t);
  }
  const MinimalityConditions c = validate_minimal_network(net);
  EXPECT_FALSE(c.junction_order);
  EXPECT_FALSE(c.all());
}

TEST(Validate, CrossingEdgesFail) {
  PlaneNetwork net;
  const auto a = net.add_vertex("A", Eigen::Vector2d(-1, 0));
  const auto b = net.add_vertex("B", Eigen::Vector2d(1, 0));
  const auto c = net.add_vertex("C", Eigen::Vector2d(0, -1));
  const auto d = net.add_vertex("D", Eigen::Vector2d(0, 1));
  for (auto v : {a, b, c, d}) net.mark_terminal(v);
  net.add_edge(a, b);
  net.add_edge(c, d);
  const MinimalityConditions r = validate_minimal_network(net);
  EXPECT_FALSE(r.disjoint_interiors);
  EXPECT_FALSE(r.connected);
  EXPECT_LT(r.min_interior_separation, 1e-12);
}

TEST(Validate, CrossingSphericalArcsFail) {
  SphereNetwork net;
  const auto a = net.add_vertex("A", SpherePoint::from_polar(0.3, 0.0));
  const auto b = net.add_vertex("B", SpherePoint::from_polar(0.3, pi - 0.2));
  const auto c = net.add_vertex("C", SpherePoint::from_polar(0.3, pi / 2));
  const auto d = net.add_vertex("D", SpherePoint::from_polar(0.3, -pi / 2 + 0.1));
  net.add_edge(a, b);
  net.add_edge(c, d);
  EXPECT_FALSE(validate_minimal_network(net).disjoint_interiors);
}

TEST(Validate, CoincidentEndpointsFail) {
  PlaneNetwork net;
  const auto a = net.add_vertex("A", Eigen::Vector2d(0, 0));
  const auto b = net.add_vertex("B", Eigen::Vector2d(0, 0));
  net.add_edge(a, b);
  EXPECT_FALSE(validate_minimal_network(net).distinct_endpoints);
}

TEST(Validate, NearlyTouchingEdgesAreResolved) {
  // Two disjoint segments whose closest approach (1e-6) falls between
  // samples; the separation must be found to relative accuracy.
  PlaneNetwork net;
  const auto a = net.add_vertex("A", Eigen::Vector2d(-1, 0));
  const auto b = net.add_vertex("B", Eigen::Vector2d(1, 0));
  const auto c = net.add_vertex("C", Eigen::Vector2d(0.000317, 1e-6));
  const auto d = net.add_vertex("D", Eigen::Vector2d(0.3, 1));
  net.add_edge(a, b);
  net.add_edge(c, d);
  const MinimalityConditions r = validate_minimal_network(net);
  EXPECT_TRUE(r.disjoint_interiors);
  EXPECT_NEAR(r.min_interior_separation, 1e-6, 1e-9);
}

TEST(Validate, RotationInvariantOnSphere) {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    const Eigen::Matrix3d R = random_rotation(rng);
    const SphereNetwork net =
        spherical_y(0.4).transformed([&](const SpherePoint& p) { return rotate(R, p); });
    const MinimalityConditions c = validate_minimal_network(net);
    EXPECT_TRUE(c.all());
    EXPECT_LT(c.max_tangent_residual, 1e-12);
  }
}
