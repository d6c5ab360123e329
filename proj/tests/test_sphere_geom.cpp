#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "steiner/sampling.hpp"
#include "steiner/sphere_geom.hpp"

using namespace steiner;
using std::numbers::pi;

namespace {

const SpherePoint kNorth = SpherePoint::north_pole();
const SpherePoint kX(1.0, 0.0, 0.0);

/// Random pair that is not within 1e-6 of antipodal.
std::pair<SpherePoint, SpherePoint> random_pair(Rng& rng) {
  for (;;) {
    SpherePoint p = uniform_on_sphere(rng), q = uniform_on_sphere(rng);
    if (p.dot(q) > -1.0 + 1e-6) return {p, q};
  }
}

}  // namespace

TEST(SpherePoint, RejectsNonUnitInput) {
  EXPECT_THROW(SpherePoint(1.0, 1.0, 0.0), Error);
  EXPECT_NO_THROW(SpherePoint(1.0 + 1e-10, 0.0, 0.0));
  EXPECT_NEAR(SpherePoint(1.0 + 1e-10, 0.0, 0.0).coords().norm(), 1.0, 1e-15);
}

TEST(TangentVec, RejectsNonTangentVector) {
  EXPECT_THROW(TangentVec(kNorth, Eigen::Vector3d(0, 0, 1)), Error);
  EXPECT_NO_THROW(TangentVec(kNorth, Eigen::Vector3d(1, 2, 0)));
}

TEST(GeodesicDistance, TrivialCases) {
  EXPECT_EQ(geodesic_distance(kNorth, kNorth), 0.0);
  EXPECT_NEAR(geodesic_distance(kNorth, kX), pi / 2, 1e-15);
  EXPECT_NEAR(geodesic_distance(kX, SpherePoint(-1, 0, 0)), pi, 1e-15);
}

TEST(GeodesicDistance, MatchesArccosFormAndIsSymmetric) {
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    auto [p, q] = random_pair(rng);
    EXPECT_NEAR(geodesic_distance(p, q), oracle::arccos_distance(p.coords(), q.coords()), 1e-7);
    EXPECT_EQ(geodesic_distance(p, q), geodesic_distance(q, p));
  }
}

TEST(GeodesicDistance, TriangleInequality) {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    SpherePoint a = uniform_on_sphere(rng), b = uniform_on_sphere(rng), c = uniform_on_sphere(rng);
    EXPECT_LE(geodesic_distance(a, c), geodesic_distance(a, b) + geodesic_distance(b, c) + 1e-12);
  }
}

TEST(ExpMap, IdentityAndQuarterCircle) {
  EXPECT_EQ(exp_map(kNorth, Eigen::Vector3d::Zero()).coords(), kNorth.coords());
  const SpherePoint q = exp_map(kNorth, Eigen::Vector3d(pi / 2, 0, 0));
  EXPECT_NEAR((q.coords() - kX.coords()).norm(), 0.0, 1e-15);
}

TEST(ExpMap, OutsideInjectivityRadius) {
  try {
    exp_map(kNorth, Eigen::Vector3d(pi, 0, 0));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("outside injectivity radius"), std::string::npos);
  }
}

TEST(LogMap, TrivialCases) {
  EXPECT_EQ(log_map(kNorth, kNorth).norm(), 0.0);
  const TangentVec v = log_map(kNorth, kX);
  EXPECT_NEAR((v.vec() - Eigen::Vector3d(pi / 2, 0, 0)).norm(), 0.0, 1e-15);
}

TEST(LogMap, CutLocusIsAnError) {
  try {
    log_map(kX, SpherePoint(-1, 0, 0));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("cut locus"), std::string::npos);
  }
}

TEST(LogMap, NormIsDistanceAndExpInvertsIt) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    auto [p, q] = random_pair(rng);
    const TangentVec v = log_map(p, q);
    EXPECT_NEAR(v.norm(), oracle::arccos_distance(p.coords(), q.coords()), 1e-7);
    EXPECT_NEAR(v.norm(), geodesic_distance(p, q), 1e-14);
    EXPECT_NEAR((exp_map(v).coords() - q.coords()).norm(), 0.0, 1e-12);
  }
}

TEST(UnitTangentToward, MatchesProjectionFormula) {
  const TangentVec t = unit_tangent_toward(kNorth, kX);
  EXPECT_NEAR((t.vec() - Eigen::Vector3d(1, 0, 0)).norm(), 0.0, 1e-15);
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    auto [p, q] = random_pair(rng);
    const Eigen::Vector3d w = q.coords() - p.dot(q) * p.coords();
    const Eigen::Vector3d expected = w / w.norm();
    const TangentVec u = unit_tangent_toward(p, q);
    EXPECT_NEAR(u.norm(), 1.0, 1e-14);
    EXPECT_NEAR((u.vec() - expected).norm(), 0.0, 1e-9);
  }
}

TEST(UnitTangentToward, CoincidentPointsHaveNoDirection) {
  try {
    unit_tangent_toward(kX, kX);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("direction undefined"), std::string::npos);
  }
}

TEST(ArcPoint, EndpointsAndMidpoint) {
  const GeodesicArc arc(kX, SpherePoint(0, 1, 0));
  EXPECT_EQ(arc_point(arc, 0.0).coords(), kX.coords());
  EXPECT_NEAR((arc_point(arc, 1.0).coords() - Eigen::Vector3d(0, 1, 0)).norm(), 0.0, 1e-12);
  const Eigen::Vector3d mid(1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0);
  EXPECT_NEAR((arc_point(arc, 0.5).coords() - mid).norm(), 0.0, 1e-15);
  EXPECT_THROW(arc_point(arc, 1.5), Error);
  EXPECT_THROW(arc_point(arc, -0.1), Error);
  EXPECT_THROW(GeodesicArc(kX, SpherePoint(-1, 0, 0)), Error);
}

TEST(ArcPoint, ConstantSpeed) {
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    auto [p, q] = random_pair(rng);
    if (geodesic_distance(p, q) > 3.0) continue;
    const GeodesicArc arc(p, q);
    const double h = 1e-3;
    for (double t : {0.0, 0.25, 0.5, 0.9}) {
      EXPECT_NEAR(geodesic_distance(arc_point(arc, t), arc_point(arc, t + h)), h * arc.length(), 1e-10);
    }
  }
}

TEST(SphericalAngle, OrthogonalMeridians) {
  EXPECT_NEAR(spherical_angle(kNorth, kX, SpherePoint(0, 1, 0)), pi / 2, 1e-15);
}

TEST(SphericalAngle, NearlyAntipodalMeridians) {
  const double d = 1e-3;
  const Eigen::Vector3d a(1, 0, 0), b(-std::cos(d), -std::sin(d), 0);
  // At the pole both points are their own unit tangents.
  const double expected = std::acos(a.dot(b));
  const double got = spherical_angle(kNorth, SpherePoint(a), SpherePoint(b));
  EXPECT_NEAR(got, expected, 1e-12);
  EXPECT_NEAR(got, pi - d, 1e-12);
}

TEST(SphericalAngle, EquilateralTriangleByLawOfCosines) {
  std::array<SpherePoint, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = SpherePoint::from_polar(0.3, 2 * pi * i / 3);
  const double side = oracle::arccos_distance(v[0].coords(), v[1].coords());
  const double expected =
      std::acos((std::cos(side) - std::cos(side) * std::cos(side)) / (std::sin(side) * std::sin(side)));
  for (int i = 0; i < 3; ++i) {
    const double a = spherical_angle(v[i], v[(i + 1) % 3], v[(i + 2) % 3]);
    EXPECT_NEAR(a, expected, 1e-10);
    EXPECT_GT(a, pi / 3);
  }
}

TEST(SphericalAngle, LawOfCosinesCloses) {
  Rng rng(13);
  const GeodesicBall region(kNorth, pi / 4);
  int checked = 0;
  while (checked < 2000) {
    SpherePoint C = uniform_in_ball(region, rng), A = uniform_in_ball(region, rng), B = uniform_in_ball(region, rng);
    const double a = geodesic_distance(C, B), b = geodesic_distance(C, A);
    if (a < 1e-3 || b < 1e-3 || a > pi / 2 || b > pi / 2) continue;
    const double angle = spherical_angle(C, A, B);
    EXPECT_NEAR(oracle::law_of_cosines_side(a, b, angle), geodesic_distance(A, B), 1e-10);
    ++checked;
  }
}

TEST(Equivariance, RotationsCommuteWithDistanceAndExp) {
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    const Eigen::Matrix3d R = random_rotation(rng);
    auto [p, q] = random_pair(rng);
    EXPECT_NEAR(geodesic_distance(rotate(R, p), rotate(R, q)), geodesic_distance(p, q), 1e-12);
    const Eigen::Vector3d v = 2.0 * uniform(rng) * random_unit_tangent(p, rng);
    const Eigen::Vector3d lhs = R * exp_map(p, v).coords();
    const Eigen::Vector3d rhs = exp_map(rotate(R, p), R * v).coords();
    EXPECT_NEAR((lhs - rhs).norm(), 0.0, 1e-12);
  }
}

TEST(Admissibility, RadiusBound) {
  EXPECT_NEAR(max_admissible_radius(), std::acos(5.0 / 6.0), 1e-15);
  EXPECT_NEAR(max_admissible_radius(), 0.5856855, 1e-7);
  EXPECT_NEAR(cap_area(max_admissible_radius()), pi / 3, 1e-14);
  EXPECT_TRUE(is_admissible_radius(0.5));
  EXPECT_FALSE(is_admissible_radius(0.6));
  EXPECT_TRUE(GeodesicBall(kNorth, 0.5).admissible());
  EXPECT_FALSE(GeodesicBall(kNorth, 0.6).admissible());
  EXPECT_THROW(GeodesicBall(kNorth, pi / 2), Error);
  EXPECT_THROW(GeodesicBall(kNorth, 0.0), Error);
}

TEST(Admissibility, MonteCarloCapAreaAtTheBound) {
  // Area of the cap as the integral of 1/sqrt(1 - r^2) over its projection,
  // a disk of radius sin R, sampled uniformly over the enclosing square.
  const double R = max_admissible_radius(), s = std::sin(R);
  Rng rng(77);
  const int n = 10'000'000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = uniform(rng, -s, s), y = uniform(rng, -s, s);
    if (x * x + y * y <= s * s) sum += 1.0 / std::sqrt(1.0 - x * x - y * y);
  }
  EXPECT_NEAR(4.0 * s * s * sum / n, pi / 3, 1e-3);
}
