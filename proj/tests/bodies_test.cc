#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "emptystar/bodies.hpp"
#include "emptystar/errors.hpp"

namespace emptystar {
namespace {

constexpr double kPi = std::numbers::pi;

Hyperplane plane(Point normal, double offset) {
  double n = 0.0;
  for (double x : normal) n += x * x;
  n = std::sqrt(n);
  for (double& x : normal) x /= n;
  return {normal, offset, 1.0};
}

// Cavalieri: integrating the section measure over offsets in a fixed
// direction recovers the volume. Composite Simpson with `steps` intervals.
double sweep_volume(const ConvexBody& K, const Point& normal, int steps = 4000) {
  const double R = K.bounding_radius();
  const double h = 2.0 * R / steps;
  double s = 0.0;
  for (int i = 0; i <= steps; ++i) {
    const double t = -R + i * h;
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * K.section_measure(plane(normal, t));
  }
  return s * h / 3.0;
}

ConvexBody pentagon() {
  return ConvexBody::polygon({{0.0, 0.0}, {2.0, 0.0}, {2.5, 1.0}, {1.0, 2.0}, {-0.5, 1.0}});
}

TEST(ContainsTest, Examples) {
  const auto disk = ConvexBody::ball(2, 1.0);
  EXPECT_TRUE(disk.contains(Point{0, 0}));
  EXPECT_FALSE(disk.contains(Point{2, 0}));
  const auto square = ConvexBody::cube(2, 1.0);
  EXPECT_TRUE(square.contains(Point{1, 1}));
  EXPECT_TRUE(square.contains(Point{0, 0.5}));
  EXPECT_FALSE(square.contains(Point{1.0000001, 0.5}));
  EXPECT_THROW(disk.contains(Point{0, 0, 0}), DimensionMismatch);
}

TEST(ContainsTest, EllipseAndPolygon) {
  const auto e = ConvexBody::ellipse(2.0, 1.0);
  EXPECT_TRUE(e.contains(Point{2, 0}));
  EXPECT_TRUE(e.contains(Point{0, 1}));
  EXPECT_FALSE(e.contains(Point{1.5, 0.8}));
  const auto p = pentagon();
  EXPECT_TRUE(p.contains(Point{1, 1}));
  EXPECT_TRUE(p.contains(Point{2, 0}));
  EXPECT_FALSE(p.contains(Point{2.5, 2}));
}

TEST(BodyTest, DerivedQuantities) {
  const auto disk = ConvexBody::ball(2, 1.0);
  EXPECT_NEAR(disk.volume(), kPi, 1e-15);
  EXPECT_EQ(disk.diameter(), 2.0);
  const auto cube = ConvexBody::cube(3, 2.0);
  EXPECT_DOUBLE_EQ(cube.volume(), 8.0);
  EXPECT_DOUBLE_EQ(cube.bounding_radius(), std::sqrt(3.0));
  const auto p = pentagon();
  // Shoelace area of the pentagon.
  EXPECT_NEAR(p.volume(), 4.0, 1e-12);
  for (const auto& v : p.vertices()) {
    const double dx = v[0] - p.center()[0], dy = v[1] - p.center()[1];
    EXPECT_LE(std::hypot(dx, dy), p.bounding_radius() * (1 + 1e-12));
  }
  EXPECT_GE(p.diameter(), 2.0 * p.inradius_lower_bound());
}

TEST(BodyTest, PolygonValidation) {
  EXPECT_THROW(ConvexBody::polygon({{0, 0}, {0, 1}, {1, 0}}), std::invalid_argument);  // clockwise
  EXPECT_THROW(ConvexBody::polygon({{0, 0}, {2, 0}, {1, 0.1}, {2, 2}, {0, 2}}), std::invalid_argument);
  EXPECT_THROW(ConvexBody::polygon({{0, 0}, {1, 0}, {2, 0}, {1, 1}}), std::invalid_argument);  // collinear
  EXPECT_THROW(ConvexBody::ball(2, 0.0), std::invalid_argument);
  EXPECT_THROW(ConvexBody::cube(1, 1.0), std::invalid_argument);
}

TEST(SectionTest, DiskExamplesAndChordFormula) {
  const auto disk = ConvexBody::ball(2, 1.0);
  EXPECT_NEAR(disk.section_measure(plane({1, 0}, 0.0)), 2.0, 1e-15);
  EXPECT_EQ(disk.section_measure(plane({0, 1}, 1.0)), 0.0);
  for (double t = 0.0; t <= 1.0; t += 0.01) {
    const Hyperplane H = plane({std::cos(3 * t), std::sin(3 * t)}, t);
    EXPECT_NEAR(disk.section_measure(H), 2.0 * std::sqrt(1.0 - t * t), 1e-12);
  }
}

TEST(SectionTest, Ball3AndCube3) {
  const auto ball = ConvexBody::ball(3, 1.0);
  EXPECT_NEAR(ball.section_measure(plane({0, 0, 1}, 0.0)), kPi, 1e-14);
  EXPECT_NEAR(ball.section_measure(plane({1, 2, 3}, 0.6)), kPi * 0.64, 1e-14);
  const auto cube = ConvexBody::cube(3, 1.0);
  EXPECT_NEAR(cube.section_measure(plane({0, 0, 1}, 0.3)), 1.0, 1e-12);
  EXPECT_EQ(cube.section_measure(plane({0, 0, 1}, 0.6)), 0.0);
  EXPECT_NEAR(cube.section_measure(plane({1, 1, 0}, 0.0)), std::sqrt(2.0), 1e-12);
  // Central section orthogonal to a diagonal: regular hexagon with side 1/sqrt(2).
  EXPECT_NEAR(cube.section_measure(plane({1, 1, 1}, 0.0)), 3.0 * std::sqrt(3.0) / 4.0, 1e-12);
  EXPECT_THROW(ConvexBody::cube(4, 1.0).section_measure(plane({1, 0, 0, 0}, 0.0)), std::invalid_argument);
  EXPECT_THROW(cube.section_measure(plane({1, 0}, 0.0)), DimensionMismatch);
}

TEST(SectionTest, CavalieriRecoversVolume) {
  const std::vector<Point> normals2{{1, 0}, {0.6, 0.8}, {-0.3, 1.0}, {1, 1}};
  for (const auto& K : {ConvexBody::ball(2, 1.0), ConvexBody::cube(2, 1.0), ConvexBody::ellipse(2.0, 1.0),
                        pentagon()})
    for (const auto& u : normals2) EXPECT_NEAR(sweep_volume(K, u), K.volume(), 2e-4 * K.volume()) << K.label();
  // Axis-parallel normals make the section area jump at the faces, which
  // Simpson does not resolve; a slight tilt keeps the integrand continuous.
  const std::vector<Point> normals3{{0.05, 0, 1}, {1, 1, 1}, {0.2, -0.5, 0.9}, {1, 2, 0}};
  for (const auto& K : {ConvexBody::ball(3, 1.0), ConvexBody::cube(3, 1.0)})
    for (const auto& u : normals3) EXPECT_NEAR(sweep_volume(K, u), K.volume(), 2e-4 * K.volume()) << K.label();
}

TEST(SectionTest, Scaling) {
  const std::vector<ConvexBody> bodies{ConvexBody::ball(2, 1.0), ConvexBody::ball(3, 1.0), ConvexBody::cube(2, 1.0),
                                       ConvexBody::cube(3, 1.0), ConvexBody::ellipse(2.0, 1.0), pentagon()};
  for (const auto& K : bodies) {
    Point u(K.dim(), 0.3);
    u[0] = 1.0;
    for (double c : {0.5, 2.0}) {
      const auto cK = K.scaled(c);
      for (double t : {0.0, 0.1, 0.25}) {
        const Hyperplane H = plane(u, t);
        const Hyperplane cH = plane(u, c * t);
        EXPECT_NEAR(cK.section_measure(cH), std::pow(c, K.dim() - 1) * K.section_measure(H), 1e-12)
            << K.label() << " c=" << c << " t=" << t;
      }
    }
  }
}

TEST(SectionTest, EllipseAxes) {
  const auto e = ConvexBody::ellipse(2.0, 1.0);
  EXPECT_NEAR(e.section_measure(plane({0, 1}, 0.0)), 4.0, 1e-12);
  EXPECT_NEAR(e.section_measure(plane({1, 0}, 0.0)), 2.0, 1e-12);
  EXPECT_NEAR(e.section_measure(plane({1, 0}, 1.0)), 2.0 * std::sqrt(0.75), 1e-12);
}

TEST(SamplingTest, DeterministicPerStream) {
  for (const auto& K : {ConvexBody::ball(2, 1.0), ConvexBody::cube(3, 1.0), pentagon()}) {
    RngStream a(42, 7), b(42, 7), c(42, 8);
    const auto X = sample_uniform(K, a, 50);
    const auto Y = sample_uniform(K, b, 50);
    const auto Z = sample_uniform(K, c, 50);
    EXPECT_TRUE(std::equal(X.coords().begin(), X.coords().end(), Y.coords().begin()));
    EXPECT_FALSE(std::equal(X.coords().begin(), X.coords().end(), Z.coords().begin()));
    EXPECT_TRUE(X.general_position_checked());
  }
}

TEST(SamplingTest, EveryPointIsInside) {
  const std::vector<ConvexBody> bodies{ConvexBody::ball(2, 1.0),     ConvexBody::ball(3, 2.0),
                                       ConvexBody::ball(5, 1.0),     ConvexBody::cube(2, 1.0),
                                       ConvexBody::cube(4, 3.0),     ConvexBody::ellipse(3.0, 0.5),
                                       pentagon()};
  for (const auto& K : bodies) {
    RngStream rng(1, 2);
    const auto X = sample_uniform(K, rng, 2000, GeneralPositionPolicy::kAssume);
    for (std::size_t i = 0; i < X.size(); ++i) ASSERT_TRUE(K.contains(X[i])) << K.label();
  }
}

TEST(SamplingTest, UnitSquareMean) {
  RngStream rng(2024, 0);
  const auto X = sample_uniform(ConvexBody::cube(2, 1.0), rng, 100000, GeneralPositionPolicy::kAssume);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < X.size(); ++i) {
    mx += X[i][0];
    my += X[i][1];
  }
  EXPECT_NEAR(mx / X.size(), 0.5, 0.01);
  EXPECT_NEAR(my / X.size(), 0.5, 0.01);
}

TEST(SamplingTest, SubBoxHitRate) {
  // Fraction of uniform points in a sub-box equals the area ratio.
  struct Case {
    ConvexBody K;
    double lo0, hi0, lo1, hi1, ratio;
  };
  const double h = 0.5;
  const std::vector<Case> cases{
      {ConvexBody::ball(2, 1.0), 0.0, h, 0.0, h, h * h / kPi},
      {ConvexBody::ellipse(2.0, 1.0), -0.5, 0.5, -0.5, 0.5, 1.0 / (2.0 * kPi)},
      {pentagon(), 0.5, 1.5, 0.25, 0.75, 0.5 / 4.0},
  };
  for (const auto& c : cases) {
    RngStream rng(77, 1);
    const std::size_t n = 200000;
    const auto X = sample_uniform(c.K, rng, n, GeneralPositionPolicy::kAssume);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i)
      hits += X[i][0] >= c.lo0 && X[i][0] <= c.hi0 && X[i][1] >= c.lo1 && X[i][1] <= c.hi1;
    const double rate = static_cast<double>(hits) / n;
    const double se = std::sqrt(c.ratio * (1 - c.ratio) / n);
    EXPECT_NEAR(rate, c.ratio, 4 * se) << c.K.label();
  }
}

TEST(SamplingTest, BallRadialLaw) {
  // In B^3, P(|x| <= 1/2) = 1/8.
  RngStream rng(5, 5);
  const std::size_t n = 200000;
  const auto X = sample_uniform(ConvexBody::ball(3, 1.0), rng, n, GeneralPositionPolicy::kAssume);
  std::size_t inner = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto p = X[i];
    inner += p[0] * p[0] + p[1] * p[1] + p[2] * p[2] <= 0.25;
  }
  const double se = std::sqrt(0.125 * 0.875 / n);
  EXPECT_NEAR(static_cast<double>(inner) / n, 0.125, 4 * se);
}

TEST(RngStreamTest, NormalMoments) {
  RngStream rng(9, 9);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
  }
  EXPECT_NEAR(s / n, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(s2 / n, 1.0, 4.0 * std::sqrt(2.0 / n));
}

TEST(RngStreamTest, UniformRanges) {
  RngStream rng(1, 1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform01();
    const double v = rng.uniform_open0();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
  EXPECT_EQ(rng.draws(), 200000u);
}

TEST(ConvexPolygonChordTest, TriangleChord) {
  const std::vector<std::array<double, 2>> tri{{0, 0}, {1, 0}, {0, 1}};
  // Horizontal line y = 0.25 crosses the triangle between x = 0 and 0.75.
  EXPECT_NEAR(convex_polygon_chord(tri, {0.0, 0.25}, {1.0, 0.0}), 0.75, 1e-15);
  EXPECT_EQ(convex_polygon_chord(tri, {0.0, 2.0}, {1.0, 0.0}), 0.0);
}

}  // namespace
}  // namespace emptystar
