#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "emptystar/errors.hpp"
#include "emptystar/geom.hpp"

namespace emptystar {
namespace {

std::vector<Coords> views(const std::vector<Point>& pts) {
  std::vector<Coords> v;
  for (const auto& p : pts) v.emplace_back(p);
  return v;
}

int orient(const std::vector<Point>& pts) { return orientation(views(pts)); }

// Exact reference for integer-valued coordinates below 2^38.
int sign_i128(__int128 v) { return (v > 0) - (v < 0); }

int orient2d_i128(const std::array<std::int64_t, 2>& a, const std::array<std::int64_t, 2>& b,
                  const std::array<std::int64_t, 2>& c) {
  const __int128 l = static_cast<__int128>(b[0] - a[0]) * (c[1] - a[1]);
  const __int128 r = static_cast<__int128>(b[1] - a[1]) * (c[0] - a[0]);
  return sign_i128(l - r);
}

int orient3d_i128(const std::array<std::array<std::int64_t, 3>, 4>& p) {
  __int128 m[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = p[i + 1][j] - p[0][j];
  const __int128 det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  return sign_i128(det);
}

TEST(OrientationTest, Examples) {
  EXPECT_EQ(orient({{0, 0}, {1, 0}, {0, 1}}), 1);
  EXPECT_EQ(orient({{0, 0}, {1, 1}, {2, 2}}), 0);
  EXPECT_EQ(orient({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), 1);
  EXPECT_EQ(orient({{0, 0}, {0, 1}, {1, 0}}), -1);
}

TEST(OrientationTest, DimensionMismatchThrows) {
  EXPECT_THROW(orient({{0, 0}, {1, 0, 0}, {0, 1}}), DimensionMismatch);
  EXPECT_THROW(orient({{0, 0}, {1, 0}}), DimensionMismatch);
}

TEST(OrientationTest, MatchesExactIntegerDeterminant2d) {
  std::mt19937_64 gen(11);
  // Large integers make the naive double determinant lose low bits; small
  // perturbations around a line keep many cases near zero.
  std::uniform_int_distribution<std::int64_t> big(-(std::int64_t{1} << 37), std::int64_t{1} << 37);
  std::uniform_int_distribution<std::int64_t> tiny(-2, 2);
  int zeros = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    std::array<std::int64_t, 2> a{big(gen), big(gen)};
    std::array<std::int64_t, 2> dir{big(gen) / 1024, big(gen) / 1024};
    std::array<std::int64_t, 2> b{a[0] + dir[0], a[1] + dir[1]};
    std::array<std::int64_t, 2> c{a[0] + 3 * dir[0] + tiny(gen), a[1] + 3 * dir[1] + tiny(gen)};
    const Point pa{double(a[0]), double(a[1])}, pb{double(b[0]), double(b[1])}, pc{double(c[0]), double(c[1])};
    const int expected = orient2d_i128(a, b, c);
    zeros += expected == 0;
    ASSERT_EQ(orient2d(pa.data(), pb.data(), pc.data()), expected) << "trial " << trial;
  }
  EXPECT_GT(zeros, 100);
}

TEST(OrientationTest, MatchesExactIntegerDeterminant3d) {
  std::mt19937_64 gen(12);
  std::uniform_int_distribution<std::int64_t> big(-(std::int64_t{1} << 36), std::int64_t{1} << 36);
  std::uniform_int_distribution<std::int64_t> tiny(-1, 1);
  int zeros = 0;
  for (int trial = 0; trial < 20000; ++trial) {
    std::array<std::array<std::int64_t, 3>, 4> p{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p[i][j] = big(gen);
    // Fourth point near the plane of the first three: an integer combination.
    for (int j = 0; j < 3; ++j) p[3][j] = p[1][j] + (p[2][j] - p[0][j]) + tiny(gen);
    std::vector<Point> pts(4, Point(3));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 3; ++j) pts[i][j] = static_cast<double>(p[i][j]);
    const int expected = orient3d_i128(p);
    zeros += expected == 0;
    ASSERT_EQ(orient3d(pts[0].data(), pts[1].data(), pts[2].data(), pts[3].data()), expected) << trial;
    ASSERT_EQ(orient(pts), expected);
  }
  EXPECT_GT(zeros, 100);
}

TEST(OrientationTest, TranspositionFlipsSign) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int d = 2; d <= 5; ++d) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<Point> pts(d + 1, Point(d));
      for (auto& p : pts)
        for (auto& x : p) x = u(gen);
      const int s = orient(pts);
      std::uniform_int_distribution<int> pick(0, d);
      int i = pick(gen), j = pick(gen);
      if (i == j) j = (i + 1) % (d + 1);
      std::swap(pts[i], pts[j]);
      EXPECT_EQ(orient(pts), -s);
    }
  }
}

TEST(OrientationTest, HigherDimensionDegenerate) {
  // Five points of R^4 with the last in the affine hull of the first four.
  std::vector<Point> pts{{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0.25, 0.25, 0.25, 0}};
  EXPECT_EQ(orient(pts), 0);
  pts[4][3] = 1e-300;
  EXPECT_EQ(orient(pts), 1);
  pts[4][3] = -1e-300;
  EXPECT_EQ(orient(pts), -1);
}

TEST(SimplexVolumeTest, Examples) {
  EXPECT_DOUBLE_EQ(simplex_volume(views({{0, 0}, {1, 0}, {0, 1}})), 0.5);
  EXPECT_EQ(simplex_volume(views({{0, 0}, {1, 1}, {2, 2}})), 0.0);
  EXPECT_NEAR(simplex_volume(views({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 1.0 / 6.0, 1e-15);
}

TEST(SimplexVolumeTest, RigidMotionInvariance) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> pts(4, Point(3));
    for (auto& p : pts)
      for (auto& x : p) x = u(gen);
    const double v0 = simplex_volume(views(pts));
    // Rotation about z by theta, then about x by phi, then a translation.
    const double theta = u(gen) * 3.0, phi = u(gen) * 3.0;
    std::vector<Point> moved = pts;
    for (auto& p : moved) {
      const double x = std::cos(theta) * p[0] - std::sin(theta) * p[1];
      const double y = std::sin(theta) * p[0] + std::cos(theta) * p[1];
      const double y2 = std::cos(phi) * y - std::sin(phi) * p[2];
      const double z2 = std::sin(phi) * y + std::cos(phi) * p[2];
      p = {x + 5.0, y2 - 2.0, z2 + 0.5};
    }
    EXPECT_NEAR(simplex_volume(views(moved)), v0, 1e-12 * std::max(1.0, v0));
  }
}

TEST(PointInOpenSimplexTest, Examples) {
  const std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}};
  const Point centroid{1.0 / 3.0, 1.0 / 3.0};
  const Point vertex{0, 0};
  const Point mid{0.5, 0};
  EXPECT_TRUE(point_in_open_simplex(centroid, views(tri)));
  EXPECT_FALSE(point_in_open_simplex(vertex, views(tri)));
  EXPECT_FALSE(point_in_open_simplex(mid, views(tri)));
  const Point outside{1, 1};
  EXPECT_FALSE(point_in_open_simplex(outside, views(tri)));
}

TEST(PointInOpenSimplexTest, DegenerateSimplexThrows) {
  const Point p{0.5, 0.5};
  EXPECT_THROW(point_in_open_simplex(p, views({{0, 0}, {1, 1}, {2, 2}})), DegenerateInput);
}

TEST(PointInOpenSimplexTest, InsideImpliesPositiveFacetReplacements) {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int inside = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Point> s(4, Point(3));
    for (auto& p : s)
      for (auto& x : p) x = u(gen);
    Point q{u(gen), u(gen), u(gen)};
    if (!point_in_open_simplex(q, views(s))) continue;
    ++inside;
    for (int i = 0; i < 4; ++i) {
      auto r = s;
      r[i] = q;
      EXPECT_GT(simplex_volume(views(r)), 0.0);
    }
  }
  EXPECT_GT(inside, 20);
}

TEST(PointInOpenSimplexTest, IndexedVariantAgrees) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> c(3 * 30);
  for (auto& x : c) x = u(gen);
  const PointSet X(3, c);
  const std::vector<std::uint32_t> s{0, 1, 2, 3};
  const int sign = orientation(X, s);
  for (std::uint32_t p = 4; p < 30; ++p)
    EXPECT_EQ(point_in_open_simplex(X, p, s, sign), point_in_open_simplex(X[p], gather(X, s)));
}

TEST(GeneralPositionTest, Examples) {
  EXPECT_FALSE(is_general_position(PointSet::from_rows({{0, 0}, {1, 1}, {2, 2}})));
  EXPECT_TRUE(is_general_position(PointSet::from_rows({{0, 0}, {1, 0}, {0, 1}})));
  EXPECT_FALSE(is_general_position(PointSet::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0}})));
  EXPECT_TRUE(is_general_position(PointSet::from_rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}})));
}

TEST(GeneralPositionTest, LowerDimensionalDegeneracyIn3d) {
  // Three collinear points among five in R^3.
  EXPECT_FALSE(is_general_position(PointSet::from_rows({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {1, 0, 0}, {0, 1, 5}})));
  // Four coplanar points.
  EXPECT_FALSE(is_general_position(PointSet::from_rows({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}})));
  // Fewer than d+1 points: three collinear points in R^3.
  EXPECT_FALSE(is_general_position(PointSet::from_rows({{0, 0, 0}, {1, 2, 3}, {2, 4, 6}})));
  EXPECT_TRUE(is_general_position(PointSet::from_rows({{0, 0, 0}, {1, 2, 3}, {2, 4, 7}})));
}

TEST(GeneralPositionTest, PermutationInvariant) {
  std::mt19937_64 gen(21);
  std::uniform_int_distribution<int> small(0, 4);
  for (int trial = 0; trial < 200; ++trial) {
    // Points on a small integer grid are frequently collinear.
    std::vector<Point> rows;
    while (rows.size() < 6) {
      Point p{double(small(gen)), double(small(gen))};
      if (std::find(rows.begin(), rows.end(), p) == rows.end()) rows.push_back(p);
    }
    const bool gp = is_general_position(PointSet::from_rows(rows));
    std::shuffle(rows.begin(), rows.end(), gen);
    EXPECT_EQ(is_general_position(PointSet::from_rows(rows)), gp);
  }
}

TEST(GeneralPositionTest, RequireReportsSubset) {
  const auto X = PointSet::from_rows({{0, 0}, {5, 1}, {1, 1}, {2, 2}});
  try {
    require_general_position(X);
    FAIL() << "expected DegenerateInput";
  } catch (const DegenerateInput& e) {
    EXPECT_EQ(std::vector<std::uint32_t>(e.subset().begin(), e.subset().end()),
              (std::vector<std::uint32_t>{0, 2, 3}));
  }
}

TEST(PointSetTest, RejectsBadInput) {
  EXPECT_THROW(PointSet(2, {0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(PointSet(1, {0, 1}), std::invalid_argument);
  EXPECT_THROW(PointSet(2, {0, 0, NAN, 1}), std::invalid_argument);
  EXPECT_THROW(PointSet(2, {0, 0, INFINITY, 1}), std::invalid_argument);
  // Repeated points are a general-position violation caught at construction.
  EXPECT_THROW(PointSet(2, {0, 0, 1, 1, 0, 0}), DegenerateInput);
}

TEST(PointSetTest, CertifyFlags) {
  auto X = certify_general_position(PointSet::from_rows({{0, 0}, {1, 0}, {0, 1}}));
  EXPECT_TRUE(X.general_position_checked());
  EXPECT_THROW(certify_general_position(PointSet::from_rows({{0, 0}, {1, 1}, {2, 2}})), DegenerateInput);
}

TEST(SimplexKeyTest, Ordering) {
  EXPECT_THROW(SimplexKey({2, 1}), std::invalid_argument);
  EXPECT_THROW(SimplexKey({1, 1}), std::invalid_argument);
  const auto k = SimplexKey::from_unsorted({5, 1, 3});
  EXPECT_EQ(k, (SimplexKey{1, 3, 5}));
  EXPECT_TRUE(k.contains(3));
  EXPECT_FALSE(k.contains(2));
  EXPECT_LT((SimplexKey{0, 1, 9}), (SimplexKey{0, 2, 3}));
}

TEST(MaxEdgeLengthTest, Examples) {
  EXPECT_DOUBLE_EQ(max_edge_length(views({{0, 0}, {3, 4}})), 5.0);
  const double h = std::sqrt(3.0) / 2.0;
  EXPECT_NEAR(max_edge_length(views({{0, 0}, {1, 0}, {0.5, h}})), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(max_edge_length(views({{0, 0, 0}, {1, 0, 0}, {0, 2, 0}})), std::sqrt(5.0));
  EXPECT_THROW(max_edge_length(views({{0, 0}})), std::invalid_argument);
}

TEST(ConvexHullTest, SquareWithInteriorAndEdgePoints) {
  const auto X = PointSet::from_rows({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}, {1, 0}});
  auto hull = convex_hull_2d(X);
  EXPECT_EQ(hull.size(), 4u);
  std::sort(hull.begin(), hull.end());
  EXPECT_EQ(hull, (std::vector<std::uint32_t>{0, 1, 2, 3}));
}

}  // namespace
}  // namespace emptystar
