#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "emptystar/geom.hpp"
#include "emptystar/rng.hpp"

namespace emptystar {

/// Affine hyperplane {x : <normal, x> = offset} in a body's centered frame,
/// with the Monte-Carlo weight it was drawn with (see sample_hyperplane).
struct Hyperplane {
  Point normal;
  double offset = 0.0;
  double mc_weight = 1.0;
};

enum class BodyKind { kBall, kCube, kEllipse, kPolygon };

enum class GeneralPositionPolicy {
  kVerify,  ///< redraw until the sample is in general position
  kAssume,  ///< skip the check (probability-one property of the samplers)
};

/// A convex body with closed-form volume, diameter, enclosing radius,
/// uniform sampler and hyperplane sections.
///
/// Points (membership, samples) live in the user frame: balls and ellipses
/// are centered at the origin, cubes occupy [0, side]^d, polygons sit where
/// their vertices say. Hyperplanes are always given relative to center().
class ConvexBody {
 public:
  static ConvexBody ball(int dim, double radius);
  /// Axis-parallel cube [0, side]^dim.
  static ConvexBody cube(int dim, double side);
  /// Origin-centered ellipse with semi-axes a (x) and b (y).
  static ConvexBody ellipse(double a, double b);
  /// Strictly convex polygon with vertices in counterclockwise order.
  static ConvexBody polygon(std::vector<std::array<double, 2>> vertices);

  BodyKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  double volume() const noexcept { return volume_; }
  double diameter() const noexcept { return diameter_; }
  /// Radius of a ball around center() that contains the body.
  double bounding_radius() const noexcept { return bounding_radius_; }
  /// Radius of a ball around center() contained in the body.
  double inradius_lower_bound() const noexcept { return inradius_; }
  const Point& center() const noexcept { return center_; }

  /// Ball radius / cube side / ellipse semi-axes; polygon vertices.
  double radius() const noexcept { return p0_; }
  double side() const noexcept { return p0_; }
  double semi_axis_a() const noexcept { return p0_; }
  double semi_axis_b() const noexcept { return p1_; }
  const std::vector<std::array<double, 2>>& vertices() const noexcept { return vertices_; }

  /// Short name used in CSV/JSON output ("disk", "cube3", "ellipse:2,1", ...).
  const std::string& label() const noexcept { return label_; }
  ConvexBody& set_label(std::string label) {
    label_ = std::move(label);
    return *this;
  }

  /// Closed membership. Throws DimensionMismatch.
  bool contains(Coords p) const;

  /// One uniform point. Throws std::runtime_error after 1000 rejected draws.
  Point sample_point(RngStream& rng) const;

  /// (d-1)-volume of the intersection with H (H in the centered frame).
  /// Throws DimensionMismatch; std::invalid_argument for cubes with d > 3.
  double section_measure(const Hyperplane& H) const;

  /// The body dilated by c > 0 about its center.
  ConvexBody scaled(double c) const;

 private:
  ConvexBody() = default;
  void finish_polygon();

  BodyKind kind_ = BodyKind::kBall;
  int dim_ = 2;
  double p0_ = 1.0;
  double p1_ = 1.0;
  std::vector<std::array<double, 2>> vertices_;  // user frame
  std::vector<std::array<double, 2>> centered_;  // relative to center_
  std::array<double, 4> bbox_{};                 // polygon: xmin, ymin, xmax, ymax
  Point center_;
  double volume_ = 0.0;
  double diameter_ = 0.0;
  double bounding_radius_ = 0.0;
  double inradius_ = 0.0;
  std::string label_;
};

/// n independent uniform points from K. Under kVerify the whole draw is
/// repeated until it is in general position and the result is flagged.
PointSet sample_uniform(const ConvexBody& K, RngStream& rng, std::size_t n,
                        GeneralPositionPolicy policy = GeneralPositionPolicy::kVerify);

/// Length of {s : p0 + s*dir in P} for a convex polygon P given by CCW
/// vertices (the chord of a line through a convex polygon).
double convex_polygon_chord(std::span<const std::array<double, 2>> ccw, std::array<double, 2> p0,
                            std::array<double, 2> dir);

}  // namespace emptystar
