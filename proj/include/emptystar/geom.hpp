#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "emptystar/errors.hpp"

namespace emptystar {

/// A single point, owned. Coordinates are dimensionless lengths.
using Point = std::vector<double>;

/// A borrowed view of one point's coordinates.
using Coords = std::span<const double>;

/// Immutable set of distinct points in R^d, d >= 2, stored contiguously.
///
/// The general-position flag records whether the set has been verified to
/// contain no k+2 points in a common k-flat (k <= d-1). Enumeration routines
/// accept unflagged sets but then verify before doing any work.
class PointSet {
 public:
  /// `coords` holds n*dim values, point-major. Throws std::invalid_argument
  /// on non-finite coordinates, dim < 2, ragged input or repeated points.
  PointSet(int dim, std::vector<double> coords);

  static PointSet from_rows(const std::vector<Point>& rows);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / static_cast<std::size_t>(dim_); }
  bool empty() const noexcept { return coords_.empty(); }

  Coords operator[](std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
  }
  const double* data(std::size_t i) const { return coords_.data() + i * static_cast<std::size_t>(dim_); }
  std::span<const double> coords() const noexcept { return coords_; }

  bool general_position_checked() const noexcept { return general_position_checked_; }

  /// Verifies general position and returns the set flagged as checked.
  /// Throws DegenerateInput naming a violating subset.
  friend PointSet certify_general_position(PointSet points);

 private:
  int dim_ = 2;
  std::vector<double> coords_;
  bool general_position_checked_ = false;
};

/// Vertex subset of a simplex: strictly increasing point indices.
class SimplexKey {
 public:
  SimplexKey() = default;
  /// Throws std::invalid_argument unless `indices` is strictly increasing.
  explicit SimplexKey(std::vector<std::uint32_t> indices);
  SimplexKey(std::initializer_list<std::uint32_t> indices)
      : SimplexKey(std::vector<std::uint32_t>(indices)) {}

  /// Sorts first; throws on repeated indices.
  static SimplexKey from_unsorted(std::vector<std::uint32_t> indices);

  std::span<const std::uint32_t> indices() const noexcept { return indices_; }
  std::size_t size() const noexcept { return indices_.size(); }
  std::uint32_t operator[](std::size_t i) const { return indices_[i]; }
  bool contains(std::uint32_t index) const;

  auto operator<=>(const SimplexKey&) const = default;

 private:
  std::vector<std::uint32_t> indices_;
};

// ---------------------------------------------------------------------------
// Exact-sign predicates. Each sign is exact for the given double inputs.

/// Sign of det[b-a; c-a] for planar points.
int orient2d(const double* a, const double* b, const double* c);

/// Sign of det[b-a; c-a; d-a] for points in R^3.
int orient3d(const double* a, const double* b, const double* c, const double* d);

/// Sign of the determinant of the k x k matrix whose rows are
/// (pts[i+1] - pts[0]) restricted to coordinates `cols` (k = cols.size(),
/// pts.size() = k + 1).
int projected_orientation(std::span<const double* const> pts, std::span<const int> cols);

/// d+1 points in R^d; dispatches to the 2-D/3-D fast paths when possible.
int orientation_raw(std::span<const double* const> pts, int dim);

/// Orientation of a simplex given as d+1 coordinate views of dimension d.
/// Throws DimensionMismatch.
int orientation(std::span<const Coords> simplex);

/// Orientation of the simplex on X's points `indices` (d+1 of them).
int orientation(const PointSet& X, std::span<const std::uint32_t> indices);

/// |det|/d! of the edge-vector matrix; 0 exactly for degenerate simplices.
double simplex_volume(std::span<const Coords> simplex);

/// True iff every barycentric coordinate of p is strictly positive.
/// Throws DegenerateInput for a flat simplex.
bool point_in_open_simplex(Coords p, std::span<const Coords> simplex);

/// Index-based variant used by the enumerators; the simplex orientation
/// `simplex_sign` must already be known and nonzero.
bool point_in_open_simplex(const PointSet& X, std::uint32_t p, std::span<const std::uint32_t> simplex,
                           int simplex_sign);

/// Maximum pairwise Euclidean distance. Throws for fewer than 2 points.
double max_edge_length(std::span<const Coords> points);

/// A subset witnessing a violation of general position, if any.
std::optional<std::vector<std::uint32_t>> find_degenerate_subset(const PointSet& X);

bool is_general_position(const PointSet& X);

/// Throws DegenerateInput unless X is (or is verified to be) in general
/// position.
void require_general_position(const PointSet& X);

/// Convex hull vertex indices of a planar set in counterclockwise order,
/// strictly convex (collinear boundary points dropped).
std::vector<std::uint32_t> convex_hull_2d(const PointSet& X);

/// Views of the given points of X, in order.
std::vector<Coords> gather(const PointSet& X, std::span<const std::uint32_t> indices);

}  // namespace emptystar
