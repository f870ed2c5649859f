#pragma once

#include <iosfwd>
#include <string>

#include "emptystar/bodies.hpp"
#include "emptystar/geom.hpp"

namespace emptystar {

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

/// Point-set text format: "d n" then n lines of d coordinates.
/// Throws std::invalid_argument on malformed input.
PointSet read_point_set(std::istream& in);
PointSet read_point_set_file(const std::string& path);
void write_point_set(std::ostream& out, const PointSet& X);

/// Polygon text format: "polygon k" then k lines "x y", counterclockwise.
ConvexBody read_polygon(std::istream& in);
ConvexBody read_polygon_file(const std::string& path);

/// Parses disk, square, ball3, cube3, ellipse:a,b, polygon:path, and the
/// dimension-generic ball / cube (unit size, using `dim`). Throws
/// std::invalid_argument for unknown specifiers or a dimension conflict.
ConvexBody parse_body(const std::string& spec, int dim);

}  // namespace emptystar
