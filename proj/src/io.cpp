#include "emptystar/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace emptystar {
namespace {

double parse_double(const std::string& tok) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument("not a number: '" + tok + "'");
  return v;
}

long long parse_int(const std::string& tok) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw std::invalid_argument("not an integer: '" + tok + "'");
  return v;
}

std::string next_token(std::istream& in, const char* what) {
  std::string tok;
  if (!(in >> tok)) throw std::invalid_argument(std::string("unexpected end of input reading ") + what);
  return tok;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open '" + path + "'");
  return f;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

PointSet read_point_set(std::istream& in) {
  const long long d = parse_int(next_token(in, "dimension"));
  const long long n = parse_int(next_token(in, "point count"));
  if (d < 2) throw std::invalid_argument("dimension must be >= 2");
  if (n < 0) throw std::invalid_argument("point count must be >= 0");
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(n * d));
  for (long long i = 0; i < n * d; ++i) coords.push_back(parse_double(next_token(in, "coordinate")));
  std::string extra;
  if (in >> extra) throw std::invalid_argument("trailing data after " + std::to_string(n) + " points");
  return PointSet(static_cast<int>(d), std::move(coords));
}

PointSet read_point_set_file(const std::string& path) {
  auto f = open_input(path);
  return read_point_set(f);
}

void write_point_set(std::ostream& out, const PointSet& X) {
  out << X.dim() << ' ' << X.size() << '\n';
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (int c = 0; c < X.dim(); ++c) {
      if (c) out << ' ';
      out << format_double(X[i][c]);
    }
    out << '\n';
  }
}

ConvexBody read_polygon(std::istream& in) {
  if (next_token(in, "header") != "polygon") throw std::invalid_argument("polygon file must start with 'polygon'");
  const long long k = parse_int(next_token(in, "vertex count"));
  if (k < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  std::vector<std::array<double, 2>> v(static_cast<std::size_t>(k));
  for (auto& p : v) {
    p[0] = parse_double(next_token(in, "x"));
    p[1] = parse_double(next_token(in, "y"));
  }
  return ConvexBody::polygon(std::move(v));
}

ConvexBody read_polygon_file(const std::string& path) {
  auto f = open_input(path);
  return read_polygon(f);
}

ConvexBody parse_body(const std::string& spec, int dim) {
  auto need_dim = [&](int d) {
    if (dim != d)
      throw std::invalid_argument("body '" + spec + "' is " + std::to_string(d) + "-dimensional but --dim is " +
                                  std::to_string(dim));
  };
  if (spec == "disk") {
    need_dim(2);
    return ConvexBody::ball(2, 1.0);
  }
  if (spec == "square") {
    need_dim(2);
    return ConvexBody::cube(2, 1.0);
  }
  if (spec == "ball3") {
    need_dim(3);
    return ConvexBody::ball(3, 1.0);
  }
  if (spec == "cube3") {
    need_dim(3);
    return ConvexBody::cube(3, 1.0);
  }
  if (spec == "ball") return ConvexBody::ball(dim, 1.0);
  if (spec == "cube") return ConvexBody::cube(dim, 1.0);
  if (spec.rfind("ellipse:", 0) == 0) {
    need_dim(2);
    const std::string rest = spec.substr(8);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("ellipse needs 'ellipse:a,b'");
    return ConvexBody::ellipse(parse_double(rest.substr(0, comma)), parse_double(rest.substr(comma + 1)));
  }
  if (spec.rfind("polygon:", 0) == 0) {
    need_dim(2);
    return read_polygon_file(spec.substr(8)).set_label(spec);
  }
  throw std::invalid_argument("unknown body '" + spec + "'");
}

}  // namespace emptystar
