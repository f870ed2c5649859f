#include "emptystar/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "emptystar/special.hpp"

namespace emptystar {

namespace {

constexpr int kMaxRejections = 1000;
constexpr int kMaxRedraws = 100;

std::string fmt_num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

void check_dim(const ConvexBody& K, std::size_t d) {
  if (d != static_cast<std::size_t>(K.dim())) throw DimensionMismatch("point/hyperplane dimension differs from body");
}

// Area of the planar section of the centered cube [-h, h]^3.
double cube3_section(double h, const Point& u, double t) {
  std::vector<std::array<double, 3>> pts;
  for (int axis = 0; axis < 3; ++axis) {
    const int o1 = (axis + 1) % 3, o2 = (axis + 2) % 3;
    if (u[static_cast<std::size_t>(axis)] == 0.0) continue;
    for (int s1 = -1; s1 <= 1; s1 += 2) {
      for (int s2 = -1; s2 <= 1; s2 += 2) {
        std::array<double, 3> x{};
        x[static_cast<std::size_t>(o1)] = s1 * h;
        x[static_cast<std::size_t>(o2)] = s2 * h;
        const double rest = u[static_cast<std::size_t>(o1)] * x[static_cast<std::size_t>(o1)] +
                            u[static_cast<std::size_t>(o2)] * x[static_cast<std::size_t>(o2)];
        const double xa = (t - rest) / u[static_cast<std::size_t>(axis)];
        if (xa < -h || xa > h) continue;
        x[static_cast<std::size_t>(axis)] = xa;
        pts.push_back(x);
      }
    }
  }
  if (pts.size() < 3) return 0.0;
  // Orthonormal basis (e1, e2) of the plane direction.
  std::array<double, 3> a{1.0, 0.0, 0.0};
  if (std::fabs(u[0]) > 0.9) a = {0.0, 1.0, 0.0};
  std::array<double, 3> e1{u[1] * a[2] - u[2] * a[1], u[2] * a[0] - u[0] * a[2], u[0] * a[1] - u[1] * a[0]};
  const double l1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1] + e1[2] * e1[2]);
  for (double& v : e1) v /= l1;
  const std::array<double, 3> e2{u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2],
                                 u[0] * e1[1] - u[1] * e1[0]};
  std::vector<std::array<double, 2>> q;
  double cx = 0.0, cy = 0.0;
  for (const auto& p : pts) {
    const double x = p[0] * e1[0] + p[1] * e1[1] + p[2] * e1[2];
    const double y = p[0] * e2[0] + p[1] * e2[1] + p[2] * e2[2];
    q.push_back({x, y});
    cx += x;
    cy += y;
  }
  cx /= static_cast<double>(q.size());
  cy /= static_cast<double>(q.size());
  std::sort(q.begin(), q.end(), [&](const auto& l, const auto& r) {
    return std::atan2(l[1] - cy, l[0] - cx) < std::atan2(r[1] - cy, r[0] - cx);
  });
  double area2 = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const auto& p = q[i];
    const auto& r = q[(i + 1) % q.size()];
    area2 += p[0] * r[1] - p[1] * r[0];
  }
  return 0.5 * std::fabs(area2);
}

}  // namespace

double convex_polygon_chord(std::span<const std::array<double, 2>> ccw, std::array<double, 2> p0,
                            std::array<double, 2> dir) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  const std::size_t k = ccw.size();
  for (std::size_t i = 0; i < k; ++i) {
    const auto& a = ccw[i];
    const auto& b = ccw[(i + 1) % k];
    const double ex = b[0] - a[0], ey = b[1] - a[1];
    // Inside: cross(e, p0 + s*dir - a) >= 0.
    const double c0 = ex * (p0[1] - a[1]) - ey * (p0[0] - a[0]);
    const double c1 = ex * dir[1] - ey * dir[0];
    if (c1 == 0.0) {
      if (c0 < 0.0) return 0.0;
      continue;
    }
    const double s = -c0 / c1;
    if (c1 > 0.0)
      lo = std::max(lo, s);
    else
      hi = std::min(hi, s);
  }
  if (!(hi > lo)) return 0.0;
  return (hi - lo) * std::hypot(dir[0], dir[1]);
}

ConvexBody ConvexBody::ball(int dim, double radius) {
  if (dim < 2) throw std::invalid_argument("ball dimension must be >= 2");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("ball radius must be positive");
  ConvexBody K;
  K.kind_ = BodyKind::kBall;
  K.dim_ = dim;
  K.p0_ = radius;
  K.center_.assign(static_cast<std::size_t>(dim), 0.0);
  K.volume_ = kappa(dim) * std::pow(radius, dim);
  K.diameter_ = 2.0 * radius;
  K.bounding_radius_ = radius;
  K.inradius_ = radius;
  if (radius == 1.0 && dim == 2)
    K.label_ = "disk";
  else if (radius == 1.0 && dim == 3)
    K.label_ = "ball3";
  else
    K.label_ = "ball:" + std::to_string(dim) + "," + fmt_num(radius);
  return K;
}

ConvexBody ConvexBody::cube(int dim, double side) {
  if (dim < 2) throw std::invalid_argument("cube dimension must be >= 2");
  if (!(side > 0.0) || !std::isfinite(side)) throw std::invalid_argument("cube side must be positive");
  ConvexBody K;
  K.kind_ = BodyKind::kCube;
  K.dim_ = dim;
  K.p0_ = side;
  K.center_.assign(static_cast<std::size_t>(dim), 0.5 * side);
  K.volume_ = std::pow(side, dim);
  K.diameter_ = side * std::sqrt(static_cast<double>(dim));
  K.bounding_radius_ = 0.5 * K.diameter_;
  K.inradius_ = 0.5 * side;
  if (side == 1.0 && dim == 2)
    K.label_ = "square";
  else if (side == 1.0 && dim == 3)
    K.label_ = "cube3";
  else
    K.label_ = "cube:" + std::to_string(dim) + "," + fmt_num(side);
  if (dim == 2) {
    const double h = 0.5 * side;
    K.centered_ = {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
  }
  return K;
}

ConvexBody ConvexBody::ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("ellipse semi-axes must be positive");
  ConvexBody K;
  K.kind_ = BodyKind::kEllipse;
  K.dim_ = 2;
  K.p0_ = a;
  K.p1_ = b;
  K.center_ = {0.0, 0.0};
  K.volume_ = std::numbers::pi * a * b;
  K.diameter_ = 2.0 * std::max(a, b);
  K.bounding_radius_ = std::max(a, b);
  K.inradius_ = std::min(a, b);
  K.label_ = "ellipse:" + fmt_num(a) + "," + fmt_num(b);
  return K;
}

ConvexBody ConvexBody::polygon(std::vector<std::array<double, 2>> vertices) {
  const std::size_t k = vertices.size();
  if (k < 3) throw std::invalid_argument("polygon needs at least 3 vertices");
  for (const auto& v : vertices)
    if (!std::isfinite(v[0]) || !std::isfinite(v[1])) throw std::invalid_argument("non-finite polygon vertex");
  double turning = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& a = vertices[i];
    const auto& b = vertices[(i + 1) % k];
    const auto& c = vertices[(i + 2) % k];
    if (orient2d(a.data(), b.data(), c.data()) <= 0)
      throw std::invalid_argument("polygon vertices must be counterclockwise and strictly convex");
    const double t1 = std::atan2(b[1] - a[1], b[0] - a[0]);
    const double t2 = std::atan2(c[1] - b[1], c[0] - b[0]);
    double turn = t2 - t1;
    while (turn <= 0.0) turn += 2.0 * std::numbers::pi;
    turning += turn;
  }
  if (std::fabs(turning - 2.0 * std::numbers::pi) > 1e-6)
    throw std::invalid_argument("polygon winds more than once");
  ConvexBody K;
  K.kind_ = BodyKind::kPolygon;
  K.dim_ = 2;
  K.vertices_ = std::move(vertices);
  K.finish_polygon();
  K.label_ = "polygon";
  return K;
}

void ConvexBody::finish_polygon() {
  const std::size_t k = vertices_.size();
  double a2 = 0.0, cx = 0.0, cy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto& p = vertices_[i];
    const auto& q = vertices_[(i + 1) % k];
    const double c = p[0] * q[1] - q[0] * p[1];
    a2 += c;
    cx += (p[0] + q[0]) * c;
    cy += (p[1] + q[1]) * c;
  }
  volume_ = 0.5 * a2;
  center_ = {cx / (3.0 * a2), cy / (3.0 * a2)};
  centered_.clear();
  bounding_radius_ = 0.0;
  diameter_ = 0.0;
  bbox_ = {vertices_[0][0], vertices_[0][1], vertices_[0][0], vertices_[0][1]};
  for (const auto& v : vertices_) {
    centered_.push_back({v[0] - center_[0], v[1] - center_[1]});
    bounding_radius_ = std::max(bounding_radius_, std::hypot(centered_.back()[0], centered_.back()[1]));
    bbox_[0] = std::min(bbox_[0], v[0]);
    bbox_[1] = std::min(bbox_[1], v[1]);
    bbox_[2] = std::max(bbox_[2], v[0]);
    bbox_[3] = std::max(bbox_[3], v[1]);
    for (const auto& w : vertices_) diameter_ = std::max(diameter_, std::hypot(v[0] - w[0], v[1] - w[1]));
  }
  inradius_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    const auto& a = centered_[i];
    const auto& b = centered_[(i + 1) % k];
    const double len = std::hypot(b[0] - a[0], b[1] - a[1]);
    inradius_ = std::min(inradius_, std::fabs(a[0] * b[1] - a[1] * b[0]) / len);
  }
}

bool ConvexBody::contains(Coords p) const {
  check_dim(*this, p.size());
  switch (kind_) {
    case BodyKind::kBall: {
      double s = 0.0;
      for (double x : p) s += x * x;
      return s <= p0_ * p0_;
    }
    case BodyKind::kCube:
      return std::all_of(p.begin(), p.end(), [&](double x) { return x >= 0.0 && x <= p0_; });
    case BodyKind::kEllipse: {
      const double x = p[0] / p0_, y = p[1] / p1_;
      return x * x + y * y <= 1.0;
    }
    case BodyKind::kPolygon: {
      const std::size_t k = vertices_.size();
      for (std::size_t i = 0; i < k; ++i)
        if (orient2d(vertices_[i].data(), vertices_[(i + 1) % k].data(), p.data()) < 0) return false;
      return true;
    }
  }
  return false;
}

Point ConvexBody::sample_point(RngStream& rng) const {
  const auto d = static_cast<std::size_t>(dim_);
  Point x(d);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    switch (kind_) {
      case BodyKind::kBall:
      case BodyKind::kEllipse: {
        double len = 0.0;
        do {
          len = 0.0;
          for (auto& v : x) {
            v = rng.normal();
            len += v * v;
          }
        } while (len == 0.0);
        len = std::sqrt(len);
        const double r = std::pow(rng.uniform01(), 1.0 / static_cast<double>(dim_));
        for (auto& v : x) v = v / len * r;
        if (kind_ == BodyKind::kBall) {
          for (auto& v : x) v *= p0_;
        } else {
          x[0] *= p0_;
          x[1] *= p1_;
        }
        break;
      }
      case BodyKind::kCube:
        for (auto& v : x) v = p0_ * rng.uniform01();
        break;
      case BodyKind::kPolygon:
        x[0] = rng.uniform(bbox_[0], bbox_[2]);
        x[1] = rng.uniform(bbox_[1], bbox_[3]);
        break;
    }
    if (contains(x)) return x;
  }
  throw std::runtime_error("sampler for " + label_ + " rejected " + std::to_string(kMaxRejections) +
                           " consecutive draws");
}

double ConvexBody::section_measure(const Hyperplane& H) const {
  check_dim(*this, H.normal.size());
  const double t = H.offset;
  switch (kind_) {
    case BodyKind::kBall: {
      const double r = p0_;
      const double at = std::fabs(t);
      if (at >= r) return 0.0;
      return kappa(dim_ - 1) * std::pow((r - at) * (r + at), 0.5 * (dim_ - 1));
    }
    case BodyKind::kEllipse: {
      // Work in the preimage of the unit disk under diag(a, b).
      const double ax = p0_ * H.normal[0], by = p1_ * H.normal[1];
      const double L = std::hypot(ax, by);
      const double s = t / L;
      if (std::fabs(s) >= 1.0) return 0.0;
      const double wx = ax / L, wy = by / L;
      const double chord_dir = std::hypot(-p0_ * wy, p1_ * wx);
      return 2.0 * std::sqrt((1.0 - s) * (1.0 + s)) * chord_dir;
    }
    case BodyKind::kPolygon:
    case BodyKind::kCube: {
      if (dim_ == 2) {
        const std::array<double, 2> p0{t * H.normal[0], t * H.normal[1]};
        const std::array<double, 2> dir{-H.normal[1], H.normal[0]};
        return convex_polygon_chord(centered_, p0, dir);
      }
      if (dim_ == 3) return cube3_section(0.5 * p0_, H.normal, t);
      throw std::invalid_argument("cube sections are implemented for d <= 3");
    }
  }
  return 0.0;
}

ConvexBody ConvexBody::scaled(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("scale factor must be positive");
  switch (kind_) {
    case BodyKind::kBall:
      return ball(dim_, p0_ * c);
    case BodyKind::kCube:
      return cube(dim_, p0_ * c);
    case BodyKind::kEllipse:
      return ellipse(p0_ * c, p1_ * c);
    case BodyKind::kPolygon: {
      auto v = vertices_;
      for (auto& p : v) {
        p[0] *= c;
        p[1] *= c;
      }
      return polygon(std::move(v));
    }
  }
  return *this;
}

PointSet sample_uniform(const ConvexBody& K, RngStream& rng, std::size_t n, GeneralPositionPolicy policy) {
  if (n == 0) throw std::invalid_argument("sample size must be at least 1");
  const auto d = static_cast<std::size_t>(K.dim());
  for (int attempt = 0; attempt < kMaxRedraws; ++attempt) {
    std::vector<double> flat;
    flat.reserve(n * d);
    for (std::size_t i = 0; i < n; ++i) {
      const Point p = K.sample_point(rng);
      flat.insert(flat.end(), p.begin(), p.end());
    }
    try {
      PointSet X(K.dim(), std::move(flat));
      if (policy == GeneralPositionPolicy::kAssume) return X;
      return certify_general_position(std::move(X));
    } catch (const DegenerateInput&) {
      // Probability-zero event for continuous samplers; redraw everything.
    }
  }
  throw std::runtime_error("could not draw a point set in general position from " + K.label());
}

}  // namespace emptystar
