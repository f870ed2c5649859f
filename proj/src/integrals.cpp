#include "emptystar/integrals.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "emptystar/parallel.hpp"
#include "emptystar/special.hpp"

namespace emptystar {
namespace {

double factorial(int d) { return std::exp(std::lgamma(d + 1.0)); }

void check_samples(std::uint64_t samples) {
  if (samples == 0) throw std::invalid_argument("sample count must be positive");
}

// Splits `samples` into kMcBlock-sized blocks, runs body(block, block_rng,
// count, moments) per block and merges the per-block moments in block order.
template <std::size_t K, class Body>
std::array<RunningMoments, K> blocked(std::uint64_t samples, const RngStream& rng, Body&& body) {
  check_samples(samples);
  const std::uint64_t blocks = (samples + kMcBlock - 1) / kMcBlock;
  std::vector<std::array<RunningMoments, K>> parts(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    RngStream sub(rng.seed(), hash_combine(rng.stream_id(), b));
    const std::uint64_t count = std::min<std::uint64_t>(kMcBlock, samples - b * kMcBlock);
    body(b, sub, count, parts[b]);
  });
  std::array<RunningMoments, K> total{};
  for (const auto& p : parts)
    for (std::size_t i = 0; i < K; ++i) total[i].merge(p[i]);
  return total;
}

EstimateSummary finish(const RunningMoments& m, const RngStream& rng) {
  auto s = m.summary();
  s.seed = rng.seed();
  return s;
}

Point random_direction(int d, RngStream& rng) {
  Point u(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& x : u) {
      x = rng.normal();
      norm2 += x * x;
    }
  } while (norm2 < 1e-300);
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : u) x *= inv;
  return u;
}

double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Does the line p + s*dir meet the box [-h, h]^3?
bool line_hits_cube(const Point& p, const std::array<double, 3>& dir, double h) {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    if (dir[i] == 0.0) {
      if (std::abs(p[i]) > h) return false;
      continue;
    }
    double a = (-h - p[i]) / dir[i];
    double b = (h - p[i]) / dir[i];
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  return lo <= hi;
}

}  // namespace

ConstantTable theorem2_constants(int d) {
  if (d < 2) throw std::invalid_argument("theorem2_constants: d must be >= 2");
  ConstantTable t;
  t.dim = d;
  t.kappa = kappa(d);
  t.lower_c = 2.0 / factorial(d);
  // Products of kappas via logs: kappa_{d^2} underflows quickly.
  auto lk = [](int j) { return std::log(kappa(j)); };
  t.section_ineq_c = std::exp((d + 1) * lk(d - 1) + lk(d * d) - d * lk(d) - lk((d - 1) * (d + 1)));
  t.upper_c = static_cast<double>(d) / (d + 1) * t.kappa * t.section_ineq_c;
  t.new_ineq_c = 2.0 * (d + 1) / (factorial(d) * d * t.kappa);
  if (d == 2) t.planar_deg_c = planar_deg_constant();
  t.lemma1_c = lemma1_bound(d);
  t.lemma1_c_is_bound = d != 2;
  if (d >= 3) t.appendix_bound_unit = appendix_bound(d, 1.0);
  return t;
}

Hyperplane sample_hyperplane(double R, int d, RngStream& rng) {
  if (!(R > 0.0)) throw std::invalid_argument("sample_hyperplane: R must be positive");
  if (d < 2) throw std::invalid_argument("sample_hyperplane: d must be >= 2");
  Hyperplane H;
  H.normal = random_direction(d, rng);
  H.offset = R * rng.uniform01();
  H.mc_weight = 2.0 * R;
  return H;
}

EstimateSummary section_integral(const ConvexBody& K, int m, std::uint64_t samples, RngStream& rng) {
  if (m < 1) throw std::invalid_argument("section_integral: exponent must be >= 1");
  const double R = K.bounding_radius();
  auto moments = blocked<1>(samples, rng, [&](std::size_t, RngStream& sub, std::uint64_t count, auto& out) {
    for (std::uint64_t i = 0; i < count; ++i) {
      const Hyperplane H = sample_hyperplane(R, K.dim(), sub);
      out[0].add(H.mc_weight * std::pow(K.section_measure(H), m));
    }
  });
  return finish(moments[0], rng);
}

std::optional<double> section_integral_closed_form(const ConvexBody& K, int m) {
  if (m < 1) throw std::invalid_argument("section_integral: exponent must be >= 1");
  const int d = K.dim();
  if (K.kind() == BodyKind::kBall) {
    const double a = 0.5 * (d - 1) * m;
    return std::pow(kappa(d - 1), m) * std::pow(K.radius(), (d - 1) * m + 1) * beta_fn(0.5, a + 1.0);
  }
  if (d == 2 && m == 3) return 3.0 / std::numbers::pi * K.volume() * K.volume();
  return std::nullopt;
}

EstimateSummary theorem2_limit_rhs(const ConvexBody& K, std::uint64_t samples, RngStream& rng) {
  const int d = K.dim();
  const double c = d * kappa(d) / (d + 1) * std::pow(K.volume(), -d);
  return scale(section_integral(K, d + 1, samples, rng), c);
}

EstimateSummary ball_hit_measure(int d, double R, double r, std::uint64_t samples, RngStream& rng) {
  if (!(r >= 0.0)) throw std::invalid_argument("ball_hit_measure: radius must be >= 0");
  auto moments = blocked<1>(samples, rng, [&](std::size_t, RngStream& sub, std::uint64_t count, auto& out) {
    for (std::uint64_t i = 0; i < count; ++i) {
      const Hyperplane H = sample_hyperplane(R, d, sub);
      out[0].add(H.offset <= r ? H.mc_weight : 0.0);
    }
  });
  return finish(moments[0], rng);
}

double lemma1_bound(int d) {
  if (d < 2) throw std::invalid_argument("lemma1: d must be >= 2");
  return std::pow(kappa(d), d - 1) / factorial(d);
}

double lemma1_limit(int d, double gamma, double vol) {
  if (d != 2) throw std::invalid_argument("lemma1_limit: c(d) has no closed form for d >= 3; pass an estimate");
  return lemma1_limit(d, gamma, vol, lemma1_bound(2));
}

double lemma1_limit(int d, double gamma, double vol, double cd) {
  if (d < 2) throw std::invalid_argument("lemma1_limit: d must be >= 2");
  if (!(gamma > 0.0)) throw std::invalid_argument("lemma1_limit: gamma must be positive");
  if (!(vol > 0.0)) throw std::invalid_argument("lemma1_limit: volume must be positive");
  return cd * std::pow(gamma, -d) * std::pow(vol, -(d - 1));
}

EstimateSummary estimate_cd(int d, std::uint64_t samples, RngStream& rng) {
  const double scale_c = lemma1_bound(d);
  const ConvexBody unit = ConvexBody::ball(d, 1.0);
  auto moments = blocked<1>(samples, rng, [&](std::size_t, RngStream& sub, std::uint64_t count, auto& out) {
    std::vector<Point> y(static_cast<std::size_t>(d - 1));
    for (std::uint64_t s = 0; s < count; ++s) {
      for (auto& p : y) p = unit.sample_point(sub);
      bool all_close = true;
      for (std::size_t i = 0; i < y.size() && all_close; ++i)
        for (std::size_t j = i + 1; j < y.size() && all_close; ++j) {
          double dist2 = 0.0;
          for (int c = 0; c < d; ++c) dist2 += (y[i][c] - y[j][c]) * (y[i][c] - y[j][c]);
          all_close = dist2 <= 1.0;
        }
      out[0].add(all_close ? scale_c : 0.0);
    }
  });
  return finish(moments[0], rng);
}

double appendix_bound(int d, double R) {
  if (d < 3) throw std::invalid_argument("appendix bound needs d >= 3");
  if (!(R > 0.0)) throw std::invalid_argument("appendix bound: R must be positive");
  return R * d * (d - 1) * kappa(d) * kappa(d - 1) / (d - 2) * beta_fn(0.5 * d, 0.5);
}

AppendixEstimate appendix_I(int d, double R, const ConvexBody& K, std::uint64_t samples, RngStream& rng) {
  if (d < 3) throw std::invalid_argument("appendix_I needs d >= 3");
  if (K.dim() != d) throw DimensionMismatch("appendix_I: body dimension differs from d");
  if (K.bounding_radius() > R * (1.0 + 1e-12))
    throw std::invalid_argument("appendix_I: body is not contained in R B^d");
  const bool ball = K.kind() == BodyKind::kBall;
  if (!ball && !(K.kind() == BodyKind::kCube && d == 3))
    throw std::invalid_argument("appendix_I supports balls and the 3-cube");

  const double w_normalized = 4.0 * R * R;
  const double w_dtdu = std::pow(R * d * kappa(d), 2);
  std::vector<std::uint64_t> redraws((samples + kMcBlock - 1) / kMcBlock, 0);
  auto moments = blocked<2>(samples, rng, [&](std::size_t block, RngStream& sub, std::uint64_t count, auto& out) {
    std::uint64_t redrawn = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      Hyperplane h1, h2;
      double c = 0.0, sin2 = 0.0;
      while (true) {
        h1 = sample_hyperplane(R, d, sub);
        h2 = sample_hyperplane(R, d, sub);
        c = dot(h1.normal, h2.normal);
        sin2 = std::max(0.0, 1.0 - c * c);
        if (std::sqrt(sin2) >= 1e-12) break;
        ++redrawn;
      }
      // Minimum-norm point of the flat: a u1 + b u2 with the 2x2 Gram system.
      const double a = (h1.offset - c * h2.offset) / sin2;
      const double b = (h2.offset - c * h1.offset) / sin2;
      Point x(d);
      for (int i = 0; i < d; ++i) x[i] = a * h1.normal[i] + b * h2.normal[i];
      bool hit = false;
      if (ball) {
        hit = dot(x, x) <= K.radius() * K.radius();
      } else {
        const auto& u = h1.normal;
        const auto& v = h2.normal;
        const std::array<double, 3> dir{u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
                                        u[0] * v[1] - u[1] * v[0]};
        hit = line_hits_cube(x, dir, 0.5 * K.side());
      }
      out[0].add(hit ? w_normalized / sin2 : 0.0);
      out[1].add(hit ? w_dtdu / sin2 : 0.0);
    }
    redraws[block] = redrawn;
  });
  AppendixEstimate r;
  r.estimate = finish(moments[0], rng);
  r.dtdu_estimate = finish(moments[1], rng);
  r.bound = appendix_bound(d, R);
  for (auto n : redraws) r.resampled_parallel += n;
  return r;
}

double planar_deg_constant() { return 0.5 * std::exp(-1.5); }

}  // namespace emptystar
