#pragma once

#include <cstdint>
#include <optional>

#include "emptystar/bodies.hpp"
#include "emptystar/rng.hpp"
#include "emptystar/stats.hpp"

namespace emptystar {

/// Closed-form constants attached to dimension d.
struct ConstantTable {
  int dim = 2;
  double kappa = 0.0;           ///< kappa_d
  double lower_c = 0.0;         ///< 2/d!
  double upper_c = 0.0;         ///< d/(d+1) * kappa_d * section_ineq_c
  double section_ineq_c = 0.0;  ///< kappa_{d-1}^{d+1} kappa_{d^2} / (kappa_d^d kappa_{(d-1)(d+1)})
  double new_ineq_c = 0.0;      ///< 2(d+1) / (d! d kappa_d)
  std::optional<double> planar_deg_c;  ///< d = 2 only
  double lemma1_c = 0.0;        ///< c(d) for d = 2, otherwise the upper bound
  bool lemma1_c_is_bound = false;
  std::optional<double> appendix_bound_unit;  ///< appendix bound at R = 1, d >= 3
};

ConstantTable theorem2_constants(int d);

/// Hyperplane with normal uniform on S^{d-1}, offset uniform on [0, R] and
/// weight 2R, so that E[w f(H)] is the integral of f over hyperplanes at
/// distance < R under the measure giving mass 2 to those hitting B^d.
Hyperplane sample_hyperplane(double R, int d, RngStream& rng);

/// Hyperplanes per independent substream in the block-parallel estimators.
inline constexpr std::uint64_t kMcBlock = 1 << 14;

/// MC estimate of the integral of section_measure(K, H)^m over hyperplanes.
/// Blocks of kMcBlock samples use substreams of rng's (seed, stream id) and
/// merge in block order.
EstimateSummary section_integral(const ConvexBody& K, int m, std::uint64_t samples, RngStream& rng);

/// Exact value of the section integral where one is known: balls of any d,
/// and every planar body for m = 3 (where (3/pi) vol^2 is attained).
std::optional<double> section_integral_closed_form(const ConvexBody& K, int m);

/// d kappa_d / (d+1) * vol(K)^{-d} * section_integral(K, d+1).
EstimateSummary theorem2_limit_rhs(const ConvexBody& K, std::uint64_t samples, RngStream& rng);

/// MC estimate of the measure of hyperplanes hitting the centered ball of
/// radius r in R^d, with offsets drawn from [0, R].
EstimateSummary ball_hit_measure(int d, double R, double r, std::uint64_t samples, RngStream& rng);

/// c(d) gamma^{-d} vol^{-(d-1)} with c(2) = pi/2. For d >= 3 the caller
/// supplies c(d) (see estimate_cd); the three-argument form throws there.
double lemma1_limit(int d, double gamma, double vol);
double lemma1_limit(int d, double gamma, double vol, double cd);

/// (d!)^{-1} kappa_d^{d-1}, exact for d = 2 and an upper bound otherwise.
double lemma1_bound(int d);

/// MC estimate of c(d) = (d!)^{-1} times the volume of (d-1)-tuples in B^d
/// with all pairwise distances <= 1.
EstimateSummary estimate_cd(int d, std::uint64_t samples, RngStream& rng);

/// R d(d-1) kappa_d kappa_{d-1} / (d-2) * B(d/2, 1/2); d >= 3.
double appendix_bound(int d, double R);

struct AppendixEstimate {
  /// Pairs of hyperplanes with weight (2R)^2 each: the integral under the
  /// measure normalized to mass 2 on hyperplanes hitting B^d.
  EstimateSummary estimate;
  /// Same samples, weighted for dH = dt du (surface measure on S^{d-1}).
  EstimateSummary dtdu_estimate;
  double bound = 0.0;
  std::uint64_t resampled_parallel = 0;  ///< near-parallel pairs redrawn
};

/// MC estimate of the integral over hyperplane pairs meeting inside K of
/// sin^{-2} of their angle, against the closed-form bound. K must lie in
/// R B^d (about its center); balls of any d and the d = 3 cube are supported.
AppendixEstimate appendix_I(int d, double R, const ConvexBody& K, std::uint64_t samples, RngStream& rng);

/// (1/2) e^{-3/2}.
double planar_deg_constant();

}  // namespace emptystar
