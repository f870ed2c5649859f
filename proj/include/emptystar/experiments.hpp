#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "emptystar/bodies.hpp"
#include "emptystar/stats.hpp"

namespace emptystar {

enum class Quantity {
  kEmptyCount,     ///< N / n^d
  kMaxDegree,      ///< deg_k(X) / n^(d-k), or / n for k = d
  kTypicalDegree,  ///< C(d+1, k) N / C(n, k)
  kDeg1Profile,    ///< deg_1(X) / n^(d-1)
  kNGamma,         ///< N_{gamma n}
  kPoissonGof,     ///< N_{gamma n}, plus a Poisson fit per n
};

/// "empty_count", "max_degree", ...; accepts '-' for '_'.
Quantity parse_quantity(const std::string& name);
std::string quantity_name(Quantity q);

struct ExperimentConfig {
  Quantity quantity = Quantity::kEmptyCount;
  ConvexBody body = ConvexBody::ball(2, 1.0);
  int dim = 2;
  std::vector<std::size_t> n_values;
  std::uint64_t trials = 1;
  int k = 0;  ///< tuple size for degree quantities; 0 means d
  double gamma = 1.0;
  std::uint64_t seed = 0;
};

/// Largest n accepted for this quantity and dimension.
std::size_t n_cap(Quantity q, int dim);

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const ExperimentConfig& config);

/// Stream id of trial `trial` at the n_index-th n.
std::uint64_t trial_stream(std::size_t n_index, std::uint64_t trial);

struct TrialRecord {
  std::size_t n = 0;
  std::uint64_t trial = 0;
  double value = 0.0;
};

struct PoissonGof {
  std::size_t n = 0;
  double mean = 0.0;
  double tv_distance = 0.0;
  double p_zero_empirical = 0.0;
  double p_zero_predicted = 0.0;  ///< exp(-mean)
  std::vector<std::int64_t> histogram;
};

struct SweepResult {
  ExperimentConfig config;
  std::vector<EstimateSummary> summaries;  ///< one per n, in n order
  std::vector<TrialRecord> records;        ///< (n, trial) order
  std::optional<double> target;            ///< limit of the normalized mean, if known
  std::vector<PoissonGof> gof;             ///< poisson_gof only
  std::vector<std::string> flags;          ///< advisory notes, never failures
};

/// Runs every (n, trial) on its own substream (see trial_stream); trials may
/// run concurrently, results are aggregated in (n, trial) order.
SweepResult run_sweep(const ExperimentConfig& config);

/// Fits Poisson(mean) to observed counts.
PoissonGof poisson_fit(std::span<const std::uint64_t> counts);

/// run_sweep with quantity poisson_gof, returning one fit per n.
std::vector<PoissonGof> poisson_gof(const ExperimentConfig& config);

/// The band quoted for E deg_2 / n in the plane.
inline constexpr double kDeg2BandLo = 0.70;
inline constexpr double kDeg2BandHi = 0.95;

}  // namespace emptystar
