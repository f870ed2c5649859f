#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace emptystar {

/// Monte-Carlo result for one quantity (at one n, for sweeps).
struct EstimateSummary {
  std::uint64_t n = 0;      ///< point count for sweeps; 0 for integrals
  double mean = 0.0;
  double std_error = 0.0;   ///< sample sd / sqrt(count)
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  std::uint64_t count = 0;  ///< trials or samples
  std::uint64_t seed = 0;
  std::string normalizer;   ///< e.g. "n^2"; empty when raw
};

/// Streaming mean/variance with an order-fixed merge (Chan et al.).
class RunningMoments {
 public:
  void add(double x) noexcept;
  void merge(const RunningMoments& other) noexcept;

  std::uint64_t count() const noexcept { return count_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 for fewer than two values.
  double variance() const noexcept;

  EstimateSummary summary() const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Mean, standard error and normal 95% interval. The samples are sorted
/// before summation, so the result does not depend on their order.
/// Throws std::invalid_argument for empty input.
EstimateSummary summarize(std::span<const double> samples);

/// Returns s with mean, error and interval multiplied by c > 0.
EstimateSummary scale(EstimateSummary s, double c);

/// P(Poisson(lambda) = k).
double poisson_pmf(std::uint64_t k, double lambda);

/// Total variation distance between the empirical law of a histogram
/// (hist[j] = number of observations equal to j) and Poisson(lambda),
/// including the Poisson mass beyond the histogram's support.
double tv_distance(std::span<const std::int64_t> hist, double lambda);

}  // namespace emptystar
