#include "emptystar/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace emptystar {

void RunningMoments::add(double x) noexcept {
  ++count_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
}

void RunningMoments::merge(const RunningMoments& other) noexcept {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  count_ += other.count_;
}

double RunningMoments::variance() const noexcept {
  return count_ < 2 ? 0.0 : std::max(0.0, m2_ / static_cast<double>(count_ - 1));
}

EstimateSummary RunningMoments::summary() const {
  if (count_ == 0) throw std::invalid_argument("no samples to summarize");
  EstimateSummary s;
  s.mean = mean_;
  s.std_error = std::sqrt(variance() / static_cast<double>(count_));
  s.ci95_lo = s.mean - 1.96 * s.std_error;
  s.ci95_hi = s.mean + 1.96 * s.std_error;
  s.count = count_;
  return s;
}

EstimateSummary summarize(std::span<const double> samples) {
  if (samples.empty()) throw std::invalid_argument("summarize: empty sample");
  std::vector<double> v(samples.begin(), samples.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  EstimateSummary s;
  s.mean = mean;
  s.std_error = v.size() < 2 ? 0.0 : std::sqrt(ss / (n - 1.0) / n);
  s.ci95_lo = mean - 1.96 * s.std_error;
  s.ci95_hi = mean + 1.96 * s.std_error;
  s.count = v.size();
  return s;
}

EstimateSummary scale(EstimateSummary s, double c) {
  s.mean *= c;
  s.std_error *= c;
  s.ci95_lo *= c;
  s.ci95_hi *= c;
  return s;
}

double poisson_pmf(std::uint64_t k, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("poisson_pmf: negative mean");
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  const double kd = static_cast<double>(k);
  return std::exp(kd * std::log(lambda) - lambda - std::lgamma(kd + 1.0));
}

double tv_distance(std::span<const std::int64_t> hist, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("tv_distance: lambda must be >= 0");
  std::int64_t total = 0;
  for (auto h : hist) {
    if (h < 0) throw std::invalid_argument("tv_distance: negative count");
    total += h;
  }
  if (total == 0) throw std::invalid_argument("tv_distance: empty histogram");
  double l1 = 0.0;
  double covered = 0.0;
  for (std::size_t j = 0; j < hist.size(); ++j) {
    const double p = poisson_pmf(j, lambda);
    covered += p;
    l1 += std::abs(static_cast<double>(hist[j]) / static_cast<double>(total) - p);
  }
  l1 += std::max(0.0, 1.0 - covered);
  return std::clamp(0.5 * l1, 0.0, 1.0);
}

}  // namespace emptystar
