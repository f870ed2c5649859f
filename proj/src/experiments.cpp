#include "emptystar/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "emptystar/enumerate.hpp"
#include "emptystar/integrals.hpp"
#include "emptystar/parallel.hpp"
#include "emptystar/special.hpp"

namespace emptystar {
namespace {

bool enumerates(Quantity q) { return q != Quantity::kNGamma && q != Quantity::kPoissonGof; }

int tuple_size(const ExperimentConfig& c) {
  if (c.quantity == Quantity::kDeg1Profile) return 1;
  return c.k == 0 ? c.dim : c.k;
}

int degree_exponent(int d, int k) { return k == d ? 1 : d - k; }

std::string power_label(int e) { return e == 1 ? "n" : "n^" + std::to_string(e); }

std::string normalizer(const ExperimentConfig& c) {
  const int d = c.dim;
  switch (c.quantity) {
    case Quantity::kEmptyCount:
      return power_label(d);
    case Quantity::kMaxDegree:
      return power_label(degree_exponent(d, tuple_size(c)));
    case Quantity::kDeg1Profile:
      return power_label(degree_exponent(d, 1));
    case Quantity::kTypicalDegree:
    case Quantity::kNGamma:
    case Quantity::kPoissonGof:
      return "";
  }
  return "";
}

double trial_value(const ExperimentConfig& c, std::size_t n, RngStream& rng) {
  const int d = c.dim;
  const double nd = static_cast<double>(n);
  if (!enumerates(c.quantity)) {
    // N_{gamma n} depends on distances only, so the general-position check
    // (a probability-one property of the sampler) is skipped.
    const PointSet X = sample_uniform(c.body, rng, n, GeneralPositionPolicy::kAssume);
    const double threshold = std::pow(c.gamma * nd, -1.0 / (d - 1));
    return static_cast<double>(count_close_subsets(X, threshold, d));
  }
  const PointSet X = sample_uniform(c.body, rng, n, GeneralPositionPolicy::kVerify);
  const int k = tuple_size(c);
  switch (c.quantity) {
    case Quantity::kEmptyCount: {
      std::uint64_t total = 0;
      for_each_empty_simplex(X, [&](std::span<const std::uint32_t>) { ++total; });
      return static_cast<double>(total) / std::pow(nd, d);
    }
    case Quantity::kTypicalDegree: {
      std::uint64_t total = 0;
      for_each_empty_simplex(X, [&](std::span<const std::uint32_t>) { ++total; });
      return binomial(d + 1, k) * static_cast<double>(total) / binomial(static_cast<unsigned>(n), k);
    }
    case Quantity::kMaxDegree:
    case Quantity::kDeg1Profile: {
      const auto r = count_empty_simplices(X, k);
      return static_cast<double>(r.max_degree) / std::pow(nd, degree_exponent(d, k));
    }
    default:
      break;
  }
  throw std::logic_error("unhandled quantity");
}

std::optional<double> target_for(const ExperimentConfig& c) {
  const int d = c.dim;
  std::optional<double> limit;  // of n^-d E N
  if (d == 2) limit = 2.0;
  else if (c.body.kind() == BodyKind::kBall) limit = theorem2_constants(d).upper_c;
  switch (c.quantity) {
    case Quantity::kEmptyCount:
      return limit;
    case Quantity::kTypicalDegree:
      if (limit && tuple_size(c) == d) return (d + 1) * std::tgamma(d + 1.0) * *limit;
      return std::nullopt;
    case Quantity::kNGamma:
    case Quantity::kPoissonGof:
      if (d == 2) return lemma1_limit(2, c.gamma, c.body.volume());
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

Quantity parse_quantity(const std::string& name) {
  std::string s = name;
  std::replace(s.begin(), s.end(), '-', '_');
  if (s == "empty_count") return Quantity::kEmptyCount;
  if (s == "max_degree") return Quantity::kMaxDegree;
  if (s == "typical_degree") return Quantity::kTypicalDegree;
  if (s == "deg1_profile") return Quantity::kDeg1Profile;
  if (s == "n_gamma") return Quantity::kNGamma;
  if (s == "poisson_gof") return Quantity::kPoissonGof;
  throw std::invalid_argument("unknown quantity '" + name + "'");
}

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::kEmptyCount:
      return "empty_count";
    case Quantity::kMaxDegree:
      return "max_degree";
    case Quantity::kTypicalDegree:
      return "typical_degree";
    case Quantity::kDeg1Profile:
      return "deg1_profile";
    case Quantity::kNGamma:
      return "n_gamma";
    case Quantity::kPoissonGof:
      return "poisson_gof";
  }
  return "?";
}

std::size_t n_cap(Quantity q, int dim) {
  if (dim == 2) return 2000;
  if (!enumerates(q)) return 100000;
  if (dim == 3) return 80;
  return 30;
}

void validate(const ExperimentConfig& c) {
  if (c.dim < 2) throw std::invalid_argument("dimension must be >= 2");
  if (c.body.dim() != c.dim)
    throw std::invalid_argument("body " + c.body.label() + " is " + std::to_string(c.body.dim()) +
                                "-dimensional, sweep asks for d = " + std::to_string(c.dim));
  if (c.n_values.empty()) throw std::invalid_argument("no n values");
  if (c.trials < 1) throw std::invalid_argument("trials must be >= 1");
  const std::size_t cap = n_cap(c.quantity, c.dim);
  for (std::size_t i = 0; i < c.n_values.size(); ++i) {
    const std::size_t n = c.n_values[i];
    if (i > 0 && n <= c.n_values[i - 1]) throw std::invalid_argument("n values must be strictly increasing");
    if (n < static_cast<std::size_t>(c.dim) + 1)
      throw std::invalid_argument("n = " + std::to_string(n) + " is below d+1");
    if (n > cap)
      throw std::invalid_argument("n = " + std::to_string(n) + " exceeds the cap " + std::to_string(cap) +
                                  " for " + quantity_name(c.quantity) + " in d = " + std::to_string(c.dim));
  }
  if (c.quantity == Quantity::kMaxDegree || c.quantity == Quantity::kTypicalDegree) {
    if (c.k < 0 || c.k > c.dim) throw std::invalid_argument("k must be in [1, d]");
  }
  if (!enumerates(c.quantity) && !(c.gamma > 0.0 && std::isfinite(c.gamma)))
    throw std::invalid_argument("gamma must be positive");
  if (c.quantity == Quantity::kPoissonGof && c.trials < 2)
    throw std::invalid_argument("poisson_gof needs at least 2 trials");
}

std::uint64_t trial_stream(std::size_t n_index, std::uint64_t trial) { return hash_combine(n_index, trial); }

SweepResult run_sweep(const ExperimentConfig& config) {
  validate(config);
  SweepResult out;
  out.config = config;
  const std::size_t per_n = config.trials;
  const std::size_t tasks = config.n_values.size() * per_n;
  std::vector<double> values(tasks);
  parallel_for(tasks, [&](std::size_t t) {
    const std::size_t ni = t / per_n;
    const std::uint64_t trial = t % per_n;
    RngStream rng(config.seed, trial_stream(ni, trial));
    values[t] = trial_value(config, config.n_values[ni], rng);
  });

  const std::string norm = normalizer(config);
  for (std::size_t ni = 0; ni < config.n_values.size(); ++ni) {
    const std::size_t n = config.n_values[ni];
    std::span<const double> slice(values.data() + ni * per_n, per_n);
    for (std::uint64_t t = 0; t < per_n; ++t) out.records.push_back({n, t, slice[t]});
    EstimateSummary s = summarize(slice);
    s.n = n;
    s.seed = config.seed;
    s.normalizer = norm;
    out.summaries.push_back(s);
    if (config.quantity == Quantity::kPoissonGof) {
      std::vector<std::uint64_t> counts(slice.size());
      std::transform(slice.begin(), slice.end(), counts.begin(),
                     [](double v) { return static_cast<std::uint64_t>(v); });
      PoissonGof g = poisson_fit(counts);
      g.n = n;
      out.gof.push_back(std::move(g));
    }
    if (config.quantity == Quantity::kMaxDegree && config.dim == 2 && tuple_size(config) == 2 &&
        (s.mean < kDeg2BandLo || s.mean > kDeg2BandHi)) {
      std::ostringstream msg;
      msg << "mean deg_2/n = " << s.mean << " at n = " << n << " lies outside [" << kDeg2BandLo << ", "
          << kDeg2BandHi << "]";
      out.flags.push_back(msg.str());
    }
  }
  out.target = target_for(config);
  return out;
}

PoissonGof poisson_fit(std::span<const std::uint64_t> counts) {
  if (counts.empty()) throw std::invalid_argument("poisson_fit: no trials");
  const std::uint64_t top = *std::max_element(counts.begin(), counts.end());
  PoissonGof g;
  g.histogram.assign(top + 1, 0);
  double sum = 0.0;
  for (auto c : counts) {
    ++g.histogram[c];
    sum += static_cast<double>(c);
  }
  g.mean = sum / static_cast<double>(counts.size());
  g.tv_distance = tv_distance(g.histogram, g.mean);
  g.p_zero_empirical = static_cast<double>(g.histogram[0]) / static_cast<double>(counts.size());
  g.p_zero_predicted = std::exp(-g.mean);
  return g;
}

std::vector<PoissonGof> poisson_gof(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.quantity = Quantity::kPoissonGof;
  return run_sweep(c).gof;
}

}  // namespace emptystar
