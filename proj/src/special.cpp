#include "emptystar/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace emptystar {

double kappa(int d) {
  if (d < 1) throw std::invalid_argument("kappa: dimension must be >= 1");
  const double h = 0.5 * d;
  return std::exp(h * std::log(std::numbers::pi) - std::lgamma(h + 1.0));
}

double beta_fn(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("beta_fn: arguments must be positive");
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double log_binomial(double n, double k) {
  if (k < 0.0 || k > n) throw std::invalid_argument("log_binomial: k out of range");
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  if (k > n - k) k = n - k;
  double r = 1.0;
  for (unsigned i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

}  // namespace emptystar
