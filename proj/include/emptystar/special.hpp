#pragma once

namespace emptystar {

/// Volume of the d-dimensional unit ball, pi^(d/2) / Gamma(d/2 + 1),
/// evaluated through log-Gamma. Throws std::invalid_argument for d < 1.
double kappa(int d);

/// Beta function Gamma(a)Gamma(b)/Gamma(a+b) via log-Gamma; a, b > 0.
double beta_fn(double a, double b);

/// log of the binomial coefficient C(n, k); k in [0, n].
double log_binomial(double n, double k);

/// C(n, k) as a double (exact while it fits in 53 bits).
double binomial(unsigned n, unsigned k);

}  // namespace emptystar
