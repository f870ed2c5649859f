#pragma once

// Floating-point expansion arithmetic: a value is held as a sum of doubles
// that are nonoverlapping and sorted by increasing magnitude, so the sign of
// the sum is the sign of the last (largest) term. All operations are exact
// barring overflow/underflow.

#include <cmath>
#include <vector>

namespace emptystar::detail {

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  const double bv = a - x;
  const double av = x + bv;
  y = (a - av) + (bv - b);
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  y = std::fma(a, b, -x);
}

class Expansion {
 public:
  Expansion() = default;
  explicit Expansion(double v) {
    if (v != 0.0) terms_.push_back(v);
  }

  static Expansion difference(double a, double b) {
    double x, y;
    two_diff(a, b, x, y);
    Expansion e;
    if (y != 0.0) e.terms_.push_back(y);
    if (x != 0.0) e.terms_.push_back(x);
    return e;
  }

  // Grow-expansion with zero elimination.
  void add(double b) {
    if (b == 0.0) return;
    std::vector<double> out;
    out.reserve(terms_.size() + 1);
    double q = b;
    for (double e : terms_) {
      double s, h;
      two_sum(q, e, s, h);
      if (h != 0.0) out.push_back(h);
      q = s;
    }
    if (q != 0.0) out.push_back(q);
    terms_ = std::move(out);
  }

  Expansion& operator+=(const Expansion& o) {
    for (double t : o.terms_) add(t);
    return *this;
  }

  Expansion operator-() const {
    Expansion e = *this;
    for (double& t : e.terms_) t = -t;
    return e;
  }

  Expansion scaled(double b) const {
    Expansion r;
    for (double t : terms_) {
      double x, y;
      two_product(t, b, x, y);
      r.add(y);
      r.add(x);
    }
    return r;
  }

  Expansion operator*(const Expansion& o) const {
    Expansion r;
    for (double t : o.terms_) r += scaled(t);
    return r;
  }

  int sign() const {
    if (terms_.empty()) return 0;
    return terms_.back() > 0.0 ? 1 : -1;
  }

  double estimate() const {
    double s = 0.0;
    for (double t : terms_) s += t;
    return s;
  }

 private:
  std::vector<double> terms_;
};

}  // namespace emptystar::detail
