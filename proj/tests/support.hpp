#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "slag/params.hpp"

namespace slag::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// a_j uniform in [lo, hi] with a unique minimum (min multiplicity 1).
inline ReductionParams random_params(int n, double lo = -2.0, double hi = 3.0) {
  for (;;) {
    std::vector<double> a(n - 1);
    for (double& x : a) x = uniform(lo, hi);
    ReductionParams p(a);
    if (p.nonsingular()) return p;
  }
}

/// Expanded monomial coefficients of prod (w + a_j), lowest degree first.
inline std::vector<long double> expanded_coefficients(const ReductionParams& p) {
  std::vector<long double> c{1.0L};
  for (double aj : p.a()) {
    std::vector<long double> next(c.size() + 1, 0.0L);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k] += c[k] * aj;
      next[k + 1] += c[k];
    }
    c = std::move(next);
  }
  return c;
}

inline long double horner(const std::vector<long double>& c, long double w) {
  long double r = 0.0L;
  for (std::size_t k = c.size(); k-- > 0;) r = r * w + c[k];
  return r;
}

/// Plain bisection on P(w) = s over [w0, w0 + 1 + s + sum|a|], long double.
inline long double bisect_branch(const ReductionParams& p, long double s) {
  const auto c = expanded_coefficients(p);
  long double lo = p.w0();
  long double hi = p.w0() + 1.0L + s;
  for (double aj : p.a()) hi += std::abs(aj);
  for (int it = 0; it < 200; ++it) {
    const long double mid = 0.5L * (lo + hi);
    if (horner(c, mid) < s) lo = mid; else hi = mid;
  }
  return 0.5L * (lo + hi);
}

}  // namespace slag::test
