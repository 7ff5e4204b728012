#include "slag/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "slag/error.hpp"

namespace slag {

ReductionParams::ReductionParams(std::vector<double> a) : a_(std::move(a)) {
  if (a_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "need at least two parameters a_j (n >= 3), got " + std::to_string(a_.size()));
  }
  for (double& aj : a_) {
    if (!std::isfinite(aj)) throw Error(ErrorCode::InvalidArgument, "non-finite a_j");
    // normalize -0.0 so the exact multiplicity count treats it as 0.0
    if (aj == 0.0) aj = 0.0;
  }
  n_ = static_cast<int>(a_.size()) + 1;
  const double amin = *std::min_element(a_.begin(), a_.end());
  w0_ = 0.0 - amin;  // +0.0 rather than -0.0 when amin is zero
  min_multiplicity_ = static_cast<int>(std::count(a_.begin(), a_.end(), amin));
}

double eval_P(const ReductionParams& params, double w) {
  double prod = 1.0;
  for (double aj : params.a()) prod *= (w + aj);
  return prod;
}

double eval_Pprime(const ReductionParams& params, double w) {
  const auto a = params.a();
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double prod = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i != k) prod *= (w + a[i]);
    }
    sum += prod;
  }
  return sum;
}

BranchState solve_branch(const ReductionParams& params, double s) {
  if (!(s >= 0.0)) throw Error(ErrorCode::NegativeS, "s = " + std::to_string(s));

  const double w0 = params.w0();
  if (s == 0.0) return {0.0, w0, eval_Pprime(params, w0)};

  const auto a = params.a();
  const double abs_sum = std::accumulate(a.begin(), a.end(), 0.0,
                                         [](double acc, double x) { return acc + std::abs(x); });
  const double span = std::max(1.0, std::pow(s, 1.0 / (params.n() - 1))) + abs_sum;

  // P is increasing and convex on [w0, inf), so Newton started from the right
  // end stays inside the bracket; bisection covers the degenerate P'(w0) = 0 case.
  double lo = w0;
  double hi = w0 + span;
  double w = hi;
  const double target_tol = 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + s);
  for (int iter = 0; iter < 400; ++iter) {
    const double residual = eval_P(params, w) - s;
    if (std::abs(residual) <= target_tol) break;
    if (residual > 0.0) {
      hi = w;
    } else {
      lo = w;
    }
    const double slope = eval_Pprime(params, w);
    double next = slope > 0.0 ? w - residual / slope : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == w || hi - lo <= std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w))) {
      w = next;
      break;
    }
    w = next;
  }
  w = std::max(w, w0);
  return {s, w, eval_Pprime(params, w)};
}

double branch_sensitivity(const ReductionParams& params, const BranchState& state) {
  (void)params;
  if (!(state.p_prime_at_w >= kDegeneracyThreshold)) {
    throw Error(ErrorCode::DegenerateBranch,
                "P'(w) = " + std::to_string(state.p_prime_at_w) + " below threshold");
  }
  return 1.0 / state.p_prime_at_w;
}

double coefficient_F(const ReductionParams& params, double s) {
  return solve_branch(params, s).p_prime_at_w;
}

}  // namespace slag
