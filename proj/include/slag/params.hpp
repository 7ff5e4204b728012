#pragma once

#include <span>
#include <vector>

namespace slag {

/// Dimension and level-set parameters (a_1, ..., a_{n-1}) of the reduction.
/// P(w) = prod_j (w + a_j); the distinguished branch lives on w >= w0 = -min a_j.
class ReductionParams {
 public:
  /// n is inferred as a.size() + 1 and must be at least 3.
  explicit ReductionParams(std::vector<double> a);

  int n() const noexcept { return n_; }
  std::span<const double> a() const noexcept { return a_; }
  double w0() const noexcept { return w0_; }
  int min_multiplicity() const noexcept { return min_multiplicity_; }
  bool nonsingular() const noexcept { return min_multiplicity_ == 1; }

 private:
  int n_;
  std::vector<double> a_;
  double w0_;
  int min_multiplicity_;
};

struct BranchState {
  double s = 0.0;
  double w = 0.0;
  double p_prime_at_w = 0.0;
};

double eval_P(const ReductionParams& params, double w);

/// Sum over k of prod_{i != k} (w + a_i).
double eval_Pprime(const ReductionParams& params, double w);

/// Unique solution of P(w) = s with w >= w0. Throws NegativeS for s < 0.
BranchState solve_branch(const ReductionParams& params, double s);

/// dw/ds = 1/P'(w). Throws DegenerateBranch when P'(w) < kDegeneracyThreshold.
double branch_sensitivity(const ReductionParams& params, const BranchState& state);

/// Coefficient F(s) = P'(w(s)) of the potential equation.
double coefficient_F(const ReductionParams& params, double s);

inline constexpr double kDegeneracyThreshold = 1e-8;

}  // namespace slag
