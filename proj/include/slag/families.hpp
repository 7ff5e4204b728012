#pragma once

#include <span>
#include <utility>
#include <vector>

#include "slag/error.hpp"
#include "slag/params.hpp"

// Explicit solution families of the reduced system, used as generators and
// as test oracles.
namespace slag {

/// u = alpha x + beta, v = alpha y + gamma.
struct AffineSolution {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

std::pair<double, double> affine_uv(const AffineSolution& sol, double x, double y);

/// Potential with f_x = v and f_y = u: alpha x y + gamma x + beta y.
double affine_potential(const AffineSolution& sol, double x, double y);

/// Phase with e^{i theta} = (1 + i alpha)/sqrt(1 + alpha^2); Im(e^{-i theta} z_n)
/// is constant on the lifted affine solution.
double affine_split_phase(const AffineSolution& sol);

/// Parameters of the Harvey-Lawson-type subfamily w = x^2 + u^2 + b, vu + xy = 0,
/// vx - uy > 0. The last a_j must be 0.
class HLConfig {
 public:
  HLConfig(ReductionParams params, double b);

  const ReductionParams& params() const noexcept { return params_; }
  double b() const noexcept { return b_; }

 private:
  ReductionParams params_;
  double b_;
};

struct HLTriple {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
  double w = 0.0;
  double alpha = 0.0;  ///< u^2
};

/// Thrown when P' <= 0 somewhere in the bracket, so the root need not be
/// unique; carries every sign-change root found.
class DegenerateRegionError : public Error {
 public:
  DegenerateRegionError(const std::string& what, std::vector<double> roots)
      : Error(ErrorCode::DegenerateRegion, what), roots_(std::move(roots)) {}
  const std::vector<double>& roots() const noexcept { return roots_; }

 private:
  std::vector<double> roots_;
};

/// y^2 (1 + x^2/alpha) - P(x^2 + alpha + b). Throws NonpositiveAlpha.
double hl_F(const HLConfig& cfg, double x, double y, double alpha);

struct AlphaBracket {
  double lo = 0.0;  ///< hl_F(lo) > 0
  double hi = 0.0;  ///< hl_F(hi) < 0
};

/// Bracket expansion for x != 0: hi doubles until F < 0, lo halves until F > 0.
AlphaBracket hl_bracket_alpha(const HLConfig& cfg, double x, double y);

/// Largest w with P'(w) <= 0; P' > 0 on everything to its right.
double largest_critical_point(const ReductionParams& params);

/// Root alpha > 0 of hl_F. Throws YZero, DegenerateRegionError.
double hl_solve_alpha(const HLConfig& cfg, double x, double y);

/// alpha from hl_solve_alpha, u = -sign(y) sqrt(alpha), v = -xy/u, w = x^2 + alpha + b.
HLTriple hl_triple(const HLConfig& cfg, double x, double y);

/// max over s of |F(s) - 2 sqrt(s + a^2)| for n = 3, (a_1, a_2) = (a, -a).
double joyce_check(double a, std::span<const double> s_grid);

}  // namespace slag
