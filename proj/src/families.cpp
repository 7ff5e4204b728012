#include "slag/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace slag {

std::pair<double, double> affine_uv(const AffineSolution& sol, double x, double y) {
  return {sol.alpha * x + sol.beta, sol.alpha * y + sol.gamma};
}

double affine_potential(const AffineSolution& sol, double x, double y) {
  return sol.alpha * x * y + sol.gamma * x + sol.beta * y;
}

double affine_split_phase(const AffineSolution& sol) { return std::atan(sol.alpha); }

HLConfig::HLConfig(ReductionParams params, double b) : params_(std::move(params)), b_(b) {
  if (params_.a().back() != 0.0) {
    throw Error(ErrorCode::InvalidArgument, "Harvey-Lawson subfamily needs a_{n-1} = 0");
  }
  if (!std::isfinite(b)) throw Error(ErrorCode::InvalidArgument, "non-finite offset b");
}

double hl_F(const HLConfig& cfg, double x, double y, double alpha) {
  if (!(alpha > 0.0)) throw Error(ErrorCode::NonpositiveAlpha, "alpha = " + std::to_string(alpha));
  return y * y * (1.0 + x * x / alpha) - eval_P(cfg.params(), x * x + alpha + cfg.b());
}

namespace {

double hl_F_prime(const HLConfig& cfg, double x, double y, double alpha) {
  return -y * y * x * x / (alpha * alpha) - eval_Pprime(cfg.params(), x * x + alpha + cfg.b());
}

double hl_tolerance(const HLConfig& cfg, double x, double y, double alpha) {
  return 1e-10 * (1.0 + y * y + std::abs(eval_P(cfg.params(), x * x + alpha + cfg.b())));
}

// pos and neg are points with F(pos) > 0 >= F(neg), in either order.
double bisect(const HLConfig& cfg, double x, double y, double pos, double neg) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (pos + neg);
    if (mid == pos || mid == neg) break;
    (hl_F(cfg, x, y, mid) > 0.0 ? pos : neg) = mid;
  }
  const double fpos = std::abs(hl_F(cfg, x, y, pos));
  const double fneg = std::abs(hl_F(cfg, x, y, neg));
  return fpos <= fneg ? pos : neg;
}

// Newton safeguarded by the bracket; F is strictly decreasing on it.
double newton_bisect(const HLConfig& cfg, double x, double y, double lo, double hi) {
  double a = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = hl_F(cfg, x, y, a);
    if (f == 0.0) return a;
    (f > 0.0 ? lo : hi) = a;
    const double slope = hl_F_prime(cfg, x, y, a);
    double next = slope < 0.0 ? a - f / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == a || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) {
      a = next;
      break;
    }
    a = next;
  }
  if (std::abs(hl_F(cfg, x, y, a)) > hl_tolerance(cfg, x, y, a)) a = bisect(cfg, x, y, lo, hi);
  return a;
}

std::vector<double> scan_roots(const HLConfig& cfg, double x, double y, double lo, double hi) {
  constexpr int kCells = 4096;
  std::vector<double> roots;
  const double ratio = std::pow(hi / lo, 1.0 / kCells);
  double left = lo;
  double f_left = hl_F(cfg, x, y, left);
  for (int k = 1; k <= kCells; ++k) {
    const double right = k == kCells ? hi : lo * std::pow(ratio, k);
    const double f_right = hl_F(cfg, x, y, right);
    if (f_left == 0.0) {
      roots.push_back(left);
    } else if ((f_left > 0.0) != (f_right > 0.0) && f_right != 0.0) {
      roots.push_back(f_left > 0.0 ? bisect(cfg, x, y, left, right) : bisect(cfg, x, y, right, left));
    }
    left = right;
    f_left = f_right;
  }
  return roots;
}

}  // namespace

double largest_critical_point(const ReductionParams& params) {
  const double w0 = params.w0();
  if (!params.nonsingular()) return w0;
  // P' has exactly one root between the two largest distinct roots of P.
  const auto a = params.a();
  double next_root = -std::numeric_limits<double>::infinity();
  for (double aj : a) {
    if (-aj < w0) next_root = std::max(next_root, -aj);
  }
  double lo = next_root;
  double hi = w0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (eval_Pprime(params, mid) > 0.0 ? hi : lo) = mid;
  }
  return lo;
}

AlphaBracket hl_bracket_alpha(const HLConfig& cfg, double x, double y) {
  if (y == 0.0) throw Error(ErrorCode::YZero, "Harvey-Lawson solve needs y != 0");
  if (x == 0.0) throw Error(ErrorCode::InvalidArgument, "bracket expansion needs x != 0");
  const double p1 = eval_P(cfg.params(), x * x + 1.0 + cfg.b());
  AlphaBracket br{std::min(1.0, y * y * x * x / (1.0 + std::abs(p1))), 1.0};
  for (int k = 0; hl_F(cfg, x, y, br.hi) >= 0.0; ++k) {
    if (k > 2000) throw Error(ErrorCode::NoConvergence, "upper bracket expansion failed");
    br.hi *= 2.0;
  }
  for (int k = 0; hl_F(cfg, x, y, br.lo) <= 0.0; ++k) {
    if (k > 2000 || br.lo == 0.0) throw Error(ErrorCode::NoConvergence, "lower bracket expansion failed");
    br.lo *= 0.5;
  }
  return br;
}

double hl_solve_alpha(const HLConfig& cfg, double x, double y) {
  if (y == 0.0) throw Error(ErrorCode::YZero, "Harvey-Lawson solve needs y != 0");
  const ReductionParams& params = cfg.params();
  const double t_crit = largest_critical_point(params);

  if (x == 0.0) {
    // F(alpha) = y^2 - P(alpha + b)
    const double alpha = solve_branch(params, y * y).w - cfg.b();
    if (!(alpha > 0.0)) {
      throw DegenerateRegionError("no positive alpha on the distinguished branch", {});
    }
    if (cfg.b() <= t_crit) {
      const double lo = std::max(alpha * 1e-12, std::numeric_limits<double>::min());
      throw DegenerateRegionError("P' <= 0 below the root",
                                  scan_roots(cfg, x, y, lo, 2.0 * alpha));
    }
    return alpha;
  }

  const AlphaBracket br = hl_bracket_alpha(cfg, x, y);
  const double arg_lo = x * x + br.lo + cfg.b();
  const double arg_hi = x * x + br.hi + cfg.b();
  bool degenerate = t_crit >= arg_lo && t_crit <= arg_hi;
  if (!degenerate && arg_lo <= t_crit) {
    for (int k = 0; k <= 256 && !degenerate; ++k) {
      degenerate = eval_Pprime(params, arg_lo + (arg_hi - arg_lo) * k / 256.0) <= 0.0;
    }
  }
  if (degenerate) {
    throw DegenerateRegionError("P' <= 0 inside the bracket", scan_roots(cfg, x, y, br.lo, br.hi));
  }
  return newton_bisect(cfg, x, y, br.lo, br.hi);
}

HLTriple hl_triple(const HLConfig& cfg, double x, double y) {
  const double alpha = hl_solve_alpha(cfg, x, y);
  // vx - uy = -y (x^2 + u^2)/u > 0 forces sign(u) = -sign(y)
  const double u = y > 0.0 ? -std::sqrt(alpha) : std::sqrt(alpha);
  const double v = x == 0.0 ? 0.0 : -x * y / u;
  return {x, y, u, v, x * x + alpha + cfg.b(), alpha};
}

double joyce_check(double a, std::span<const double> s_grid) {
  if (a == 0.0) throw Error(ErrorCode::InvalidArgument, "Joyce specialization needs a != 0");
  const ReductionParams params({a, -a});
  double worst = 0.0;
  for (double s : s_grid) {
    worst = std::max(worst, std::abs(coefficient_F(params, s) - 2.0 * std::sqrt(s + a * a)));
  }
  return worst;
}

}  // namespace slag
