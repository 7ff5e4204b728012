#pragma once

#include <cmath>
#include <limits>

#include "slag/grid.hpp"
#include "slag/params.hpp"

// Per-node stencils shared by the serial and OpenMP kernels.
namespace slag::kernels::detail {

inline double node_coefficient(const ReductionParams& params, const ScalarField2D& f, int i,
                               int j) {
  const GridDomain& d = f.domain();
  const double fx = (f(i + 1, j) - f(i - 1, j)) / (2.0 * d.hx());
  const double y = d.y(j);
  const double s = fx * fx + y * y;
  if (!(s >= 0.0) || !std::isfinite(s)) return std::numeric_limits<double>::quiet_NaN();
  return solve_branch(params, s).p_prime_at_w;
}

inline double node_residual(const ScalarField2D& f, double coef, int i, int j) {
  const GridDomain& d = f.domain();
  const double c = f(i, j);
  const double fxx = (f(i + 1, j) - 2.0 * c + f(i - 1, j)) / (d.hx() * d.hx());
  const double fyy = (f(i, j + 1) - 2.0 * c + f(i, j - 1)) / (d.hy() * d.hy());
  return fxx + coef * fyy;
}

inline void node_sor_update(ScalarField2D& f, double coef, int i, int j, double omega) {
  const GridDomain& d = f.domain();
  const double ax = 1.0 / (d.hx() * d.hx());
  const double ay = coef / (d.hy() * d.hy());
  const double gauss_seidel =
      (ax * (f(i + 1, j) + f(i - 1, j)) + ay * (f(i, j + 1) + f(i, j - 1))) / (2.0 * (ax + ay));
  f(i, j) += omega * (gauss_seidel - f(i, j));
}

}  // namespace slag::kernels::detail
