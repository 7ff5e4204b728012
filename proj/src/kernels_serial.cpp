#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_detail.hpp"
#include "slag/kernels.hpp"

namespace slag::kernels::serial {

void assemble_coefficient(const ReductionParams& params, const ScalarField2D& f,
                          std::span<double> coef) {
  const GridDomain& d = f.domain();
  for (int j = 1; j < d.ny() - 1; ++j) {
    for (int i = 1; i < d.nx() - 1; ++i) coef[d.index(i, j)] = detail::node_coefficient(params, f, i, j);
  }
}

void potential_residual(const ScalarField2D& f, std::span<const double> coef,
                        std::span<double> out) {
  const GridDomain& d = f.domain();
  std::fill(out.begin(), out.end(), 0.0);
  for (int j = 1; j < d.ny() - 1; ++j) {
    for (int i = 1; i < d.nx() - 1; ++i) {
      out[d.index(i, j)] = detail::node_residual(f, coef[d.index(i, j)], i, j);
    }
  }
}

double potential_residual_max(const ScalarField2D& f, std::span<const double> coef) {
  const GridDomain& d = f.domain();
  double m = 0.0;
  for (int j = 1; j < d.ny() - 1; ++j) {
    for (int i = 1; i < d.nx() - 1; ++i) {
      const double r = std::abs(detail::node_residual(f, coef[d.index(i, j)], i, j));
      if (!(r <= m)) m = std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
    }
  }
  return m;
}

void sor_color_sweep(ScalarField2D& f, std::span<const double> coef, int color, double omega) {
  const GridDomain& d = f.domain();
  for (int j = 1; j < d.ny() - 1; ++j) {
    for (int i = 1 + ((1 + j + color) & 1); i < d.nx() - 1; i += 2) {
      detail::node_sor_update(f, coef[d.index(i, j)], i, j, omega);
    }
  }
}

double min_interior(const GridDomain& d, std::span<const double> coef) {
  double m = std::numeric_limits<double>::infinity();
  for (int j = 1; j < d.ny() - 1; ++j) {
    for (int i = 1; i < d.nx() - 1; ++i) {
      const double c = coef[d.index(i, j)];
      if (!(c >= m)) m = std::isnan(c) ? -std::numeric_limits<double>::infinity() : c;
    }
  }
  return m;
}

}  // namespace slag::kernels::serial

namespace slag::kernels {

void assemble_coefficient(const ReductionParams& params, const ScalarField2D& f,
                          std::span<double> coef, Exec exec) {
  exec == Exec::Serial ? serial::assemble_coefficient(params, f, coef)
                       : omp::assemble_coefficient(params, f, coef);
}

void potential_residual(const ScalarField2D& f, std::span<const double> coef,
                        std::span<double> out, Exec exec) {
  exec == Exec::Serial ? serial::potential_residual(f, coef, out)
                       : omp::potential_residual(f, coef, out);
}

double potential_residual_max(const ScalarField2D& f, std::span<const double> coef, Exec exec) {
  return exec == Exec::Serial ? serial::potential_residual_max(f, coef)
                              : omp::potential_residual_max(f, coef);
}

void sor_color_sweep(ScalarField2D& f, std::span<const double> coef, int color, double omega,
                     Exec exec) {
  exec == Exec::Serial ? serial::sor_color_sweep(f, coef, color, omega)
                       : omp::sor_color_sweep(f, coef, color, omega);
}

double min_interior(const GridDomain& domain, std::span<const double> coef, Exec exec) {
  return exec == Exec::Serial ? serial::min_interior(domain, coef)
                              : omp::min_interior(domain, coef);
}

}  // namespace slag::kernels
