#include <algorithm>
#include <cmath>
#include <limits>

#include "kernels_detail.hpp"
#include "slag/kernels.hpp"

namespace slag::kernels::omp {

void assemble_coefficient(const ReductionParams& params, const ScalarField2D& f,
                          std::span<double> coef) {
  const GridDomain& d = f.domain();
  const int ny = d.ny();
  const int nx = d.nx();
#pragma omp parallel for schedule(static)
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) coef[d.index(i, j)] = detail::node_coefficient(params, f, i, j);
  }
}

void potential_residual(const ScalarField2D& f, std::span<const double> coef,
                        std::span<double> out) {
  const GridDomain& d = f.domain();
  const int ny = d.ny();
  const int nx = d.nx();
  std::fill(out.begin(), out.end(), 0.0);
#pragma omp parallel for schedule(static)
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      out[d.index(i, j)] = detail::node_residual(f, coef[d.index(i, j)], i, j);
    }
  }
}

double potential_residual_max(const ScalarField2D& f, std::span<const double> coef) {
  const GridDomain& d = f.domain();
  const int ny = d.ny();
  const int nx = d.nx();
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      double r = std::abs(detail::node_residual(f, coef[d.index(i, j)], i, j));
      if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
      m = std::max(m, r);
    }
  }
  return m;
}

void sor_color_sweep(ScalarField2D& f, std::span<const double> coef, int color, double omega) {
  const GridDomain& d = f.domain();
  const int ny = d.ny();
  const int nx = d.nx();
#pragma omp parallel for schedule(static)
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1 + ((1 + j + color) & 1); i < nx - 1; i += 2) {
      detail::node_sor_update(f, coef[d.index(i, j)], i, j, omega);
    }
  }
}

double min_interior(const GridDomain& d, std::span<const double> coef) {
  const int ny = d.ny();
  const int nx = d.nx();
  double m = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : m)
  for (int j = 1; j < ny - 1; ++j) {
    for (int i = 1; i < nx - 1; ++i) {
      double c = coef[d.index(i, j)];
      if (std::isnan(c)) c = -std::numeric_limits<double>::infinity();
      m = std::min(m, c);
    }
  }
  return m;
}

}  // namespace slag::kernels::omp
