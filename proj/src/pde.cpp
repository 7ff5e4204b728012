#include "slag/pde.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "slag/error.hpp"

namespace slag {

namespace {

constexpr int kStallWindow = 64;  // sweeps between stagnation checks

void require_same_domain(const ScalarField2D& a, const ScalarField2D& b) {
  if (!(a.domain() == b.domain())) {
    throw Error(ErrorCode::DomainMismatch, "fields are defined on different grids");
  }
}

// Central difference in x at (i, j); second-order one-sided on the x-boundary.
double diff_x(const ScalarField2D& f, int i, int j) {
  const GridDomain& d = f.domain();
  const int nx = d.nx();
  if (i == 0) return (-3.0 * f(0, j) + 4.0 * f(1, j) - f(2, j)) / (2.0 * d.hx());
  if (i == nx - 1) return (3.0 * f(nx - 1, j) - 4.0 * f(nx - 2, j) + f(nx - 3, j)) / (2.0 * d.hx());
  return (f(i + 1, j) - f(i - 1, j)) / (2.0 * d.hx());
}

double diff_y(const ScalarField2D& f, int i, int j) {
  const GridDomain& d = f.domain();
  const int ny = d.ny();
  if (j == 0) return (-3.0 * f(i, 0) + 4.0 * f(i, 1) - f(i, 2)) / (2.0 * d.hy());
  if (j == ny - 1) return (3.0 * f(i, ny - 1) - 4.0 * f(i, ny - 2) + f(i, ny - 3)) / (2.0 * d.hy());
  return (f(i, j + 1) - f(i, j - 1)) / (2.0 * d.hy());
}

}  // namespace

NoConvergenceError::NoConvergenceError(int iterations, double residual)
    : Error(ErrorCode::NoConvergence, "no convergence after " + std::to_string(iterations) +
                                          " iterations, residual " + std::to_string(residual)),
      iterations_(iterations),
      residual_(residual) {}

std::pair<ScalarField2D, ScalarField2D> residual_first_order(const ReductionParams& params,
                                                             const ScalarField2D& u,
                                                             const ScalarField2D& v) {
  require_same_domain(u, v);
  const GridDomain& d = u.domain();
  ScalarField2D r1(d), r2(d);
  for (int j = 1; j < d.ny() - 1; ++j) {
    const double y = d.y(j);
    for (int i = 1; i < d.nx() - 1; ++i) {
      const double vv = v(i, j);
      const double coef = solve_branch(params, vv * vv + y * y).p_prime_at_w;
      r1(i, j) = diff_x(u, i, j) - diff_y(v, i, j);
      r2(i, j) = diff_x(v, i, j) + coef * diff_y(u, i, j);
    }
  }
  return {std::move(r1), std::move(r2)};
}

ScalarField2D residual_potential(const ReductionParams& params, const ScalarField2D& f) {
  std::vector<double> coef(f.domain().size(), 0.0);
  kernels::assemble_coefficient(params, f, coef);
  ScalarField2D out(f.domain());
  kernels::potential_residual(f, coef, out.values());
  return out;
}

std::pair<ScalarField2D, ScalarField2D> recover_uv(const ScalarField2D& f) {
  const GridDomain& d = f.domain();
  ScalarField2D u(d), v(d);
  for (int j = 0; j < d.ny(); ++j) {
    for (int i = 0; i < d.nx(); ++i) {
      u(i, j) = diff_y(f, i, j);
      v(i, j) = diff_x(f, i, j);
    }
  }
  return {std::move(u), std::move(v)};
}

PdeSolution solve_dirichlet(const ReductionParams& params, const GridDomain& domain,
                            const BoundaryData& phi, const SolverConfig& cfg) {
  if (!params.nonsingular()) {
    throw Error(ErrorCode::SingularParameters,
                "min(a_j) has multiplicity " + std::to_string(params.min_multiplicity()) +
                    "; the Dirichlet solver needs multiplicity one");
  }
  if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 0 || !(cfg.sor_factor > 0.0 && cfg.sor_factor < 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "solver configuration out of range");
  }

  const auto exec = cfg.exec;
  ScalarField2D f = transfinite_interpolation(domain, phi);
  std::vector<double> fresh(domain.size(), 0.0);
  kernels::assemble_coefficient(params, f, fresh, exec);

  auto check_ellipticity = [&](std::span<const double> c) {
    const double margin = kernels::min_interior(domain, c, exec);
    if (!(margin >= cfg.ellipticity_floor)) {
      throw Error(ErrorCode::DegeneracyEncountered,
                  "P'(w) = " + std::to_string(margin) + " below the ellipticity floor");
    }
    return margin;
  };

  double margin = check_ellipticity(fresh);
  double residual = kernels::potential_residual_max(f, fresh, exec);
  std::vector<double> coef = fresh;
  int iterations = 0;
  long long sweeps = 0;

  while (residual > cfg.tolerance) {
    if (iterations >= cfg.max_iterations) throw NoConvergenceError(iterations, residual);
    ++iterations;

    // Relax the frozen-coefficient problem until its residual is well below
    // the current nonlinear one, or until round-off stalls it.
    const double inner_target = std::max(0.25 * cfg.tolerance, 0.05 * residual);
    double checkpoint = std::numeric_limits<double>::infinity();
    for (int sweep = 1; sweep <= cfg.max_inner_sweeps; ++sweep) {
      kernels::sor_color_sweep(f, coef, 0, cfg.sor_factor, exec);
      kernels::sor_color_sweep(f, coef, 1, cfg.sor_factor, exec);
      ++sweeps;
      const double linear = kernels::potential_residual_max(f, coef, exec);
      if (linear <= inner_target) break;
      if (sweep % kStallWindow == 0) {
        if (linear > 0.95 * checkpoint) break;
        checkpoint = linear;
      }
    }

    kernels::assemble_coefficient(params, f, fresh, exec);
    margin = check_ellipticity(fresh);
    const double next = kernels::potential_residual_max(f, fresh, exec);
    const double relax = next > residual ? 0.7 : 1.0;
    for (std::size_t k = 0; k < coef.size(); ++k) coef[k] += relax * (fresh[k] - coef[k]);
    residual = next;
  }

  auto [u, v] = recover_uv(f);
  return PdeSolution{std::move(f), std::move(u), std::move(v), iterations, sweeps, residual, margin};
}

}  // namespace slag
