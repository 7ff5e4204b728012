#pragma once

#include <utility>

#include "slag/error.hpp"
#include "slag/grid.hpp"
#include "slag/kernels.hpp"
#include "slag/params.hpp"

namespace slag {

struct SolverConfig {
  double tolerance = 1e-10;  ///< max-norm of the discrete potential residual
  int max_iterations = 10000;  ///< outer (Picard) iterations
  double sor_factor = 1.7;
  double ellipticity_floor = 1e-10;
  int max_inner_sweeps = 100000;  ///< red-black sweeps per outer iteration
  kernels::Exec exec = kernels::Exec::Parallel;
};

struct PdeSolution {
  ScalarField2D f;
  ScalarField2D u;  ///< D_y f
  ScalarField2D v;  ///< D_x f
  int iterations = 0;
  long long sweeps = 0;
  double final_residual = 0.0;
  double ellipticity_margin = 0.0;  ///< min over interior nodes of P'(w)
};

/// Thrown by solve_dirichlet when the outer iteration budget runs out.
class NoConvergenceError : public Error {
 public:
  NoConvergenceError(int iterations, double residual);
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Residuals (D_x u - D_y v, D_x v + P'(w(v^2 + y^2)) D_y u) of the first-order
/// system at interior nodes; boundary nodes are 0.
std::pair<ScalarField2D, ScalarField2D> residual_first_order(const ReductionParams& params,
                                                             const ScalarField2D& u,
                                                             const ScalarField2D& v);

/// D_xx f + P'(w((D_x f)^2 + y^2)) D_yy f at interior nodes; boundary nodes are 0.
ScalarField2D residual_potential(const ReductionParams& params, const ScalarField2D& f);

/// (u, v) = (D_y f, D_x f): central differences inside, second-order one-sided
/// differences on the boundary.
std::pair<ScalarField2D, ScalarField2D> recover_uv(const ScalarField2D& f);

/// Dirichlet problem for f_xx + P'(w) f_yy = 0 on a rectangle.
///
/// Picard iteration: freeze the coefficient from the current iterate, relax the
/// linear problem with red-black SOR, reassemble. Coefficient updates are damped
/// by 0.7 whenever the nonlinear residual grows. Starts from the Coons patch of
/// the boundary data, so boundary nodes are never modified.
PdeSolution solve_dirichlet(const ReductionParams& params, const GridDomain& domain,
                            const BoundaryData& phi, const SolverConfig& cfg = {});

}  // namespace slag
