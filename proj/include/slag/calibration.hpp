#pragma once

#include <span>
#include <vector>

#include "slag/embedding.hpp"
#include "slag/grid.hpp"
#include "slag/kernels.hpp"
#include "slag/params.hpp"

namespace slag {

using CVector = std::vector<cplx>;

/// First derivatives of (u, v) at a base point.
struct Jet {
  double u_x = 0.0;
  double u_y = 0.0;
  double v_x = 0.0;
  double v_y = 0.0;
};

/// Derivatives of the gauge phase theta = Theta/(n-1) and of w along x and y.
struct ImplicitDerivatives {
  double theta_x = 0.0;
  double theta_y = 0.0;
  double w_x = 0.0;
  double w_y = 0.0;
};

/// Tangent vectors of N at a point, in the gauge theta_1 = ... = theta_{n-1}.
struct TangentFrame {
  std::vector<CVector> w_phi;  ///< n-2 orbit directions
  CVector wx;
  CVector wy;
  ImplicitDerivatives derivs;
  Jet jet;
  EmbeddedSample point;  ///< gauge representative
  double theta = 0.0;    ///< common phase Theta/(n-1)
  double p_prime = 0.0;  ///< P'(w) at the point
};

struct CrossProductVector {
  CVector components;
};

ImplicitDerivatives implicit_derivatives(const ReductionParams& params, double v, double y,
                                         double v_x, double v_y);

/// (0, .., i z_k, .., -i z_{n-1}, 0) for k = 1..n-2.
std::vector<CVector> fiber_tangents(std::span<const cplx> z);

/// Throws SingularPoint at v = y = 0, ZeroRadius if some w + a_j <= 1e-14,
/// DegenerateBranch if P'(w) vanishes.
TangentFrame tangent_frame(const ReductionParams& params, const BasePoint& base, const Jet& jet);

inline TangentFrame tangent_frame(const ReductionParams& params, const EmbeddedSample& sample,
                                  const Jet& jet) {
  return tangent_frame(params, sample.base, jet);
}

/// omega(A, B) = (i/2) sum dz_j ^ dzbar_j (A, B).
double omega(std::span<const cplx> a, std::span<const cplx> b);

/// All n frame vectors in order w_phi..., wx, wy.
std::vector<CVector> frame_vectors(const TangentFrame& frame);

/// Max over pairs of |omega(A, B)| / (|A| |B|).
double omega_residual(const TangentFrame& frame);

/// |Im det[frame]| / prod |frame vector|.
double imOmega_residual(const TangentFrame& frame);

/// Real rank of the 2n x n matrix of frame vectors.
int frame_rank(const TangentFrame& frame, double rel_tol = 1e-10);

/// Complex determinant of a square matrix given by columns (partial-pivot LU).
cplx complex_determinant(const std::vector<CVector>& columns);

/// Component j = det[v_1, ..., v_{n-1}, e_j].
CrossProductVector cross_product_det(const std::vector<CVector>& vectors);

/// Closed-form components of det[W_phi_1, ..., W_phi_{n-2}, W_x, e_j] in the gauge frame.
/// Throws ZeroRadius if a radius vanishes.
CrossProductVector cross_product_closed_form(const ReductionParams& params,
                                             const TangentFrame& frame);

struct DecompositionFit {
  double gamma = 0.0;
  double beta = 0.0;
  std::vector<double> alpha;  ///< coefficients of W_phi_i
  double residual = 0.0;      ///< |fit - W_y| / |W_y|
  double p_prime = 0.0;
};

/// Least-squares fit W_y ~ sum alpha_i W_phi_i + beta W_x + gamma conj(W_Phi)
/// over the real 2n-dimensional ambient space. Throws RankDeficient.
DecompositionFit decomposition_check(const ReductionParams& params, const TangentFrame& frame);

struct PointCheck {
  int i = 0;
  int j = 0;
  double x = 0.0;
  double y = 0.0;
  bool evaluated = false;  ///< false at singular / zero-radius / rank-deficient nodes
  double omega = 0.0;
  double im_omega = 0.0;
  double gamma = 0.0;
  double gamma_law = 0.0;  ///< gamma * P'(w)
  double fit_residual = 0.0;
};

struct Maximum {
  double value = 0.0;
  int i = -1;
  int j = -1;
};

struct CalibrationReport {
  std::vector<PointCheck> points;  ///< interior nodes in grid order
  Maximum omega;
  Maximum im_omega;
  Maximum fit_residual;
  int skipped = 0;
};

/// Builds frames from central-difference jets of (u, v) at every interior node
/// and evaluates the calibration residuals there. Maxima are reduced in grid
/// order, so the report does not depend on the thread count.
CalibrationReport verify_calibration(const ReductionParams& params, const ScalarField2D& u,
                                     const ScalarField2D& v,
                                     kernels::Exec exec = kernels::Exec::Parallel);

}  // namespace slag
