#include "slag/calibration.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "slag/error.hpp"

namespace slag {

namespace {

constexpr double kZeroRadius = 1e-14;

double norm2(std::span<const cplx> a) {
  double s = 0.0;
  for (const cplx& c : a) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace

ImplicitDerivatives implicit_derivatives(const ReductionParams& params, double v, double y,
                                         double v_x, double v_y) {
  if (v == 0.0 && y == 0.0) throw Error(ErrorCode::SingularPoint, "implicit derivatives at v = y = 0");
  const double s = v * v + y * y;
  const BranchState branch = solve_branch(params, s);
  const double inv_pp = branch_sensitivity(params, branch);
  const double m = params.n() - 1;
  // (n-1) theta = arg(v + iy) + const and P(w) = v^2 + y^2
  return {
      -y * v_x / (m * s),
      (v - y * v_y) / (m * s),
      2.0 * v * v_x * inv_pp,
      2.0 * (v * v_y + y) * inv_pp,
  };
}

std::vector<CVector> fiber_tangents(std::span<const cplx> z) {
  const int n = static_cast<int>(z.size());
  const cplx i1(0.0, 1.0);
  std::vector<CVector> out(n - 2, CVector(n, cplx(0.0, 0.0)));
  for (int k = 0; k < n - 2; ++k) {
    out[k][k] = i1 * z[k];
    out[k][n - 2] = -i1 * z[n - 2];
  }
  return out;
}

TangentFrame tangent_frame(const ReductionParams& params, const BasePoint& base, const Jet& jet) {
  const int n = params.n();
  if (base.v == 0.0 && base.y == 0.0) {
    throw Error(ErrorCode::SingularPoint, "tangent frame at v = y = 0");
  }
  TangentFrame frame;
  frame.jet = jet;
  frame.derivs = implicit_derivatives(params, base.v, base.y, jet.v_x, jet.v_y);
  frame.theta = theta_total(params, base.v, base.y) / (n - 1);

  const std::vector<double> gauge(n - 2, frame.theta);
  frame.point = lift_point(params, base, gauge);
  frame.p_prime = eval_Pprime(params, frame.point.w);

  const auto a = params.a();
  const cplx phase = std::polar(1.0, frame.theta);
  const cplx i1(0.0, 1.0);
  frame.wx.assign(n, cplx(0.0, 0.0));
  frame.wy.assign(n, cplx(0.0, 0.0));
  for (int j = 0; j < n - 1; ++j) {
    const double r2 = frame.point.w + a[j];
    if (r2 <= kZeroRadius) {
      throw Error(ErrorCode::ZeroRadius, "w + a_" + std::to_string(j + 1) + " = " + std::to_string(r2));
    }
    const double r = std::sqrt(r2);
    frame.wx[j] = phase * (frame.derivs.w_x / (2.0 * r) + i1 * frame.derivs.theta_x * r);
    frame.wy[j] = phase * (frame.derivs.w_y / (2.0 * r) + i1 * frame.derivs.theta_y * r);
  }
  frame.wx[n - 1] = cplx(1.0, jet.u_x);
  frame.wy[n - 1] = cplx(0.0, jet.u_y);
  frame.w_phi = fiber_tangents(frame.point.z);
  return frame;
}

double omega(std::span<const cplx> a, std::span<const cplx> b) {
  // (i/2)(a_j conj(b_j) - b_j conj(a_j)) = -Im(a_j conj(b_j))
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s -= std::imag(a[j] * std::conj(b[j]));
  return s;
}

std::vector<CVector> frame_vectors(const TangentFrame& frame) {
  std::vector<CVector> cols = frame.w_phi;
  cols.push_back(frame.wx);
  cols.push_back(frame.wy);
  return cols;
}

double omega_residual(const TangentFrame& frame) {
  const auto cols = frame_vectors(frame);
  double worst = 0.0;
  for (std::size_t p = 0; p < cols.size(); ++p) {
    for (std::size_t q = p + 1; q < cols.size(); ++q) {
      const double scale = norm2(cols[p]) * norm2(cols[q]);
      if (scale > 0.0) worst = std::max(worst, std::abs(omega(cols[p], cols[q])) / scale);
    }
  }
  return worst;
}

double imOmega_residual(const TangentFrame& frame) {
  const auto cols = frame_vectors(frame);
  double scale = 1.0;
  for (const auto& c : cols) scale *= norm2(c);
  if (scale == 0.0) return 0.0;
  return std::abs(std::imag(complex_determinant(cols))) / scale;
}

int frame_rank(const TangentFrame& frame, double rel_tol) {
  const auto cols = frame_vectors(frame);
  const int n = static_cast<int>(cols.size());
  Eigen::MatrixXd m(2 * n, n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      m(r, c) = cols[c][r].real();
      m(n + r, c) = cols[c][r].imag();
    }
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(rel_tol);
  return static_cast<int>(qr.rank());
}

cplx complex_determinant(const std::vector<CVector>& columns) {
  const std::size_t n = columns.size();
  // a[r][c], copied so we can eliminate in place
  std::vector<CVector> a(n, CVector(n));
  for (std::size_t c = 0; c < n; ++c) {
    if (columns[c].size() != n) throw Error(ErrorCode::InvalidArgument, "determinant of non-square matrix");
    for (std::size_t r = 0; r < n; ++r) a[r][c] = columns[c][r];
  }
  cplx det(1.0, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(a[r][k]) > std::abs(a[pivot][k])) pivot = r;
    }
    if (a[pivot][k] == cplx(0.0, 0.0)) return {0.0, 0.0};
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t r = k + 1; r < n; ++r) {
      const cplx factor = a[r][k] / a[k][k];
      for (std::size_t c = k + 1; c < n; ++c) a[r][c] -= factor * a[k][c];
    }
  }
  return det;
}

CrossProductVector cross_product_det(const std::vector<CVector>& vectors) {
  const std::size_t n = vectors.size() + 1;
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error(ErrorCode::InvalidArgument, "cross product needs n-1 vectors in C^n");
  }
  CrossProductVector out;
  out.components.resize(n);
  std::vector<CVector> cols = vectors;
  cols.emplace_back(n, cplx(0.0, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(cols.back().begin(), cols.back().end(), cplx(0.0, 0.0));
    cols.back()[j] = cplx(1.0, 0.0);
    out.components[j] = complex_determinant(cols);
  }
  return out;
}

CrossProductVector cross_product_closed_form(const ReductionParams& params,
                                             const TangentFrame& frame) {
  const int n = params.n();
  const auto a = params.a();
  const double w = frame.point.w;
  std::vector<double> radius(n - 1);
  double inv_sum = 0.0;
  double all = 1.0;
  for (int k = 0; k < n - 1; ++k) {
    const double r2 = w + a[k];
    if (r2 <= kZeroRadius) throw Error(ErrorCode::ZeroRadius, "closed form needs positive radii");
    radius[k] = std::sqrt(r2);
    inv_sum += 1.0 / r2;
    all *= radius[k];
  }

  const cplx ipow = i_pow(n - 2);
  const double theta = frame.theta;
  const cplx fiber_factor = -ipow * std::polar(1.0, (n - 2) * theta) * cplx(1.0, frame.jet.u_x);

  CrossProductVector out;
  out.components.resize(n);
  for (int j = 0; j < n - 1; ++j) {
    double others = 1.0;
    for (int k = 0; k < n - 1; ++k) {
      if (k != j) others *= radius[k];
    }
    out.components[j] = fiber_factor * others;
  }
  const cplx bracket(0.5 * frame.derivs.w_x * inv_sum, (n - 1) * frame.derivs.theta_x);
  out.components[n - 1] = ipow * std::polar(1.0, (n - 1) * theta) * all * bracket;
  return out;
}

DecompositionFit decomposition_check(const ReductionParams& params, const TangentFrame& frame) {
  const int n = params.n();
  std::vector<CVector> span_set = frame.w_phi;
  span_set.push_back(frame.wx);
  CVector normal = cross_product_det(span_set).components;
  for (cplx& c : normal) c = std::conj(c);
  span_set.push_back(normal);

  Eigen::MatrixXd m(2 * n, n);
  Eigen::VectorXd b(2 * n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      m(r, c) = span_set[c][r].real();
      m(n + r, c) = span_set[c][r].imag();
    }
  }
  for (int r = 0; r < n; ++r) {
    b(r) = frame.wy[r].real();
    b(n + r) = frame.wy[r].imag();
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-10);
  if (qr.rank() < n) {
    throw Error(ErrorCode::RankDeficient,
                "spanning set has rank " + std::to_string(qr.rank()) + " < " + std::to_string(n));
  }
  const Eigen::VectorXd coef = qr.solve(b);
  const double bnorm = b.norm();
  const double misfit = (m * coef - b).norm();

  DecompositionFit fit;
  fit.alpha.assign(coef.data(), coef.data() + (n - 2));
  fit.beta = coef(n - 2);
  fit.gamma = coef(n - 1);
  fit.residual = bnorm > 0.0 ? misfit / bnorm : misfit;
  fit.p_prime = frame.p_prime;
  return fit;
}

CalibrationReport verify_calibration(const ReductionParams& params, const ScalarField2D& u,
                                     const ScalarField2D& v, kernels::Exec exec) {
  if (!(u.domain() == v.domain())) throw Error(ErrorCode::DomainMismatch, "u and v grids differ");
  const GridDomain& d = u.domain();
  const int nx = d.nx();
  const int ny = d.ny();
  const int inner_x = nx - 2;
  const long long count = static_cast<long long>(inner_x) * (ny - 2);

  CalibrationReport report;
  report.points.resize(count);
  const bool parallel = exec == kernels::Exec::Parallel;

#pragma omp parallel for schedule(dynamic, 16) if (parallel)
  for (long long k = 0; k < count; ++k) {
    const int i = 1 + static_cast<int>(k % inner_x);
    const int j = 1 + static_cast<int>(k / inner_x);
    PointCheck& pc = report.points[k];
    pc.i = i;
    pc.j = j;
    pc.x = d.x(i);
    pc.y = d.y(j);
    const Jet jet{(u(i + 1, j) - u(i - 1, j)) / (2.0 * d.hx()),
                  (u(i, j + 1) - u(i, j - 1)) / (2.0 * d.hy()),
                  (v(i + 1, j) - v(i - 1, j)) / (2.0 * d.hx()),
                  (v(i, j + 1) - v(i, j - 1)) / (2.0 * d.hy())};
    try {
      const TangentFrame frame = tangent_frame(params, BasePoint{pc.x, pc.y, u(i, j), v(i, j)}, jet);
      pc.omega = omega_residual(frame);
      pc.im_omega = imOmega_residual(frame);
      const DecompositionFit fit = decomposition_check(params, frame);
      pc.gamma = fit.gamma;
      pc.gamma_law = fit.gamma * fit.p_prime;
      pc.fit_residual = fit.residual;
      pc.evaluated = true;
    } catch (const Error&) {
      pc.evaluated = false;
    }
  }

  auto track = [](Maximum& m, double value, const PointCheck& pc) {
    if (value > m.value || m.i < 0) m = {value, pc.i, pc.j};
  };
  for (const PointCheck& pc : report.points) {
    if (!pc.evaluated) {
      ++report.skipped;
      continue;
    }
    track(report.omega, pc.omega, pc);
    track(report.im_omega, pc.im_omega, pc);
    track(report.fit_residual, pc.fit_residual, pc);
  }
  return report;
}

}  // namespace slag
