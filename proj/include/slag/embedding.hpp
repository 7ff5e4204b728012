#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "slag/params.hpp"
#include "slag/pde.hpp"

namespace slag {

using cplx = std::complex<double>;

struct BasePoint {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double v = 0.0;
};

/// A point of N in C^n together with the reduced data it was lifted from.
struct EmbeddedSample {
  std::vector<cplx> z;
  BasePoint base;
  double w = 0.0;
  double theta_total = 0.0;          ///< sum of the n-1 phases of z_1..z_{n-1}
  std::vector<double> torus_angles;  ///< theta_1..theta_{n-2}
};

/// Theta in (-pi, pi] with e^{i Theta} = i^{3-n} (v + iy) / |v + iy|.
/// Throws SingularPoint at v = y = 0.
double theta_total(const ReductionParams& params, double v, double y);

/// i^k for any integer k, exact.
cplx i_pow(int k) noexcept;

/// z_j = sqrt(w + a_j) e^{i theta_j} for j < n-1 with theta_j the torus angles,
/// theta_{n-1} = Theta - sum theta_j, and z_n = x + iu.
EmbeddedSample lift_point(const ReductionParams& params, const BasePoint& base,
                          std::span<const double> torus_angles);

/// (|z_j|^2 - |z_{n-1}|^2) - (a_j - a_{n-1}) for j = 1..n-2.
std::vector<double> moment_residual(const ReductionParams& params, const EmbeddedSample& sample);

struct SkippedNode {
  int i = 0;
  int j = 0;
  double x = 0.0;
  double y = 0.0;
  std::string reason;
};

struct SurfaceSamples {
  std::vector<EmbeddedSample> samples;  ///< node-major, then torus multi-index (theta_1 fastest)
  std::vector<SkippedNode> skipped;
};

/// Lifts every grid node of a solution at torus_resolution^{n-2} angle tuples
/// theta_k = 2 pi m_k / torus_resolution. Singular nodes go to the skip report.
SurfaceSamples sample_surface(const ReductionParams& params, const ScalarField2D& u,
                              const ScalarField2D& v, int torus_resolution);

inline SurfaceSamples sample_surface(const ReductionParams& params, const PdeSolution& sol,
                                     int torus_resolution) {
  return sample_surface(params, sol.u, sol.v, torus_resolution);
}

}  // namespace slag
