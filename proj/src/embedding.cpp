#include "slag/embedding.hpp"

#include <cmath>
#include <numbers>

#include "slag/error.hpp"

namespace slag {

cplx i_pow(int k) noexcept {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

double theta_total(const ReductionParams& params, double v, double y) {
  if (v == 0.0 && y == 0.0) throw Error(ErrorCode::SingularPoint, "theta_total at v = y = 0");
  // multiply (v + iy) by i^{3-n} as an exact quarter-turn rotation
  double re = v;
  double im = y;
  const int turns = (((3 - params.n()) % 4) + 4) % 4;
  for (int t = 0; t < turns; ++t) {
    const double tmp = re;
    re = -im;
    im = tmp;
  }
  const double theta = std::atan2(im + 0.0, re + 0.0);
  return theta <= -std::numbers::pi ? std::numbers::pi : theta;
}

EmbeddedSample lift_point(const ReductionParams& params, const BasePoint& base,
                          std::span<const double> torus_angles) {
  const int n = params.n();
  if (static_cast<int>(torus_angles.size()) != n - 2) {
    throw Error(ErrorCode::InvalidArgument, "expected n-2 torus angles");
  }
  const bool at_origin = base.v == 0.0 && base.y == 0.0;
  if (at_origin && !params.nonsingular()) {
    throw Error(ErrorCode::SingularPoint, "v = y = 0 with min(a_j) of multiplicity > 1");
  }

  const BranchState branch = solve_branch(params, base.v * base.v + base.y * base.y);
  const double theta = at_origin ? 0.0 : theta_total(params, base.v, base.y);

  EmbeddedSample sample;
  sample.base = base;
  sample.w = branch.w;
  sample.theta_total = theta;
  sample.torus_angles.assign(torus_angles.begin(), torus_angles.end());
  sample.z.resize(n);

  const auto a = params.a();
  double last_phase = theta;
  for (int j = 0; j < n - 1; ++j) {
    const double phase = j < n - 2 ? torus_angles[j] : last_phase;
    if (j < n - 2) last_phase -= phase;
    const double radius = std::sqrt(std::max(0.0, branch.w + a[j]));
    sample.z[j] = std::polar(radius, phase);
  }
  sample.z[n - 1] = cplx(base.x, base.u);
  return sample;
}

std::vector<double> moment_residual(const ReductionParams& params, const EmbeddedSample& sample) {
  const int n = params.n();
  const auto a = params.a();
  const double last = std::norm(sample.z[n - 2]);
  std::vector<double> out(n - 2);
  for (int j = 0; j < n - 2; ++j) {
    out[j] = (std::norm(sample.z[j]) - last) - (a[j] - a[n - 2]);
  }
  return out;
}

SurfaceSamples sample_surface(const ReductionParams& params, const ScalarField2D& u,
                              const ScalarField2D& v, int torus_resolution) {
  if (torus_resolution < 1) throw Error(ErrorCode::InvalidArgument, "torus resolution must be >= 1");
  if (!(u.domain() == v.domain())) throw Error(ErrorCode::DomainMismatch, "u and v grids differ");

  const GridDomain& d = u.domain();
  const int n = params.n();
  std::size_t per_node = 1;
  for (int k = 0; k < n - 2; ++k) per_node *= static_cast<std::size_t>(torus_resolution);

  std::vector<std::vector<double>> angle_tuples(per_node, std::vector<double>(n - 2));
  for (std::size_t m = 0; m < per_node; ++m) {
    std::size_t rest = m;
    for (int k = 0; k < n - 2; ++k) {
      angle_tuples[m][k] = 2.0 * std::numbers::pi * static_cast<double>(rest % torus_resolution) /
                           torus_resolution;
      rest /= torus_resolution;
    }
  }

  const long long nodes = static_cast<long long>(d.size());
  std::vector<std::vector<EmbeddedSample>> by_node(nodes);
  std::vector<char> skipped(nodes, 0);
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < nodes; ++k) {
    const int i = static_cast<int>(k % d.nx());
    const int j = static_cast<int>(k / d.nx());
    const BasePoint base{d.x(i), d.y(j), u(i, j), v(i, j)};
    if (base.v == 0.0 && base.y == 0.0 && !params.nonsingular()) {
      skipped[k] = 1;
      continue;
    }
    by_node[k].reserve(per_node);
    for (const auto& angles : angle_tuples) by_node[k].push_back(lift_point(params, base, angles));
  }

  SurfaceSamples out;
  out.samples.reserve(static_cast<std::size_t>(nodes) * per_node);
  for (long long k = 0; k < nodes; ++k) {
    if (skipped[k]) {
      const int i = static_cast<int>(k % d.nx());
      const int j = static_cast<int>(k / d.nx());
      out.skipped.push_back({i, j, d.x(i), d.y(j), "singular orbit (v = y = 0)"});
      continue;
    }
    for (auto& s : by_node[k]) out.samples.push_back(std::move(s));
  }
  return out;
}

}  // namespace slag
