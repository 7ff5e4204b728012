#include "slag/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slag/error.hpp"

namespace slag {

namespace {

constexpr double kZeroFraction = 1e-12;

void check_nonvanishing(const std::vector<Vec2>& values, double scale) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double mag = std::hypot(values[k][0], values[k][1]);
    if (!std::isfinite(mag)) {
      throw Error(ErrorCode::InvalidArgument, "non-finite map value at loop sample " + std::to_string(k));
    }
    if (mag == 0.0 || mag < kZeroFraction * scale) {
      throw Error(ErrorCode::ZeroOnLoop, "map vanishes at loop sample " + std::to_string(k));
    }
  }
}

}  // namespace

WindingResult winding_trace(const LoopTrace& trace) {
  const std::size_t m = trace.values.size();
  if (trace.points.size() != m) throw Error(ErrorCode::InvalidArgument, "points/values length mismatch");
  if (m < 8) throw Error(ErrorCode::UnderSampled, "a loop needs at least 8 samples");

  double scale = 0.0;
  for (const Vec2& v : trace.values) scale = std::max(scale, std::hypot(v[0], v[1]));
  check_nonvanishing(trace.values, scale);

  WindingResult result;
  result.cumulative.reserve(m);
  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2& a = trace.values[k];
    const Vec2& b = trace.values[(k + 1) % m];
    // signed angle from a to b in (-pi, pi]
    const double step = std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
    if (std::abs(step) >= std::numbers::pi - 1e-9) {
      throw Error(ErrorCode::UnderSampled, "angle increment near pi at sample " + std::to_string(k));
    }
    total += step;
    result.cumulative.push_back(total);
  }
  result.raw = total / (2.0 * std::numbers::pi);
  const double nearest = std::round(result.raw);
  if (!(std::abs(result.raw - nearest) <= 1e-6)) {
    throw Error(ErrorCode::NonIntegerWinding, "winding sum " + std::to_string(result.raw));
  }
  result.winding = static_cast<int>(nearest);
  return result;
}

LoopTrace circle_trace(const std::function<Vec2(double, double)>& fn, Vec2 center, double radius,
                       int samples) {
  LoopTrace trace;
  trace.points.reserve(samples);
  trace.values.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * std::numbers::pi * k / samples;
    const Vec2 p{center[0] + radius * std::cos(t), center[1] + radius * std::sin(t)};
    trace.points.push_back(p);
    trace.values.push_back(fn(p[0], p[1]));
  }
  return trace;
}

LoopTrace difference_trace(const ScalarField2D& u1, const ScalarField2D& v1,
                           const ScalarField2D& u2, const ScalarField2D& v2, Vec2 center,
                           double radius, int samples) {
  const GridDomain& d = u1.domain();
  if (!(v1.domain() == d && u2.domain() == d && v2.domain() == d)) {
    throw Error(ErrorCode::DomainMismatch, "difference map needs four fields on one grid");
  }
  if (!(radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "loop radius must be positive");
  if (center[0] - radius < d.x0() || center[0] + radius > d.x1() || center[1] - radius < d.y0() ||
      center[1] + radius > d.y1()) {
    throw Error(ErrorCode::OutOfDomain, "loop leaves the grid");
  }
  const double scale = std::max({u1.max_abs(), v1.max_abs(), u2.max_abs(), v2.max_abs()});
  LoopTrace trace = circle_trace(
      [&](double x, double y) {
        return Vec2{interpolate_bilinear(u1, x, y) - interpolate_bilinear(u2, x, y),
                    interpolate_bilinear(v1, x, y) - interpolate_bilinear(v2, x, y)};
      },
      center, radius, samples);
  check_nonvanishing(trace.values, scale);
  return trace;
}

int multiplicity_at_zero(const ScalarField2D& u1, const ScalarField2D& v1,
                         const ScalarField2D& u2, const ScalarField2D& v2, Vec2 center,
                         double radius, int samples) {
  return winding_number(difference_trace(u1, v1, u2, v2, center, radius, samples));
}

}  // namespace slag
