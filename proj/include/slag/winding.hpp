#pragma once

#include <array>
#include <functional>
#include <vector>

#include "slag/grid.hpp"

namespace slag {

using Vec2 = std::array<double, 2>;

/// Closed polyline (closure implicit) and the planar map sampled on it.
struct LoopTrace {
  std::vector<Vec2> points;
  std::vector<Vec2> values;
};

struct WindingResult {
  int winding = 0;
  double raw = 0.0;                 ///< (1/2pi) sum of angle increments before rounding
  std::vector<double> cumulative;   ///< running angle after each sample, radians
};

/// Sum of principal-value angle increments over 2 pi, rounded.
/// Throws ZeroOnLoop, UnderSampled, NonIntegerWinding.
WindingResult winding_trace(const LoopTrace& trace);

inline int winding_number(const LoopTrace& trace) { return winding_trace(trace).winding; }

/// Samples `fn` on the circle of the given center and radius, counterclockwise.
LoopTrace circle_trace(const std::function<Vec2(double, double)>& fn, Vec2 center, double radius,
                       int samples);

/// Loop trace of F = (u1 - u2, v1 - v2) on a circle, fields interpolated bilinearly.
/// Throws OutOfDomain, DomainMismatch, and ZeroOnLoop when |F| < 1e-12 times the
/// largest field magnitude.
LoopTrace difference_trace(const ScalarField2D& u1, const ScalarField2D& v1,
                           const ScalarField2D& u2, const ScalarField2D& v2, Vec2 center,
                           double radius, int samples);

/// Winding number of the difference map around `center`.
int multiplicity_at_zero(const ScalarField2D& u1, const ScalarField2D& v1,
                         const ScalarField2D& u2, const ScalarField2D& v2, Vec2 center,
                         double radius, int samples);

}  // namespace slag
