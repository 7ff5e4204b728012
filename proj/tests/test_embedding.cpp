#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slag/embedding.hpp"
#include "slag/error.hpp"
#include "support.hpp"

using namespace slag;
using std::numbers::pi;

TEST_CASE("i_pow") {
  CHECK(i_pow(0) == cplx(1, 0));
  CHECK(i_pow(1) == cplx(0, 1));
  CHECK(i_pow(-1) == cplx(0, -1));
  CHECK(i_pow(6) == cplx(-1, 0));
  CHECK(i_pow(-7) == cplx(0, 1));
}

TEST_CASE("theta_total matches the argument of the rotated point") {
  for (int n = 3; n <= 6; ++n) {
    const ReductionParams p = test::random_params(n);
    for (int k = 0; k < 50; ++k) {
      const double v = test::uniform(-3, 3), y = test::uniform(-3, 3);
      const cplx rotated = std::pow(cplx(0, 1), 3 - n) * cplx(v, y);
      const double t = theta_total(p, v, y);
      CHECK(t > -pi);
      CHECK(t <= pi);
      CHECK(std::abs(std::exp(cplx(0, t)) - rotated / std::abs(rotated)) < 1e-13);
    }
  }
  CHECK(theta_total(ReductionParams({1, -1}), -1.0, 0.0) == pi);
  CHECK_THROWS_AS(theta_total(ReductionParams({1, -1}), 0.0, 0.0), Error);
}

TEST_CASE("lifted points satisfy the level-set and phase relations") {
  for (int n = 3; n <= 6; ++n) {
    const ReductionParams p = test::random_params(n);
    for (int k = 0; k < 30; ++k) {
      const BasePoint b{test::uniform(-2, 2), test::uniform(-2, 2), test::uniform(-2, 2), test::uniform(-2, 2)};
      std::vector<double> angles(n - 2);
      for (double& a : angles) a = test::uniform(-pi, pi);
      const EmbeddedSample s = lift_point(p, b, angles);
      REQUIRE(s.z.size() == static_cast<std::size_t>(n));
      cplx prod = 1;
      for (int j = 0; j < n - 1; ++j) {
        CHECK(std::norm(s.z[j]) == doctest::Approx(s.w + p.a()[j]).scale(1.0).epsilon(1e-12));
        prod *= s.z[j];
      }
      CHECK(s.z[n - 1] == cplx(b.x, b.u));
      // prod z_j = i^{3-n} (v + iy), the defining phase relation
      const cplx expect = std::pow(cplx(0, 1), 3 - n) * cplx(b.v, b.y);
      CHECK(std::abs(prod - expect) <= 1e-10 * (1 + std::abs(expect)));
      for (double r : moment_residual(p, s)) CHECK(std::abs(r) <= 1e-11 * (1 + s.w));
    }
  }
}

TEST_CASE("torus angles all zero give the equal-phase gauge for n = 3") {
  const ReductionParams p({1.0, -1.0});
  const BasePoint b{0.2, 0.7, -0.1, 0.4};
  const double angles[] = {0.0};
  const EmbeddedSample s = lift_point(p, b, angles);
  CHECK(std::arg(s.z[0]) == doctest::Approx(0.0));
  CHECK(std::arg(s.z[1]) == doctest::Approx(s.theta_total));
}

TEST_CASE("singular lift only for singular parameters") {
  const double angles[] = {0.3, 0.1};
  const ReductionParams nonsingular({1.0, 0.0, 2.0});
  const EmbeddedSample s = lift_point(nonsingular, {0.5, 0.0, 1.0, 0.0}, angles);
  CHECK(s.w == nonsingular.w0());
  const ReductionParams singular({0.0, 0.0, 2.0});
  CHECK_THROWS_AS(lift_point(singular, {0.5, 0.0, 1.0, 0.0}, angles), Error);
}

TEST_CASE("sample_surface order, counts and skip report") {
  const GridDomain d(-1, 1, -1, 1, 5, 5);
  const auto u = ScalarField2D::sample(d, [](double x, double) { return x; });
  const auto v = ScalarField2D::sample(d, [](double, double y) { return y; });

  const ReductionParams p({1.0, 0.0, 2.0});
  const SurfaceSamples all = sample_surface(p, u, v, 3);
  CHECK(all.skipped.empty());
  CHECK(all.samples.size() == 25u * 9u);
  CHECK(all.samples[1].torus_angles[0] == doctest::Approx(2 * pi / 3));
  CHECK(all.samples[1].torus_angles[1] == 0.0);
  CHECK(all.samples[3].torus_angles[1] == doctest::Approx(2 * pi / 3));
  CHECK(all.samples[9].base.x == doctest::Approx(d.x(1)));

  const ReductionParams q({0.0, 0.0, 2.0});
  const SurfaceSamples some = sample_surface(q, u, v, 2);
  // v = y = 0 on the row y = 0
  CHECK(some.skipped.size() == 5u);
  CHECK(some.samples.size() == 20u * 4u);
}
