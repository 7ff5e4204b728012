#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "slag/error.hpp"
#include "slag/params.hpp"
#include "support.hpp"

using namespace slag;

TEST_CASE("constructor validates and derives w0 and multiplicity") {
  CHECK_THROWS_AS(ReductionParams({1.0}), Error);
  CHECK_THROWS_AS(ReductionParams({1.0, std::nan("")}), Error);
  CHECK_THROWS_AS(ReductionParams({1.0, std::numeric_limits<double>::infinity()}), Error);

  const ReductionParams p({1.0, -1.0});
  CHECK(p.n() == 3);
  CHECK(p.w0() == 1.0);
  CHECK(p.min_multiplicity() == 1);
  CHECK(p.nonsingular());

  const ReductionParams q({0.0, -0.0, 2.0});
  CHECK(q.n() == 4);
  CHECK(q.min_multiplicity() == 2);
  CHECK_FALSE(q.nonsingular());
  CHECK_FALSE(std::signbit(q.w0()));
}

TEST_CASE("P and P' agree with the expanded polynomial") {
  for (int trial = 0; trial < 50; ++trial) {
    const ReductionParams p = test::random_params(3 + trial % 4);
    const auto c = test::expanded_coefficients(p);
    for (int k = 0; k < 10; ++k) {
      const double w = test::uniform(-3.0, 5.0);
      const double expect = static_cast<double>(test::horner(c, w));
      CHECK(eval_P(p, w) == doctest::Approx(expect).epsilon(1e-12).scale(1.0));
      const double h = 1e-5;
      const double fd = (eval_P(p, w + h) - eval_P(p, w - h)) / (2 * h);
      CHECK(eval_Pprime(p, w) == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
    }
  }
}

TEST_CASE("small worked values") {
  const ReductionParams p({1.0, 0.0});  // P = w(w+1)
  CHECK(eval_P(p, 2.0) == 6.0);
  CHECK(eval_Pprime(p, 2.0) == 5.0);
  const ReductionParams q({1.0, 2.0, 3.0});
  CHECK(eval_P(q, 0.0) == 6.0);
  CHECK(eval_Pprime(q, 0.0) == 11.0);
}

TEST_CASE("branch inversion matches a long double bisection oracle") {
  for (int trial = 0; trial < 40; ++trial) {
    const ReductionParams p = test::random_params(3 + trial % 4);
    for (double s : {0.0, 1e-8, 1e-3, 0.5, 1.0, 7.0, 123.0, 1e4}) {
      const BranchState st = solve_branch(p, s);
      CHECK(st.s == s);
      CHECK(st.w >= p.w0());
      CHECK(std::abs(eval_P(p, st.w) - s) <= 1e-12 * (1 + s));
      const double oracle = static_cast<double>(test::bisect_branch(p, s));
      CHECK(st.w == doctest::Approx(oracle).epsilon(1e-9).scale(1.0));
      CHECK(st.p_prime_at_w == doctest::Approx(eval_Pprime(p, st.w)));
    }
  }
}

TEST_CASE("branch is monotone in s and starts at w0") {
  const ReductionParams p({2.5, -1.5, 0.25});
  CHECK(solve_branch(p, 0.0).w == p.w0());
  double prev = p.w0();
  for (int k = 1; k <= 200; ++k) {
    const double w = solve_branch(p, 0.05 * k * k).w;
    CHECK(w > prev);
    prev = w;
  }
  CHECK_THROWS_AS(solve_branch(p, -1e-3), Error);
  try {
    solve_branch(p, -1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NegativeS);
  }
}

TEST_CASE("branch sensitivity is 1/P' and refuses degenerate points") {
  const ReductionParams p({1.0, -1.0});
  for (double s : {0.3, 2.0, 40.0}) {
    const BranchState st = solve_branch(p, s);
    const double h = 1e-6 * (1 + s);
    const double fd = (solve_branch(p, s + h).w - solve_branch(p, s - h).w) / (2 * h);
    CHECK(branch_sensitivity(p, st) == doctest::Approx(fd).epsilon(1e-6));
  }
  const ReductionParams q({0.0, 0.0});  // double root at w0
  const BranchState st = solve_branch(q, 0.0);
  CHECK(st.p_prime_at_w == 0.0);
  try {
    branch_sensitivity(q, st);
    FAIL("expected DegenerateBranch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateBranch);
  }
}

TEST_CASE("coefficient F for the n = 3 symmetric case") {
  for (double a : {0.5, 1.0, 2.0}) {
    const ReductionParams p({a, -a});
    for (double s : {0.0, 0.1, 3.0, 99.0}) {
      CHECK(coefficient_F(p, s) == doctest::Approx(2 * std::sqrt(s + a * a)).epsilon(1e-13));
    }
  }
}
