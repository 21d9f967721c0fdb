// Copyright 2026 The stablehusbands Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stablehusbands/bounds.hpp"
#include "support/exact.hpp"

using namespace sh::bounds;
using sh::testing::acceptance_pmf;
using sh::testing::binomial_pmf;
using sh::testing::lower_tail;
using sh::testing::upper_tail;

namespace {

std::string envelope_error(double n, double c, double big_c, double delta, double eps) {
  try {
    theorem_envelope(n, c, big_c, delta, eps);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

// 50 evaluation points on each legal half-line.
std::vector<double> grid(Tail t) {
  std::vector<double> xs;
  for (int i = 1; i <= 50; ++i) {
    xs.push_back(t == Tail::lower ? i / 50.0 : std::pow(1.1, i - 1));
  }
  return xs;
}

}  // namespace

TEST_CASE("pgfs are normalized") {
  CHECK(eval_log(BinomialPower{7, 30}, 1.0) == 0.0);
  CHECK(eval_log(RisingProduct{4}, 1.0) == doctest::Approx(0.0));
  CHECK(eval_log(RisingProduct{0}, 0.3) == 0.0);
}

TEST_CASE("closed forms at small sizes") {
  CHECK(eval_log(RisingProduct{3}, 2.0) == doctest::Approx(std::log(4.0)));
  // (n - 1 + z) / n with n = 2, z = 3, squared.
  CHECK(eval_log(BinomialPower{2, 2}, 3.0) == doctest::Approx(2 * std::log(2.0)));
  CHECK(eval_log(RisingProduct{5}, 0.0) == -INFINITY);
  CHECK(eval_log(BinomialPower{1, 3}, 0.0) == -INFINITY);
  CHECK_THROWS_AS(eval_log(RisingProduct{5}, -0.1), std::domain_error);
  CHECK_THROWS_AS(eval_log(BinomialPower{0, 3}, 0.5), std::domain_error);
}

TEST_CASE("rising product: direct and gamma routes agree") {
  for (std::uint64_t m : {1ULL, 2ULL, 10ULL, 1000ULL, 100000ULL}) {
    for (double z : {0.05, 0.5, 1.0, 1.7, 3.0, 10.0}) {
      CAPTURE(m);
      CAPTURE(z);
      const double a = detail::rising_log_direct(m, z);
      const double b = detail::rising_log_gamma(m, z);
      CHECK(a == doctest::Approx(b).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("pgfs match the exact distributions") {
  const auto binom = binomial_pmf(25, 1.0 / 6);
  const auto accept = acceptance_pmf(40);
  for (double z : {0.2, 0.9, 1.3, 2.5}) {
    double b = 0, a = 0;
    for (std::size_t k = 0; k < binom.size(); ++k) b += binom[k] * std::pow(z, k);
    for (std::size_t k = 0; k < accept.size(); ++k) a += accept[k] * std::pow(z, k);
    CHECK(std::exp(eval_log(BinomialPower{6, 25}, z)) == doctest::Approx(b));
    CHECK(std::exp(eval_log(RisingProduct{40}, z)) == doctest::Approx(a));
  }
}

TEST_CASE("pgfs increase in z") {
  double last_b = -INFINITY, last_r = -INFINITY;
  for (double z = 0.01; z < 5; z += 0.07) {
    const double b = eval_log(BinomialPower{9, 40}, z);
    const double r = eval_log(RisingProduct{40}, z);
    CHECK(b > last_b);
    CHECK(r > last_r);
    last_b = b;
    last_r = r;
  }
}

TEST_CASE("means") {
  CHECK(mean(BinomialPower{8, 40}) == doctest::Approx(5.0));
  for (std::uint64_t m : {1ULL, 7ULL, 10000ULL}) {
    CHECK(mean(RisingProduct{m}) == doctest::Approx(sh::testing::harmonic_direct(m)));
    // P'(1) from a central difference of P = exp(eval_log).
    const double h = 1e-5;
    const double diff = (std::exp(eval_log(RisingProduct{m}, 1 + h)) -
                         std::exp(eval_log(RisingProduct{m}, 1 - h))) /
                        (2 * h);
    CHECK(diff == doctest::Approx(sh::testing::harmonic_direct(m)).epsilon(1e-4));
  }
}

TEST_CASE("bounds are never below the exact tails") {
  struct Case {
    Pgf pgf;
    std::vector<double> pmf;
  };
  const std::vector<Case> cases{
      {BinomialPower{5, 20}, binomial_pmf(20, 0.2)},
      {BinomialPower{30, 90}, binomial_pmf(90, 1.0 / 30)},
      {RisingProduct{60}, acceptance_pmf(60)},
  };
  for (const auto& c : cases) {
    for (std::size_t r = 0; r < c.pmf.size(); ++r) {
      const double rd = static_cast<double>(r);
      const double lo = lower_tail(c.pmf, rd);
      const double hi = upper_tail(c.pmf, rd);
      CHECK(optimize_tail(c.pgf, Tail::lower, rd).value >= lo * (1 - 1e-12));
      CHECK(optimize_tail(c.pgf, Tail::upper, rd).value >= hi * (1 - 1e-12));
      for (double x : grid(Tail::lower)) CHECK(tail_bound(c.pgf, Tail::lower, rd, x).value >= lo * (1 - 1e-12));
      for (double x : grid(Tail::upper)) CHECK(tail_bound(c.pgf, Tail::upper, rd, x).value >= hi * (1 - 1e-12));
    }
  }
}

TEST_CASE("tail_bound at fixed points") {
  // Lower tail of Binomial(2rn, 1/n) at x = 1/2: 2^r (1 - 1/(2n))^(2rn),
  // itself below (2/e)^r.
  for (std::uint64_t n : {2ULL, 10ULL, 1000ULL}) {
    for (double r : {1.0, 3.0, 8.0}) {
      const auto trials = static_cast<std::uint64_t>(2 * r * n);
      const auto b = tail_bound(BinomialPower{n, trials}, Tail::lower, r, 0.5);
      const double expected =
          std::pow(2.0, r) * std::pow(1 - 1.0 / (2.0 * n), static_cast<double>(trials));
      CHECK(b.value == doctest::Approx(expected));
      CHECK(b.value <= std::pow(2.0 / std::numbers::e, r));
    }
  }
  CHECK(tail_bound(RisingProduct{100}, Tail::upper, 3, 1.0).value == 1.0);
  CHECK(tail_bound(RisingProduct{100}, Tail::lower, 3, 1.0).value == 1.0);
  CHECK_THROWS_AS(tail_bound(RisingProduct{100}, Tail::upper, 3, 0.5), std::domain_error);
  CHECK_THROWS_AS(tail_bound(RisingProduct{100}, Tail::lower, 3, 1.5), std::domain_error);
  CHECK_THROWS_AS(tail_bound(RisingProduct{100}, Tail::lower, 3, 0.0), std::domain_error);
}

TEST_CASE("optimized bounds") {
  // Binomial(10, 1/2): Pr(X >= 8) = 56/1024.
  const auto b = optimize_tail(BinomialPower{2, 10}, Tail::upper, 8);
  CHECK(b.value >= 56.0 / 1024);
  CHECK(b.value < 0.2);
  CHECK(b.x > 1);
  CHECK(b.value <= tail_bound(BinomialPower{2, 10}, Tail::upper, 8, 2.0).value);

  // Below the mean the upper tail bound cannot beat 1, and x = 1 is chosen.
  const auto markov = optimize_tail(RisingProduct{1000}, Tail::upper, 3);
  CHECK(markov.value == 1.0);
  CHECK(markov.x == doctest::Approx(1.0));

  for (double r : {10.0, 20.0, 30.0}) {
    const auto best = optimize_tail(RisingProduct{100000}, Tail::upper, r);
    for (double x : grid(Tail::upper))
      CHECK(best.value <= tail_bound(RisingProduct{100000}, Tail::upper, r, x).value * (1 + 1e-9));
  }
}

TEST_CASE("lower tail of acceptances decays polynomially in m") {
  // At x = 1 - eps the bound behaves like m^(-(1-eps) ln(1-eps) - eps) /
  // Gamma(1 - eps), which for eps = 1/2 is m^-0.1534 and sits below the
  // m^(-eps^2/2) = m^-0.125 rate.
  constexpr double eps = 0.5;
  const double exact = -(1 - eps) * std::log(1 - eps) - eps;
  auto bound = [&](double m) {
    return tail_bound(RisingProduct{static_cast<std::uint64_t>(m)}, Tail::lower,
                      (1 - eps) * std::log(m), 1 - eps)
        .value;
  };
  const double slope = (std::log(bound(1e9)) - std::log(bound(1e6))) / std::log(1e3);
  CHECK(slope == doctest::Approx(exact).epsilon(0.1));
  CHECK(slope <= -eps * eps / 2);

  const double m = 1e6;
  const double optimized =
      optimize_tail(RisingProduct{1000000}, Tail::lower, (1 - eps) * std::log(m)).value;
  CHECK(optimized <= std::pow(m, -eps * eps / 2) / std::tgamma(1 - eps));
  CHECK(optimized <= bound(m));
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(1) == 1.0);
  CHECK(harmonic(4) == doctest::Approx(25.0 / 12));
  CHECK(harmonic(10000) == doctest::Approx(9.787606036044382).epsilon(1e-13));
  CHECK(harmonic(2000000) ==
        doctest::Approx(sh::testing::harmonic_direct(2000000)).epsilon(1e-12));
  CHECK(harmonic2(3) == doctest::Approx(1 + 0.25 + 1.0 / 9));
  CHECK(harmonic2(5000000) ==
        doctest::Approx(std::numbers::pi * std::numbers::pi / 6 - 1.0 / 5000000).epsilon(1e-12));
}

TEST_CASE("envelope values") {
  const auto e = theorem_envelope(1024, 0.4, 1.5, 0.45, 0.05);
  CHECK(e.lower == doctest::Approx(2.772588722239781));
  CHECK(e.upper == doctest::Approx(10.397207708399179));
  CHECK(e.strict_lower == doctest::Approx(0.45 * std::log(1024.0)));
  CHECK(e.strict_upper == doctest::Approx(1.05 * std::log(1024.0)));
  CHECK(e.coupon_mean == doctest::Approx(1024 * sh::testing::harmonic_direct(1024)));
  CHECK(e.gamma > 0);

  const auto thousand = theorem_envelope(1000, 0.3, 2.0, 0.45, 0.05);
  const double ln = std::log(1000.0);
  CHECK(thousand.coupon_window == static_cast<std::uint64_t>(1000 * ln * std::log(ln)));
  CHECK(thousand.coupon_window == 13350);
}

TEST_CASE("envelope parameter checks") {
  CHECK(envelope_error(0.5, 0.3, 2, 0.45, 0.05).find("n must") != std::string::npos);
  CHECK(envelope_error(64, 0.5, 2, 0.45, 0.05).find("c must") != std::string::npos);
  CHECK(envelope_error(64, 0.3, 1, 0.45, 0.05).find("C must") != std::string::npos);
  CHECK(envelope_error(64, 0.3, 2, 0.5, 0.05).find("delta must") != std::string::npos);
  CHECK(envelope_error(64, 0.3, 2, 0.45, 0).find("epsilon must") != std::string::npos);
  CHECK(envelope_error(64, 0.45, 2, 0.45, 0.05).find("(1 - epsilon) * delta") !=
        std::string::npos);
  CHECK(envelope_error(64, 0.3, 1.04, 0.45, 0.05).find("1 + epsilon") != std::string::npos);
  CHECK(envelope_error(64, 0.3, 2, 0.45, 0.05).empty());
}
