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

#include "stablehusbands/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace sh::bounds {
namespace {

constexpr std::uint64_t kDirectLimit = 1'000'000;
constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

namespace detail {

double rising_log_direct(std::uint64_t m, double z) {
  if (m == 0) return 0.0;
  if (z == 0.0) return -kInf;
  // ln z, then ln((k - 1 + z) / k) = log1p((z - 1) / k); Neumaier summation.
  double sum = std::log(z);
  double carry = 0.0;
  for (std::uint64_t k = 2; k <= m; ++k) {
    const double term = std::log1p((z - 1.0) / static_cast<double>(k));
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      carry += (sum - t) + term;
    } else {
      carry += (term - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

double rising_log_gamma(std::uint64_t m, double z) {
  if (m == 0) return 0.0;
  if (z == 0.0) return -kInf;
  const auto md = static_cast<double>(m);
  return std::lgamma(md + z) - std::lgamma(z) - std::lgamma(md + 1.0);
}

}  // namespace detail

double eval_log(const Pgf& pgf, double z) {
  if (!(z >= 0.0)) throw std::domain_error("pgf evaluated at negative z");
  return std::visit(
      Overloaded{
          [z](const BinomialPower& p) {
            if (p.n == 0) throw std::domain_error("binomial pgf needs n >= 1");
            if (p.trials == 0) return 0.0;
            if (p.n == 1) return static_cast<double>(p.trials) * std::log(z);
            return static_cast<double>(p.trials) *
                   std::log1p((z - 1.0) / static_cast<double>(p.n));
          },
          [z](const RisingProduct& p) {
            return p.m <= kDirectLimit ? detail::rising_log_direct(p.m, z)
                                       : detail::rising_log_gamma(p.m, z);
          },
      },
      pgf);
}

double mean(const Pgf& pgf) {
  return std::visit(
      Overloaded{
          [](const BinomialPower& p) {
            return static_cast<double>(p.trials) / static_cast<double>(p.n);
          },
          [](const RisingProduct& p) { return harmonic(p.m); },
      },
      pgf);
}

TailBound tail_bound(const Pgf& pgf, Tail direction, double r, double x) {
  const bool legal = direction == Tail::lower ? (x > 0.0 && x <= 1.0) : x >= 1.0;
  if (!legal) {
    throw std::domain_error(direction == Tail::lower
                                ? "lower tail bound needs 0 < x <= 1"
                                : "upper tail bound needs x >= 1");
  }
  const double log_value = eval_log(pgf, x) - r * std::log(x);
  return {direction, r, x, std::min(1.0, std::exp(log_value))};
}

TailBound optimize_tail(const Pgf& pgf, Tail direction, double r) {
  // Work in s = ln x: s <= 0 for the lower tail, s >= 0 for the upper.
  const double sign = direction == Tail::lower ? -1.0 : 1.0;
  constexpr double kReach = 700.0;
  auto objective = [&](double s) { return eval_log(pgf, std::exp(sign * s)) - r * sign * s; };

  double best_s = 0.0;
  double best_f = objective(0.0);
  auto probe = [&](double s) {
    const double f = objective(s);
    if (f < best_f) {
      best_f = f;
      best_s = s;
    }
    return f;
  };

  // Geometric bracket growth; the objective is convex, so the first rise
  // brackets the minimum together with the probe two steps back.
  double lo = 0.0;
  double prev = 0.0;
  double prev_f = best_f;
  double hi = 1.0 / 64.0;
  for (;;) {
    const double f = probe(hi);
    if (f > prev_f || hi >= kReach) break;
    lo = prev;
    prev = hi;
    prev_f = f;
    hi = std::min(hi * 2.0, kReach);
  }

  // Golden section on [lo, hi] until x is pinned to 1e-8.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = probe(c);
  double fd = probe(d);
  auto width = [&] {
    return std::abs(std::exp(sign * b) - std::exp(sign * a));
  };
  for (int iter = 0; iter < 400 && width() > 1e-8 * std::max(1.0, std::exp(sign * a)); ++iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = probe(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = probe(d);
    }
  }

  const double x = std::exp(sign * best_s);
  return {direction, r, x, std::min(1.0, std::exp(best_f))};
}

double harmonic(std::uint64_t m) {
  if (m <= kDirectLimit) {
    double sum = 0.0;
    for (std::uint64_t k = m; k >= 1; --k) sum += 1.0 / static_cast<double>(k);
    return sum;
  }
  const auto md = static_cast<double>(m);
  return std::log(md) + std::numbers::egamma + 1.0 / (2.0 * md) -
         1.0 / (12.0 * md * md);
}

double harmonic2(std::uint64_t m) {
  if (m <= kDirectLimit) {
    double sum = 0.0;
    for (std::uint64_t k = m; k >= 1; --k) {
      const auto kd = static_cast<double>(k);
      sum += 1.0 / (kd * kd);
    }
    return sum;
  }
  const auto md = static_cast<double>(m);
  return std::numbers::pi * std::numbers::pi / 6.0 - 1.0 / md +
         1.0 / (2.0 * md * md) - 1.0 / (6.0 * md * md * md);
}

Envelope theorem_envelope(double n, double c, double big_c, double delta,
                          double epsilon) {
  if (!(n >= 1.0)) throw std::invalid_argument("envelope: n must be at least 1");
  if (!(c > 0.0 && c < 0.5))
    throw std::invalid_argument("envelope: c must satisfy 0 < c < 1/2");
  if (!(big_c > 1.0)) throw std::invalid_argument("envelope: C must exceed 1");
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("envelope: delta must satisfy 0 < delta < 1/2");
  if (!(epsilon > 0.0)) throw std::invalid_argument("envelope: epsilon must be positive");
  if (!((1.0 - epsilon) * delta > c))
    throw std::invalid_argument("envelope: (1 - epsilon) * delta must exceed c");
  if (!(1.0 + epsilon < big_c))
    throw std::invalid_argument("envelope: 1 + epsilon must be below C");

  Envelope e{};
  e.n = n;
  e.c = c;
  e.big_c = big_c;
  e.delta = delta;
  e.epsilon = epsilon;
  const double ln = std::log(n);
  const double lnln = n > std::numbers::e ? std::log(ln) : 0.0;
  e.lower = c * ln;
  e.upper = big_c * ln;
  e.strict_lower = (0.5 - epsilon) * ln;
  e.strict_upper = (1.0 + epsilon) * ln;
  e.nonredundant_floor = ln > 0.0 ? 0.5 * std::pow(n, delta) / ln : kInf;
  e.coupon_window = static_cast<std::uint64_t>(std::floor(n * ln * lnln));
  const double rounded = std::round(n);
  e.coupon_mean = rounded == n ? n * harmonic(static_cast<std::uint64_t>(n))
                               : n * (ln + std::numbers::egamma + 0.5 / n);
  e.pre_output_proposals = ln * lnln * lnln;
  if (e.pre_output_proposals > 1.0) {
    const double lm = std::log(e.pre_output_proposals);
    e.pre_output_acceptance_ceiling = e.pre_output_proposals / (lm * lm * lm);
  }
  const double dc = big_c - 1.0;
  e.gamma = std::min((1.0 - 2.0 * c) * (1.0 - 2.0 * c) / 2.0,
                     dc * dc / 2.0 - dc * dc * dc / 6.0);
  return e;
}

}  // namespace sh::bounds
