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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

namespace sh::bounds {

/// ((n - 1 + z) / n)^N: successes in N Bernoulli(1/n) trials.
struct BinomialPower {
  std::uint64_t n;
  std::uint64_t trials;
};

/// prod_{k=1..m} (k - 1 + z) / k: acceptances by a girl who accepts her
/// k-th proposal with probability 1/k, out of m proposals.
struct RisingProduct {
  std::uint64_t m;
};

/// A probability generating function in closed form.
using Pgf = std::variant<BinomialPower, RisingProduct>;

/// ln P(z), or -inf when P(z) = 0. Throws std::domain_error for z < 0.
double eval_log(const Pgf& pgf, double z);

/// P'(1), the mean.
double mean(const Pgf& pgf);

enum class Tail { lower, upper };

/// Pr(X <= r) for the lower tail, Pr(X >= r) for the upper tail, bounded by
/// x^-r P(x) with 0 < x <= 1 (lower) or x >= 1 (upper).
struct TailBound {
  Tail direction;
  double r;
  double x;
  double value;
};

/// min(1, x^-r P(x)). Throws std::domain_error if x is outside the range
/// allowed for `direction`.
TailBound tail_bound(const Pgf& pgf, Tail direction, double r, double x);

/// Minimizes x^-r P(x) over the legal half-line. The objective is convex in
/// ln x, so a bracket is grown geometrically and then narrowed by golden
/// section; the best point probed anywhere is returned.
TailBound optimize_tail(const Pgf& pgf, Tail direction, double r);

/// H_m = 1 + 1/2 + ... + 1/m. Summed directly for m <= 10^6, asymptotic
/// expansion beyond.
double harmonic(std::uint64_t m);

/// 1 + 1/4 + ... + 1/m^2.
double harmonic2(std::uint64_t m);

/// Quantities that frame the main growth result at size n.
struct Envelope {
  double n;
  double c;
  double big_c;
  double delta;
  double epsilon;
  double lower;  // c ln n
  double upper;  // C ln n
  double strict_lower;  // (1/2 - eps) ln n
  double strict_upper;  // (1 + eps) ln n
  double nonredundant_floor;  // n^delta / (2 ln n)
  std::uint64_t coupon_window;  // floor(n ln n ln ln n)
  double coupon_mean;  // n H_n (expected time to the first output)
  double pre_output_proposals;  // m = ln n (ln ln n)^2
  /// m / (ln m)^3; absent when m <= 1 makes it meaningless.
  std::optional<double> pre_output_acceptance_ceiling;
  /// Exceptions happen with probability O(n^-gamma) for any gamma below this.
  double gamma;
};

/// Throws std::invalid_argument naming the first violated condition among
/// 0 < c < 1/2, C > 1, 0 < delta < 1/2, epsilon > 0, (1 - epsilon) delta > c,
/// 1 + epsilon < C, n >= 1.
Envelope theorem_envelope(double n, double c, double big_c, double delta,
                          double epsilon);

namespace detail {
// Two independent routes for the rising product, exposed for testing.
double rising_log_direct(std::uint64_t m, double z);
double rising_log_gamma(std::uint64_t m, double z);
}  // namespace detail

}  // namespace sh::bounds
