// Copyright 2026 The gfp Authors
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

#include "gfp/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

namespace gfp::numerics {
namespace {

constexpr double kLnSqrtTwoPi = 0.91893853320467274178;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993227684700473478,  676.520368121885098567009190444019,
    -1259.13921672240287047156078755283, 771.3234287776530788486528258894,
    -176.61502916214059906584551354,     12.507343278686904814458936853,
    -0.13857109526572011689554707,       9.984369578019570859563e-6,
    1.50563273514931155834e-7};

// ln Gamma(n + 1) - [(n + 1/2) ln n - n + ln sqrt(2 pi)] for n = 1..15.
constexpr std::array<double, 16> kStirlingError = {
    0.0,
    0.08106146679532725822,
    0.041340695955409294094,
    0.027677925684998339149,
    0.020790672103765093112,
    0.016644691189821192163,
    0.013876128823070747999,
    0.011896709945891770095,
    0.010411265261972096497,
    0.0092554621827127329177,
    0.0083305634333628712565,
    0.007573675487951840795,
    0.0069428401072095298657,
    0.0064089941880042070684,
    0.0059513701127588477356,
    0.005554733551962801371,
};

double stirling_error(double n) {
  if (n < static_cast<double>(kStirlingError.size())) {
    return kStirlingError[static_cast<std::size_t>(n)];
  }
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  return inv *
         (1.0 / 12.0 -
          inv2 * (1.0 / 360.0 -
                  inv2 * (1.0 / 1260.0 -
                          inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0)))));
}

constexpr std::size_t kFactorialTableSize = 1 << 16;

const std::vector<double>& factorial_table() {
  static const std::vector<double> table = [] {
    std::vector<double> t(kFactorialTableSize);
    t[0] = 0.0;
    for (std::size_t n = 1; n < t.size(); ++n) {
      t[n] = ln_gamma(static_cast<double>(n) + 1.0);
    }
    return t;
  }();
  return table;
}

}  // namespace

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError(fmt::format("ln_gamma: argument must be > 0, got {}", x));
  }
  if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
  const double z = x - 1.0;
  double series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    series += kLanczos[i] / (z + static_cast<double>(i));
  }
  const double t = z + kLanczosG + 0.5;
  // (z + 1/2) ln t - t, rearranged to keep the large terms from cancelling.
  return kLnSqrtTwoPi + (z + 0.5) * (std::log(t) - 1.0) - kLanczosG +
         std::log(series);
}

namespace {

// ln Gamma(z) - [(z - 1/2) ln z - z + ln sqrt(2 pi)], z >= 10.
double stirling_correction(double z) {
  const double inv = 1.0 / z;
  const double inv2 = inv * inv;
  return inv *
         (1.0 / 12.0 -
          inv2 * (1.0 / 360.0 -
                  inv2 * (1.0 / 1260.0 -
                          inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0)))));
}

}  // namespace

double ln_gamma_ratio(double x, double a) {
  const double y = x + a;
  if (!(x > 0.0) || !(y > 0.0)) {
    throw DomainError(fmt::format(
        "ln_gamma_ratio: arguments must be > 0, got {} and {}", x, y));
  }
  if (std::min(x, y) < 10.0) return ln_gamma(y) - ln_gamma(x);
  // (y - 1/2) ln y - (x - 1/2) ln x, rearranged around log1p(a / x).
  return (x - 0.5) * std::log1p(a / x) + a * std::log(y) - a +
         stirling_correction(y) - stirling_correction(x);
}

double ln_factorial(std::int64_t n) {
  if (n < 0) {
    throw DomainError(fmt::format("ln_factorial: negative argument {}", n));
  }
  if (static_cast<std::size_t>(n) < kFactorialTableSize) {
    return factorial_table()[static_cast<std::size_t>(n)];
  }
  return ln_gamma(static_cast<double>(n) + 1.0);
}

double ln_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) {
    throw DomainError(
        fmt::format("ln_binomial: need 0 <= k <= n, got n={} k={}", n, k));
  }
  const std::int64_t m = std::min(k, n - k);
  if (m == 0) return 0.0;
  if (m == 1) return std::log(static_cast<double>(n));

  // Exact while C(n, i) fits in 64 bits.
  {
    using u128 = unsigned __int128;
    constexpr u128 kLimit = u128{1} << 64;
    u128 c = 1;
    bool exact = true;
    for (std::int64_t i = 1; i <= m; ++i) {
      c = c * static_cast<u128>(n - m + i) / static_cast<u128>(i);
      if (c >= kLimit) {
        exact = false;
        break;
      }
    }
    if (exact) return std::log(static_cast<double>(c));
  }

  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  const double rd = static_cast<double>(n - k);
  const double md = static_cast<double>(m);
  const double main = md * std::log(nd / md) - (nd - md) * std::log1p(-md / nd);
  return main + 0.5 * std::log(nd / (2.0 * std::numbers::pi * kd * rd)) +
         stirling_error(nd) - stirling_error(kd) - stirling_error(rd);
}

double digamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError(fmt::format("digamma: argument must be > 0, got {}", x));
  }
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  const double series =
      inv2 *
      (1.0 / 12.0 -
       inv2 * (1.0 / 120.0 -
               inv2 * (1.0 / 252.0 -
                       inv2 * (1.0 / 240.0 -
                               inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
  return result + std::log(x) - 0.5 / x - series;
}

double sum_log_terms(std::span<const double> log_terms) {
  if (log_terms.empty()) throw UsageError("sum_log_terms: empty input");
  const double top = *std::max_element(log_terms.begin(), log_terms.end());
  if (top == -kInf || top == kInf) return top;
  double acc = 0.0;
  for (double t : log_terms) acc += std::exp(t - top);
  return top + std::log(acc);
}

namespace detail {

SeriesResult finish_series(double sum, const std::vector<double>& window,
                           std::size_t terms_used) {
  SeriesResult out;
  out.value = sum;
  out.terms_used = terms_used;
  const double last = window.back();
  if (last == 0.0) return out;
  const double ratio =
      std::pow(last / window.front(), 1.0 / static_cast<double>(kNegligibleRun));
  // Small inflation plus a rounding allowance keeps the estimate an upper
  // bound for exactly geometric terms.
  out.tail_bound = 1.01 * last * ratio / (1.0 - ratio) +
                   static_cast<double>(terms_used) *
                       std::numeric_limits<double>::epsilon() * std::abs(sum);
  return out;
}

void throw_series_cap(std::size_t cap) {
  throw NonConvergenceError(
      fmt::format("adaptive_series: no convergence within {} terms", cap));
}

}  // namespace detail

PowerTail power_law_tail(double previous, double last, std::int64_t last_index,
                         double exponent) {
  PowerTail out;
  if (last == 0.0) return out;
  const double ratio = last / previous;
  if (!(previous > 0.0) || !(ratio < 1.0)) {
    out.mass = kInf;
    out.first_moment = kInf;
    return out;
  }
  const double l = static_cast<double>(last_index);
  // ratio = (l - 1 + x) / (l - 1 + x + exponent)
  const double shifted = ratio * exponent / (1.0 - ratio) + 1.0;  // l + x
  if (shifted <= 1.0 || exponent <= 1.0) {
    const double geo = ratio / (1.0 - ratio);
    out.mass = last * geo;
    out.first_moment = last * (l * geo + geo / (1.0 - ratio));
    return out;
  }
  out.mass = last * shifted / (exponent - 1.0);
  if (exponent <= 2.0) {
    out.first_moment = kInf;
  } else {
    const double x = shifted - l;
    out.first_moment =
        last * shifted * (shifted + 1.0) / (exponent - 2.0) - x * out.mass;
  }
  return out;
}

std::size_t median_index(std::span<const double> cumulative) {
  for (std::size_t i = 0; i < cumulative.size(); ++i) {
    if (cumulative[i] >= 0.5 - kHalfTolerance) return i;
  }
  return cumulative.size();
}

}  // namespace gfp::numerics
