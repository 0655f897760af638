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

// Special functions and summation helpers for the gamma-ratio expressions
// of the degree-quality distributions. Everything here is a pure function
// of its arguments and may be called concurrently.

#ifndef GFP_NUMERICS_HPP_
#define GFP_NUMERICS_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gfp/errors.hpp"

namespace gfp::numerics {

// ln Gamma(x) for x > 0 (Lanczos, g = 7). Throws DomainError for x <= 0.
double ln_gamma(double x);

// ln Gamma(x + a) - ln Gamma(x) for x > 0 and x + a > 0, without the
// cancellation of the two large terms when x is large.
double ln_gamma_ratio(double x, double a);

// ln(n!) from a process-wide table for small n, ln_gamma beyond it.
double ln_factorial(std::int64_t n);

// ln C(n, k), accurate to a few ulp relative even when n >> k.
double ln_binomial(std::int64_t n, std::int64_t k);

// psi(x) = d/dx ln Gamma(x), x > 0.
double digamma(double x);

// ln sum_i exp(log_terms[i]). Entries may be -inf. Throws UsageError on
// empty input.
double sum_log_terms(std::span<const double> log_terms);

// log(exp(a) + exp(b)) for two terms.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

struct SeriesResult {
  double value = 0.0;       // sum of evaluated terms
  double tail_bound = 0.0;  // estimate of the omitted mass, >= 0
  std::size_t terms_used = 0;
};

inline constexpr std::size_t kDefaultSeriesCap = 1'000'000;
inline constexpr int kNegligibleRun = 10;

namespace detail {
SeriesResult finish_series(double sum, const std::vector<double>& window,
                           std::size_t terms_used);
[[noreturn]] void throw_series_cap(std::size_t cap);
}  // namespace detail

// Sums term(start), term(start + 1), ... until kNegligibleRun consecutive
// terms are each <= rel_tol * running sum. Terms are evaluated in index
// order, exactly once each. The tail is extrapolated geometrically from the
// decay ratio over the last kNegligibleRun terms.
template <typename Term>
SeriesResult adaptive_series(Term&& term, std::int64_t start, double rel_tol,
                             std::size_t max_terms = kDefaultSeriesCap) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("adaptive_series: rel_tol must lie in (0, 1)");
  }
  // window holds the last kNegligibleRun + 1 terms (oldest first).
  std::vector<double> window;
  window.reserve(kNegligibleRun + 1);
  double sum = 0.0;
  int negligible_run = 0;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const double t = term(start + static_cast<std::int64_t>(n));
    sum += t;
    if (window.size() == kNegligibleRun + 1) window.erase(window.begin());
    window.push_back(t);
    negligible_run = (t <= rel_tol * sum) ? negligible_run + 1 : 0;
    if (negligible_run >= kNegligibleRun &&
        window.size() == kNegligibleRun + 1) {
      const double first = window.front();
      const double last = window.back();
      // A non-decaying window cannot be extrapolated; keep going.
      if (last == 0.0 || (first > 0.0 && last < first)) {
        return detail::finish_series(sum, window, n + 1);
      }
    }
  }
  detail::throw_series_cap(max_terms);
}

// Mass and first moment beyond index `last_index` of a sequence whose
// values decay like Gamma(l + x) / Gamma(l + x + exponent). The shift x is
// fitted from the two final values. Falls back to geometric extrapolation
// when the sequence decays faster than the model allows. first_moment is
// +inf when exponent <= 2.
struct PowerTail {
  double mass = 0.0;
  double first_moment = 0.0;
};
PowerTail power_law_tail(double previous, double last, std::int64_t last_index,
                         double exponent);

// Tolerance for "CDF >= 1/2" tests, absorbing rounding in cumulative sums.
inline constexpr double kHalfTolerance = 1e-12;

// First index whose cumulative value reaches 1/2, or cumulative.size()
// when none does.
std::size_t median_index(std::span<const double> cumulative);

}  // namespace gfp::numerics

#endif  // GFP_NUMERICS_HPP_
