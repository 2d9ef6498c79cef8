// Copyright 2026 The viewbayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations for tests. Nothing here calls into the library's
// numeric kernels: factorials come from summed logs, integrals from plain
// loops, densities from their textbook closed forms.

#ifndef VIEWBAYES_TESTS_ORACLES_HPP
#define VIEWBAYES_TESTS_ORACLES_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace viewbayes::oracle {

/// log(i!) for i = 0..n by running sums of log(i).
inline std::vector<long double> log_factorials(int n) {
  std::vector<long double> t(static_cast<std::size_t>(n) + 1, 0.0L);
  for (int i = 1; i <= n; ++i) t[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i) - 1] + std::log(static_cast<long double>(i));
  return t;
}

/// Binomial pmf from a log-factorial table in long double.
inline double binomial_pmf(int n, int k, double q) {
  const auto lf = log_factorials(n);
  long double lp = lf[static_cast<std::size_t>(n)] - lf[static_cast<std::size_t>(k)] - lf[static_cast<std::size_t>(n - k)];
  if (k > 0) lp += k * std::log(static_cast<long double>(q));
  if (n - k > 0) lp += (n - k) * std::log1p(-static_cast<long double>(q));
  return static_cast<double>(std::exp(lp));
}

/// Beta density for integer parameters via factorials: B(a,b) = (a-1)!(b-1)!/(a+b-1)!.
inline double beta_pdf_integer(int a, int b, double q) {
  const auto lf = log_factorials(a + b);
  const long double log_inv_b = lf[static_cast<std::size_t>(a + b - 1)] - lf[static_cast<std::size_t>(a - 1)] - lf[static_cast<std::size_t>(b - 1)];
  long double lp = log_inv_b;
  if (a > 1) lp += (a - 1) * std::log(static_cast<long double>(q));
  if (b > 1) lp += (b - 1) * std::log1p(-static_cast<long double>(q));
  return static_cast<double>(std::exp(lp));
}

/// Trapezoid rule of f over [lo, hi] with `points` samples.
inline double trapezoid(const std::function<double(double)>& f, double lo, double hi, int points) {
  const double h = (hi - lo) / (points - 1);
  long double acc = 0.5L * (f(lo) + f(hi));
  for (int i = 1; i < points - 1; ++i) acc += f(lo + i * h);
  return static_cast<double>(acc * h);
}

/// Composite Simpson rule; `intervals` must be even.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int intervals) {
  const double h = (hi - lo) / intervals;
  long double acc = f(lo) + f(hi);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0L : 2.0L) * f(lo + i * h);
  return static_cast<double>(acc * h / 3.0L);
}

/// Beta CDF for integer parameters by Simpson integration of the density.
inline double beta_cdf_integer(int a, int b, double x) {
  return simpson([&](double q) { return beta_pdf_integer(a, b, q); }, 0.0, x, 20000);
}

}  // namespace viewbayes::oracle

#endif  // VIEWBAYES_TESTS_ORACLES_HPP
