// Copyright 2026 The ZNE Lab Authors
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

#ifndef ZNELAB_STATS_H_
#define ZNELAB_STATS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace znelab {

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

double chi2_cdf(double k, double x);

/// Inverse chi-squared CDF, relative accuracy about 1e-10.
double chi2_quantile(double k, double q);

struct RbFit {
  double a = 0.0;
  double p = 1.0;
  double b = 0.5;
  double se_a = 0.0;
  double se_p = 0.0;
  double se_b = 0.0;
  bool b_fixed = false;
  /// Constant data: only A + B is identified; p is reported as 1.
  bool degenerate = false;
};

class RbFitError : public std::runtime_error {
 public:
  RbFitError(const std::string &what, RbFit last) : std::runtime_error(what), last_(last) {}
  const RbFit &last_iterate() const { return last_; }

 private:
  RbFit last_;
};

/// Least-squares fit of F(m) = A p^m + B with 0 <= p <= 1. When `fixed_b` is
/// set, B is held at that value.
RbFit rb_fit(std::span<const double> depths, std::span<const double> survival,
             std::optional<double> fixed_b = std::nullopt);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  /// Bin probabilities; they sum to one.
  std::vector<double> density;
};

/// Equal-width histogram of `samples` over [min, max]. A zero-width range
/// puts all mass in one bin.
Histogram make_histogram(std::span<const double> samples, int bins);

struct BootstrapResult {
  /// Statistic per resample, in resample order.
  std::vector<double> samples;
  double mean = 0.0;
  double sd = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  Histogram histogram;
};

/// Resamples item indices with replacement and evaluates `statistic` on each
/// resample. Percentile CI at `level`.
BootstrapResult bootstrap(std::size_t n_items, int n_resamples, std::uint64_t seed,
                          const std::function<double(std::span<const std::size_t>)> &statistic,
                          double level = 0.95, int bins = 20);

/// Bootstrap of the mean of `outcomes`.
BootstrapResult bootstrap_mean(std::span<const double> outcomes, int n_resamples,
                               std::uint64_t seed, double level = 0.95);

double mean(std::span<const double> v);
/// Sample standard deviation (n - 1).
double sample_sd(std::span<const double> v);
double median(std::vector<double> v);
/// Linear-interpolated empirical quantile.
double quantile(std::vector<double> v, double q);

}  // namespace znelab

#endif  // ZNELAB_STATS_H_
