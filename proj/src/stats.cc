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

#include "znelab/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "znelab/errors.h"

namespace znelab {

namespace {

constexpr double kTiny = 1e-300;

double gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma Q(a, x) by the Lentz continued fraction.
double gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  if (!(a > 0.0)) throw ValidationError("regularized_gamma_p: a must be positive");
  if (x <= 0.0) return 0.0;
  if (std::isinf(x)) return 1.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double chi2_cdf(double k, double x) { return regularized_gamma_p(0.5 * k, 0.5 * x); }

double chi2_quantile(double k, double q) {
  if (!(k >= 1.0)) throw ValidationError("chi2_quantile: k must be >= 1");
  if (!(q > 0.0 && q < 1.0)) throw ValidationError("chi2_quantile: q must lie in (0, 1)");
  auto f = [&](double x) { return chi2_cdf(k, x) - q; };
  double hi = std::max(1.0, 2.0 * k);
  while (f(hi) < 0.0) hi *= 2.0;
  std::uintmax_t iters = 200;
  auto [lo_x, hi_x] = boost::math::tools::toms748_solve(
      f, 0.0, hi, -q, f(hi), boost::math::tools::eps_tolerance<double>(40), iters);
  return 0.5 * (lo_x + hi_x);
}

namespace {

struct Profile {
  double a = 0.0;
  double b = 0.0;
  double ssr = 0.0;
};

// Best A (and B unless fixed) for a given p, with the residual sum of squares.
Profile profile(double p, std::span<const double> m, std::span<const double> y,
                std::optional<double> fixed_b) {
  const std::size_t n = m.size();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::pow(p, m[i]);
  Profile out;
  if (fixed_b) {
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += x[i] * x[i];
      sxy += x[i] * (y[i] - *fixed_b);
    }
    out.b = *fixed_b;
    out.a = sxx > 0.0 ? sxy / sxx : 0.0;
  } else {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mx += x[i];
      my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sxx += (x[i] - mx) * (x[i] - mx);
      sxy += (x[i] - mx) * (y[i] - my);
    }
    out.a = sxx > 1e-300 ? sxy / sxx : 0.0;
    out.b = my - out.a * mx;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (out.a * x[i] + out.b);
    out.ssr += r * r;
  }
  return out;
}

}  // namespace

RbFit rb_fit(std::span<const double> depths, std::span<const double> survival,
             std::optional<double> fixed_b) {
  if (depths.size() != survival.size()) throw ValidationError("rb_fit: size mismatch");
  if (depths.size() < 3) throw ValidationError("rb_fit: need at least 3 depths");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (!std::isfinite(depths[i]) || !std::isfinite(survival[i]) || depths[i] < 0.0) {
      throw ValidationError("rb_fit: non-finite or negative input");
    }
  }
  RbFit fit;
  fit.b_fixed = fixed_b.has_value();
  const auto [lo_it, hi_it] = std::minmax_element(survival.begin(), survival.end());
  const double avg = mean(survival);
  if (*hi_it - *lo_it <= 1e-12 * (1.0 + std::abs(avg))) {
    fit.degenerate = true;
    fit.p = 1.0;
    fit.b = fixed_b.value_or(avg);
    fit.a = fixed_b ? avg - *fixed_b : 0.0;
    return fit;
  }

  // Coarse scan on a grid that is dense near p = 1, then Brent refinement
  // inside the bracketing cell.
  std::vector<double> grid;
  for (int j = 0; j <= 200; ++j) grid.push_back(j / 200.0);
  for (int j = 0; j <= 240; ++j) grid.push_back(1.0 - std::pow(10.0, -6.0 + 6.0 * j / 240.0));
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::size_t best = 0;
  double best_ssr = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < grid.size(); ++j) {
    double s = profile(grid[j], depths, survival, fixed_b).ssr;
    if (s < best_ssr) {
      best_ssr = s;
      best = j;
    }
  }
  const double left = grid[best == 0 ? 0 : best - 1];
  const double right = grid[std::min(best + 1, grid.size() - 1)];
  std::uintmax_t iters = 500;
  auto objective = [&](double p) { return profile(p, depths, survival, fixed_b).ssr; };
  auto [p_opt, ssr_opt] = boost::math::tools::brent_find_minima(
      objective, left, right, std::numeric_limits<double>::digits, iters);
  const Profile pr = profile(p_opt, depths, survival, fixed_b);
  fit.p = p_opt;
  fit.a = pr.a;
  fit.b = pr.b;
  if (iters >= 500) throw RbFitError("rb_fit: minimizer did not converge", fit);

  const std::size_t n = depths.size();
  const int n_params = fixed_b ? 2 : 3;
  const double dof = static_cast<double>(n) - n_params;
  if (dof > 0.0) {
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(n), n_params);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const double m = depths[i];
      jac(r, 0) = std::pow(fit.p, m);
      jac(r, 1) = m > 0.0 ? fit.a * m * std::pow(fit.p, m - 1.0) : 0.0;
      if (!fixed_b) jac(r, 2) = 1.0;
    }
    const Eigen::MatrixXd info = jac.transpose() * jac;
    const Eigen::MatrixXd cov =
        info.completeOrthogonalDecomposition().pseudoInverse() * (ssr_opt / dof);
    fit.se_a = std::sqrt(std::max(0.0, cov(0, 0)));
    fit.se_p = std::sqrt(std::max(0.0, cov(1, 1)));
    if (!fixed_b) fit.se_b = std::sqrt(std::max(0.0, cov(2, 2)));
  }
  return fit;
}

Histogram make_histogram(std::span<const double> samples, int bins) {
  if (samples.empty()) throw ValidationError("make_histogram: no samples");
  if (bins < 1) throw ValidationError("make_histogram: bins must be >= 1");
  Histogram h;
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  h.lo = *lo;
  h.hi = *hi;
  if (h.hi == h.lo) {
    h.density = {1.0};
    return h;
  }
  h.density.assign(static_cast<std::size_t>(bins), 0.0);
  const double w = (h.hi - h.lo) / bins;
  for (double s : samples) {
    auto idx = static_cast<int>((s - h.lo) / w);
    idx = std::clamp(idx, 0, bins - 1);
    h.density[static_cast<std::size_t>(idx)] += 1.0;
  }
  for (double &d : h.density) d /= static_cast<double>(samples.size());
  return h;
}

BootstrapResult bootstrap(std::size_t n_items, int n_resamples, std::uint64_t seed,
                          const std::function<double(std::span<const std::size_t>)> &statistic,
                          double level, int bins) {
  if (n_items < 2) throw ValidationError("bootstrap: need at least 2 outcomes");
  if (n_resamples < 1) throw ValidationError("bootstrap: need at least 1 resample");
  if (!(level > 0.0 && level < 1.0)) throw ValidationError("bootstrap: level must lie in (0, 1)");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n_items - 1);
  BootstrapResult out;
  std::vector<std::size_t> idx(n_items);
  for (int r = 0; r < n_resamples; ++r) {
    for (auto &i : idx) i = pick(rng);
    out.samples.push_back(statistic(idx));
  }
  out.mean = mean(out.samples);
  out.sd = out.samples.size() > 1 ? sample_sd(out.samples) : 0.0;
  out.ci_low = quantile(out.samples, 0.5 * (1.0 - level));
  out.ci_high = quantile(out.samples, 0.5 * (1.0 + level));
  out.histogram = make_histogram(out.samples, bins);
  return out;
}

BootstrapResult bootstrap_mean(std::span<const double> outcomes, int n_resamples,
                               std::uint64_t seed, double level) {
  return bootstrap(
      outcomes.size(), n_resamples, seed,
      [&](std::span<const std::size_t> idx) {
        double s = 0.0;
        for (auto i : idx) s += outcomes[i];
        return s / static_cast<double>(idx.size());
      },
      level);
}

double mean(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

double quantile(std::vector<double> v, double q) {
  if (v.empty()) throw ValidationError("quantile: empty input");
  std::sort(v.begin(), v.end());
  const double h = q * static_cast<double>(v.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(h));
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (h - static_cast<double>(i)) * (v[i + 1] - v[i]);
}

}  // namespace znelab
