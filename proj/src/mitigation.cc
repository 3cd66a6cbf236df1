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

#include "znelab/mitigation.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "znelab/errors.h"

namespace znelab {

std::string_view method_name(AmplificationMethod m) {
  switch (m) {
    case AmplificationMethod::kGlobalFold:
      return "global-fold";
    case AmplificationMethod::kLocalFold:
      return "local-fold";
    case AmplificationMethod::kPulseStretch:
      return "pulse-stretch";
  }
  return "?";
}

AmplificationMethod method_from_name(std::string_view name) {
  if (name == "global-fold") return AmplificationMethod::kGlobalFold;
  if (name == "local-fold") return AmplificationMethod::kLocalFold;
  if (name == "pulse-stretch") return AmplificationMethod::kPulseStretch;
  throw ValidationError("unknown amplification method '" + std::string(name) + "'");
}

NodeSet::NodeSet(std::vector<double> factors, AmplificationMethod method)
    : factors_(std::move(factors)), method_(method) {
  if (factors_.empty()) throw ValidationError("node set is empty");
  if (factors_.front() != 1.0) throw ValidationError("first stretch factor must be 1");
  for (std::size_t i = 1; i < factors_.size(); ++i) {
    if (!(factors_[i] > factors_[i - 1])) {
      throw ValidationError("stretch factors must be strictly increasing");
    }
  }
  if (method_ != AmplificationMethod::kPulseStretch) {
    for (double c : factors_) {
      if (c != std::round(c) || static_cast<long>(c) % 2 != 1) {
        throw ValidationError("fold stretch factors must be odd integers");
      }
    }
  }
}

NodeSet NodeSet::folds(int count, AmplificationMethod method) {
  std::vector<double> f;
  for (int n = 0; n < count; ++n) f.push_back(2.0 * n + 1.0);
  return NodeSet(std::move(f), method);
}

int NodeSet::fold_count(std::size_t i) const {
  return static_cast<int>(std::lround((factors_.at(i) - 1.0) / 2.0));
}

RichardsonCoeffs richardson_coefficients(std::span<const double> nodes) {
  if (nodes.empty()) throw ValidationError("richardson: need at least one node");
  RichardsonCoeffs out;
  out.gamma.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    double g = 1.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (k == i) continue;
      double diff = nodes[k] - nodes[i];
      if (diff == 0.0) throw ValidationError("richardson: duplicate nodes");
      g *= nodes[k] / diff;
    }
    out.gamma[i] = g;
    out.overhead += std::abs(g);
  }
  return out;
}

std::string_view extrapolation_name(ExtrapolationKind k) {
  return k == ExtrapolationKind::kRichardson ? "richardson" : "linear";
}

ExtrapolationKind extrapolation_from_name(std::string_view name) {
  if (name == "richardson") return ExtrapolationKind::kRichardson;
  if (name == "linear") return ExtrapolationKind::kLinear;
  throw ValidationError("unknown extrapolation '" + std::string(name) + "'");
}

double ZneEstimate::standard_error() const { return std::sqrt(std::max(0.0, variance)); }

ZneEstimate richardson_extrapolate(std::span<const ZnePoint> points) {
  std::vector<double> nodes;
  for (const auto &p : points) nodes.push_back(p.c);
  RichardsonCoeffs rc = richardson_coefficients(nodes);
  ZneEstimate est;
  est.kind = ExtrapolationKind::kRichardson;
  est.points.assign(points.begin(), points.end());
  est.weights = rc.gamma;
  for (std::size_t i = 0; i < points.size(); ++i) {
    est.value += rc.gamma[i] * points[i].value;
    est.variance += rc.gamma[i] * rc.gamma[i] * points[i].se * points[i].se;
  }
  return est;
}

ZneEstimate linear_extrapolate(std::span<const ZnePoint> points) {
  if (points.size() < 2) throw ValidationError("linear extrapolation needs >= 2 points");
  const double n = static_cast<double>(points.size());
  double mean_c = 0.0;
  for (const auto &p : points) mean_c += p.c;
  mean_c /= n;
  double sxx = 0.0;
  for (const auto &p : points) sxx += (p.c - mean_c) * (p.c - mean_c);
  if (sxx == 0.0) throw ValidationError("linear extrapolation: all stretch factors equal");
  if (points.size() == 2) {
    // Two points: the OLS line is the interpolant, identical to Richardson.
    ZneEstimate est = richardson_extrapolate(points);
    est.kind = ExtrapolationKind::kLinear;
    return est;
  }
  ZneEstimate est;
  est.kind = ExtrapolationKind::kLinear;
  est.points.assign(points.begin(), points.end());
  bool have_se = false;
  for (const auto &p : points) {
    double w = 1.0 / n - mean_c * (p.c - mean_c) / sxx;
    est.weights.push_back(w);
    est.value += w * p.value;
    est.variance += w * w * p.se * p.se;
    have_se = have_se || p.se > 0.0;
  }
  if (!have_se) {
    double mean_e = 0.0;
    for (const auto &p : points) mean_e += p.value;
    mean_e /= n;
    double sxy = 0.0;
    for (const auto &p : points) sxy += (p.c - mean_c) * (p.value - mean_e);
    double slope = sxy / sxx;
    double ssr = 0.0;
    for (const auto &p : points) {
      double r = p.value - (est.value + slope * p.c);
      ssr += r * r;
    }
    est.variance = ssr / (n - 2.0) * (1.0 / n + mean_c * mean_c / sxx);
  }
  return est;
}

ZneEstimate extrapolate(ExtrapolationKind kind, std::span<const ZnePoint> points) {
  return kind == ExtrapolationKind::kRichardson ? richardson_extrapolate(points)
                                                : linear_extrapolate(points);
}

std::vector<std::int64_t> allocate_shots(std::int64_t total, std::span<const double> ratio) {
  if (ratio.empty()) throw ValidationError("allocate_shots: empty ratio");
  if (total < static_cast<std::int64_t>(ratio.size())) {
    throw ValidationError("allocate_shots: total is smaller than the node count");
  }
  double sum = 0.0;
  for (double r : ratio) {
    if (!(r > 0.0)) throw ValidationError("allocate_shots: ratio entries must be positive");
    sum += r;
  }
  std::vector<std::int64_t> out(ratio.size());
  std::vector<double> frac(ratio.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < ratio.size(); ++i) {
    double quota = static_cast<double>(total) * ratio[i] / sum;
    out[i] = static_cast<std::int64_t>(std::floor(quota));
    frac[i] = quota - static_cast<double>(out[i]);
    assigned += out[i];
  }
  std::vector<std::size_t> order(ratio.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++out[order[k % order.size()]];
  return out;
}

ConfusionMatrix::ConfusionMatrix(double f_down, double f_up) : f_down_(f_down), f_up_(f_up) {
  if (!(f_down >= 0.0 && f_down <= 1.0) || !(f_up >= 0.0 && f_up <= 1.0)) {
    throw ValidationError("readout fidelities must lie in [0, 1]");
  }
}

std::array<double, 4> ConfusionMatrix::matrix() const {
  return {f_down_, 1.0 - f_up_, 1.0 - f_down_, f_up_};
}

bool ConfusionMatrix::invertible() const { return std::abs(f_down_ + f_up_ - 1.0) >= 1e-6; }

std::array<double, 4> ConfusionMatrix::inverse() const {
  if (!invertible()) throw NonInvertibleError("readout confusion matrix is not invertible");
  double det = f_down_ + f_up_ - 1.0;
  return {f_up_ / det, -(1.0 - f_up_) / det, -(1.0 - f_down_) / det, f_down_ / det};
}

std::array<double, 2> ConfusionMatrix::apply(const std::array<double, 2> &p) const {
  auto m = matrix();
  return {m[0] * p[0] + m[1] * p[1], m[2] * p[0] + m[3] * p[1]};
}

RemCalibration rem_calibrate(double p_a, double p_b, double gamma, double p_pi, RemEquations eq) {
  if (!(p_a >= 0.0 && p_a <= 1.0) || !(p_b >= 0.0 && p_b <= 1.0)) {
    throw ValidationError("rem_calibrate: probabilities must lie in [0, 1]");
  }
  if (!(p_pi > 0.0 && p_pi <= 1.0)) throw ValidationError("rem_calibrate: P_pi must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ValidationError("rem_calibrate: gamma must lie in [0, 1]");
  if (std::abs(gamma - 0.5) < 1e-12) {
    throw ValidationError("rem_calibrate: singular system at gamma = 1/2");
  }
  // Unknowns (F_down, F_up):
  //   -gamma F_down + (1 - gamma) F_up = P_a - gamma
  //   s (1 - gamma) F_down + gamma F_up = P_b / P_pi - offset
  const double r = p_b / p_pi;
  const double s = eq == RemEquations::kVerbatim ? 1.0 : -1.0;
  const double offset = eq == RemEquations::kVerbatim ? 0.0 : 1.0 - gamma;
  const double a11 = -gamma, a12 = 1.0 - gamma, b1 = p_a - gamma;
  const double a21 = s * (1.0 - gamma), a22 = gamma, b2 = r - offset;
  const double det = a11 * a22 - a12 * a21;
  if (std::abs(det) < 1e-12) throw ValidationError("rem_calibrate: singular system");
  RemCalibration out;
  out.raw_f_down = (b1 * a22 - a12 * b2) / det;
  out.raw_f_up = (a11 * b2 - b1 * a21) / det;
  double fd = std::clamp(out.raw_f_down, 0.0, 1.0);
  double fu = std::clamp(out.raw_f_up, 0.0, 1.0);
  out.clipped = fd != out.raw_f_down || fu != out.raw_f_up;
  out.matrix = ConfusionMatrix(fd, fu);
  return out;
}

RemCorrected rem_correct(const std::array<double, 2> &p_measured, const ConfusionMatrix &f) {
  for (double v : p_measured) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("rem_correct: P_M outside [0, 1]");
  }
  if (std::abs(p_measured[0] + p_measured[1] - 1.0) > 1e-9) {
    throw ValidationError("rem_correct: P_M does not sum to one");
  }
  auto inv = f.inverse();
  RemCorrected out;
  out.raw = {inv[0] * p_measured[0] + inv[1] * p_measured[1],
             inv[2] * p_measured[0] + inv[3] * p_measured[1]};
  double a = std::clamp(out.raw[0], 0.0, 1.0);
  double b = std::clamp(out.raw[1], 0.0, 1.0);
  out.clipped = a != out.raw[0] || b != out.raw[1];
  if (out.clipped) {
    double sum = a + b;
    out.p = {a / sum, b / sum};
  } else {
    out.p = out.raw;
  }
  return out;
}

double p_pi_from_rabi_decay(double t_x, double t_rabi) {
  if (!(t_x >= 0.0) || !(t_rabi > 0.0)) throw ValidationError("p_pi: invalid times");
  return 0.5 * (1.0 + std::exp(-t_x / t_rabi));
}

double thermal_excited_population(double zeeman_over_kt) {
  return 1.0 / (1.0 + std::exp(zeeman_over_kt));
}

}  // namespace znelab
