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

// Zero-noise extrapolation and readout error mitigation.
//
// Noise amplification is parametrized by the stretch factor c (c = 1 is the
// unamplified circuit). Extrapolation happens in c, so the absolute base noise
// level never needs a value.

#ifndef ZNELAB_MITIGATION_H_
#define ZNELAB_MITIGATION_H_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace znelab {

enum class AmplificationMethod { kGlobalFold, kLocalFold, kPulseStretch };

std::string_view method_name(AmplificationMethod m);
/// Accepts "global-fold", "local-fold", "pulse-stretch".
AmplificationMethod method_from_name(std::string_view name);

class NodeSet {
 public:
  /// Throws ValidationError unless factors start at 1, strictly increase, and
  /// (for fold methods) are odd integers.
  NodeSet(std::vector<double> factors, AmplificationMethod method);

  /// 1, 3, 5, ... (2n+1) for the fold methods.
  static NodeSet folds(int count, AmplificationMethod method);

  const std::vector<double> &factors() const { return factors_; }
  AmplificationMethod method() const { return method_; }
  std::size_t size() const { return factors_.size(); }
  /// Fold count n for factor index i (fold methods only).
  int fold_count(std::size_t i) const;

 private:
  std::vector<double> factors_;
  AmplificationMethod method_;
};

struct RichardsonCoeffs {
  std::vector<double> gamma;
  /// Sampling overhead sum |gamma_i|.
  double overhead = 0.0;
};

/// Lagrange weights gamma_i = prod_{k != i} c_k / (c_k - c_i). Any distinct
/// nodes are accepted here; NodeSet validation is not required.
RichardsonCoeffs richardson_coefficients(std::span<const double> nodes);

struct ZnePoint {
  double c = 1.0;
  double value = 0.0;
  double se = 0.0;
};

enum class ExtrapolationKind { kRichardson, kLinear };

std::string_view extrapolation_name(ExtrapolationKind k);
ExtrapolationKind extrapolation_from_name(std::string_view name);

struct ZneEstimate {
  double value = 0.0;
  double variance = 0.0;
  ExtrapolationKind kind = ExtrapolationKind::kRichardson;
  std::vector<ZnePoint> points;
  /// Weights w_i with value = sum w_i E_i (gamma_i for Richardson).
  std::vector<double> weights;

  double standard_error() const;
};

/// E* = sum gamma_i E_i; Var = sum gamma_i^2 se_i^2 (independent nodes).
ZneEstimate richardson_extrapolate(std::span<const ZnePoint> points);

/// Ordinary least-squares intercept at c = 0. Variance propagates the
/// per-point se through the OLS weights when any se is nonzero, otherwise it
/// is the residual-based estimate (zero for two points).
ZneEstimate linear_extrapolate(std::span<const ZnePoint> points);

ZneEstimate extrapolate(ExtrapolationKind kind, std::span<const ZnePoint> points);

/// Integer shot counts proportional to `ratio` summing to `total`, by
/// largest-remainder rounding with ties going to the lower node index.
std::vector<std::int64_t> allocate_shots(std::int64_t total, std::span<const double> ratio);

// ---------------------------------------------------------------------------
// Readout error mitigation.

/// Column-stochastic readout response
///   F = [[F_down, 1 - F_up], [1 - F_down, F_up]]
/// acting on (P_down, P_up).
class ConfusionMatrix {
 public:
  ConfusionMatrix(double f_down, double f_up);

  double f_down() const { return f_down_; }
  double f_up() const { return f_up_; }
  std::array<double, 4> matrix() const;
  bool invertible() const;
  /// Throws NonInvertibleError when |F_down + F_up - 1| < 1e-6.
  std::array<double, 4> inverse() const;
  std::array<double, 2> apply(const std::array<double, 2> &p) const;

 private:
  double f_down_;
  double f_up_;
};

/// How the second calibration equation is written.
enum class RemEquations {
  /// P_b / P_pi = gamma F_up + (1 - gamma) F_down, as commonly quoted.
  kVerbatim,
  /// P_b / P_pi = gamma F_up + (1 - gamma)(1 - F_down), which is what a
  /// flipped initialization followed by an X gate produces.
  kFlipConsistent,
};

struct RemCalibration {
  ConfusionMatrix matrix{1.0, 1.0};
  double raw_f_down = 1.0;
  double raw_f_up = 1.0;
  bool clipped = false;
};

/// Solves
///   (i)  P_a = (1 - gamma) F_up + gamma (1 - F_down)
///   (ii) P_b / P_pi = gamma F_up + (1 - gamma) F_down   (kVerbatim)
/// for (F_down, F_up); results outside [0,1] are clipped and flagged.
/// Throws ValidationError for a singular system or out-of-range inputs.
RemCalibration rem_calibrate(double p_a, double p_b, double gamma, double p_pi,
                             RemEquations eq = RemEquations::kVerbatim);

struct RemCorrected {
  std::array<double, 2> p{0.0, 0.0};  // (P_down, P_up)
  std::array<double, 2> raw{0.0, 0.0};
  bool clipped = false;
};

/// P_C = F^{-1} P_M, clipped to [0,1] and renormalized.
RemCorrected rem_correct(const std::array<double, 2> &p_measured, const ConfusionMatrix &f);

/// Expected spin-up probability after an X gate, given a Rabi decay time:
/// (1 + exp(-t_x / t_rabi)) / 2.
double p_pi_from_rabi_decay(double t_x, double t_rabi);

/// Thermal excited-state occupation 1/(1 + exp(E_z / kT)) for a given
/// Zeeman-to-thermal energy ratio.
double thermal_excited_population(double zeeman_over_kt);

}  // namespace znelab

#endif  // ZNELAB_MITIGATION_H_
