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

// Experiment protocols: standard randomized benchmarking with ZNE, state
// tomography with readout mitigation and ZNE, the GST-lite model-violation
// check, and pulse-level scans (Rabi chevron, free induction, Hahn echo).
//
// Every protocol takes a root seed. Work units derive their own seeds from it,
// so results do not depend on the number of worker threads.

#ifndef ZNELAB_PROTOCOLS_H_
#define ZNELAB_PROTOCOLS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "znelab/gates.h"
#include "znelab/mitigation.h"
#include "znelab/noise.h"
#include "znelab/qmath.h"
#include "znelab/simulator.h"
#include "znelab/stats.h"

namespace znelab {

// ---------------------------------------------------------------------------
// Standard randomized benchmarking.

struct RbConfig {
  std::vector<int> depths{2, 4, 8, 16, 32, 64, 128};
  int n_sequences = 50;
  std::int64_t n_shots = 200;
  AmplificationMethod method = AmplificationMethod::kGlobalFold;
  std::vector<double> nodes{1.0, 3.0};
  /// Unset: Richardson for folding, linear for pulse stretching.
  std::optional<ExtrapolationKind> extrapolation;
  int n_bootstrap = 100;
  std::uint64_t seed = 0;

  void validate() const;
  ExtrapolationKind effective_extrapolation() const;
};

struct SurvivalPoint {
  double mean = 0.0;
  double se = 0.0;
  std::vector<double> per_sequence;
  BootstrapResult bootstrap;
};

struct MitigatedPoint {
  /// Clipped to [0, 1].
  double value = 0.0;
  double raw_value = 0.0;
  double se = 0.0;
  bool clipped = false;
  BootstrapResult bootstrap;
};

struct RbResult {
  RbConfig config;
  /// [depth][node].
  std::vector<std::vector<SurvivalPoint>> nodes;
  /// [depth].
  std::vector<MitigatedPoint> mitigated;
  /// Per node; empty when the fit failed.
  std::vector<std::optional<RbFit>> node_fits;
  std::optional<RbFit> mitigated_fit;
};

/// Random Clifford indices of length m followed by the recovery element,
/// realized as composite Clifford gates.
Circuit srb_sequence(std::span<const int> cliffords, const GateTiming &timing);

/// Applies the amplification for stretch factor c. Returns the circuit and the
/// pulse stretch to use when executing it.
std::pair<Circuit, double> amplify(const Circuit &c, AmplificationMethod method, double factor);

RbResult srb_run(const RbConfig &cfg, const NoiseModel &nm, const EngineConfig &engine,
                 const GateTiming &timing = {});

struct MethodComparisonRow {
  AmplificationMethod method = AmplificationMethod::kGlobalFold;
  int depth = 0;
  double median_mitigated_deviation = 0.0;
  double median_unmitigated_deviation = 0.0;
};

struct MethodComparison {
  std::vector<MethodComparisonRow> rows;
  /// Global folding has the smallest median mitigated deviation at the
  /// largest depth.
  bool global_fold_best = false;
};

/// Runs SRB with each method over `n_seeds` seeds and tabulates the median
/// deviation of the mitigated survival from the ideal value 1.
MethodComparison compare_amplification_methods(const RbConfig &base, const NoiseModel &nm,
                                               const EngineConfig &engine,
                                               std::span<const AmplificationMethod> methods,
                                               int n_seeds, const GateTiming &timing = {});

// ---------------------------------------------------------------------------
// Readout calibration.

struct RemCalibrationRun {
  double p_a = 0.0;   // measured P(up) after preparing ground
  double p_b = 0.0;   // measured P(up) after an X gate
  double p_pi = 1.0;  // simulated excited population after an X gate
  RemCalibration calibration;
};

/// Simulates the two calibration experiments and solves for (F_down, F_up).
/// `gamma` is the initialization fidelity assumed by the solver.
RemCalibrationRun rem_calibration_run(const NoiseModel &nm, const EngineConfig &engine,
                                      const GateTiming &timing, std::int64_t shots, double gamma,
                                      RemEquations eq, std::uint64_t seed);

// ---------------------------------------------------------------------------
// State tomography.

enum class QstTarget { kMinusY, kPlusX };

std::string_view target_name(QstTarget t);
QstTarget target_from_name(std::string_view name);
/// Preparation gate (X/2 for |-Y>, Y/2 for |+X>).
Primitive preparation_gate(QstTarget t);
Ket target_ket(QstTarget t);

/// Setting gate for a Cartesian axis (0 = X, 1 = Y, 2 = Z) and the sign s with
/// R^dagger sigma_z R = s sigma_axis.
struct TomographySetting {
  Primitive gate = Primitive::kIdle;
  double sign = 1.0;
};
TomographySetting tomography_setting(int axis);

enum class MitigationLevel { kRaw, kRem, kRemZne };
std::string_view level_name(MitigationLevel l);

struct QstPlan {
  std::vector<double> nodes{1.0, 3.0};
  std::vector<double> shot_ratio{3.0, 1.0};
  /// Shots per measurement setting, split over nodes by shot_ratio.
  std::int64_t total_shots = 4000;
  AmplificationMethod method = AmplificationMethod::kGlobalFold;
  ExtrapolationKind extrapolation = ExtrapolationKind::kRichardson;
  std::int64_t calibration_shots = 15000;
  /// Initialization fidelity assumed by the readout calibration. With 1 the
  /// confusion matrix absorbs preparation error.
  double calibration_gamma = 1.0;
  RemEquations equations = RemEquations::kVerbatim;
  std::uint64_t seed = 0;

  void validate() const;
};

struct LevelResult {
  MitigationLevel level = MitigationLevel::kRaw;
  std::array<double, 3> expectation{0.0, 0.0, 0.0};
  std::array<double, 3> se{0.0, 0.0, 0.0};
  /// Some expectation left [-1, 1] and was clipped.
  bool clipped = false;
  DensityMatrix rho;
  double fidelity = 0.0;
};

struct TomographyResult {
  QstTarget target = QstTarget::kMinusY;
  std::array<LevelResult, 3> levels;
  RemCalibrationRun calibration;
  std::vector<std::int64_t> shots_per_node;
  /// [axis][node] REM-corrected expectations fed to extrapolation (Z holds
  /// only the c = 1 entry).
  std::array<std::vector<ZnePoint>, 3> node_values;
  /// One entry per extrapolation call, naming the component ("X", "Y").
  std::vector<std::string> extrapolation_calls;
};

TomographyResult qst_run(QstTarget target, const NoiseModel &nm, const EngineConfig &engine,
                         const QstPlan &plan, const GateTiming &timing = {});

// ---------------------------------------------------------------------------
// GST-lite model-violation check.

struct GstCircuit {
  int id = 0;
  int prep = 0;
  int germ = 0;
  int power = 0;
  int meas = 0;
  int length = 0;
  std::vector<Primitive> gates;
  std::string text;
};

struct GstBox {
  int germ = 0;
  int length = 0;
  std::vector<int> circuits;
};

struct GstDesign {
  std::vector<int> lengths;
  std::vector<std::string> germs;
  std::vector<std::string> fiducials;
  std::vector<GstCircuit> circuits;
  std::vector<GstBox> boxes;

  /// Number of circuits with length <= lengths[i].
  std::vector<int> cumulative_k() const;
};

/// Fixed circuit list over {Gi, Gx, Gy} for L in {1, 2, 4, 8, 16}.
const GstDesign &gst_lite_design();

/// Affine Bloch map r -> M r + t.
struct AffineChannel {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};
  std::array<double, 3> t{0.0, 0.0, 0.0};

  std::array<double, 3> apply(const std::array<double, 3> &r) const;
};

/// Markovian gate-set model: one fixed channel per gate.
struct MarkovModel {
  std::array<AffineChannel, 3> gates;  // Gi, Gx, Gy
  double init_fidelity = 1.0;
  double readout_f_down = 1.0;
  double readout_f_up = 1.0;

  /// Measured P(up) for a gate word.
  double p_up(std::span<const Primitive> gates_applied) const;
};

/// Per-gate channels estimated by process tomography on the simulator
/// (trajectory-averaged single-gate maps).
MarkovModel estimate_markov_model(const NoiseModel &nm, const EngineConfig &engine,
                                  const GateTiming &timing, std::uint64_t seed);

std::vector<double> model_probabilities(const GstDesign &design, const MarkovModel &model);

/// Measured P(up) per circuit from the full simulator (readout included).
std::vector<double> simulate_probabilities(const GstDesign &design, const NoiseModel &nm,
                                           const EngineConfig &engine, const GateTiming &timing,
                                           std::uint64_t seed);

struct GstCounts {
  std::int64_t n = 0;
  std::int64_t n_up = 0;
};

std::vector<GstCounts> sample_counts(std::span<const double> probs, std::int64_t shots,
                                     std::uint64_t seed);

/// 2 (log L_max - log L) of one binary circuit; probabilities clamped at 1e-12.
double two_delta_log_l(const GstCounts &c, double p_up);

enum class ThresholdRule { kQuantile, kFixed };
std::string_view threshold_rule_name(ThresholdRule r);
ThresholdRule threshold_rule_from_name(std::string_view name);

struct LlrEntry {
  std::string label;
  int germ = -1;  // -1 for per-length aggregates
  int length = 0;
  int k = 0;
  double llr = 0.0;
  double threshold = 0.0;
  bool violated = false;
  /// (llr - k) / sqrt(2k): distance from the chi2_k mean in standard deviations.
  double severity = 0.0;
};

struct LlrReport {
  ThresholdRule rule = ThresholdRule::kQuantile;
  double q = 0.95;
  double fixed_threshold = 17.0;
  std::vector<LlrEntry> boxes;
  /// Cumulative aggregates over all circuits with length <= L.
  std::vector<LlrEntry> lengths;

  /// Fraction of violated (germ, L) boxes at length L.
  double violated_fraction(int length) const;
  int violated_count(int length) const;
};

LlrReport gst_llr(std::span<const GstCounts> observed, std::span<const double> model_probs,
                  const GstDesign &design, double q = 0.95,
                  ThresholdRule rule = ThresholdRule::kQuantile, double fixed_threshold = 17.0);

/// Reads an external model file: one "circuit_id,p_up" row per circuit, '#'
/// comments and an optional header allowed.
std::vector<double> read_model_probabilities(const std::string &path, const GstDesign &design);

// ---------------------------------------------------------------------------
// Pulse-level scans.

/// On-resonance-referenced Rabi formula for P(|1>).
double rabi_formula(double omega, double delta, double t);

struct ChevronConfig {
  double center_frequency_hz = 14.6564e9;
  std::vector<double> freq_offsets_hz;
  std::vector<double> durations_s;
  double omega = 2.0 * 3.14159265358979323846 * 4.0e6;

  void validate() const;
};

struct ChevronGrid {
  double center_frequency_hz = 0.0;
  std::vector<double> freq_offsets_hz;
  std::vector<double> durations_s;
  /// Row-major [frequency][duration].
  std::vector<double> p1;

  double at(std::size_t f, std::size_t t) const { return p1[f * durations_s.size() + t]; }
};

ChevronGrid chevron_scan(const ChevronConfig &cfg, const NoiseModel &nm,
                         const EngineConfig &engine);

struct CoherencePoint {
  double t = 0.0;
  double mean = 0.0;
  double se = 0.0;
};

/// Free induction decay from |+X>: trajectory mean and standard error of the
/// projection on +X after free evolution for t.
std::vector<CoherencePoint> fid_scan(std::span<const double> times, const NoiseModel &nm,
                                     const EngineConfig &engine);

/// Hahn echo t/2 - Y - t/2 from |+X>, projected on the refocused axis -X.
std::vector<CoherencePoint> echo_scan(std::span<const double> times, const NoiseModel &nm,
                                      const EngineConfig &engine, const GateTiming &timing = {});

}  // namespace znelab

#endif  // ZNELAB_PROTOCOLS_H_
