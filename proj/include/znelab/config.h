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

// Experiment configuration files (JSON, schema_version 1).
//
// Top-level keys: schema_version, seed (required), device, noise, engine,
// experiment, output. The experiment is either a bare type name or an object
// with a "type" key and that protocol's parameters. Unknown keys are errors.
// Infinite times (t1_s, t_phi_s) are written as null.

#ifndef ZNELAB_CONFIG_H_
#define ZNELAB_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "znelab/gates.h"
#include "znelab/mitigation.h"
#include "znelab/noise.h"
#include "znelab/protocols.h"
#include "znelab/simulator.h"

namespace znelab {

inline constexpr int kSchemaVersion = 1;

struct DeviceConfig {
  double resonance_frequency_hz = 14.6564e9;
  double b_ext_t = 0.4397;
  double rabi_frequency_hz = 4.0e6;
  /// Negative: one X/2 duration.
  double idle_duration_s = -1.0;

  GateTiming timing() const;
};

/// Coherence times from which the detuning noise strengths are derived.
struct NoiseCalibration {
  double t2star_s = 5.2e-6;
  double t2echo_s = 22.3e-6;
  double tau_c_s = 1e-5;
};

struct NoiseConfig {
  NoiseModel model;
  std::optional<NoiseCalibration> calibration;

  /// The model with sigma_qs, sigma_ou and tau_c filled in from the
  /// calibration block when present.
  NoiseModel resolved() const;
};

enum class ExperimentType { kRb, kQst, kGstCheck, kChevron, kRemCalibrate };

std::string_view experiment_name(ExperimentType t);
/// Throws ConfigError for unknown names.
ExperimentType experiment_from_name(std::string_view name);

/// Optional side-by-side run of several amplification methods on the rb
/// config (median deviations over seeds); empty `methods` disables it.
struct RbComparison {
  std::vector<AmplificationMethod> methods;
  int n_seeds = 20;
};

struct QstSettings {
  std::vector<QstTarget> targets{QstTarget::kMinusY, QstTarget::kPlusX};
  QstPlan plan;
};

enum class GstModelSource { kMarkov, kFile };

struct GstSettings {
  std::int64_t shots_per_circuit = 1000;
  double q = 0.95;
  ThresholdRule rule = ThresholdRule::kQuantile;
  double fixed_threshold = 17.0;
  GstModelSource model = GstModelSource::kMarkov;
  std::string model_file;
};

struct ChevronSettings {
  double freq_span_hz = 20.0e6;
  int n_freq = 41;
  double t_max_s = 1.0e-6;
  int n_time = 51;

  ChevronConfig grid(const DeviceConfig &device) const;
};

struct RemSettings {
  std::int64_t shots = 15000;
  double gamma = 1.0;
  RemEquations equations = RemEquations::kVerbatim;
};

struct OutputConfig {
  std::string dir = "results";
  bool csv = true;
  bool json = true;
  bool svg = false;
};

struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::uint64_t seed = 0;
  DeviceConfig device;
  NoiseConfig noise;
  EngineConfig engine;
  ExperimentType type = ExperimentType::kChevron;
  RbConfig rb;
  RbComparison rb_compare;
  QstSettings qst;
  GstSettings gst;
  ChevronSettings chevron;
  RemSettings rem;
  OutputConfig output;

  /// Cross-field checks (e.g. pulse stretching needs the pulse engine).
  void validate() const;
};

/// Throws ConfigError with line information on parse errors and with the
/// dotted field path on validation errors. `default_type` stands in for a
/// missing experiment key.
ExperimentConfig parse_config(std::string_view text,
                              std::optional<ExperimentType> default_type = std::nullopt);
ExperimentConfig load_config(const std::string &path,
                             std::optional<ExperimentType> default_type = std::nullopt);

/// Full config with defaults filled; parse_config(dump) reproduces it.
nlohmann::ordered_json config_to_json(const ExperimentConfig &cfg);
std::string serialize_config(const ExperimentConfig &cfg);

/// Parses "csv,json,svg" into the output block.
void set_formats(OutputConfig &out, std::string_view list);

}  // namespace znelab

#endif  // ZNELAB_CONFIG_H_
