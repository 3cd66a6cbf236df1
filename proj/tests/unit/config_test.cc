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


#include <cmath>
#include <string>

#include <gtest/gtest.h>

#include "znelab/config.h"
#include "znelab/errors.h"

namespace znelab {
namespace {

std::string error_of(const std::string &text) {
  try {
    parse_config(text);
  } catch (const ConfigError &e) {
    return e.what();
  }
  return "";
}

TEST(Config, MinimalConfigUsesDefaults) {
  const ExperimentConfig cfg = parse_config(R"({"seed": 7, "experiment": "chevron"})");
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.type, ExperimentType::kChevron);
  EXPECT_EQ(cfg.device.resonance_frequency_hz, 14.6564e9);
  EXPECT_EQ(cfg.noise.model.p_dep, 0.0);
  EXPECT_TRUE(cfg.output.csv);
}

TEST(Config, DefaultTypeFillsMissingExperiment) {
  EXPECT_EQ(parse_config(R"({"seed": 1})", ExperimentType::kRb).type, ExperimentType::kRb);
  EXPECT_NE(error_of(R"({"seed": 1})").find("experiment is required"), std::string::npos);
}

TEST(Config, SeedIsRequired) {
  EXPECT_NE(error_of(R"({"experiment": "chevron"})").find("seed"), std::string::npos);
  EXPECT_NE(error_of(R"({"seed": -3, "experiment": "chevron"})").find("seed"),
            std::string::npos);
}

TEST(Config, OutOfRangeProbabilityNamesField) {
  const std::string e =
      error_of(R"({"seed": 1, "experiment": "chevron", "noise": {"p_dep": 1.5}})");
  EXPECT_NE(e.find("noise.p_dep"), std::string::npos) << e;
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_NE(error_of(R"({"seed": 1, "experiment": "chevron", "nosie": {}})").find("nosie"),
            std::string::npos);
  const std::string e =
      error_of(R"({"seed": 1, "experiment": {"type": "rb", "depth": [1, 2]}})");
  EXPECT_NE(e.find("experiment.depth"), std::string::npos) << e;
}

TEST(Config, ParseErrorReportsLine) {
  const std::string e = error_of("{\n  \"seed\": 1,\n  \"experiment\": \n}");
  EXPECT_NE(e.find("line 4"), std::string::npos) << e;
}

TEST(Config, TypeMismatchNamesField) {
  const std::string e =
      error_of(R"({"seed": 1, "experiment": "chevron", "engine": {"n_trajectories": "many"}})");
  EXPECT_NE(e.find("engine.n_trajectories"), std::string::npos) << e;
  EXPECT_NE(e.find("integer"), std::string::npos) << e;
}

TEST(Config, CalibrationBlockConflictsWithDirectStrengths) {
  const std::string e = error_of(
      R"({"seed": 1, "experiment": "chevron",
          "noise": {"sigma_qs": 1e5, "calibration": {"t2star_s": 5e-6}}})");
  EXPECT_NE(e.find("noise.sigma_qs"), std::string::npos) << e;
}

TEST(Config, CalibrationResolvesStrengths) {
  const ExperimentConfig cfg = load_config(ZNELAB_SOURCE_DIR "/configs/spin-device.json");
  ASSERT_TRUE(cfg.noise.calibration.has_value());
  EXPECT_EQ(cfg.noise.calibration->t2star_s, 5.2e-6);
  EXPECT_EQ(cfg.noise.calibration->t2echo_s, 22.3e-6);
  EXPECT_EQ(cfg.device.resonance_frequency_hz, 14.6564e9);
  const NoiseModel nm = cfg.noise.resolved();
  EXPECT_NEAR(nm.sigma_qs, sigma_from_t2star(5.2e-6), 1e-6 * nm.sigma_qs);
  EXPECT_GT(nm.sigma_ou, 0.0);
  EXPECT_EQ(nm.tau_c, 1e-5);
}

TEST(Config, StretchNeedsPulseEngine) {
  const std::string e = error_of(
      R"({"seed": 1, "experiment": {"type": "rb", "method": "pulse-stretch", "nodes": [1, 1.5]}})");
  EXPECT_NE(e.find("engine.mode = pulse"), std::string::npos) << e;
}

TEST(Config, RoundTripIsFixedPoint) {
  for (const char *name : {"spin-device", "rb-depolarizing", "rb-method-comparison", "qst-desk",
                           "gst-quasistatic", "rem-calibrate"}) {
    const ExperimentConfig cfg =
        load_config(std::string(ZNELAB_SOURCE_DIR "/configs/") + name + ".json");
    const std::string once = serialize_config(cfg);
    const std::string twice = serialize_config(parse_config(once));
    EXPECT_EQ(once, twice) << name;
  }
  const ExperimentConfig cmp =
      load_config(ZNELAB_SOURCE_DIR "/configs/rb-method-comparison.json");
  EXPECT_EQ(cmp.rb_compare.methods.size(), 3u);
  EXPECT_EQ(parse_config(serialize_config(cmp)).rb_compare.n_seeds, cmp.rb_compare.n_seeds);
}

TEST(Config, FormatsList) {
  OutputConfig out;
  set_formats(out, "json,svg");
  EXPECT_FALSE(out.csv);
  EXPECT_TRUE(out.json);
  EXPECT_TRUE(out.svg);
  EXPECT_THROW(set_formats(out, "svg"), ConfigError);
  EXPECT_THROW(set_formats(out, "csv,xml"), ConfigError);
}

TEST(Config, ExperimentNames) {
  for (ExperimentType t : {ExperimentType::kRb, ExperimentType::kQst, ExperimentType::kGstCheck,
                           ExperimentType::kChevron, ExperimentType::kRemCalibrate}) {
    EXPECT_EQ(experiment_from_name(experiment_name(t)), t);
  }
  EXPECT_THROW(experiment_from_name("xeb"), ConfigError);
}

}  // namespace
}  // namespace znelab
