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

// Experiment pipelines and their result files. The CSV table is the source
// of truth; SVG plots only draw numbers that also appear in it.

#ifndef ZNELAB_REPORT_H_
#define ZNELAB_REPORT_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "znelab/config.h"
#include "znelab/protocols.h"

namespace znelab {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Shortest round-trip decimal form; integral values print without exponent
/// noise ("3", not "3.0").
std::string format_number(double v);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);
/// Header plus rows, CRLF line endings.
std::string to_csv(const Table &t);

struct ExperimentOutput {
  Table table;
  nlohmann::ordered_json results;
  /// (file name, contents).
  std::vector<std::pair<std::string, std::string>> plots;
};

ExperimentOutput report_rb(const RbResult &r, const MethodComparison *comparison = nullptr);
ExperimentOutput report_qst(const std::vector<TomographyResult> &results);
ExperimentOutput report_gst(const GstDesign &design, const LlrReport &report,
                            const std::vector<GstCounts> &counts,
                            const std::vector<double> &model_probs);
ExperimentOutput report_chevron(const ChevronGrid &grid);
ExperimentOutput report_rem(const RemCalibrationRun &run, const RemSettings &settings);

/// Runs the configured experiment. `jobs` sets the worker count (0 = runtime
/// default); outputs do not depend on it.
ExperimentOutput run_experiment(const ExperimentConfig &cfg, int jobs);

/// Writes results.csv / results.json / *.svg per cfg.output into `dir`.
/// Returns the written paths.
std::vector<std::string> write_outputs(const ExperimentOutput &out, const ExperimentConfig &cfg,
                                       const std::string &dir);

}  // namespace znelab

#endif  // ZNELAB_REPORT_H_
