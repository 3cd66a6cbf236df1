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

// zne-lab: run an experiment from a config file and write its results.
//
//   zne-lab rb --config cfg.json [--seed N] [--out DIR] [--format csv,json,svg] [--jobs N]
//   zne-lab verify
//
// Exit codes: 0 success, 2 configuration error, 3 runtime error. Errors are
// reported as one JSON object on stderr.

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "znelab/config.h"
#include "znelab/errors.h"
#include "znelab/gates.h"
#include "znelab/mitigation.h"
#include "znelab/protocols.h"
#include "znelab/report.h"
#include "znelab/simulator.h"
#include "znelab/stats.h"

namespace {

using namespace znelab;

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

int fail(int code, std::string_view kind, std::string_view message) {
  nlohmann::ordered_json err{{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << err.dump() << "\n";
  return code;
}

int jobs_from_env() {
  const char *env = std::getenv("ZNE_LAB_JOBS");
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    int v = std::stoi(env, &used);
    if (used != std::string(env).size() || v < 0) throw std::invalid_argument(env);
    return v;
  } catch (const std::exception &) {
    throw ConfigError(std::string("ZNE_LAB_JOBS must be a non-negative integer, got '") + env +
                      "'");
  }
}

struct Check {
  std::string name;
  std::function<std::string()> run;  // empty string means pass
};

std::string expect_near(double got, double want, double tol, std::string_view what) {
  if (std::abs(got - want) <= tol) return "";
  return fmt::format("{}: got {}, want {} (tol {})", what, got, want, tol);
}

std::vector<Check> oracle_checks() {
  std::vector<Check> checks;
  checks.push_back({"richardson_coefficients", [] {
    const std::vector<double> a{1, 3}, b{1, 3, 5};
    auto ra = richardson_coefficients(a), rb = richardson_coefficients(b);
    std::string e = expect_near(ra.gamma[0], 1.5, 1e-12, "gamma(1,3)[0]") +
                    expect_near(ra.gamma[1], -0.5, 1e-12, "gamma(1,3)[1]") +
                    expect_near(ra.overhead, 2.0, 1e-12, "overhead(1,3)") +
                    expect_near(rb.gamma[0], 1.875, 1e-12, "gamma(1,3,5)[0]") +
                    expect_near(rb.gamma[1], -1.25, 1e-12, "gamma(1,3,5)[1]") +
                    expect_near(rb.gamma[2], 0.375, 1e-12, "gamma(1,3,5)[2]") +
                    expect_near(rb.overhead, 3.5, 1e-12, "overhead(1,3,5)");
    return e;
  }});
  checks.push_back({"polynomial_exactness", [] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), node(1.0, 9.0);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = trial % 4;
      std::vector<double> c(n + 1);
      for (double &v : c) v = coef(rng);
      std::vector<double> xs;
      while (static_cast<int>(xs.size()) < n + 1) {
        double x = node(rng);
        if (std::all_of(xs.begin(), xs.end(), [&](double y) { return std::abs(x - y) > 0.1; })) {
          xs.push_back(x);
        }
      }
      std::vector<ZnePoint> pts;
      for (double x : xs) {
        double v = 0.0;
        for (int k = n; k >= 0; --k) v = v * x + c[k];
        pts.push_back({x, v, 0.0});
      }
      std::string e = expect_near(richardson_extrapolate(pts).value, c[0], 1e-9, "constant term");
      if (!e.empty()) return e;
    }
    return std::string();
  }});
  checks.push_back({"rem_roundtrip", [] {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.55, 1.0), p(0.05, 0.95);
    for (int i = 0; i < 200; ++i) {
      double fd = u(rng), fu = u(rng);
      if (fd + fu <= 1.1) continue;
      ConfusionMatrix f(fd, fu);
      double p1 = p(rng);
      auto pm = f.apply({1.0 - p1, p1});
      auto back = rem_correct(pm, f);
      std::string e = expect_near(back.p[1], p1, 1e-10, "rem_correct(F P)");
      if (!e.empty()) return e;
    }
    return std::string();
  }});
  checks.push_back({"chi2_quantile", [] {
    return expect_near(chi2_quantile(2, 1.0 - std::exp(-1.0)), 2.0, 1e-8, "k=2") +
           expect_near(chi2_quantile(1, 0.95), 3.841458820694124, 1e-6, "k=1, q=0.95");
  }});
  checks.push_back({"llr_hand_check", [] {
    double want = 2.0 * (60.0 * std::log(0.6 / 0.5) + 40.0 * std::log(0.4 / 0.5));
    return expect_near(two_delta_log_l({100, 60}, 0.5), want, 1e-12, "2 dlogL");
  }});
  checks.push_back({"clifford_group", [] {
    const auto &table = clifford_table();
    if (table.size() != 24) return fmt::format("{} elements, want 24", table.size());
    for (int a = 0; a < 24; ++a) {
      for (int b = 0; b < 24; ++b) {
        const std::vector<int> seq{a, b, recovery_gate(std::vector<int>{a, b})};
        if (clifford_compose(seq) != 0) return fmt::format("recovery fails for ({}, {})", a, b);
      }
    }
    return std::string();
  }});
  checks.push_back({"folding_preserves_unitary", [] {
    GateTiming timing;
    Circuit c;
    for (int k : {3, 7, 19, 11}) c.ops.push_back(make_clifford_gate(k, timing));
    const Mat2 u = c.unitary();
    for (int n = 0; n < 3; ++n) {
      if (phase_insensitive_distance(fold_global(c, n).unitary(), u) > 1e-9 ||
          phase_insensitive_distance(fold_local(c, n).unitary(), u) > 1e-9) {
        return fmt::format("fold n={} changes the unitary", n);
      }
    }
    return std::string();
  }});
  checks.push_back({"rabi_formula", [] {
    ChevronConfig cfg;
    cfg.freq_offsets_hz = {-3e6, 0.0, 2e6};
    cfg.durations_s = {0.0, 50e-9, 125e-9, 300e-9};
    const ChevronGrid g = chevron_scan(cfg, NoiseModel{}, EngineConfig{});
    for (std::size_t f = 0; f < 3; ++f) {
      for (std::size_t t = 0; t < 4; ++t) {
        const double want = rabi_formula(cfg.omega, 2.0 * std::numbers::pi * cfg.freq_offsets_hz[f],
                                         cfg.durations_s[t]);
        std::string e = expect_near(g.at(f, t), want, 1e-9, "chevron point");
        if (!e.empty()) return e;
      }
    }
    return std::string();
  }});
  checks.push_back({"srb_depolarizing_oracle", [] {
    NoiseModel nm;
    nm.p_dep = 0.01;
    const Executor exec(nm, EngineConfig{}, GateTiming{});
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> pick(0, 23);
    for (int m : {1, 5, 20}) {
      std::vector<int> word(static_cast<std::size_t>(m));
      for (int &k : word) k = pick(rng);
      const double survival = 1.0 - exec.true_p1(srb_sequence(word, GateTiming{}), 1.0, 0);
      std::string e = expect_near(survival, 0.5 + 0.5 * std::pow(0.99, m + 1), 1e-12,
                                  fmt::format("survival m={}", m));
      if (!e.empty()) return e;
    }
    return std::string();
  }});
  checks.push_back({"gst_design_k", [] {
    const auto k = gst_lite_design().cumulative_k();
    const std::vector<int> want{61, 137, 254, 417, 585};
    return k == want ? std::string() : std::string("cumulative k differs from 61,137,254,417,585");
  }});
  return checks;
}

int run_verify() {
  int failures = 0;
  for (const auto &check : oracle_checks()) {
    std::string err;
    try {
      err = check.run();
    } catch (const std::exception &e) {
      err = std::string("exception: ") + e.what();
    }
    if (err.empty()) {
      std::cout << "PASS " << check.name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL " << check.name << ": " << err << "\n";
    }
  }
  return failures ? kExitRuntime : 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Zero-noise extrapolation lab: simulated spin-qubit experiments"};
  app.require_subcommand(1);
  std::string config_path, out_dir, formats;
  std::uint64_t seed = 0;
  int jobs = -1;

  std::vector<CLI::App *> experiment_cmds;
  for (ExperimentType t : {ExperimentType::kRb, ExperimentType::kQst, ExperimentType::kGstCheck,
                           ExperimentType::kChevron, ExperimentType::kRemCalibrate}) {
    CLI::App *sub = app.add_subcommand(std::string(experiment_name(t)),
                                       fmt::format("run the {} experiment", experiment_name(t)));
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--seed", seed, "root seed, overrides the config");
    sub->add_option("--out", out_dir, "output directory, overrides the config");
    sub->add_option("--format", formats, "comma-separated: csv,json[,svg]");
    sub->add_option("--jobs", jobs, "worker threads (default: ZNE_LAB_JOBS or all cores)")
        ->check(CLI::NonNegativeNumber);
    experiment_cmds.push_back(sub);
  }
  CLI::App *verify = app.add_subcommand("verify", "run the built-in oracle checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return fail(kExitConfig, "usage_error", e.what());
  }

  if (verify->parsed()) return run_verify();

  ExperimentConfig cfg;
  try {
    ExperimentType type{};
    for (CLI::App *sub : experiment_cmds) {
      if (sub->parsed()) type = experiment_from_name(sub->get_name());
    }
    cfg = load_config(config_path, type);
    if (cfg.type != type) {
      throw ConfigError(fmt::format("config describes a '{}' experiment, not '{}'",
                                    experiment_name(cfg.type), experiment_name(type)));
    }
    for (CLI::App *sub : experiment_cmds) {
      if (!sub->parsed()) continue;
      if (sub->count("--seed")) cfg.seed = seed;
      if (sub->count("--out")) cfg.output.dir = out_dir;
      if (sub->count("--format")) set_formats(cfg.output, formats);
    }
    if (jobs < 0) jobs = jobs_from_env();
  } catch (const ConfigError &e) {
    return fail(kExitConfig, "config_error", e.what());
  } catch (const ValidationError &e) {
    return fail(kExitConfig, "config_error", e.what());
  }

  try {
    const ExperimentOutput out = run_experiment(cfg, jobs);
    for (const auto &path : write_outputs(out, cfg, cfg.output.dir)) std::cout << path << "\n";
  } catch (const ConfigError &e) {
    return fail(kExitConfig, "config_error", e.what());
  } catch (const std::exception &e) {
    return fail(kExitRuntime, "runtime_error", e.what());
  }
  return 0;
}
