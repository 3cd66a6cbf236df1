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


#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "znelab/errors.h"
#include "znelab/protocols.h"

namespace znelab {
namespace {

constexpr double kPi = std::numbers::pi;
const GateTiming kTiming;

EngineConfig pulse_engine(int trajectories) {
  EngineConfig e;
  e.mode = EngineMode::kPulse;
  e.n_trajectories = trajectories;
  return e;
}

RbConfig small_rb(std::vector<double> nodes, std::uint64_t seed) {
  RbConfig cfg;
  cfg.depths = {1, 4, 16, 48};
  cfg.n_sequences = 20;
  cfg.n_shots = 100;
  cfg.nodes = std::move(nodes);
  cfg.n_bootstrap = 20;
  cfg.seed = seed;
  return cfg;
}

// ---------------------------------------------------------------------------
// SRB

TEST(Srb, SequenceAppendsRecovery) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> pick(0, 23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> word(static_cast<std::size_t>(1 + trial));
    for (int &k : word) k = pick(rng);
    const Circuit c = srb_sequence(word, kTiming);
    EXPECT_EQ(c.size(), word.size() + 1);
    EXPECT_LT(phase_insensitive_distance(c.unitary(), Mat2::identity()), 1e-9);
  }
}

TEST(Srb, AmplifyRecordsFactors) {
  Circuit c;
  c.ops.push_back(make_gate(Primitive::kX90, kTiming));
  const auto [g, s1] = amplify(c, AmplificationMethod::kGlobalFold, 5);
  EXPECT_EQ(g.size(), 5u);
  EXPECT_EQ(s1, 1.0);
  const auto [p, s2] = amplify(c, AmplificationMethod::kPulseStretch, 1.5);
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(s2, 1.5);
  EXPECT_THROW(amplify(c, AmplificationMethod::kLocalFold, 2), ValidationError);
}

TEST(Srb, ZeroNoiseSurvivesEverywhere) {
  const RbResult r = srb_run(small_rb({1, 3, 5}, 2), NoiseModel{}, EngineConfig{});
  for (std::size_t d = 0; d < r.nodes.size(); ++d) {
    for (const auto &sp : r.nodes[d]) EXPECT_EQ(sp.mean, 1.0);
    EXPECT_NEAR(r.mitigated[d].value, 1.0, 1e-12);
  }
  ASSERT_TRUE(r.node_fits[0].has_value());
  EXPECT_TRUE(r.node_fits[0]->degenerate);
}

TEST(Srb, StretchNeedsPulseEngine) {
  RbConfig cfg = small_rb({1, 2}, 3);
  cfg.method = AmplificationMethod::kPulseStretch;
  EXPECT_THROW(srb_run(cfg, NoiseModel{}, EngineConfig{}), ValidationError);
}

TEST(Srb, NodeMeansPassChiSquareAgainstOracle) {
  NoiseModel nm;
  const double eps = 0.01;
  nm.p_dep = eps;
  int passes = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const RbConfig cfg = small_rb({1, 3}, 100 + s);
    const RbResult r = srb_run(cfg, nm, EngineConfig{});
    double chi2 = 0.0;
    int k = 0;
    for (std::size_t d = 0; d < cfg.depths.size(); ++d) {
      for (std::size_t i = 0; i < cfg.nodes.size(); ++i) {
        const double gates = cfg.nodes[i] * (cfg.depths[d] + 1);
        const double oracle = 0.5 + 0.5 * std::pow(1 - eps, gates);
        const double var = oracle * (1 - oracle) / (cfg.n_sequences * cfg.n_shots);
        chi2 += std::pow(r.nodes[d][i].mean - oracle, 2) / var;
        ++k;
      }
    }
    passes += chi2 <= chi2_quantile(k, 0.95);
  }
  // 19 expected; 16 is below that by more than three binomial sd.
  EXPECT_GE(passes, 16);
}

TEST(Srb, MitigationCloserToIdealOnAverage) {
  NoiseModel nm;
  nm.p_dep = 0.02;
  const RbConfig base = small_rb({1, 3}, 0);
  std::vector<double> mit(base.depths.size()), raw(base.depths.size());
  for (std::uint64_t s = 0; s < 10; ++s) {
    RbConfig cfg = base;
    cfg.seed = 200 + s;
    const RbResult r = srb_run(cfg, nm, EngineConfig{});
    for (std::size_t d = 0; d < base.depths.size(); ++d) {
      mit[d] += std::abs(r.mitigated[d].value - 1.0);
      raw[d] += std::abs(r.nodes[d][0].mean - 1.0);
    }
  }
  for (std::size_t d = 0; d < base.depths.size(); ++d) EXPECT_LT(mit[d], raw[d]) << d;
}

TEST(Srb, ParallelismDoesNotChangeResults) {
  NoiseModel nm;
  nm.sigma_qs = 1e6;
  nm.p_dep = 0.0;
  RbConfig cfg = small_rb({1, 3}, 9);
  cfg.depths = {1, 8};
  cfg.n_sequences = 4;
  EngineConfig e1 = pulse_engine(8), e4 = pulse_engine(8);
  e1.jobs = 1;
  e4.jobs = 4;
  const RbResult a = srb_run(cfg, nm, e1), b = srb_run(cfg, nm, e4);
  for (std::size_t d = 0; d < cfg.depths.size(); ++d) {
    EXPECT_EQ(a.mitigated[d].value, b.mitigated[d].value);
    EXPECT_EQ(a.nodes[d][1].per_sequence, b.nodes[d][1].per_sequence);
  }
}

TEST(Srb, GlobalFoldBeatsStretchUnderStrongQuasiStaticNoise) {
  // Pinned configuration; the ordering is not universal across noise levels.
  NoiseModel nm;
  nm.sigma_qs = 100 * sigma_from_t2star(5.2e-6);
  RbConfig base;
  base.depths = {1, 8, 32};
  base.n_sequences = 10;
  base.n_shots = 200;
  base.n_bootstrap = 10;
  base.nodes = {1, 3};
  base.seed = 5;
  const std::vector<AmplificationMethod> methods{AmplificationMethod::kGlobalFold,
                                                 AmplificationMethod::kLocalFold,
                                                 AmplificationMethod::kPulseStretch};
  const MethodComparison cmp =
      compare_amplification_methods(base, nm, pulse_engine(40), methods, 20);
  ASSERT_EQ(cmp.rows.size(), methods.size() * base.depths.size());
  double global = 0.0, stretched = 0.0;
  for (const auto &row : cmp.rows) {
    EXPECT_TRUE(std::isfinite(row.median_mitigated_deviation));
    if (row.depth != 32) continue;
    if (row.method == AmplificationMethod::kGlobalFold) global = row.median_mitigated_deviation;
    if (row.method == AmplificationMethod::kPulseStretch) {
      stretched = row.median_mitigated_deviation;
    }
  }
  EXPECT_LE(global, stretched);
}

// ---------------------------------------------------------------------------
// QST

TEST(Qst, SettingsMapOntoAxes) {
  // Noiseless: each setting turns its axis into a Z measurement.
  const double s = 1 / std::sqrt(2.0);
  const std::array<Ket, 3> plus{Ket{s, s}, Ket{s, Complex(0, s)}, Ket{1.0, 0.0}};
  for (int axis = 0; axis < 3; ++axis) {
    const TomographySetting t = tomography_setting(axis);
    const Mat2 r = rotation(primitive_axis(t.gate), primitive_angle(t.gate));
    const Ket out = znelab::apply(r, plus[static_cast<std::size_t>(axis)]);
    EXPECT_NEAR(t.sign * (std::norm(out[0]) - std::norm(out[1])), 1.0, 1e-12) << axis;
  }
}

TEST(Qst, PreparationsReachTargets) {
  for (QstTarget t : {QstTarget::kMinusY, QstTarget::kPlusX}) {
    const Primitive g = preparation_gate(t);
    const Ket out = znelab::apply(rotation(primitive_axis(g), primitive_angle(g)), Ket{1.0, 0.0});
    EXPECT_NEAR(fidelity(DensityMatrix::from_ket(out), target_ket(t)), 1.0, 1e-12);
    EXPECT_EQ(target_from_name(target_name(t)), t);
  }
}

TEST(Qst, ZeroNoiseGivesUnitFidelity) {
  QstPlan plan;
  plan.seed = 3;
  for (QstTarget t : {QstTarget::kMinusY, QstTarget::kPlusX}) {
    const TomographyResult r = qst_run(t, NoiseModel{}, EngineConfig{}, plan);
    for (const auto &l : r.levels) EXPECT_NEAR(l.fidelity, 1.0, 0.02) << level_name(l.level);
  }
}

TEST(Qst, ZComponentNeverExtrapolatedAndShotsFollowRatio) {
  NoiseModel nm;
  nm.p_dep = 0.01;
  nm.readout_f_down = 0.97;
  nm.readout_f_up = 0.93;
  QstPlan plan;
  plan.seed = 4;
  const TomographyResult r = qst_run(QstTarget::kMinusY, nm, EngineConfig{}, plan);
  EXPECT_EQ(r.extrapolation_calls, (std::vector<std::string>{"X", "Y"}));
  EXPECT_EQ(r.shots_per_node, (std::vector<std::int64_t>{3000, 1000}));
  EXPECT_EQ(r.node_values[2].size(), 1u);
  EXPECT_EQ(r.levels[2].expectation[2], r.levels[1].expectation[2]);
}

TEST(Qst, DeskScaleOrdering) {
  NoiseModel nm;
  nm.p_dep = 0.01;
  nm.readout_f_down = 0.97;
  nm.readout_f_up = 0.93;
  nm.init_fidelity = 0.99;
  std::array<std::vector<double>, 3> f;
  QstPlan plan;
  for (std::uint64_t s = 0; s < 9; ++s) {
    plan.seed = 50 + s;
    const TomographyResult r = qst_run(QstTarget::kMinusY, nm, EngineConfig{}, plan);
    for (std::size_t l = 0; l < 3; ++l) f[l].push_back(r.levels[l].fidelity);
  }
  EXPECT_LT(median(f[0]), median(f[1]));
  EXPECT_LT(median(f[1]), median(f[2]));
  EXPECT_GE(median(f[2]), 0.99);
}

TEST(Qst, RemCalibrationRunRecoversFidelities) {
  NoiseModel nm;
  nm.readout_f_down = 0.96;
  nm.readout_f_up = 0.91;
  const RemCalibrationRun run = rem_calibration_run(nm, EngineConfig{}, kTiming, 15000, 1.0,
                                                    RemEquations::kVerbatim, 6);
  EXPECT_NEAR(run.calibration.matrix.f_down(), 0.96, 0.01);
  EXPECT_NEAR(run.calibration.matrix.f_up(), 0.91, 0.01);
  EXPECT_NEAR(run.p_pi, 1.0, 1e-12);
}

// ---------------------------------------------------------------------------
// GST-lite

TEST(Gst, DesignDegreesOfFreedom) {
  const GstDesign &d = gst_lite_design();
  EXPECT_EQ(d.cumulative_k(), (std::vector<int>{61, 137, 254, 417, 585}));
  EXPECT_EQ(d.circuits.size(), 585u);
  std::size_t members = 0;
  for (const auto &b : d.boxes) {
    EXPECT_GE(b.circuits.size(), 1u);
    members += b.circuits.size();
  }
  EXPECT_EQ(members, d.circuits.size());
  for (std::size_t i = 0; i < d.circuits.size(); ++i) EXPECT_EQ(d.circuits[i].id, int(i));
}

TEST(Gst, HandCheck) {
  const double llr = two_delta_log_l({100, 60}, 0.5);
  EXPECT_NEAR(llr, 2 * (60 * std::log(0.6 / 0.5) + 40 * std::log(0.4 / 0.5)), 1e-12);
  EXPECT_NEAR(llr, 4.027, 5e-4);
  EXPECT_GT(llr, chi2_quantile(1, 0.95));
  // Probabilities are clamped at 1e-12, leaving a residue of order n * 1e-12.
  EXPECT_NEAR(two_delta_log_l({100, 0}, 0.0), 0.0, 1e-9);
  EXPECT_THROW(two_delta_log_l({10, 11}, 0.5), ValidationError);
}

TEST(Gst, ExactFrequenciesGiveZero) {
  const GstDesign &d = gst_lite_design();
  std::vector<double> probs(d.circuits.size());
  std::vector<GstCounts> counts(d.circuits.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    counts[i] = {1000, static_cast<std::int64_t>(i % 1001)};
    probs[i] = counts[i].n_up / 1000.0;
  }
  const LlrReport rep = gst_llr(counts, probs, d);
  for (const auto &b : rep.boxes) {
    EXPECT_NEAR(b.llr, 0.0, 1e-8);
    EXPECT_FALSE(b.violated);
  }
  const std::vector<double> short_probs(3, 0.5);
  EXPECT_THROW(gst_llr(counts, short_probs, d), ValidationError);
}

TEST(Gst, ModelSampledDataRarelyViolates) {
  const GstDesign &d = gst_lite_design();
  NoiseModel nm;
  nm.p_dep = 0.01;
  nm.readout_f_down = 0.97;
  nm.readout_f_up = 0.93;
  const MarkovModel model = estimate_markov_model(nm, EngineConfig{}, kTiming, 1);
  const std::vector<double> probs = model_probabilities(d, model);
  int violated = 0, total = 0;
  for (std::uint64_t t = 0; t < 50; ++t) {
    const LlrReport rep = gst_llr(sample_counts(probs, 1000, 10 + t), probs, d);
    for (const auto &b : rep.boxes) {
      violated += b.violated;
      ++total;
      EXPECT_GE(b.llr, 0.0);
    }
  }
  EXPECT_LE(double(violated) / total, 2 * (1 - 0.95));
}

TEST(Gst, MarkovModelMatchesChannelEngine) {
  // Channel-mode noise is Markovian, so the estimated model reproduces it.
  const GstDesign &d = gst_lite_design();
  NoiseModel nm;
  nm.p_dep = 0.02;
  nm.t1 = 30e-6;
  const MarkovModel model = estimate_markov_model(nm, EngineConfig{}, kTiming, 2);
  const auto a = model_probabilities(d, model);
  const auto b = simulate_probabilities(d, nm, EngineConfig{}, kTiming, 3);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
}

TEST(Gst, FixedThresholdRule) {
  const GstDesign &d = gst_lite_design();
  const std::vector<double> probs(d.circuits.size(), 0.5);
  const auto counts = sample_counts(probs, 1000, 5);
  const LlrReport rep = gst_llr(counts, probs, d, 0.95, ThresholdRule::kFixed, 17.0);
  for (const auto &b : rep.boxes) {
    EXPECT_EQ(b.threshold, 17.0);
    EXPECT_EQ(b.violated, b.llr > 17.0);
    EXPECT_NEAR(b.severity, (b.llr - b.k) / std::sqrt(2.0 * b.k), 1e-12);
  }
  EXPECT_EQ(threshold_rule_from_name(threshold_rule_name(ThresholdRule::kFixed)),
            ThresholdRule::kFixed);
}

TEST(Gst, ReadsModelFile) {
  const GstDesign &d = gst_lite_design();
  const auto path = std::filesystem::temp_directory_path() / "znelab_model_probs.csv";
  {
    std::ofstream out(path);
    out << "circuit_id,p_up\n";
    for (std::size_t i = 0; i < d.circuits.size(); ++i) out << i << "," << (i % 7) / 10.0 << "\n";
  }
  const auto probs = read_model_probabilities(path.string(), d);
  EXPECT_EQ(probs.size(), d.circuits.size());
  EXPECT_DOUBLE_EQ(probs[10], 0.3);
  {
    std::ofstream out(path);
    out << "circuit_id,p_up\n0,0.5\n";
  }
  EXPECT_THROW(read_model_probabilities(path.string(), d), ValidationError);
  std::filesystem::remove(path);
}

// ---------------------------------------------------------------------------
// Chevron and coherence

TEST(Chevron, MatchesRabiFormula) {
  ChevronConfig cfg;
  for (int i = -5; i <= 5; ++i) cfg.freq_offsets_hz.push_back(1.5e6 * i);
  for (int i = 0; i <= 12; ++i) cfg.durations_s.push_back(40e-9 * i);
  const ChevronGrid g = chevron_scan(cfg, NoiseModel{}, EngineConfig{});
  EXPECT_EQ(g.center_frequency_hz, 14.6564e9);
  for (std::size_t f = 0; f < cfg.freq_offsets_hz.size(); ++f) {
    for (std::size_t t = 0; t < cfg.durations_s.size(); ++t) {
      const double delta = 2 * kPi * cfg.freq_offsets_hz[f];
      const double w2 = cfg.omega * cfg.omega + delta * delta;
      const double want = cfg.omega * cfg.omega / w2 *
                          std::pow(std::sin(std::sqrt(w2) * cfg.durations_s[t] / 2), 2);
      EXPECT_NEAR(g.at(f, t), want, 1e-3);
    }
  }
}

TEST(Chevron, ResonantPiTime) {
  ChevronConfig cfg;
  cfg.freq_offsets_hz = {0.0};
  cfg.durations_s = {kPi / cfg.omega};
  EXPECT_NEAR(chevron_scan(cfg, NoiseModel{}, EngineConfig{}).at(0, 0), 1.0, 1e-9);
  cfg.durations_s.clear();
  EXPECT_THROW(chevron_scan(cfg, NoiseModel{}, EngineConfig{}), ValidationError);
}

TEST(Coherence, EchoOutlastsFidUnderOuNoise) {
  NoiseModel nm;
  const double t2star = 5.2e-6;
  nm.sigma_qs = sigma_from_t2star(t2star);
  nm.tau_c = 1e-5;
  nm.sigma_ou = calibrate_ou_sigma(22.3e-6, nm.tau_c);
  EngineConfig e = pulse_engine(300);
  e.seed = 11;
  const std::vector<double> times{t2star / 2, t2star, 2 * t2star};
  const auto fid = fid_scan(times, nm, e);
  const auto echo = echo_scan(times, nm, e);
  for (std::size_t i = 0; i < times.size(); ++i) {
    EXPECT_GT(echo[i].mean - echo[i].se * 3, fid[i].mean + fid[i].se * 3) << times[i];
  }
}

TEST(Coherence, FidFollowsGaussianEnvelope) {
  NoiseModel nm;
  const double t2star = 5.2e-6;
  nm.sigma_qs = sigma_from_t2star(t2star);
  EngineConfig e = pulse_engine(2000);
  e.seed = 12;
  std::vector<double> times;
  for (int k = 1; k <= 6; ++k) times.push_back(0.3 * k * t2star);
  for (const auto &p : fid_scan(times, nm, e)) {
    EXPECT_LT(std::abs(p.mean - std::exp(-std::pow(p.t / t2star, 2))), 3.5 * p.se) << p.t;
  }
}

}  // namespace
}  // namespace znelab
