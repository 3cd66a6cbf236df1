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

#include "znelab/protocols.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "znelab/errors.h"
#include "znelab/parallel.h"

namespace znelab {

namespace {

// Seed stream tags, so that different uses of one root seed never collide.
constexpr std::uint64_t kTagSequences = 1;
constexpr std::uint64_t kTagBootstrap = 2;
constexpr std::uint64_t kTagCalibration = 3;
constexpr std::uint64_t kTagTomography = 4;

}  // namespace

// ---------------------------------------------------------------------------
// SRB

void RbConfig::validate() const {
  if (depths.empty()) throw ValidationError("rb.depths must not be empty");
  for (int d : depths) {
    if (d < 1) throw ValidationError("rb.depths entries must be >= 1");
  }
  if (n_sequences < 2) throw ValidationError("rb.n_sequences must be >= 2");
  if (n_shots < 1) throw ValidationError("rb.n_shots must be >= 1");
  if (n_bootstrap < 1) throw ValidationError("rb.n_bootstrap must be >= 1");
  NodeSet(nodes, method);
  if (effective_extrapolation() == ExtrapolationKind::kLinear && nodes.size() < 2) {
    throw ValidationError("rb.nodes: linear extrapolation needs >= 2 nodes");
  }
}

ExtrapolationKind RbConfig::effective_extrapolation() const {
  if (extrapolation) return *extrapolation;
  return method == AmplificationMethod::kPulseStretch ? ExtrapolationKind::kLinear
                                                      : ExtrapolationKind::kRichardson;
}

Circuit srb_sequence(std::span<const int> cliffords, const GateTiming &timing) {
  Circuit c;
  for (int k : cliffords) c.ops.push_back(make_clifford_gate(k, timing));
  c.ops.push_back(make_clifford_gate(recovery_gate(cliffords), timing));
  return c;
}

std::pair<Circuit, double> amplify(const Circuit &c, AmplificationMethod method, double factor) {
  switch (method) {
    case AmplificationMethod::kGlobalFold:
    case AmplificationMethod::kLocalFold: {
      const double n = (factor - 1.0) / 2.0;
      if (factor < 1.0 || n != std::round(n)) {
        throw ValidationError("folding needs an odd integer stretch factor");
      }
      const int folds = static_cast<int>(n);
      return {method == AmplificationMethod::kGlobalFold ? fold_global(c, folds)
                                                         : fold_local(c, folds),
              1.0};
    }
    case AmplificationMethod::kPulseStretch:
      if (factor < 1.0) throw ValidationError("stretch factor must be >= 1");
      return {c, factor};
  }
  throw ValidationError("unknown amplification method");
}

namespace {

void check_engine_supports(AmplificationMethod method, const EngineConfig &engine) {
  if (method == AmplificationMethod::kPulseStretch && engine.mode != EngineMode::kPulse) {
    throw ValidationError("pulse stretching requires engine.mode = pulse");
  }
}

double clamp01(double v, bool &clipped) {
  double c = std::clamp(v, 0.0, 1.0);
  clipped = clipped || c != v;
  return c;
}

}  // namespace

RbResult srb_run(const RbConfig &cfg, const NoiseModel &nm, const EngineConfig &engine,
                 const GateTiming &timing) {
  cfg.validate();
  check_engine_supports(cfg.method, engine);
  const Executor exec(nm, engine, timing);
  const std::size_t n_depths = cfg.depths.size();
  const std::size_t n_nodes = cfg.nodes.size();
  const auto n_seq = static_cast<std::size_t>(cfg.n_sequences);

  // survival[d][node][seq]
  std::vector<std::vector<std::vector<double>>> survival(
      n_depths, std::vector<std::vector<double>>(n_nodes, std::vector<double>(n_seq)));
  const std::uint64_t seq_root = derive_seed(cfg.seed, kTagSequences);
  parallel_for(static_cast<long>(n_depths * n_seq), engine.jobs, [&](long unit) {
    const auto d = static_cast<std::size_t>(unit) / n_seq;
    const auto s = static_cast<std::size_t>(unit) % n_seq;
    const std::uint64_t seq_seed = derive_seed(derive_seed(seq_root, d), s);
    Rng rng(seq_seed);
    std::uniform_int_distribution<int> pick(0, 23);
    std::vector<int> word(static_cast<std::size_t>(cfg.depths[d]));
    for (int &k : word) k = pick(rng);
    const Circuit base = srb_sequence(word, timing);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      auto [circuit, stretch_c] = amplify(base, cfg.method, cfg.nodes[i]);
      ShotRecord rec = exec.measure(circuit, cfg.n_shots, stretch_c, derive_seed(seq_seed, 1 + i));
      survival[d][i][s] = 1.0 - rec.p1();
    }
  });

  RbResult out;
  out.config = cfg;
  const ExtrapolationKind kind = cfg.effective_extrapolation();
  const std::uint64_t boot_root = derive_seed(cfg.seed, kTagBootstrap);
  for (std::size_t d = 0; d < n_depths; ++d) {
    std::vector<SurvivalPoint> row;
    std::vector<ZnePoint> points;
    const std::uint64_t boot_seed = derive_seed(boot_root, d);
    for (std::size_t i = 0; i < n_nodes; ++i) {
      SurvivalPoint sp;
      sp.per_sequence = survival[d][i];
      sp.mean = mean(sp.per_sequence);
      sp.se = sample_sd(sp.per_sequence) / std::sqrt(static_cast<double>(n_seq));
      sp.bootstrap = bootstrap_mean(sp.per_sequence, cfg.n_bootstrap, boot_seed);
      points.push_back({cfg.nodes[i], sp.mean, sp.se});
      row.push_back(std::move(sp));
    }
    MitigatedPoint mp;
    if (n_nodes >= 2) {
      ZneEstimate est = extrapolate(kind, points);
      mp.raw_value = est.value;
      mp.se = est.standard_error();
      // Same seed as the node bootstraps: sequences are resampled jointly
      // across nodes.
      mp.bootstrap = bootstrap(n_seq, cfg.n_bootstrap, boot_seed,
                               [&](std::span<const std::size_t> idx) {
                                 std::vector<ZnePoint> pts = points;
                                 for (std::size_t i = 0; i < n_nodes; ++i) {
                                   double s = 0.0;
                                   for (auto j : idx) s += survival[d][i][j];
                                   pts[i].value = s / static_cast<double>(idx.size());
                                 }
                                 return extrapolate(kind, pts).value;
                               });
    } else {
      mp.raw_value = points[0].value;
      mp.se = points[0].se;
      mp.bootstrap = row[0].bootstrap;
    }
    mp.value = clamp01(mp.raw_value, mp.clipped);
    out.nodes.push_back(std::move(row));
    out.mitigated.push_back(std::move(mp));
  }

  std::vector<double> depths(cfg.depths.begin(), cfg.depths.end());
  const std::optional<double> fixed_b =
      nm.ideal_spam() ? std::optional<double>(0.5) : std::nullopt;
  if (depths.size() >= 3) {
    for (std::size_t i = 0; i < n_nodes; ++i) {
      std::vector<double> y;
      for (std::size_t d = 0; d < n_depths; ++d) y.push_back(out.nodes[d][i].mean);
      try {
        out.node_fits.push_back(rb_fit(depths, y, fixed_b));
      } catch (const RbFitError &) {
        out.node_fits.push_back(std::nullopt);
      }
    }
    std::vector<double> y;
    for (const auto &mp : out.mitigated) y.push_back(mp.value);
    try {
      out.mitigated_fit = rb_fit(depths, y, fixed_b);
    } catch (const RbFitError &) {
      out.mitigated_fit.reset();
    }
  } else {
    out.node_fits.assign(n_nodes, std::nullopt);
  }
  return out;
}

MethodComparison compare_amplification_methods(const RbConfig &base, const NoiseModel &nm,
                                               const EngineConfig &engine,
                                               std::span<const AmplificationMethod> methods,
                                               int n_seeds, const GateTiming &timing) {
  if (n_seeds < 1) throw ValidationError("compare_amplification_methods: n_seeds must be >= 1");
  MethodComparison out;
  std::vector<double> last_depth_medians;
  for (AmplificationMethod method : methods) {
    std::vector<std::vector<double>> mitigated(base.depths.size());
    std::vector<std::vector<double>> unmitigated(base.depths.size());
    for (int s = 0; s < n_seeds; ++s) {
      RbConfig cfg = base;
      cfg.method = method;
      cfg.extrapolation.reset();
      cfg.seed = derive_seed(base.seed, static_cast<std::uint64_t>(s));
      RbResult r = srb_run(cfg, nm, engine, timing);
      for (std::size_t d = 0; d < base.depths.size(); ++d) {
        mitigated[d].push_back(std::abs(r.mitigated[d].value - 1.0));
        unmitigated[d].push_back(std::abs(r.nodes[d][0].mean - 1.0));
      }
    }
    for (std::size_t d = 0; d < base.depths.size(); ++d) {
      out.rows.push_back({method, base.depths[d], median(mitigated[d]), median(unmitigated[d])});
    }
    last_depth_medians.push_back(median(mitigated.back()));
  }
  out.global_fold_best = false;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i] != AmplificationMethod::kGlobalFold) continue;
    out.global_fold_best = std::all_of(last_depth_medians.begin(), last_depth_medians.end(),
                                       [&](double v) { return last_depth_medians[i] <= v; });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Readout calibration

RemCalibrationRun rem_calibration_run(const NoiseModel &nm, const EngineConfig &engine,
                                      const GateTiming &timing, std::int64_t shots, double gamma,
                                      RemEquations eq, std::uint64_t seed) {
  const Executor exec(nm, engine, timing);
  Circuit none;
  Circuit x;
  x.ops.push_back(make_gate(Primitive::kX180, timing));
  RemCalibrationRun out;
  out.p_a = exec.measure(none, shots, 1.0, derive_seed(seed, 1)).p1();
  out.p_b = exec.measure(x, shots, 1.0, derive_seed(seed, 2)).p1();
  out.p_pi = exec.evolve(x, DensityMatrix::ground(), 1.0, derive_seed(seed, 3)).p1();
  out.calibration = rem_calibrate(out.p_a, out.p_b, gamma, out.p_pi, eq);
  return out;
}

// ---------------------------------------------------------------------------
// QST

std::string_view target_name(QstTarget t) {
  return t == QstTarget::kMinusY ? "minus_y" : "plus_x";
}

QstTarget target_from_name(std::string_view name) {
  if (name == "minus_y") return QstTarget::kMinusY;
  if (name == "plus_x") return QstTarget::kPlusX;
  throw ValidationError("unknown tomography target '" + std::string(name) + "'");
}

Primitive preparation_gate(QstTarget t) {
  return t == QstTarget::kMinusY ? Primitive::kX90 : Primitive::kY90;
}

Ket target_ket(QstTarget t) {
  const double s = std::numbers::sqrt2 / 2.0;
  if (t == QstTarget::kMinusY) return Ket{Complex(s, 0.0), Complex(0.0, -s)};
  return Ket{Complex(s, 0.0), Complex(s, 0.0)};
}

TomographySetting tomography_setting(int axis) {
  static const std::array<Primitive, 3> kGates{Primitive::kMinusY90, Primitive::kX90,
                                               Primitive::kIdle};
  if (axis < 0 || axis > 2) throw ValidationError("tomography axis must be 0, 1 or 2");
  const Primitive g = kGates[static_cast<std::size_t>(axis)];
  const Mat2 r = rotation(primitive_axis(g), primitive_angle(g));
  const Mat2 heis = r.adjoint() * Mat2::pauli_z() * r;
  const std::array<Mat2, 3> paulis{Mat2::pauli_x(), Mat2::pauli_y(), Mat2::pauli_z()};
  const double s = 0.5 * (heis * paulis[static_cast<std::size_t>(axis)]).trace().real();
  if (std::abs(std::abs(s) - 1.0) > 1e-9) {
    throw ConsistencyError("tomography setting does not map onto its axis");
  }
  return {g, s};
}

std::string_view level_name(MitigationLevel l) {
  switch (l) {
    case MitigationLevel::kRaw:
      return "raw";
    case MitigationLevel::kRem:
      return "rem";
    case MitigationLevel::kRemZne:
      return "rem+zne";
  }
  return "?";
}

void QstPlan::validate() const {
  NodeSet(nodes, method);
  if (nodes.size() < 2) throw ValidationError("qst.nodes needs at least 2 entries");
  if (shot_ratio.size() != nodes.size()) {
    throw ValidationError("qst.shot_ratio must have one entry per node");
  }
  if (total_shots < static_cast<std::int64_t>(nodes.size())) {
    throw ValidationError("qst.total_shots is smaller than the node count");
  }
  if (calibration_shots < 1) throw ValidationError("qst.calibration_shots must be >= 1");
  if (!(calibration_gamma >= 0.0 && calibration_gamma <= 1.0)) {
    throw ValidationError("qst.calibration_gamma must lie in [0, 1]");
  }
  allocate_shots(total_shots, shot_ratio);
}

TomographyResult qst_run(QstTarget target, const NoiseModel &nm, const EngineConfig &engine,
                         const QstPlan &plan, const GateTiming &timing) {
  plan.validate();
  check_engine_supports(plan.method, engine);
  const Executor exec(nm, engine, timing);
  TomographyResult out;
  out.target = target;
  out.shots_per_node = allocate_shots(plan.total_shots, plan.shot_ratio);
  out.calibration =
      rem_calibration_run(nm, engine, timing, plan.calibration_shots, plan.calibration_gamma,
                          plan.equations, derive_seed(plan.seed, kTagCalibration));
  const ConfusionMatrix &f = out.calibration.calibration.matrix;
  const double contrast = std::abs(f.f_down() + f.f_up() - 1.0);

  std::array<std::vector<ZnePoint>, 3> raw_values;
  const std::uint64_t tomo_root = derive_seed(plan.seed, kTagTomography);
  for (int axis = 0; axis < 3; ++axis) {
    const auto a = static_cast<std::size_t>(axis);
    const TomographySetting setting = tomography_setting(axis);
    Circuit u;
    u.ops.push_back(make_gate(preparation_gate(target), timing));
    u.ops.push_back(make_gate(setting.gate, timing));
    // The Z component is never extrapolated, so only the c = 1 node runs.
    const std::size_t n_run = axis == 2 ? 1 : plan.nodes.size();
    for (std::size_t i = 0; i < n_run; ++i) {
      auto [circuit, stretch_c] = amplify(u, plan.method, plan.nodes[i]);
      const std::int64_t shots = out.shots_per_node[i];
      const ShotRecord rec =
          exec.measure(circuit, shots, stretch_c, derive_seed(derive_seed(tomo_root, a), i));
      const double p = rec.p1();
      const double se = 2.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
      raw_values[a].push_back({plan.nodes[i], setting.sign * (1.0 - 2.0 * p), se});
      const RemCorrected corr = rem_correct({1.0 - p, p}, f);
      out.node_values[a].push_back(
          {plan.nodes[i], setting.sign * (1.0 - 2.0 * corr.p[1]), se / contrast});
    }
  }

  const Ket psi = target_ket(target);
  for (MitigationLevel level :
       {MitigationLevel::kRaw, MitigationLevel::kRem, MitigationLevel::kRemZne}) {
    LevelResult lr;
    lr.level = level;
    for (std::size_t a = 0; a < 3; ++a) {
      double value = 0.0, se = 0.0;
      if (level == MitigationLevel::kRaw) {
        value = raw_values[a][0].value;
        se = raw_values[a][0].se;
      } else if (level == MitigationLevel::kRem || a == 2) {
        value = out.node_values[a][0].value;
        se = out.node_values[a][0].se;
      } else {
        const ZneEstimate est = extrapolate(plan.extrapolation, out.node_values[a]);
        out.extrapolation_calls.push_back(a == 0 ? "X" : "Y");
        value = est.value;
        se = est.standard_error();
      }
      const double clipped = std::clamp(value, -1.0, 1.0);
      lr.clipped = lr.clipped || clipped != value;
      lr.expectation[a] = clipped;
      lr.se[a] = se;
    }
    const Mat2 raw = (Mat2::identity() + Mat2::pauli_x() * lr.expectation[0] +
                      Mat2::pauli_y() * lr.expectation[1] + Mat2::pauli_z() * lr.expectation[2]) *
                     0.5;
    lr.rho = project_to_physical(raw);
    lr.fidelity = fidelity(lr.rho, psi);
    out.levels[static_cast<std::size_t>(level)] = std::move(lr);
  }
  return out;
}

// ---------------------------------------------------------------------------
// GST-lite

namespace {

constexpr std::array<Primitive, 3> kGstGates{Primitive::kIdle, Primitive::kX90, Primitive::kY90};
constexpr std::array<const char *, 3> kGstNames{"Gi", "Gx", "Gy"};

std::string word_text(const std::vector<int> &w) {
  if (w.empty()) return "{}";
  std::string s;
  for (int g : w) s += kGstNames[static_cast<std::size_t>(g)];
  return s;
}

GstDesign build_design() {
  const std::vector<std::vector<int>> fiducials{{}, {1}, {2}, {1, 1}, {1, 1, 1}, {2, 2, 2}};
  const std::vector<std::vector<int>> germs{
      {0},       {1},       {2},          {1, 2},       {1, 2, 0},         {1, 0, 2},
      {1, 0, 0}, {2, 0, 0}, {1, 1, 0, 2}, {1, 2, 2, 0}, {1, 1, 2, 1, 2, 2}};
  // New circuits per length; the cumulative totals are 61, 137, 254, 417, 585.
  const std::vector<int> lengths{1, 2, 4, 8, 16};
  const std::vector<int> new_counts{61, 76, 117, 163, 168};

  GstDesign d;
  d.lengths = lengths;
  for (const auto &f : fiducials) d.fiducials.push_back(word_text(f));
  for (const auto &g : germs) d.germs.push_back(word_text(g));

  std::set<std::vector<int>> seen;
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    const int length = lengths[li];
    std::vector<std::size_t> box_index(germs.size(), SIZE_MAX);
    int added = 0;
    const std::size_t n_pairs = fiducials.size() * fiducials.size();
    for (std::size_t pair = 0; pair < n_pairs && added < new_counts[li]; ++pair) {
      const std::size_t prep = pair / fiducials.size();
      const std::size_t meas = pair % fiducials.size();
      for (std::size_t g = 0; g < germs.size() && added < new_counts[li]; ++g) {
        const int power = length / static_cast<int>(germs[g].size());
        if (power == 0) continue;
        std::vector<int> word = fiducials[prep];
        for (int p = 0; p < power; ++p) word.insert(word.end(), germs[g].begin(), germs[g].end());
        word.insert(word.end(), fiducials[meas].begin(), fiducials[meas].end());
        if (!seen.insert(word).second) continue;
        GstCircuit c;
        c.id = static_cast<int>(d.circuits.size());
        c.prep = static_cast<int>(prep);
        c.germ = static_cast<int>(g);
        c.power = power;
        c.meas = static_cast<int>(meas);
        c.length = length;
        for (int w : word) c.gates.push_back(kGstGates[static_cast<std::size_t>(w)]);
        c.text = word_text(word);
        if (box_index[g] == SIZE_MAX) {
          box_index[g] = d.boxes.size();
          d.boxes.push_back({static_cast<int>(g), length, {}});
        }
        d.boxes[box_index[g]].circuits.push_back(c.id);
        d.circuits.push_back(std::move(c));
        ++added;
      }
    }
    if (added != new_counts[li]) {
      throw ConsistencyError("GST-lite design cannot reach the circuit count at L = " +
                             std::to_string(length));
    }
  }
  return d;
}

}  // namespace

std::vector<int> GstDesign::cumulative_k() const {
  std::vector<int> out;
  for (int length : lengths) {
    out.push_back(static_cast<int>(std::count_if(
        circuits.begin(), circuits.end(), [&](const GstCircuit &c) { return c.length <= length; })));
  }
  return out;
}

const GstDesign &gst_lite_design() {
  static const GstDesign design = build_design();
  return design;
}

std::array<double, 3> AffineChannel::apply(const std::array<double, 3> &r) const {
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = t[i] + m[3 * i] * r[0] + m[3 * i + 1] * r[1] + m[3 * i + 2] * r[2];
  }
  return out;
}

double MarkovModel::p_up(std::span<const Primitive> gates_applied) const {
  std::array<double, 3> r{0.0, 0.0, 2.0 * init_fidelity - 1.0};
  for (Primitive p : gates_applied) {
    const auto it = std::find(kGstGates.begin(), kGstGates.end(), p);
    if (it == kGstGates.end()) throw ValidationError("Markov model covers Gi, Gx, Gy only");
    r = gates[static_cast<std::size_t>(it - kGstGates.begin())].apply(r);
  }
  const double p1 = std::clamp(0.5 * (1.0 - r[2]), 0.0, 1.0);
  return std::clamp(readout_f_up * p1 + (1.0 - readout_f_down) * (1.0 - p1), 0.0, 1.0);
}

MarkovModel estimate_markov_model(const NoiseModel &nm, const EngineConfig &engine,
                                  const GateTiming &timing, std::uint64_t seed) {
  const Executor exec(nm, engine, timing);
  MarkovModel model;
  model.init_fidelity = nm.init_fidelity;
  model.readout_f_down = nm.readout_f_down;
  model.readout_f_up = nm.readout_f_up;
  const std::array<BlochVector, 4> inputs{BlochVector{0, 0, 1}, BlochVector{0, 0, -1},
                                          BlochVector{1, 0, 0}, BlochVector{0, 1, 0}};
  for (std::size_t g = 0; g < 3; ++g) {
    Circuit c;
    c.ops.push_back(make_gate(kGstGates[g], timing));
    std::array<BlochVector, 4> out;
    for (std::size_t i = 0; i < 4; ++i) {
      // Common random numbers across inputs keep the estimated map affine.
      out[i] = bloch_from_rho(exec.evolve(c, rho_from_bloch(inputs[i]), 1.0, derive_seed(seed, g)));
    }
    auto vec = [](const BlochVector &b) { return std::array<double, 3>{b.rx, b.ry, b.rz}; };
    const auto zp = vec(out[0]), zm = vec(out[1]), xp = vec(out[2]), yp = vec(out[3]);
    AffineChannel ch;
    for (std::size_t i = 0; i < 3; ++i) {
      ch.t[i] = 0.5 * (zp[i] + zm[i]);
      ch.m[3 * i + 0] = xp[i] - ch.t[i];
      ch.m[3 * i + 1] = yp[i] - ch.t[i];
      ch.m[3 * i + 2] = 0.5 * (zp[i] - zm[i]);
    }
    model.gates[g] = ch;
  }
  return model;
}

std::vector<double> model_probabilities(const GstDesign &design, const MarkovModel &model) {
  std::vector<double> out;
  out.reserve(design.circuits.size());
  for (const auto &c : design.circuits) out.push_back(model.p_up(c.gates));
  return out;
}

std::vector<double> simulate_probabilities(const GstDesign &design, const NoiseModel &nm,
                                           const EngineConfig &engine, const GateTiming &timing,
                                           std::uint64_t seed) {
  const Executor exec(nm, engine, timing);
  std::vector<double> out(design.circuits.size());
  parallel_for(static_cast<long>(design.circuits.size()), engine.jobs, [&](long i) {
    const GstCircuit &gc = design.circuits[static_cast<std::size_t>(i)];
    Circuit c;
    for (Primitive p : gc.gates) c.ops.push_back(make_gate(p, timing));
    const double p1 = exec.true_p1(c, 1.0, derive_seed(seed, static_cast<std::uint64_t>(gc.id)));
    out[static_cast<std::size_t>(i)] = readout_p_up(p1, nm);
  });
  return out;
}

std::vector<GstCounts> sample_counts(std::span<const double> probs, std::int64_t shots,
                                     std::uint64_t seed) {
  if (shots < 1) throw ValidationError("sample_counts: shots must be >= 1");
  std::vector<GstCounts> out;
  out.reserve(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) {
    Rng rng(derive_seed(seed, i));
    std::binomial_distribution<std::int64_t> binom(shots, std::clamp(probs[i], 0.0, 1.0));
    out.push_back({shots, binom(rng)});
  }
  return out;
}

double two_delta_log_l(const GstCounts &c, double p_up) {
  if (c.n < 0 || c.n_up < 0 || c.n_up > c.n) throw ValidationError("invalid circuit counts");
  if (c.n == 0) return 0.0;
  constexpr double kClamp = 1e-12;
  const double p = std::clamp(p_up, kClamp, 1.0 - kClamp);
  const double n = static_cast<double>(c.n);
  const double up = static_cast<double>(c.n_up);
  const double down = n - up;
  double llr = 0.0;
  if (up > 0.0) llr += up * std::log((up / n) / p);
  if (down > 0.0) llr += down * std::log((down / n) / (1.0 - p));
  return std::max(0.0, 2.0 * llr);
}

std::string_view threshold_rule_name(ThresholdRule r) {
  return r == ThresholdRule::kQuantile ? "quantile" : "fixed";
}

ThresholdRule threshold_rule_from_name(std::string_view name) {
  if (name == "quantile") return ThresholdRule::kQuantile;
  if (name == "fixed") return ThresholdRule::kFixed;
  throw ValidationError("unknown threshold rule '" + std::string(name) + "'");
}

double LlrReport::violated_fraction(int length) const {
  int total = 0;
  for (const auto &b : boxes) total += b.length == length;
  return total ? static_cast<double>(violated_count(length)) / total : 0.0;
}

int LlrReport::violated_count(int length) const {
  return static_cast<int>(std::count_if(boxes.begin(), boxes.end(), [&](const LlrEntry &b) {
    return b.length == length && b.violated;
  }));
}

LlrReport gst_llr(std::span<const GstCounts> observed, std::span<const double> model_probs,
                  const GstDesign &design, double q, ThresholdRule rule, double fixed_threshold) {
  if (observed.size() != design.circuits.size() || model_probs.size() != design.circuits.size()) {
    throw ValidationError("gst_llr: observed, model and design sizes differ");
  }
  if (!(q > 0.0 && q < 1.0)) throw ValidationError("gst_llr: q must lie in (0, 1)");
  LlrReport report;
  report.rule = rule;
  report.q = q;
  report.fixed_threshold = fixed_threshold;
  std::vector<double> per_circuit(design.circuits.size());
  for (std::size_t i = 0; i < per_circuit.size(); ++i) {
    per_circuit[i] = two_delta_log_l(observed[i], model_probs[i]);
  }
  auto classify = [&](LlrEntry &e) {
    e.threshold = rule == ThresholdRule::kQuantile ? chi2_quantile(e.k, q) : fixed_threshold;
    e.violated = e.llr > e.threshold;
    e.severity = (e.llr - e.k) / std::sqrt(2.0 * e.k);
  };
  for (const auto &box : design.boxes) {
    LlrEntry e;
    e.germ = box.germ;
    e.length = box.length;
    e.label = design.germs[static_cast<std::size_t>(box.germ)] + "^L" + std::to_string(box.length);
    e.k = static_cast<int>(box.circuits.size());
    for (int id : box.circuits) e.llr += per_circuit[static_cast<std::size_t>(id)];
    classify(e);
    report.boxes.push_back(e);
  }
  for (int length : design.lengths) {
    LlrEntry e;
    e.length = length;
    e.label = "L<=" + std::to_string(length);
    for (const auto &c : design.circuits) {
      if (c.length > length) continue;
      ++e.k;
      e.llr += per_circuit[static_cast<std::size_t>(c.id)];
    }
    classify(e);
    report.lengths.push_back(e);
  }
  return report;
}

std::vector<double> read_model_probabilities(const std::string &path, const GstDesign &design) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file '" + path + "'");
  std::vector<double> probs(design.circuits.size(), -1.0);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string id_field, p_field;
    if (!std::getline(ss, id_field, ',') || !std::getline(ss, p_field)) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": expected 'circuit_id,p_up'");
    }
    if (id_field == "circuit_id") continue;
    std::size_t id = 0;
    double p = 0.0;
    try {
      id = std::stoul(id_field);
      p = std::stod(p_field);
    } catch (const std::exception &) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": malformed row");
    }
    if (id >= probs.size() || !(p >= 0.0 && p <= 1.0)) {
      throw ValidationError(path + ":" + std::to_string(line_no) + ": id or probability out of range");
    }
    probs[id] = p;
  }
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] < 0.0) throw ValidationError(path + ": missing circuit " + std::to_string(i));
  }
  return probs;
}

// ---------------------------------------------------------------------------
// Pulse-level scans

double rabi_formula(double omega, double delta, double t) {
  const double w2 = omega * omega + delta * delta;
  if (w2 == 0.0) return 0.0;
  const double s = std::sin(0.5 * std::sqrt(w2) * t);
  return omega * omega / w2 * s * s;
}

void ChevronConfig::validate() const {
  if (freq_offsets_hz.empty() || durations_s.empty()) {
    throw ValidationError("chevron grid must not be empty");
  }
  for (double t : durations_s) {
    if (!(t >= 0.0)) throw ValidationError("chevron durations must be >= 0");
  }
  if (!(omega > 0.0)) throw ValidationError("chevron omega must be positive");
}

ChevronGrid chevron_scan(const ChevronConfig &cfg, const NoiseModel &nm,
                         const EngineConfig &engine) {
  cfg.validate();
  nm.validate();
  engine.validate();
  ChevronGrid grid;
  grid.center_frequency_hz = cfg.center_frequency_hz;
  grid.freq_offsets_hz = cfg.freq_offsets_hz;
  grid.durations_s = cfg.durations_s;
  const std::size_t n_t = cfg.durations_s.size();
  grid.p1.assign(cfg.freq_offsets_hz.size() * n_t, 0.0);
  parallel_for(static_cast<long>(grid.p1.size()), engine.jobs, [&](long idx) {
    const auto i = static_cast<std::size_t>(idx);
    PulseSchedule s;
    s.segments.push_back({cfg.durations_s[i % n_t], cfg.omega, 0.0,
                          2.0 * std::numbers::pi * cfg.freq_offsets_hz[i / n_t]});
    EngineConfig ec = engine;
    ec.seed = derive_seed(engine.seed, i);
    ec.jobs = 1;
    grid.p1[i] = run_pulse(s, nm, DensityMatrix::ground(), ec).p1();
  });
  return grid;
}

namespace {

std::vector<CoherencePoint> coherence_scan(std::span<const double> times, const NoiseModel &nm,
                                           const EngineConfig &engine, double sign,
                                           const std::function<PulseSchedule(double)> &schedule) {
  nm.validate();
  engine.validate();
  const DensityMatrix plus_x = rho_from_bloch({1.0, 0.0, 0.0});
  std::vector<CoherencePoint> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw ValidationError("coherence scan times must be >= 0");
    EngineConfig ec = engine;
    ec.seed = derive_seed(engine.seed, i);
    const auto traj = simulate_trajectories(schedule(times[i]), nm, plus_x, ec);
    std::vector<double> proj;
    proj.reserve(traj.size());
    for (const Mat2 &rho : traj) proj.push_back(sign * bloch_from_matrix(rho).rx);
    CoherencePoint p;
    p.t = times[i];
    p.mean = pairwise_sum(proj) / static_cast<double>(proj.size());
    p.se = sample_sd(proj) / std::sqrt(static_cast<double>(proj.size()));
    out.push_back(p);
  }
  return out;
}

}  // namespace

std::vector<CoherencePoint> fid_scan(std::span<const double> times, const NoiseModel &nm,
                                     const EngineConfig &engine) {
  return coherence_scan(times, nm, engine, 1.0, [](double t) {
    PulseSchedule s;
    s.segments.push_back({t, 0.0, 0.0, 0.0});
    return s;
  });
}

std::vector<CoherencePoint> echo_scan(std::span<const double> times, const NoiseModel &nm,
                                      const EngineConfig &engine, const GateTiming &timing) {
  const double pi_time = std::numbers::pi / timing.omega0;
  return coherence_scan(times, nm, engine, -1.0, [&](double t) {
    PulseSchedule s;
    s.segments.push_back({0.5 * t, 0.0, 0.0, 0.0});
    s.segments.push_back({pi_time, timing.omega0, 0.5 * std::numbers::pi, 0.0});
    s.segments.push_back({0.5 * t, 0.0, 0.0, 0.0});
    return s;
  });
}

}  // namespace znelab
