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

#include "znelab/config.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "znelab/errors.h"

namespace znelab {

using Json = nlohmann::ordered_json;

GateTiming DeviceConfig::timing() const {
  GateTiming t;
  t.omega0 = 2.0 * std::numbers::pi * rabi_frequency_hz;
  t.idle_duration = idle_duration_s;
  return t;
}

NoiseModel NoiseConfig::resolved() const {
  NoiseModel m = model;
  if (calibration) {
    m.sigma_qs = sigma_from_t2star(calibration->t2star_s);
    m.sigma_ou = calibrate_ou_sigma(calibration->t2echo_s, calibration->tau_c_s);
    m.tau_c = calibration->tau_c_s;
  }
  return m;
}

std::string_view experiment_name(ExperimentType t) {
  switch (t) {
    case ExperimentType::kRb:
      return "rb";
    case ExperimentType::kQst:
      return "qst";
    case ExperimentType::kGstCheck:
      return "gst-check";
    case ExperimentType::kChevron:
      return "chevron";
    case ExperimentType::kRemCalibrate:
      return "rem-calibrate";
  }
  return "?";
}

ExperimentType experiment_from_name(std::string_view name) {
  for (auto t : {ExperimentType::kRb, ExperimentType::kQst, ExperimentType::kGstCheck,
                 ExperimentType::kChevron, ExperimentType::kRemCalibrate}) {
    if (experiment_name(t) == name) return t;
  }
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

ChevronConfig ChevronSettings::grid(const DeviceConfig &device) const {
  ChevronConfig c;
  c.center_frequency_hz = device.resonance_frequency_hz;
  c.omega = 2.0 * std::numbers::pi * device.rabi_frequency_hz;
  for (int i = 0; i < n_freq; ++i) {
    double frac = n_freq == 1 ? 0.5 : static_cast<double>(i) / (n_freq - 1);
    c.freq_offsets_hz.push_back(freq_span_hz * (frac - 0.5));
  }
  for (int i = 0; i < n_time; ++i) {
    double frac = n_time == 1 ? 1.0 : static_cast<double>(i) / (n_time - 1);
    c.durations_s.push_back(t_max_s * frac);
  }
  return c;
}

void ExperimentConfig::validate() const {
  try {
    noise.resolved().validate();
  } catch (const ValidationError &e) {
    throw ConfigError(std::string("noise: ") + e.what());
  }
  const bool pulse = engine.mode == EngineMode::kPulse;
  try {
    switch (type) {
      case ExperimentType::kRb:
        rb.validate();
        if (rb.method == AmplificationMethod::kPulseStretch && !pulse) {
          throw ValidationError("rb.method pulse-stretch requires engine.mode = pulse");
        }
        for (AmplificationMethod m : rb_compare.methods) {
          if (m == AmplificationMethod::kPulseStretch && !pulse) {
            throw ValidationError("rb.compare_methods pulse-stretch requires engine.mode = pulse");
          }
          try {
            NodeSet(rb.nodes, m);
          } catch (const ValidationError &e) {
            throw ValidationError("rb.compare_methods " + std::string(method_name(m)) + ": " +
                                  e.what());
          }
        }
        if (rb_compare.n_seeds < 1) throw ValidationError("rb.compare_seeds must be >= 1");
        break;
      case ExperimentType::kQst:
        qst.plan.validate();
        if (qst.plan.method == AmplificationMethod::kPulseStretch && !pulse) {
          throw ValidationError("qst.method pulse-stretch requires engine.mode = pulse");
        }
        break;
      case ExperimentType::kChevron:
        // The scan is pulse-level whatever engine.mode says.
        chevron.grid(device).validate();
        break;
      default:
        break;
    }
  } catch (const ValidationError &e) {
    throw ConfigError(std::string("experiment.") + e.what());
  }
}

namespace {

// Reads one JSON object, tracking which keys were consumed so that leftovers
// can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const Json &j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  bool has(const std::string &key) const { return j_.contains(key); }

  const Json *take(const std::string &key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string &key, double def) {
    const Json *v = take(key);
    if (!v) return def;
    if (!v->is_number()) throw ConfigError(field(key) + " must be a number");
    return v->get<double>();
  }

  // null means infinity.
  double time_or_infinity(const std::string &key, double def) {
    const Json *v = take(key);
    if (!v) return def;
    if (v->is_null()) return kInfinity;
    if (!v->is_number()) throw ConfigError(field(key) + " must be a number or null");
    return v->get<double>();
  }

  std::int64_t integer(const std::string &key, std::int64_t def) {
    const Json *v = take(key);
    if (!v) return def;
    if (!v->is_number_integer()) throw ConfigError(field(key) + " must be an integer");
    return v->get<std::int64_t>();
  }

  std::string string(const std::string &key, const std::string &def) {
    const Json *v = take(key);
    if (!v) return def;
    if (!v->is_string()) throw ConfigError(field(key) + " must be a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string &key, std::vector<double> def) {
    const Json *v = take(key);
    if (!v) return def;
    if (!v->is_array()) throw ConfigError(field(key) + " must be an array of numbers");
    std::vector<double> out;
    for (const auto &e : *v) {
      if (!e.is_number()) throw ConfigError(field(key) + " must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<std::string> strings(const std::string &key, std::vector<std::string> def) {
    const Json *v = take(key);
    if (!v) return def;
    if (!v->is_array()) throw ConfigError(field(key) + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto &e : *v) {
      if (!e.is_string()) throw ConfigError(field(key) + " must be an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  void finish() const {
    for (const auto &[key, value] : j_.items()) {
      if (!used_.count(key)) throw ConfigError("unknown key " + field(key));
    }
  }

  std::string field(const std::string &key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  std::string where() const { return path_.empty() ? "config" : path_; }

 private:
  const Json &j_;
  std::string path_;
  std::set<std::string> used_;
};

void require(bool ok, const std::string &field, const std::string &what) {
  if (!ok) throw ConfigError(field + " " + what);
}

void check_unit(const ObjectReader &r, const std::string &key, double v) {
  require(v >= 0.0 && v <= 1.0, r.field(key), "must lie in [0, 1]");
}

template <typename F>
auto map_name(const ObjectReader &r, const std::string &key, const std::string &value, F &&f) {
  try {
    return f(value);
  } catch (const std::exception &) {
    throw ConfigError(r.field(key) + ": unknown value '" + value + "'");
  }
}

std::string equations_name(RemEquations e) {
  return e == RemEquations::kVerbatim ? "verbatim" : "flip_consistent";
}

RemEquations equations_from_name(const std::string &s) {
  if (s == "verbatim") return RemEquations::kVerbatim;
  if (s == "flip_consistent") return RemEquations::kFlipConsistent;
  throw ValidationError("unknown equations");
}

void read_device(ObjectReader r, DeviceConfig &d) {
  d.resonance_frequency_hz = r.number("resonance_frequency_hz", d.resonance_frequency_hz);
  d.b_ext_t = r.number("b_ext_t", d.b_ext_t);
  d.rabi_frequency_hz = r.number("rabi_frequency_hz", d.rabi_frequency_hz);
  d.idle_duration_s = r.number("idle_duration_s", d.idle_duration_s);
  require(d.resonance_frequency_hz > 0.0, r.field("resonance_frequency_hz"), "must be > 0");
  require(d.rabi_frequency_hz > 0.0, r.field("rabi_frequency_hz"), "must be > 0");
  r.finish();
}

void read_noise(ObjectReader r, NoiseConfig &n) {
  NoiseModel &m = n.model;
  m.p_dep = r.number("p_dep", m.p_dep);
  check_unit(r, "p_dep", m.p_dep);
  m.t1 = r.time_or_infinity("t1_s", m.t1);
  require(m.t1 > 0.0, r.field("t1_s"), "must be > 0");
  m.t_phi = r.time_or_infinity("t_phi_s", m.t_phi);
  require(m.t_phi > 0.0, r.field("t_phi_s"), "must be > 0");
  m.readout_f_down = r.number("readout_f_down", m.readout_f_down);
  check_unit(r, "readout_f_down", m.readout_f_down);
  m.readout_f_up = r.number("readout_f_up", m.readout_f_up);
  check_unit(r, "readout_f_up", m.readout_f_up);
  m.init_fidelity = r.number("init_fidelity", m.init_fidelity);
  check_unit(r, "init_fidelity", m.init_fidelity);
  if (const Json *cal = r.take("calibration")) {
    for (const char *key : {"sigma_qs", "sigma_ou", "tau_c_s"}) {
      if (r.has(key)) {
        throw ConfigError(r.field(key) + " conflicts with " + r.field("calibration"));
      }
    }
    ObjectReader c(*cal, r.field("calibration"));
    NoiseCalibration nc;
    nc.t2star_s = c.number("t2star_s", nc.t2star_s);
    require(nc.t2star_s > 0.0, c.field("t2star_s"), "must be > 0");
    nc.t2echo_s = c.number("t2echo_s", nc.t2echo_s);
    require(nc.t2echo_s > 0.0, c.field("t2echo_s"), "must be > 0");
    nc.tau_c_s = c.number("tau_c_s", nc.tau_c_s);
    require(nc.tau_c_s > 0.0, c.field("tau_c_s"), "must be > 0");
    c.finish();
    n.calibration = nc;
  } else {
    m.sigma_qs = r.number("sigma_qs", m.sigma_qs);
    require(m.sigma_qs >= 0.0, r.field("sigma_qs"), "must be >= 0");
    m.sigma_ou = r.number("sigma_ou", m.sigma_ou);
    require(m.sigma_ou >= 0.0, r.field("sigma_ou"), "must be >= 0");
    m.tau_c = r.number("tau_c_s", m.tau_c);
    require(m.tau_c > 0.0, r.field("tau_c_s"), "must be > 0");
  }
  r.finish();
}

void read_engine(ObjectReader r, EngineConfig &e) {
  const std::string mode = r.string("mode", e.mode == EngineMode::kPulse ? "pulse" : "channel");
  if (mode == "pulse") {
    e.mode = EngineMode::kPulse;
  } else if (mode == "channel") {
    e.mode = EngineMode::kChannel;
  } else {
    throw ConfigError(r.field("mode") + ": unknown value '" + mode + "'");
  }
  e.dt = r.number("dt_s", e.dt);
  require(e.dt >= 0.0, r.field("dt_s"), "must be >= 0");
  const std::int64_t n = r.integer("n_trajectories", e.n_trajectories);
  require(n >= 1 && n <= 10000000, r.field("n_trajectories"), "must lie in [1, 1e7]");
  e.n_trajectories = static_cast<int>(n);
  r.finish();
}

std::vector<int> to_ints(const ObjectReader &r, const std::string &key,
                         const std::vector<double> &v) {
  std::vector<int> out;
  for (double d : v) {
    require(d == std::round(d) && d >= 1.0 && d <= 1e6, r.field(key),
            "entries must be integers in [1, 1e6]");
    out.push_back(static_cast<int>(d));
  }
  return out;
}

void read_rb(ObjectReader &r, RbConfig &rb, RbComparison &cmp) {
  std::vector<double> depths(rb.depths.begin(), rb.depths.end());
  rb.depths = to_ints(r, "depths", r.numbers("depths", depths));
  rb.n_sequences = static_cast<int>(r.integer("n_sequences", rb.n_sequences));
  require(rb.n_sequences >= 2, r.field("n_sequences"), "must be >= 2");
  rb.n_shots = r.integer("n_shots", rb.n_shots);
  require(rb.n_shots >= 1, r.field("n_shots"), "must be >= 1");
  const std::string method = r.string("method", std::string(method_name(rb.method)));
  rb.method = map_name(r, "method", method, method_from_name);
  rb.nodes = r.numbers("nodes", rb.nodes);
  const std::string ex = r.string(
      "extrapolation",
      rb.extrapolation ? std::string(extrapolation_name(*rb.extrapolation)) : "auto");
  if (ex == "auto") {
    rb.extrapolation.reset();
  } else {
    rb.extrapolation = map_name(r, "extrapolation", ex, extrapolation_from_name);
  }
  rb.n_bootstrap = static_cast<int>(r.integer("n_bootstrap", rb.n_bootstrap));
  require(rb.n_bootstrap >= 1, r.field("n_bootstrap"), "must be >= 1");
  try {
    NodeSet(rb.nodes, rb.method);
  } catch (const ValidationError &e) {
    throw ConfigError(r.field("nodes") + ": " + e.what());
  }
  std::vector<std::string> names;
  for (auto m : cmp.methods) names.emplace_back(method_name(m));
  cmp.methods.clear();
  for (const auto &n : r.strings("compare_methods", names)) {
    cmp.methods.push_back(map_name(r, "compare_methods", n, method_from_name));
  }
  cmp.n_seeds = static_cast<int>(r.integer("compare_seeds", cmp.n_seeds));
  require(cmp.n_seeds >= 1, r.field("compare_seeds"), "must be >= 1");
}

void read_qst(ObjectReader &r, QstSettings &q) {
  std::vector<std::string> names;
  for (auto t : q.targets) names.emplace_back(target_name(t));
  names = r.strings("targets", names);
  require(!names.empty(), r.field("targets"), "must not be empty");
  q.targets.clear();
  for (const auto &n : names) q.targets.push_back(map_name(r, "targets", n, target_from_name));
  QstPlan &p = q.plan;
  p.nodes = r.numbers("nodes", p.nodes);
  p.shot_ratio = r.numbers("shot_ratio", p.shot_ratio);
  p.total_shots = r.integer("total_shots", p.total_shots);
  const std::string method = r.string("method", std::string(method_name(p.method)));
  p.method = map_name(r, "method", method, method_from_name);
  const std::string ex = r.string("extrapolation", std::string(extrapolation_name(p.extrapolation)));
  p.extrapolation = map_name(r, "extrapolation", ex, extrapolation_from_name);
  p.calibration_shots = r.integer("calibration_shots", p.calibration_shots);
  p.calibration_gamma = r.number("calibration_gamma", p.calibration_gamma);
  check_unit(r, "calibration_gamma", p.calibration_gamma);
  const std::string eq = r.string("rem_equations", equations_name(p.equations));
  p.equations = map_name(r, "rem_equations", eq, equations_from_name);
}

void read_gst(ObjectReader &r, GstSettings &g) {
  g.shots_per_circuit = r.integer("shots_per_circuit", g.shots_per_circuit);
  require(g.shots_per_circuit >= 1, r.field("shots_per_circuit"), "must be >= 1");
  g.q = r.number("q", g.q);
  require(g.q > 0.0 && g.q < 1.0, r.field("q"), "must lie in (0, 1)");
  const std::string rule = r.string("threshold_rule", std::string(threshold_rule_name(g.rule)));
  g.rule = map_name(r, "threshold_rule", rule, threshold_rule_from_name);
  g.fixed_threshold = r.number("fixed_threshold", g.fixed_threshold);
  require(g.fixed_threshold > 0.0, r.field("fixed_threshold"), "must be > 0");
  const std::string model = r.string("model", g.model == GstModelSource::kMarkov ? "markov" : "file");
  if (model == "markov") {
    g.model = GstModelSource::kMarkov;
  } else if (model == "file") {
    g.model = GstModelSource::kFile;
  } else {
    throw ConfigError(r.field("model") + ": unknown value '" + model + "'");
  }
  g.model_file = r.string("model_file", g.model_file);
  require(g.model != GstModelSource::kFile || !g.model_file.empty(), r.field("model_file"),
          "is required when model = file");
}

void read_chevron(ObjectReader &r, ChevronSettings &c) {
  c.freq_span_hz = r.number("freq_span_hz", c.freq_span_hz);
  require(c.freq_span_hz >= 0.0, r.field("freq_span_hz"), "must be >= 0");
  c.n_freq = static_cast<int>(r.integer("n_freq", c.n_freq));
  require(c.n_freq >= 1 && c.n_freq <= 10000, r.field("n_freq"), "must lie in [1, 10000]");
  c.t_max_s = r.number("t_max_s", c.t_max_s);
  require(c.t_max_s >= 0.0, r.field("t_max_s"), "must be >= 0");
  c.n_time = static_cast<int>(r.integer("n_time", c.n_time));
  require(c.n_time >= 1 && c.n_time <= 10000, r.field("n_time"), "must lie in [1, 10000]");
}

void read_rem(ObjectReader &r, RemSettings &s) {
  s.shots = r.integer("shots", s.shots);
  require(s.shots >= 1, r.field("shots"), "must be >= 1");
  s.gamma = r.number("gamma", s.gamma);
  check_unit(r, "gamma", s.gamma);
  require(std::abs(s.gamma - 0.5) > 1e-12, r.field("gamma"), "must differ from 1/2");
  const std::string eq = r.string("equations", equations_name(s.equations));
  s.equations = map_name(r, "equations", eq, equations_from_name);
}

void read_experiment(const Json &j, ExperimentConfig &cfg) {
  if (j.is_string()) {
    cfg.type = experiment_from_name(j.get<std::string>());
    return;
  }
  ObjectReader r(j, "experiment");
  const Json *type = r.take("type");
  if (!type || !type->is_string()) throw ConfigError("experiment.type is required");
  cfg.type = experiment_from_name(type->get<std::string>());
  switch (cfg.type) {
    case ExperimentType::kRb:
      read_rb(r, cfg.rb, cfg.rb_compare);
      break;
    case ExperimentType::kQst:
      read_qst(r, cfg.qst);
      break;
    case ExperimentType::kGstCheck:
      read_gst(r, cfg.gst);
      break;
    case ExperimentType::kChevron:
      read_chevron(r, cfg.chevron);
      break;
    case ExperimentType::kRemCalibrate:
      read_rem(r, cfg.rem);
      break;
  }
  r.finish();
}

void read_output(ObjectReader r, OutputConfig &o) {
  o.dir = r.string("dir", o.dir);
  std::vector<std::string> def;
  if (o.csv) def.emplace_back("csv");
  if (o.json) def.emplace_back("json");
  if (o.svg) def.emplace_back("svg");
  std::string joined;
  for (const auto &f : r.strings("formats", def)) joined += (joined.empty() ? "" : ",") + f;
  try {
    set_formats(o, joined);
  } catch (const ConfigError &e) {
    throw ConfigError(r.field("formats") + ": " + e.what());
  }
  r.finish();
}

std::pair<int, int> line_and_column(std::string_view text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

Json time_json(double t) { return std::isinf(t) ? Json(nullptr) : Json(t); }

}  // namespace

void set_formats(OutputConfig &out, std::string_view list) {
  out.csv = out.json = out.svg = false;
  std::stringstream ss{std::string(list)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "csv") {
      out.csv = true;
    } else if (item == "json") {
      out.json = true;
    } else if (item == "svg") {
      out.svg = true;
    } else {
      throw ConfigError("unknown output format '" + item + "'");
    }
  }
  if (!out.csv && !out.json) throw ConfigError("formats must include csv or json");
}

ExperimentConfig parse_config(std::string_view text, std::optional<ExperimentType> default_type) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error &e) {
    auto [line, col] = line_and_column(text, e.byte);
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  ExperimentConfig cfg;
  ObjectReader r(j, "");
  const Json *version = r.take("schema_version");
  if (version) {
    if (!version->is_number_integer() || version->get<int>() != kSchemaVersion) {
      throw ConfigError("schema_version must be " + std::to_string(kSchemaVersion));
    }
  }
  const Json *seed = r.take("seed");
  if (!seed) throw ConfigError("seed is required");
  if (!seed->is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
  cfg.seed = seed->get<std::uint64_t>();
  if (const Json *d = r.take("device")) read_device(ObjectReader(*d, "device"), cfg.device);
  if (const Json *n = r.take("noise")) read_noise(ObjectReader(*n, "noise"), cfg.noise);
  if (const Json *e = r.take("engine")) read_engine(ObjectReader(*e, "engine"), cfg.engine);
  if (const Json *exp = r.take("experiment")) {
    read_experiment(*exp, cfg);
  } else if (default_type) {
    cfg.type = *default_type;
  } else {
    throw ConfigError("experiment is required");
  }
  if (const Json *o = r.take("output")) read_output(ObjectReader(*o, "output"), cfg.output);
  r.finish();
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string &path, std::optional<ExperimentType> default_type) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), default_type);
}

Json config_to_json(const ExperimentConfig &cfg) {
  Json j;
  j["schema_version"] = cfg.schema_version;
  j["seed"] = cfg.seed;
  j["device"] = {{"resonance_frequency_hz", cfg.device.resonance_frequency_hz},
                 {"b_ext_t", cfg.device.b_ext_t},
                 {"rabi_frequency_hz", cfg.device.rabi_frequency_hz},
                 {"idle_duration_s", cfg.device.idle_duration_s}};
  const NoiseModel &m = cfg.noise.model;
  Json noise;
  noise["p_dep"] = m.p_dep;
  noise["t1_s"] = time_json(m.t1);
  noise["t_phi_s"] = time_json(m.t_phi);
  noise["readout_f_down"] = m.readout_f_down;
  noise["readout_f_up"] = m.readout_f_up;
  noise["init_fidelity"] = m.init_fidelity;
  if (cfg.noise.calibration) {
    noise["calibration"] = {{"t2star_s", cfg.noise.calibration->t2star_s},
                            {"t2echo_s", cfg.noise.calibration->t2echo_s},
                            {"tau_c_s", cfg.noise.calibration->tau_c_s}};
  } else {
    noise["sigma_qs"] = m.sigma_qs;
    noise["sigma_ou"] = m.sigma_ou;
    noise["tau_c_s"] = m.tau_c;
  }
  j["noise"] = noise;
  j["engine"] = {{"mode", cfg.engine.mode == EngineMode::kPulse ? "pulse" : "channel"},
                 {"dt_s", cfg.engine.dt},
                 {"n_trajectories", cfg.engine.n_trajectories}};
  Json e;
  e["type"] = std::string(experiment_name(cfg.type));
  switch (cfg.type) {
    case ExperimentType::kRb:
      e["depths"] = cfg.rb.depths;
      e["n_sequences"] = cfg.rb.n_sequences;
      e["n_shots"] = cfg.rb.n_shots;
      e["method"] = std::string(method_name(cfg.rb.method));
      e["nodes"] = cfg.rb.nodes;
      e["extrapolation"] =
          cfg.rb.extrapolation ? std::string(extrapolation_name(*cfg.rb.extrapolation)) : "auto";
      e["n_bootstrap"] = cfg.rb.n_bootstrap;
      {
        std::vector<std::string> names;
        for (auto m : cfg.rb_compare.methods) names.emplace_back(method_name(m));
        e["compare_methods"] = names;
      }
      e["compare_seeds"] = cfg.rb_compare.n_seeds;
      break;
    case ExperimentType::kQst: {
      Json targets = Json::array();
      for (auto t : cfg.qst.targets) targets.push_back(std::string(target_name(t)));
      const QstPlan &p = cfg.qst.plan;
      e["targets"] = targets;
      e["nodes"] = p.nodes;
      e["shot_ratio"] = p.shot_ratio;
      e["total_shots"] = p.total_shots;
      e["method"] = std::string(method_name(p.method));
      e["extrapolation"] = std::string(extrapolation_name(p.extrapolation));
      e["calibration_shots"] = p.calibration_shots;
      e["calibration_gamma"] = p.calibration_gamma;
      e["rem_equations"] = equations_name(p.equations);
      break;
    }
    case ExperimentType::kGstCheck:
      e["shots_per_circuit"] = cfg.gst.shots_per_circuit;
      e["q"] = cfg.gst.q;
      e["threshold_rule"] = std::string(threshold_rule_name(cfg.gst.rule));
      e["fixed_threshold"] = cfg.gst.fixed_threshold;
      e["model"] = cfg.gst.model == GstModelSource::kMarkov ? "markov" : "file";
      e["model_file"] = cfg.gst.model_file;
      break;
    case ExperimentType::kChevron:
      e["freq_span_hz"] = cfg.chevron.freq_span_hz;
      e["n_freq"] = cfg.chevron.n_freq;
      e["t_max_s"] = cfg.chevron.t_max_s;
      e["n_time"] = cfg.chevron.n_time;
      break;
    case ExperimentType::kRemCalibrate:
      e["shots"] = cfg.rem.shots;
      e["gamma"] = cfg.rem.gamma;
      e["equations"] = equations_name(cfg.rem.equations);
      break;
  }
  j["experiment"] = e;
  Json formats = Json::array();
  if (cfg.output.csv) formats.push_back("csv");
  if (cfg.output.json) formats.push_back("json");
  if (cfg.output.svg) formats.push_back("svg");
  j["output"] = {{"dir", cfg.output.dir}, {"formats", formats}};
  return j;
}

std::string serialize_config(const ExperimentConfig &cfg) {
  return config_to_json(cfg).dump(2) + "\n";
}

}  // namespace znelab
