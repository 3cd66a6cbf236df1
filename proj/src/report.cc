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

#include "znelab/report.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <fmt/format.h>

#include "znelab/errors.h"

namespace znelab {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const Table &t) {
  auto line = [](const std::vector<std::string> &fields) {
    std::string s;
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) s += ',';
      s += csv_field(fields[i]);
    }
    return s + "\r\n";
  };
  std::string out = line(t.columns);
  for (const auto &row : t.rows) out += line(row);
  return out;
}

namespace {

std::string num(double v) { return format_number(v); }
std::string flag(bool b) { return b ? "1" : "0"; }

Json histogram_json(const Histogram &h) {
  return {{"lo", h.lo}, {"hi", h.hi}, {"density", h.density}};
}

Json fit_json(const std::optional<RbFit> &f) {
  if (!f) return nullptr;
  return {{"A", f->a},         {"p", f->p},           {"B", f->b},
          {"se_A", f->se_a},   {"se_p", f->se_p},     {"se_B", f->se_b},
          {"b_fixed", f->b_fixed}, {"degenerate", f->degenerate}};
}

// Minimal SVG writer with fixed-precision coordinates.
class Svg {
 public:
  Svg(double w, double h) : w_(w), h_(h) {}

  void rect(double x, double y, double w, double h, std::string_view fill,
            std::string_view stroke = "none") {
    body_ += fmt::format(
        "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\" "
        "stroke=\"{}\"/>\n",
        x, y, w, h, fill, stroke);
  }
  void line(double x1, double y1, double x2, double y2, std::string_view stroke) {
    body_ += fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"{}\"/>\n", x1,
        y1, x2, y2, stroke);
  }
  void polyline(const std::vector<std::pair<double, double>> &pts, std::string_view stroke) {
    body_ += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" points=\"";
    for (const auto &[x, y] : pts) body_ += fmt::format("{:.2f},{:.2f} ", x, y);
    body_ += "\"/>\n";
  }
  void polygon(const std::vector<std::pair<double, double>> &pts, std::string_view fill) {
    body_ += "<polygon stroke=\"none\" fill-opacity=\"0.2\" fill=\"" + std::string(fill) +
             "\" points=\"";
    for (const auto &[x, y] : pts) body_ += fmt::format("{:.2f},{:.2f} ", x, y);
    body_ += "\"/>\n";
  }
  void circle(double x, double y, double r, std::string_view fill) {
    body_ += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"{:.2f}\" fill=\"{}\"/>\n", x,
                         y, r, fill);
  }
  void text(double x, double y, std::string_view s, int size = 12,
            std::string_view anchor = "start") {
    body_ += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"{}\" font-family=\"sans-serif\" "
        "text-anchor=\"{}\">{}</text>\n",
        x, y, size, anchor, s);
  }

  std::string str() const {
    return fmt::format(
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
               "viewBox=\"0 0 {:.0f} {:.0f}\">\n<rect width=\"100%\" height=\"100%\" "
               "fill=\"white\"/>\n",
               w_, h_, w_, h_) +
           body_ + "</svg>\n";
  }

 private:
  double w_, h_;
  std::string body_;
};

constexpr std::array<const char *, 6> kPalette{"#1f77b4", "#ff7f0e", "#2ca02c",
                                               "#9467bd", "#8c564b", "#e377c2"};

std::string rb_plot(const RbResult &r) {
  const double w = 640, h = 420, left = 60, right = 20, top = 30, bottom = 50;
  Svg svg(w, h);
  const auto &depths = r.config.depths;
  const double lx0 = std::log2(static_cast<double>(*std::min_element(depths.begin(), depths.end())));
  const double lx1 = std::log2(static_cast<double>(*std::max_element(depths.begin(), depths.end())));
  auto px = [&](int m) {
    const double span = lx1 > lx0 ? lx1 - lx0 : 1.0;
    return left + (std::log2(static_cast<double>(m)) - lx0) / span * (w - left - right);
  };
  auto py = [&](double v) { return top + (1.0 - v) / 0.6 * (h - top - bottom); };
  svg.line(left, h - bottom, w - right, h - bottom, "black");
  svg.line(left, top, left, h - bottom, "black");
  for (double v : {0.4, 0.6, 0.8, 1.0}) svg.text(left - 8, py(v) + 4, format_number(v), 11, "end");
  for (int m : depths) svg.text(px(m), h - bottom + 18, std::to_string(m), 11, "middle");
  svg.text(w / 2, h - 10, "sequence length m", 12, "middle");
  svg.text(left, 18, "ground-state probability", 12);
  auto series = [&](auto value, auto lo, auto hi, std::string_view color) {
    std::vector<std::pair<double, double>> pts, band;
    for (std::size_t d = 0; d < depths.size(); ++d) pts.emplace_back(px(depths[d]), py(value(d)));
    for (std::size_t d = 0; d < depths.size(); ++d) band.emplace_back(px(depths[d]), py(hi(d)));
    for (std::size_t d = depths.size(); d-- > 0;) band.emplace_back(px(depths[d]), py(lo(d)));
    svg.polygon(band, color);
    svg.polyline(pts, color);
    for (const auto &[x, y] : pts) svg.circle(x, y, 3, color);
  };
  for (std::size_t i = 0; i < r.config.nodes.size(); ++i) {
    series([&](std::size_t d) { return r.nodes[d][i].mean; },
           [&](std::size_t d) { return r.nodes[d][i].bootstrap.ci_low; },
           [&](std::size_t d) { return r.nodes[d][i].bootstrap.ci_high; },
           kPalette[i % kPalette.size()]);
    svg.text(w - right - 110, top + 14 * (i + 1), "c = " + format_number(r.config.nodes[i]), 11);
  }
  series([&](std::size_t d) { return r.mitigated[d].value; },
         [&](std::size_t d) { return r.mitigated[d].bootstrap.ci_low; },
         [&](std::size_t d) { return r.mitigated[d].bootstrap.ci_high; }, "#d62728");
  svg.text(w - right - 110, top + 14 * (r.config.nodes.size() + 1), "mitigated", 11);
  return svg.str();
}

std::string qst_plot(const TomographyResult &t) {
  const double w = 520, h = 360, left = 50, top = 40, base = 180, scale = 120;
  Svg svg(w, h);
  svg.text(left, 20, "state " + std::string(target_name(t.target)), 13);
  svg.line(left, base, w - 20, base, "black");
  const std::array<const char *, 3> axes{"X", "Y", "Z"};
  for (std::size_t a = 0; a < 3; ++a) {
    const double x0 = left + 20 + a * 150.0;
    svg.text(x0 + 45, base + scale + 30, axes[a], 12, "middle");
    for (std::size_t l = 0; l < 3; ++l) {
      const double v = t.levels[l].expectation[a];
      const double x = x0 + l * 30.0;
      svg.rect(x, v >= 0 ? base - v * scale : base, 26, std::abs(v) * scale, kPalette[l]);
    }
  }
  for (std::size_t l = 0; l < 3; ++l) {
    svg.rect(left, top + l * 16.0 - 9, 10, 10, kPalette[l]);
    svg.text(left + 14, top + l * 16.0, fmt::format("{}  F = {}", level_name(t.levels[l].level),
                                                    format_number(t.levels[l].fidelity)),
             11);
  }
  return svg.str();
}

}  // namespace

ExperimentOutput report_rb(const RbResult &r, const MethodComparison *comparison) {
  ExperimentOutput out;
  out.table.columns = {"kind", "depth", "c", "param", "value", "se", "ci_low", "ci_high", "flag"};
  Json survival = Json::array();
  for (std::size_t d = 0; d < r.config.depths.size(); ++d) {
    Json row = Json::array();
    for (std::size_t i = 0; i < r.config.nodes.size(); ++i) {
      const SurvivalPoint &sp = r.nodes[d][i];
      out.table.rows.push_back({"node", std::to_string(r.config.depths[d]), num(r.config.nodes[i]),
                                "survival", num(sp.mean), num(sp.se), num(sp.bootstrap.ci_low),
                                num(sp.bootstrap.ci_high), "0"});
      row.push_back({{"c", r.config.nodes[i]},
                     {"mean", sp.mean},
                     {"se", sp.se},
                     {"ci_low", sp.bootstrap.ci_low},
                     {"ci_high", sp.bootstrap.ci_high},
                     {"per_sequence", sp.per_sequence},
                     {"histogram", histogram_json(sp.bootstrap.histogram)}});
    }
    survival.push_back(row);
  }
  Json mitigated = Json::array();
  for (std::size_t d = 0; d < r.config.depths.size(); ++d) {
    const MitigatedPoint &mp = r.mitigated[d];
    out.table.rows.push_back({"mitigated", std::to_string(r.config.depths[d]), "0", "survival",
                              num(mp.value), num(mp.se), num(mp.bootstrap.ci_low),
                              num(mp.bootstrap.ci_high), flag(mp.clipped)});
    mitigated.push_back({{"depth", r.config.depths[d]},
                         {"value", mp.value},
                         {"raw_value", mp.raw_value},
                         {"se", mp.se},
                         {"clipped", mp.clipped},
                         {"ci_low", mp.bootstrap.ci_low},
                         {"ci_high", mp.bootstrap.ci_high},
                         {"histogram", histogram_json(mp.bootstrap.histogram)}});
  }
  auto fit_rows = [&](const std::string &kind, double c, const std::optional<RbFit> &f) {
    if (!f) {
      out.table.rows.push_back({kind, "", num(c), "p", "", "", "", "", "fit_failed"});
      return;
    }
    const std::string fl = f->degenerate ? "degenerate" : (f->b_fixed ? "b_fixed" : "0");
    out.table.rows.push_back({kind, "", num(c), "A", num(f->a), num(f->se_a), "", "", fl});
    out.table.rows.push_back({kind, "", num(c), "p", num(f->p), num(f->se_p), "", "", fl});
    out.table.rows.push_back({kind, "", num(c), "B", num(f->b), num(f->se_b), "", "", fl});
  };
  Json node_fits = Json::array();
  for (std::size_t i = 0; i < r.node_fits.size(); ++i) {
    fit_rows("fit", r.config.nodes[i], r.node_fits[i]);
    node_fits.push_back(fit_json(r.node_fits[i]));
  }
  fit_rows("fit_mitigated", 0.0, r.mitigated_fit);
  out.results = {{"experiment", "rb"},
                 {"depths", r.config.depths},
                 {"nodes", r.config.nodes},
                 {"method", std::string(method_name(r.config.method))},
                 {"extrapolation",
                  std::string(extrapolation_name(r.config.effective_extrapolation()))},
                 {"survival", survival},
                 {"mitigated", mitigated},
                 {"fits", {{"nodes", node_fits}, {"mitigated", fit_json(r.mitigated_fit)}}}};
  if (comparison) {
    Json rows = Json::array();
    for (const auto &row : comparison->rows) {
      const std::string m(method_name(row.method));
      const std::string depth = std::to_string(row.depth);
      out.table.rows.push_back({"compare_mitigated", depth, "", m,
                                num(row.median_mitigated_deviation), "", "", "", "0"});
      out.table.rows.push_back({"compare_unmitigated", depth, "", m,
                                num(row.median_unmitigated_deviation), "", "", "", "0"});
      rows.push_back({{"method", m},
                      {"depth", row.depth},
                      {"median_mitigated_deviation", row.median_mitigated_deviation},
                      {"median_unmitigated_deviation", row.median_unmitigated_deviation}});
    }
    out.results["method_comparison"] = {{"rows", rows},
                                        {"global_fold_best", comparison->global_fold_best}};
  }
  out.plots.emplace_back("rb_survival.svg", rb_plot(r));
  return out;
}

ExperimentOutput report_qst(const std::vector<TomographyResult> &results) {
  ExperimentOutput out;
  out.table.columns = {"target", "level", "quantity", "value", "se", "flag"};
  Json states = Json::array();
  const std::array<const char *, 3> axes{"X", "Y", "Z"};
  for (const auto &t : results) {
    const std::string name(target_name(t.target));
    const auto &cal = t.calibration;
    for (auto [q, v] : std::vector<std::pair<std::string, double>>{
             {"p_a", cal.p_a},
             {"p_b", cal.p_b},
             {"p_pi", cal.p_pi},
             {"f_down", cal.calibration.matrix.f_down()},
             {"f_up", cal.calibration.matrix.f_up()}}) {
      out.table.rows.push_back({name, "calibration", q, num(v), "", flag(cal.calibration.clipped)});
    }
    Json levels = Json::array();
    for (const auto &l : t.levels) {
      const std::string level(level_name(l.level));
      for (std::size_t a = 0; a < 3; ++a) {
        out.table.rows.push_back(
            {name, level, axes[a], num(l.expectation[a]), num(l.se[a]), flag(l.clipped)});
      }
      out.table.rows.push_back({name, level, "fidelity", num(l.fidelity), "", "0"});
      const BlochVector b = bloch_from_rho(l.rho);
      levels.push_back({{"level", level},
                        {"expectation", l.expectation},
                        {"se", l.se},
                        {"clipped", l.clipped},
                        {"bloch", {b.rx, b.ry, b.rz}},
                        {"fidelity", l.fidelity}});
    }
    Json nodes = Json::array();
    for (std::size_t a = 0; a < 3; ++a) {
      for (const auto &p : t.node_values[a]) {
        out.table.rows.push_back(
            {name, "node_c" + format_number(p.c), std::string("rem_") + axes[a], num(p.value),
             num(p.se), "0"});
        nodes.push_back({{"axis", axes[a]}, {"c", p.c}, {"value", p.value}, {"se", p.se}});
      }
    }
    states.push_back({{"target", name},
                      {"calibration",
                       {{"p_a", cal.p_a},
                        {"p_b", cal.p_b},
                        {"p_pi", cal.p_pi},
                        {"f_down", cal.calibration.matrix.f_down()},
                        {"f_up", cal.calibration.matrix.f_up()},
                        {"clipped", cal.calibration.clipped}}},
                      {"shots_per_node", t.shots_per_node},
                      {"levels", levels},
                      {"node_values", nodes},
                      {"extrapolated_components", t.extrapolation_calls}});
    out.plots.emplace_back("qst_" + name + ".svg", qst_plot(t));
  }
  out.results = {{"experiment", "qst"}, {"states", states}};
  return out;
}

ExperimentOutput report_gst(const GstDesign &design, const LlrReport &report,
                            const std::vector<GstCounts> &counts,
                            const std::vector<double> &model_probs) {
  ExperimentOutput out;
  out.table.columns = {"scope", "label", "germ", "L", "k", "llr", "threshold", "violated",
                       "severity"};
  auto row = [&](const std::string &scope, const LlrEntry &e) {
    out.table.rows.push_back(
        {scope, e.label, e.germ >= 0 ? design.germs[static_cast<std::size_t>(e.germ)] : "all",
         std::to_string(e.length), std::to_string(e.k), num(e.llr), num(e.threshold),
         flag(e.violated), num(e.severity)});
  };
  for (const auto &e : report.boxes) row("box", e);
  for (const auto &e : report.lengths) row("length", e);
  auto entry_json = [&](const LlrEntry &e) {
    return Json{{"label", e.label}, {"germ", e.germ >= 0 ? design.germs[static_cast<std::size_t>(e.germ)] : "all"},
                {"L", e.length},    {"k", e.k},
                {"llr", e.llr},     {"threshold", e.threshold},
                {"violated", e.violated}, {"severity", e.severity}};
  };
  Json boxes = Json::array(), lengths = Json::array(), circuits = Json::array();
  for (const auto &e : report.boxes) boxes.push_back(entry_json(e));
  for (const auto &e : report.lengths) lengths.push_back(entry_json(e));
  for (const auto &c : design.circuits) {
    const auto i = static_cast<std::size_t>(c.id);
    circuits.push_back({{"id", c.id},
                        {"circuit", c.text},
                        {"L", c.length},
                        {"n", counts[i].n},
                        {"n_up", counts[i].n_up},
                        {"model_p_up", model_probs[i]}});
  }
  out.results = {{"experiment", "gst-check"},
                 {"threshold_rule", std::string(threshold_rule_name(report.rule))},
                 {"q", report.q},
                 {"fixed_threshold", report.fixed_threshold},
                 {"boxes", boxes},
                 {"lengths", lengths},
                 {"circuits", circuits}};

  const double cell = 36, left = 150, top = 40;
  Svg svg(left + cell * design.lengths.size() + 20, top + cell * design.germs.size() + 40);
  for (std::size_t li = 0; li < design.lengths.size(); ++li) {
    svg.text(left + cell * li + cell / 2, top - 8, "L=" + std::to_string(design.lengths[li]), 11,
             "middle");
  }
  for (std::size_t g = 0; g < design.germs.size(); ++g) {
    svg.text(left - 8, top + cell * g + cell / 2 + 4, design.germs[g], 11, "end");
  }
  for (const auto &e : report.boxes) {
    const auto li = static_cast<std::size_t>(
        std::find(design.lengths.begin(), design.lengths.end(), e.length) - design.lengths.begin());
    svg.rect(left + cell * li, top + cell * e.germ, cell - 2, cell - 2,
             e.violated ? "#d62728" : "#bbbbbb");
  }
  out.plots.emplace_back("gst_boxes.svg", svg.str());
  return out;
}

ExperimentOutput report_chevron(const ChevronGrid &grid) {
  ExperimentOutput out;
  out.table.columns = {"frequency_hz", "offset_hz", "duration_s", "p1"};
  for (std::size_t f = 0; f < grid.freq_offsets_hz.size(); ++f) {
    for (std::size_t t = 0; t < grid.durations_s.size(); ++t) {
      out.table.rows.push_back({num(grid.center_frequency_hz + grid.freq_offsets_hz[f]),
                                num(grid.freq_offsets_hz[f]), num(grid.durations_s[t]),
                                num(grid.at(f, t))});
    }
  }
  out.results = {{"experiment", "chevron"},
                 {"center_frequency_hz", grid.center_frequency_hz},
                 {"freq_offsets_hz", grid.freq_offsets_hz},
                 {"durations_s", grid.durations_s},
                 {"p1", grid.p1}};
  const double left = 70, top = 30, pw = 480, ph = 320;
  Svg svg(left + pw + 20, top + ph + 50);
  const double cw = pw / grid.durations_s.size();
  const double ch = ph / grid.freq_offsets_hz.size();
  for (std::size_t f = 0; f < grid.freq_offsets_hz.size(); ++f) {
    for (std::size_t t = 0; t < grid.durations_s.size(); ++t) {
      const int level = static_cast<int>(std::lround(255.0 * (1.0 - grid.at(f, t))));
      svg.rect(left + cw * t, top + ch * f, cw, ch, fmt::format("rgb(255,{},{})", level, level));
    }
  }
  svg.text(left + pw / 2, top + ph + 35, "pulse duration", 12, "middle");
  svg.text(8, top - 10, fmt::format("center {} Hz", format_number(grid.center_frequency_hz)), 11);
  out.plots.emplace_back("chevron.svg", svg.str());
  return out;
}

ExperimentOutput report_rem(const RemCalibrationRun &run, const RemSettings &settings) {
  ExperimentOutput out;
  out.table.columns = {"quantity", "value"};
  const auto &c = run.calibration;
  for (auto [q, v] : std::vector<std::pair<std::string, double>>{
           {"p_a", run.p_a},
           {"p_b", run.p_b},
           {"p_pi", run.p_pi},
           {"gamma", settings.gamma},
           {"raw_f_down", c.raw_f_down},
           {"raw_f_up", c.raw_f_up},
           {"f_down", c.matrix.f_down()},
           {"f_up", c.matrix.f_up()},
           {"clipped", c.clipped ? 1.0 : 0.0}}) {
    out.table.rows.push_back({q, num(v)});
  }
  out.results = {{"experiment", "rem-calibrate"},
                 {"shots", settings.shots},
                 {"gamma", settings.gamma},
                 {"equations", settings.equations == RemEquations::kVerbatim ? "verbatim"
                                                                             : "flip_consistent"},
                 {"p_a", run.p_a},
                 {"p_b", run.p_b},
                 {"p_pi", run.p_pi},
                 {"raw_f_down", c.raw_f_down},
                 {"raw_f_up", c.raw_f_up},
                 {"f_down", c.matrix.f_down()},
                 {"f_up", c.matrix.f_up()},
                 {"clipped", c.clipped}};
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig &cfg, int jobs) {
  cfg.validate();
  const NoiseModel nm = cfg.noise.resolved();
  EngineConfig engine = cfg.engine;
  engine.jobs = jobs;
  engine.seed = cfg.seed;
  const GateTiming timing = cfg.device.timing();
  switch (cfg.type) {
    case ExperimentType::kRb: {
      RbConfig rb = cfg.rb;
      rb.seed = cfg.seed;
      const RbResult result = srb_run(rb, nm, engine, timing);
      if (cfg.rb_compare.methods.empty()) return report_rb(result);
      RbConfig base = rb;
      base.seed = derive_seed(cfg.seed, 1);
      const MethodComparison cmp = compare_amplification_methods(
          base, nm, engine, cfg.rb_compare.methods, cfg.rb_compare.n_seeds, timing);
      return report_rb(result, &cmp);
    }
    case ExperimentType::kQst: {
      std::vector<TomographyResult> results;
      for (std::size_t i = 0; i < cfg.qst.targets.size(); ++i) {
        QstPlan plan = cfg.qst.plan;
        plan.seed = derive_seed(cfg.seed, i);
        results.push_back(qst_run(cfg.qst.targets[i], nm, engine, plan, timing));
      }
      return report_qst(results);
    }
    case ExperimentType::kGstCheck: {
      const GstDesign &design = gst_lite_design();
      const std::vector<double> data =
          simulate_probabilities(design, nm, engine, timing, derive_seed(cfg.seed, 1));
      const std::vector<GstCounts> counts =
          sample_counts(data, cfg.gst.shots_per_circuit, derive_seed(cfg.seed, 2));
      const std::vector<double> model =
          cfg.gst.model == GstModelSource::kMarkov
              ? model_probabilities(design,
                                    estimate_markov_model(nm, engine, timing, derive_seed(cfg.seed, 3)))
              : read_model_probabilities(cfg.gst.model_file, design);
      const LlrReport report =
          gst_llr(counts, model, design, cfg.gst.q, cfg.gst.rule, cfg.gst.fixed_threshold);
      return report_gst(design, report, counts, model);
    }
    case ExperimentType::kChevron:
      return report_chevron(chevron_scan(cfg.chevron.grid(cfg.device), nm, engine));
    case ExperimentType::kRemCalibrate:
      return report_rem(rem_calibration_run(nm, engine, timing, cfg.rem.shots, cfg.rem.gamma,
                                            cfg.rem.equations, cfg.seed),
                        cfg.rem);
  }
  throw ValidationError("unknown experiment type");
}

std::vector<std::string> write_outputs(const ExperimentOutput &out, const ExperimentConfig &cfg,
                                       const std::string &dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto write = [&](const std::string &name, const std::string &contents) {
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << contents;
    written.push_back(path);
  };
  if (cfg.output.csv) write("results.csv", to_csv(out.table));
  if (cfg.output.json) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    // The output block is left out so the file does not depend on where it
    // was written.
    Json config = config_to_json(cfg);
    config.erase("output");
    doc["config"] = config;
    doc["results"] = out.results;
    write("results.json", doc.dump(2) + "\n");
  }
  if (cfg.output.svg) {
    for (const auto &[name, svg] : out.plots) write(name, svg);
  }
  return written;
}

}  // namespace znelab
