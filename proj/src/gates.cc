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

#include "znelab/gates.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "znelab/errors.h"

namespace znelab {

namespace {

constexpr double kPi = std::numbers::pi;

struct PrimitiveInfo {
  Primitive p;
  std::string_view label;
  Vec3 axis;
  double angle;
  Primitive inverse;
};

constexpr Vec3 kXAxis{1.0, 0.0, 0.0};
constexpr Vec3 kYAxis{0.0, 1.0, 0.0};

constexpr std::array<PrimitiveInfo, 9> kPrimitives{{
    {Primitive::kIdle, "I", kXAxis, 0.0, Primitive::kIdle},
    {Primitive::kX90, "X/2", kXAxis, kPi / 2, Primitive::kMinusX90},
    {Primitive::kMinusX90, "-X/2", kXAxis, -kPi / 2, Primitive::kX90},
    {Primitive::kX180, "X", kXAxis, kPi, Primitive::kMinusX180},
    {Primitive::kMinusX180, "-X", kXAxis, -kPi, Primitive::kX180},
    {Primitive::kY90, "Y/2", kYAxis, kPi / 2, Primitive::kMinusY90},
    {Primitive::kMinusY90, "-Y/2", kYAxis, -kPi / 2, Primitive::kY90},
    {Primitive::kY180, "Y", kYAxis, kPi, Primitive::kMinusY180},
    {Primitive::kMinusY180, "-Y", kYAxis, -kPi, Primitive::kY180},
}};

const PrimitiveInfo &info(Primitive p) { return kPrimitives[static_cast<std::size_t>(p)]; }

// Global phase removed so the first non-negligible entry is real positive.
Mat2 canonical_phase(const Mat2 &u) {
  for (const auto &v : u.m) {
    if (std::abs(v) > 1e-6) return u * (std::conj(v) / std::abs(v));
  }
  return u;
}

bool equal_up_to_phase(const Mat2 &a, const Mat2 &b) {
  return phase_insensitive_distance(a, b) < 1e-9;
}

// Axis-angle form of a 2x2 unitary with angle in [0, pi].
void axis_angle(const Mat2 &u, Vec3 *axis, double *angle) {
  Complex phase = std::sqrt(u.det());
  Mat2 v = u * (1.0 / phase);
  double c = 0.5 * v.trace().real();
  Vec3 sn{-0.5 * (v * Mat2::pauli_x()).trace().imag(),
          -0.5 * (v * Mat2::pauli_y()).trace().imag(),
          -0.5 * (v * Mat2::pauli_z()).trace().imag()};
  double s = sn.norm();
  if (s < 1e-12) {
    *axis = kXAxis;
    *angle = 0.0;
    return;
  }
  Vec3 n = sn * (1.0 / s);
  double theta = 2.0 * std::atan2(s, c);
  if (theta > kPi) {
    theta = 2.0 * kPi - theta;
    n = n * -1.0;
  }
  *axis = n;
  *angle = theta;
}

std::vector<CliffordElement> build_clifford_table() {
  struct Node {
    Mat2 u;
    std::vector<Primitive> word;
  };
  std::vector<CliffordElement> table;
  std::deque<Node> frontier{{Mat2::identity(), {}}};
  const std::array<Primitive, 2> generators{Primitive::kX90, Primitive::kY90};
  while (!frontier.empty()) {
    Node node = std::move(frontier.front());
    frontier.pop_front();
    bool seen = std::any_of(table.begin(), table.end(), [&](const CliffordElement &e) {
      return equal_up_to_phase(e.unitary, node.u);
    });
    if (seen) continue;
    CliffordElement e;
    e.index = static_cast<int>(table.size());
    e.word = node.word.empty() ? std::vector<Primitive>{Primitive::kIdle} : node.word;
    e.unitary = canonical_phase(node.u);
    table.push_back(e);
    for (Primitive g : generators) {
      Node next{rotation(info(g).axis, info(g).angle) * node.u, node.word};
      next.word.push_back(g);
      frontier.push_back(std::move(next));
    }
  }
  if (table.size() != 24) {
    throw ConsistencyError("Clifford closure did not produce 24 elements");
  }
  return table;
}

struct CliffordAlgebra {
  std::vector<CliffordElement> table;
  std::array<std::array<int, 24>, 24> product{};  // product[a][b] = a then b
  std::array<int, 24> inverse{};
};

const CliffordAlgebra &algebra() {
  static const CliffordAlgebra alg = [] {
    CliffordAlgebra a;
    a.table = build_clifford_table();
    auto find = [&](const Mat2 &u) {
      for (const auto &e : a.table) {
        if (equal_up_to_phase(e.unitary, u)) return e.index;
      }
      throw ConsistencyError("Clifford product fell outside the table");
    };
    for (int i = 0; i < 24; ++i) {
      for (int j = 0; j < 24; ++j) {
        a.product[i][j] = find(a.table[j].unitary * a.table[i].unitary);
      }
    }
    for (int i = 0; i < 24; ++i) a.inverse[i] = find(a.table[i].unitary.adjoint());
    return a;
  }();
  return alg;
}

double wrap_phase(double phi) { return std::remainder(phi, 2.0 * kPi); }

}  // namespace

std::string_view primitive_label(Primitive p) { return info(p).label; }

std::optional<Primitive> primitive_from_label(std::string_view label) {
  for (const auto &pi : kPrimitives) {
    if (pi.label == label) return pi.p;
  }
  return std::nullopt;
}

Primitive primitive_inverse(Primitive p) { return info(p).inverse; }
Vec3 primitive_axis(Primitive p) { return info(p).axis; }
double primitive_angle(Primitive p) { return info(p).angle; }

double GateTiming::x90_duration() const { return (kPi / 2) / omega0; }

double GateTiming::idle() const { return idle_duration < 0.0 ? x90_duration() : idle_duration; }

double GateTiming::duration_of(Primitive p) const {
  if (p == Primitive::kIdle) return idle();
  return std::abs(info(p).angle) / omega0;
}

GateOp make_gate(Primitive p, const GateTiming &timing) {
  const auto &pi = info(p);
  return GateOp{std::string(pi.label), pi.axis, pi.angle, timing.duration_of(p), {p}, std::nullopt};
}

GateOp dagger(const GateOp &g) {
  GateOp d = g;
  d.angle = -g.angle;
  d.pulses.assign(g.pulses.rbegin(), g.pulses.rend());
  for (auto &p : d.pulses) p = primitive_inverse(p);
  if (g.clifford) {
    d.clifford = clifford_inverse(*g.clifford);
    constexpr std::string_view kSuffix = "^dg";
    if (g.label.ends_with(kSuffix)) {
      d.label = g.label.substr(0, g.label.size() - kSuffix.size());
    } else {
      d.label = g.label + std::string(kSuffix);
    }
  } else if (g.pulses.size() == 1) {
    d.label = std::string(primitive_label(d.pulses.front()));
  } else {
    d.label = g.label + "^dg";
  }
  return d;
}

double Circuit::total_duration() const {
  double t = 0.0;
  for (const auto &op : ops) t += op.duration;
  return t;
}

Mat2 Circuit::unitary() const {
  Mat2 u = Mat2::identity();
  for (const auto &op : ops) u = op.unitary() * u;
  return u;
}

const std::vector<CliffordElement> &clifford_table() { return algebra().table; }

std::optional<int> clifford_lookup(const Mat2 &u) {
  for (const auto &e : algebra().table) {
    if (equal_up_to_phase(e.unitary, u)) return e.index;
  }
  return std::nullopt;
}

int clifford_inverse(int index) { return algebra().inverse.at(index); }

int clifford_compose(std::span<const int> sequence) {
  if (sequence.empty()) throw ValidationError("clifford_compose: empty sequence");
  const auto &alg = algebra();
  int acc = 0;
  for (int k : sequence) {
    if (k < 0 || k >= 24) throw ValidationError("clifford index out of range");
    acc = alg.product[acc][k];
  }
  return acc;
}

int recovery_gate(std::span<const int> sequence) {
  int composed = clifford_compose(sequence);
  int rec = algebra().inverse[composed];
  if (algebra().product[composed][rec] != 0) {
    throw ConsistencyError("recovery gate does not close the sequence");
  }
  return rec;
}

GateOp make_clifford_gate(int index, const GateTiming &timing) {
  const auto &e = clifford_table().at(index);
  GateOp g;
  g.label = "C" + std::to_string(index);
  axis_angle(e.unitary, &g.axis, &g.angle);
  g.pulses = e.word;
  g.duration = 0.0;
  for (Primitive p : e.word) g.duration += timing.duration_of(p);
  g.clifford = index;
  return g;
}

Circuit fold_global(const Circuit &c, int n) {
  if (n < 0) throw ValidationError("fold_global: n must be non-negative");
  Circuit out;
  out.stretch_factor = c.stretch_factor * (2 * n + 1);
  out.fold_count = c.fold_count + n;
  out.ops.reserve(c.ops.size() * (2 * n + 1));
  out.ops = c.ops;
  std::vector<GateOp> inverse;
  inverse.reserve(c.ops.size());
  for (auto it = c.ops.rbegin(); it != c.ops.rend(); ++it) inverse.push_back(dagger(*it));
  for (int k = 0; k < n; ++k) {
    out.ops.insert(out.ops.end(), inverse.begin(), inverse.end());
    out.ops.insert(out.ops.end(), c.ops.begin(), c.ops.end());
  }
  return out;
}

Circuit fold_local(const Circuit &c, int n) {
  if (n < 0) throw ValidationError("fold_local: n must be non-negative");
  Circuit out;
  out.stretch_factor = c.stretch_factor * (2 * n + 1);
  out.fold_count = c.fold_count + n;
  out.ops.reserve(c.ops.size() * (2 * n + 1));
  for (const auto &g : c.ops) {
    out.ops.push_back(g);
    GateOp gd = dagger(g);
    for (int k = 0; k < n; ++k) {
      out.ops.push_back(gd);
      out.ops.push_back(g);
    }
  }
  return out;
}

double PulseSchedule::total_duration() const {
  double t = 0.0;
  for (const auto &s : segments) t += s.duration;
  return t;
}

double PulseSchedule::max_amplitude() const {
  double a = 0.0;
  for (const auto &s : segments) a = std::max(a, s.amplitude);
  return a;
}

Mat2 PulseSchedule::unitary() const {
  Mat2 u = Mat2::identity();
  for (const auto &s : segments) u = segment_propagator(s, 0.0, s.duration) * u;
  return u;
}

PulseSchedule to_pulse_schedule(const Circuit &c, double omega0) {
  if (!(omega0 > 0.0)) throw ValidationError("to_pulse_schedule: omega0 must be positive");
  PulseSchedule s;
  for (const auto &op : c.ops) {
    double rotating_time = 0.0;
    int idles = 0;
    for (Primitive p : op.pulses) {
      if (p == Primitive::kIdle) {
        ++idles;
      } else {
        rotating_time += std::abs(info(p).angle) / omega0;
      }
    }
    double idle_each = idles > 0 ? std::max(0.0, op.duration - rotating_time) / idles : 0.0;
    for (Primitive p : op.pulses) {
      const auto &pi = info(p);
      if (p == Primitive::kIdle) {
        if (idle_each > 0.0) s.segments.push_back({idle_each, 0.0, 0.0, 0.0});
        continue;
      }
      double phase = std::atan2(pi.axis.y, pi.axis.x);
      if (pi.angle < 0.0) phase += kPi;
      s.segments.push_back({std::abs(pi.angle) / omega0, omega0, wrap_phase(phase), 0.0});
    }
  }
  s.stretch_factor = c.stretch_factor;
  return s;
}

PulseSchedule stretch(const PulseSchedule &s, double c) {
  if (!(c >= 1.0)) throw ValidationError("stretch: factor must be >= 1");
  PulseSchedule out = s;
  for (auto &seg : out.segments) {
    seg.duration *= c;
    seg.amplitude /= c;
  }
  out.stretch_factor = s.stretch_factor * c;
  return out;
}

Mat2 segment_propagator(const PulseSegment &seg, double delta, double dt) {
  Vec3 b{0.5 * seg.amplitude * std::cos(seg.phase), 0.5 * seg.amplitude * std::sin(seg.phase),
         0.5 * (seg.detuning + delta)};
  return exp_pauli_unchecked(0.0, b, dt);
}

std::string circuit_to_text(const Circuit &c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.ops.size(); ++i) {
    if (i) out << ' ';
    out << c.ops[i].label;
  }
  return out.str();
}

Circuit circuit_from_text(std::string_view text, const GateTiming &timing) {
  Circuit c;
  std::string body;
  // Drop comments line by line.
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    line = line.substr(0, line.find('#'));
    body.append(line);
    body.push_back(' ');
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    if (auto p = primitive_from_label(tok)) {
      c.ops.push_back(make_gate(*p, timing));
      continue;
    }
    if (tok.size() > 1 && tok[0] == 'C') {
      std::string digits = tok.substr(1);
      bool dg = false;
      if (digits.ends_with("^dg")) {
        dg = true;
        digits.resize(digits.size() - 3);
      }
      if (!digits.empty() && digits.size() <= 2 && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        int k = std::stoi(digits);
        if (k < 24) {
          GateOp g = make_clifford_gate(k, timing);
          c.ops.push_back(dg ? dagger(g) : g);
          continue;
        }
      }
    }
    throw ValidationError("unknown gate token '" + tok + "'");
  }
  return c;
}

}  // namespace znelab
