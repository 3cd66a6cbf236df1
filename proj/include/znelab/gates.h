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

#ifndef ZNELAB_GATES_H_
#define ZNELAB_GATES_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "znelab/qmath.h"

namespace znelab {

/// Physical pulses the drive can realize directly. Each is a rotation about an
/// equatorial axis.
enum class Primitive : std::uint8_t {
  kIdle,
  kX90,
  kMinusX90,
  kX180,
  kMinusX180,
  kY90,
  kMinusY90,
  kY180,
  kMinusY180,
};

std::string_view primitive_label(Primitive p);
std::optional<Primitive> primitive_from_label(std::string_view label);
Primitive primitive_inverse(Primitive p);
/// Rotation axis (unit, in the xy plane) and signed angle in radians.
Vec3 primitive_axis(Primitive p);
double primitive_angle(Primitive p);

/// Device timing used to assign durations to gates.
struct GateTiming {
  /// Rabi angular frequency of a nominal pulse, rad/s.
  double omega0 = 2.0 * 3.14159265358979323846 * 4.0e6;
  /// Idle gate duration in seconds; negative means "one X/2 duration".
  double idle_duration = -1.0;

  double x90_duration() const;
  double idle() const;
  double duration_of(Primitive p) const;
};

/// A circuit element: an axis-angle rotation plus the primitive pulse word
/// that realizes it on hardware.
struct GateOp {
  std::string label;
  Vec3 axis{1.0, 0.0, 0.0};
  double angle = 0.0;
  double duration = 0.0;
  std::vector<Primitive> pulses;
  /// Set when the op is a Clifford group element (or its dagger).
  std::optional<int> clifford;

  Mat2 unitary() const { return rotation(axis, angle); }
};

GateOp make_gate(Primitive p, const GateTiming &timing);

/// G^dagger: same axis, negated angle, reversed and inverted pulse word.
GateOp dagger(const GateOp &g);

struct Circuit {
  std::vector<GateOp> ops;
  /// Noise stretch factor this circuit was amplified by (1 for the original).
  double stretch_factor = 1.0;
  /// Number of (U^dagger U) insertions applied by folding.
  int fold_count = 0;

  std::size_t size() const { return ops.size(); }
  bool empty() const { return ops.empty(); }
  double total_duration() const;
  /// Product of gate unitaries, last gate leftmost.
  Mat2 unitary() const;
};

// ---------------------------------------------------------------------------
// Single-qubit Clifford group.

struct CliffordElement {
  int index = 0;
  /// Shortest word over {X/2, Y/2}; the identity is the single idle [I].
  std::vector<Primitive> word;
  Mat2 unitary;
};

/// The 24 single-qubit Cliffords, built by breadth-first closure of
/// {X/2, Y/2}. Index 0 is the identity. Computed once.
const std::vector<CliffordElement> &clifford_table();

/// Table index of the element equal to `u` up to global phase, or nullopt.
std::optional<int> clifford_lookup(const Mat2 &u);

int clifford_inverse(int index);
int clifford_compose(std::span<const int> sequence);
/// The element that returns the composed sequence to the identity.
/// Throws ConsistencyError if the composition is somehow not in the table.
int recovery_gate(std::span<const int> sequence);

/// Clifford element as a circuit op with axis-angle form and summed duration.
GateOp make_clifford_gate(int index, const GateTiming &timing);

// ---------------------------------------------------------------------------
// Noise amplification.

/// U -> U (U^dagger U)^n. Stretch factor multiplies by 2n+1.
Circuit fold_global(const Circuit &c, int n);
/// G_i -> G_i (G_i^dagger G_i)^n for every gate.
Circuit fold_local(const Circuit &c, int n);

struct PulseSegment {
  double duration = 0.0;   // s
  double amplitude = 0.0;  // rad/s
  double phase = 0.0;      // rad
  double detuning = 0.0;   // rad/s
};

struct PulseSchedule {
  std::vector<PulseSegment> segments;
  double stretch_factor = 1.0;

  double total_duration() const;
  double max_amplitude() const;
  /// Noiseless propagator of the whole schedule.
  Mat2 unitary() const;
};

/// Square pulses at amplitude omega0 for every primitive; idle gates become
/// zero-amplitude segments of the gate's duration. Zero-length idles drop.
PulseSchedule to_pulse_schedule(const Circuit &c, double omega0);

/// Duration x c, amplitude / c. Throws ValidationError for c < 1.
PulseSchedule stretch(const PulseSchedule &s, double c);

/// Drive Hamiltonian of one segment with extra detuning delta (rad/s):
/// H = (detuning + delta)/2 sz + amplitude/2 (cos phase sx + sin phase sy).
Mat2 segment_propagator(const PulseSegment &seg, double delta, double dt);

// ---------------------------------------------------------------------------
// Text form: whitespace separated tokens, '#' starts a comment. Tokens are
// primitive labels (I, X/2, -X/2, X, -X, Y/2, -Y/2, Y, -Y), Clifford
// elements C<k>, and their daggers C<k>^dg.

std::string circuit_to_text(const Circuit &c);
/// Throws ValidationError naming the offending token.
Circuit circuit_from_text(std::string_view text, const GateTiming &timing);

}  // namespace znelab

#endif  // ZNELAB_GATES_H_
