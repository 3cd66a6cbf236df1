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

#ifndef ZNELAB_NOISE_H_
#define ZNELAB_NOISE_H_

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "znelab/qmath.h"

namespace znelab {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Everything that makes the simulated qubit imperfect.
///
/// Gate-coupled noise (p_dep) attaches to every executed gate, including
/// folded copies; time-coupled noise (T1, T_phi, detuning processes) attaches
/// to elapsed wall time. Readout and initialization only enter through the
/// measurement pipeline.
struct NoiseModel {
  double p_dep = 0.0;             // per-gate depolarizing probability
  double t1 = kInfinity;          // s
  double t_phi = kInfinity;       // s
  double sigma_qs = 0.0;          // quasi-static detuning std, rad/s
  double sigma_ou = 0.0;          // OU stationary std, rad/s
  double tau_c = 1e-5;            // OU correlation time, s
  double readout_f_down = 1.0;    // P(read down | down)
  double readout_f_up = 1.0;      // P(read up | up)
  double init_fidelity = 1.0;     // P(prepared ground | asked for ground)

  /// Throws ValidationError naming the first offending field.
  void validate() const;
  bool has_decay() const { return t1 < kInfinity || t_phi < kInfinity; }
  bool has_time_varying_detuning() const { return sigma_ou > 0.0; }
  bool has_stochastic_detuning() const { return sigma_qs > 0.0 || sigma_ou > 0.0; }
  bool ideal_spam() const {
    return readout_f_down == 1.0 && readout_f_up == 1.0 && init_fidelity == 1.0;
  }
};

/// rho -> (1-p) rho + p I/2.
DensityMatrix apply_depolarizing(const DensityMatrix &rho, double p);
Mat2 depolarize(const Mat2 &rho, double p);

/// Amplitude damping toward |0> at rate 1/T1 followed by pure dephasing so
/// that coherences decay at 1/T2 = 1/(2 T1) + 1/T_phi.
DensityMatrix apply_decay(const DensityMatrix &rho, double duration, double t1, double t_phi);
Mat2 decay(const Mat2 &rho, double duration, double t1, double t_phi);

/// Deterministic 64-bit seed derivation (splitmix64 finalizer applied to the
/// parent seed xor a golden-ratio multiple of the child index). Independent
/// streams for trajectories, sequences and shots come from one root seed.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t child);

using Rng = std::mt19937_64;

/// One Gaussian quasi-static detuning draw, constant over a shot.
double sample_quasistatic(double sigma_qs, std::uint64_t seed);
double sample_quasistatic(double sigma_qs, Rng &rng);

/// Exact-discretization Ornstein-Uhlenbeck stepper with a stationary start.
class OuProcess {
 public:
  OuProcess(double sigma, double tau_c, Rng &rng);
  double value() const { return x_; }
  /// Advances by h seconds: x <- x e^{-h/tau} + sigma sqrt(1 - e^{-2h/tau}) xi.
  double advance(double h, Rng &rng);

 private:
  double sigma_;
  double tau_c_;
  // Declared before x_, which is drawn from it on construction.
  std::normal_distribution<double> normal_{0.0, 1.0};
  double x_;
};

struct DetuningTrajectory {
  double dt = 0.0;
  std::vector<double> samples;  // rad/s, sample k holds on [k dt, (k+1) dt)
  std::uint64_t seed = 0;
};

/// Throws ValidationError when dt <= 0 or dt > tau_c / 10.
DetuningTrajectory sample_ou_trajectory(double duration, double dt, double sigma_ou,
                                        double tau_c, std::uint64_t seed);

/// Gaussian free-induction envelope exp(-(t/T2*)^2) <=> sigma = sqrt(2)/T2*.
double sigma_from_t2star(double t2star);
double t2star_from_sigma(double sigma_qs);

/// Variance of the accumulated phase under OU noise for free evolution of
/// length t.
double ou_phase_variance_fid(double t, double sigma_ou, double tau_c);
/// Same for a Hahn echo of total length t (ideal pi pulse at t/2).
double ou_phase_variance_echo(double t, double sigma_ou, double tau_c);

/// Solves for the OU amplitude giving echo coherence e^{-1} at t2echo, with
/// tau_c fixed by the caller. Quasi-static noise is refocused by the echo and
/// does not enter.
double calibrate_ou_sigma(double t2echo, double tau_c);

}  // namespace znelab

#endif  // ZNELAB_NOISE_H_
