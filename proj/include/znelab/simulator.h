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

#ifndef ZNELAB_SIMULATOR_H_
#define ZNELAB_SIMULATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "znelab/gates.h"
#include "znelab/noise.h"
#include "znelab/qmath.h"

namespace znelab {

enum class EngineMode { kChannel, kPulse };

struct EngineConfig {
  EngineMode mode = EngineMode::kChannel;
  /// Pulse-mode integration step in seconds; 0 selects min(1 ns, tau_c/100).
  double dt = 0.0;
  int n_trajectories = 200;
  std::uint64_t seed = 0;
  /// OpenMP worker count; 0 leaves the runtime default. Results do not depend
  /// on this value.
  int jobs = 0;

  void validate() const;
};

struct ShotRecord {
  std::int64_t n_shots = 0;
  std::int64_t n_up = 0;

  double p1() const { return n_shots ? static_cast<double>(n_up) / n_shots : 0.0; }
};

/// Gate-level evolution: per gate, ideal unitary, then depolarizing(p_dep),
/// then T1/T_phi decay over the gate duration. Detuning noise is ignored.
DensityMatrix run_channel(const Circuit &c, const NoiseModel &nm, const DensityMatrix &rho0);

double default_dt(const NoiseModel &nm);
/// dt actually used by the pulse engine for this config.
double effective_dt(const NoiseModel &nm, const EngineConfig &cfg);
/// Throws ValidationError unless dt <= 0.01 min(2 pi / Omega_max, tau_c).
void check_pulse_step(const PulseSchedule &s, const NoiseModel &nm, double dt);

/// Number of trajectories that carry information: 1 when the noise model has
/// no stochastic detuning, cfg.n_trajectories otherwise.
int trajectory_count(const NoiseModel &nm, const EngineConfig &cfg);

/// Final density matrix of every trajectory, indexed by trajectory number.
/// Trajectory k draws from derive_seed(cfg.seed, k). OpenMP-parallel.
std::vector<Mat2> simulate_trajectories(const PulseSchedule &s, const NoiseModel &nm,
                                        const DensityMatrix &rho0, const EngineConfig &cfg);

/// One stochastic-Hamiltonian trajectory: quasi-static draw plus an OU
/// process, piecewise-constant exact 2x2 propagation per step, decay per step.
Mat2 propagate_trajectory(const PulseSchedule &s, const NoiseModel &nm, const Mat2 &rho0,
                          double dt, std::uint64_t seed);

/// Trajectory-averaged state. Throws ValidationError on a dt violation.
DensityMatrix run_pulse(const PulseSchedule &s, const NoiseModel &nm, const DensityMatrix &rho0,
                        const EngineConfig &cfg);

/// Sum with a fixed binary-tree shape, so the result is independent of the
/// thread count that produced the terms.
Mat2 pairwise_sum(std::span<const Mat2> terms);
double pairwise_sum(std::span<const double> terms);

/// Probability of reporting "up" given the true excited population.
double readout_p_up(double p1_true, const NoiseModel &nm);

/// Binomial shot sampling of rho's Born probability through the readout
/// confusion. Initialization error is not applied here (see Executor).
ShotRecord sample_shots(const DensityMatrix &rho, std::int64_t n, const NoiseModel &nm,
                        std::uint64_t seed);

/// Runs circuits on the configured engine and measures them through the full
/// state-preparation and readout model.
class Executor {
 public:
  Executor(NoiseModel nm, EngineConfig cfg, GateTiming timing);

  const NoiseModel &noise() const { return nm_; }
  const EngineConfig &engine() const { return cfg_; }
  const GateTiming &timing() const { return timing_; }

  /// gamma |0><0| + (1 - gamma) |1><1|.
  DensityMatrix prepared_ground() const;

  /// Final state. `stretch` > 1 stretches pulses and needs the pulse engine.
  DensityMatrix evolve(const Circuit &c, const DensityMatrix &rho0, double stretch,
                       std::uint64_t seed) const;

  /// Excited population after preparation error and evolution.
  double true_p1(const Circuit &c, double stretch, std::uint64_t seed) const;

  ShotRecord measure(const Circuit &c, std::int64_t shots, double stretch,
                     std::uint64_t seed) const;

 private:
  NoiseModel nm_;
  EngineConfig cfg_;
  GateTiming timing_;
};

}  // namespace znelab

#endif  // ZNELAB_SIMULATOR_H_
