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

#include "znelab/simulator.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "znelab/errors.h"
#include "znelab/parallel.h"

namespace znelab {

void EngineConfig::validate() const {
  if (dt < 0.0 || !std::isfinite(dt)) throw ValidationError("engine.dt must be >= 0");
  if (n_trajectories < 1) throw ValidationError("engine.n_trajectories must be >= 1");
  if (jobs < 0) throw ValidationError("engine.jobs must be >= 0");
}

DensityMatrix run_channel(const Circuit &c, const NoiseModel &nm, const DensityMatrix &rho0) {
  Mat2 rho = rho0.matrix();
  for (const auto &op : c.ops) {
    rho = conjugate(op.unitary(), rho);
    if (nm.p_dep > 0.0) rho = depolarize(rho, nm.p_dep);
    if (nm.has_decay()) rho = decay(rho, op.duration, nm.t1, nm.t_phi);
  }
  return DensityMatrix::trusted(rho);
}

double default_dt(const NoiseModel &nm) { return std::min(1e-9, nm.tau_c / 100.0); }

double effective_dt(const NoiseModel &nm, const EngineConfig &cfg) {
  return cfg.dt > 0.0 ? cfg.dt : default_dt(nm);
}

void check_pulse_step(const PulseSchedule &s, const NoiseModel &nm, double dt) {
  if (!(dt > 0.0)) throw ValidationError("pulse engine dt must be > 0");
  double fastest = kInfinity;
  double amp = s.max_amplitude();
  if (amp > 0.0) fastest = 2.0 * std::numbers::pi / amp;
  if (nm.has_time_varying_detuning()) fastest = std::min(fastest, nm.tau_c);
  if (dt > 0.01 * fastest) {
    throw ValidationError("pulse engine dt does not resolve the fastest rate (need dt <= " +
                          std::to_string(0.01 * fastest) + " s)");
  }
}

int trajectory_count(const NoiseModel &nm, const EngineConfig &cfg) {
  return nm.has_stochastic_detuning() ? cfg.n_trajectories : 1;
}

Mat2 propagate_trajectory(const PulseSchedule &s, const NoiseModel &nm, const Mat2 &rho0,
                          double dt, std::uint64_t seed) {
  Rng rng(seed);
  const double quasi = sample_quasistatic(nm.sigma_qs, rng);
  OuProcess ou(nm.sigma_ou, nm.tau_c, rng);
  const bool varying = nm.has_time_varying_detuning();
  const bool decays = nm.has_decay();
  Mat2 rho = rho0;
  for (const auto &seg : s.segments) {
    if (!varying && !decays) {
      // Constant Hamiltonian over the segment: one exact exponential.
      rho = conjugate(segment_propagator(seg, quasi, seg.duration), rho);
      continue;
    }
    auto steps = static_cast<long>(std::ceil(seg.duration / dt - 1e-9));
    steps = std::max(steps, 1L);
    const double h = seg.duration / static_cast<double>(steps);
    Mat2 u_const;
    if (!varying) u_const = segment_propagator(seg, quasi, h);
    for (long k = 0; k < steps; ++k) {
      const Mat2 u = varying ? segment_propagator(seg, quasi + ou.value(), h) : u_const;
      rho = conjugate(u, rho);
      if (decays) rho = decay(rho, h, nm.t1, nm.t_phi);
      if (varying) ou.advance(h, rng);
    }
  }
  return rho;
}

std::vector<Mat2> simulate_trajectories(const PulseSchedule &s, const NoiseModel &nm,
                                        const DensityMatrix &rho0, const EngineConfig &cfg) {
  const double dt = effective_dt(nm, cfg);
  check_pulse_step(s, nm, dt);
  const int n = trajectory_count(nm, cfg);
  std::vector<Mat2> out(static_cast<std::size_t>(n));
  parallel_for(n, cfg.jobs, [&](long k) {
    out[static_cast<std::size_t>(k)] = propagate_trajectory(
        s, nm, rho0.matrix(), dt, derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
  });
  return out;
}

Mat2 pairwise_sum(std::span<const Mat2> terms) {
  if (terms.empty()) return Mat2::zero();
  if (terms.size() == 1) return terms[0];
  std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

double pairwise_sum(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  if (terms.size() == 1) return terms[0];
  std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

DensityMatrix run_pulse(const PulseSchedule &s, const NoiseModel &nm, const DensityMatrix &rho0,
                        const EngineConfig &cfg) {
  auto traj = simulate_trajectories(s, nm, rho0, cfg);
  Mat2 mean = pairwise_sum(traj) * (1.0 / static_cast<double>(traj.size()));
  return DensityMatrix::trusted(mean);
}

double readout_p_up(double p1_true, const NoiseModel &nm) {
  double p = std::clamp(p1_true, 0.0, 1.0);
  return std::clamp(nm.readout_f_up * p + (1.0 - nm.readout_f_down) * (1.0 - p), 0.0, 1.0);
}

ShotRecord sample_shots(const DensityMatrix &rho, std::int64_t n, const NoiseModel &nm,
                        std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample_shots: need at least one shot");
  Rng rng(seed);
  std::binomial_distribution<std::int64_t> binom(n, readout_p_up(rho.p1(), nm));
  return ShotRecord{n, binom(rng)};
}

Executor::Executor(NoiseModel nm, EngineConfig cfg, GateTiming timing)
    : nm_(nm), cfg_(cfg), timing_(timing) {
  nm_.validate();
  cfg_.validate();
}

DensityMatrix Executor::prepared_ground() const {
  double g = nm_.init_fidelity;
  return DensityMatrix::trusted(Mat2{{g, 0.0, 0.0, 1.0 - g}});
}

DensityMatrix Executor::evolve(const Circuit &c, const DensityMatrix &rho0, double stretch_c,
                               std::uint64_t seed) const {
  if (cfg_.mode == EngineMode::kChannel) {
    if (stretch_c != 1.0) {
      throw ValidationError("pulse stretching requires the pulse engine");
    }
    return run_channel(c, nm_, rho0);
  }
  PulseSchedule s = to_pulse_schedule(c, timing_.omega0);
  if (stretch_c != 1.0) s = stretch(s, stretch_c);
  EngineConfig cfg = cfg_;
  cfg.seed = seed;
  return run_pulse(s, nm_, rho0, cfg);
}

double Executor::true_p1(const Circuit &c, double stretch_c, std::uint64_t seed) const {
  return evolve(c, prepared_ground(), stretch_c, seed).p1();
}

ShotRecord Executor::measure(const Circuit &c, std::int64_t shots, double stretch_c,
                             std::uint64_t seed) const {
  DensityMatrix rho = evolve(c, prepared_ground(), stretch_c, derive_seed(seed, 0));
  return sample_shots(rho, shots, nm_, derive_seed(seed, 1));
}

}  // namespace znelab
