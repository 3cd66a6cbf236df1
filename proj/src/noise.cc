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

#include "znelab/noise.h"

#include <cmath>
#include <string>

#include "znelab/errors.h"

namespace znelab {

namespace {

void require_unit_interval(double v, const char *field) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string(field) + " must lie in [0, 1]");
  }
}

void require_positive_time(double v, const char *field) {
  if (!(v > 0.0)) throw ValidationError(std::string(field) + " must be > 0");
}

}  // namespace

void NoiseModel::validate() const {
  require_unit_interval(p_dep, "p_dep");
  require_positive_time(t1, "t1");
  require_positive_time(t_phi, "t_phi");
  if (!(sigma_qs >= 0.0) || !std::isfinite(sigma_qs)) {
    throw ValidationError("sigma_qs must be finite and >= 0");
  }
  if (!(sigma_ou >= 0.0) || !std::isfinite(sigma_ou)) {
    throw ValidationError("sigma_ou must be finite and >= 0");
  }
  require_positive_time(tau_c, "tau_c");
  require_unit_interval(readout_f_down, "readout_f_down");
  require_unit_interval(readout_f_up, "readout_f_up");
  require_unit_interval(init_fidelity, "init_fidelity");
}

Mat2 depolarize(const Mat2 &rho, double p) {
  Mat2 out = rho * (1.0 - p);
  out(0, 0) += 0.5 * p;
  out(1, 1) += 0.5 * p;
  return out;
}

DensityMatrix apply_depolarizing(const DensityMatrix &rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("depolarizing p must lie in [0, 1]");
  return DensityMatrix::trusted(depolarize(rho.matrix(), p));
}

Mat2 decay(const Mat2 &rho, double duration, double t1, double t_phi) {
  Mat2 out = rho;
  if (duration == 0.0) return out;
  double amp = t1 < kInfinity ? std::exp(-duration / t1) : 1.0;
  double deph = t_phi < kInfinity ? std::exp(-duration / t_phi) : 1.0;
  double excited = rho(1, 1).real();
  // Amplitude damping moves (1 - amp) of the excited population down.
  out(0, 0) = rho(0, 0) + (1.0 - amp) * excited;
  out(1, 1) = amp * excited;
  double coh = std::sqrt(amp) * deph;
  out(0, 1) = rho(0, 1) * coh;
  out(1, 0) = rho(1, 0) * coh;
  return out;
}

DensityMatrix apply_decay(const DensityMatrix &rho, double duration, double t1, double t_phi) {
  if (!(duration >= 0.0)) throw ValidationError("decay duration must be >= 0");
  return DensityMatrix::trusted(decay(rho.matrix(), duration, t1, t_phi));
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t child) {
  std::uint64_t z = parent ^ ((child + 1) * 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double sample_quasistatic(double sigma_qs, Rng &rng) {
  if (sigma_qs == 0.0) return 0.0;
  std::normal_distribution<double> normal(0.0, sigma_qs);
  return normal(rng);
}

double sample_quasistatic(double sigma_qs, std::uint64_t seed) {
  if (!(sigma_qs >= 0.0)) throw ValidationError("sigma_qs must be >= 0");
  Rng rng(seed);
  return sample_quasistatic(sigma_qs, rng);
}

OuProcess::OuProcess(double sigma, double tau_c, Rng &rng)
    : sigma_(sigma), tau_c_(tau_c), x_(sigma > 0.0 ? sigma * normal_(rng) : 0.0) {}

double OuProcess::advance(double h, Rng &rng) {
  if (sigma_ == 0.0) return x_;
  double decay = std::exp(-h / tau_c_);
  x_ = x_ * decay + sigma_ * std::sqrt(-std::expm1(-2.0 * h / tau_c_)) * normal_(rng);
  return x_;
}

DetuningTrajectory sample_ou_trajectory(double duration, double dt, double sigma_ou,
                                        double tau_c, std::uint64_t seed) {
  if (!(dt > 0.0)) throw ValidationError("OU step dt must be > 0");
  if (dt > tau_c / 10.0) throw ValidationError("OU step dt must be <= tau_c / 10");
  if (!(duration >= 0.0)) throw ValidationError("OU duration must be >= 0");
  DetuningTrajectory traj;
  traj.dt = dt;
  traj.seed = seed;
  auto n = static_cast<std::size_t>(std::ceil(duration / dt));
  traj.samples.resize(n, 0.0);
  if (sigma_ou == 0.0 || n == 0) return traj;
  Rng rng(seed);
  OuProcess ou(sigma_ou, tau_c, rng);
  traj.samples[0] = ou.value();
  for (std::size_t k = 1; k < n; ++k) traj.samples[k] = ou.advance(dt, rng);
  return traj;
}

double sigma_from_t2star(double t2star) {
  if (!(t2star > 0.0)) throw ValidationError("T2* must be > 0");
  return std::sqrt(2.0) / t2star;
}

double t2star_from_sigma(double sigma_qs) {
  if (!(sigma_qs > 0.0)) throw ValidationError("sigma_qs must be > 0");
  return std::sqrt(2.0) / sigma_qs;
}

double ou_phase_variance_fid(double t, double sigma_ou, double tau_c) {
  double x = t / tau_c;
  return 2.0 * sigma_ou * sigma_ou * tau_c * tau_c * (x - 1.0 + std::exp(-x));
}

double ou_phase_variance_echo(double t, double sigma_ou, double tau_c) {
  double x = t / tau_c;
  if (x < 1e-3) {
    // Series; the closed form cancels catastrophically here.
    return 2.0 * sigma_ou * sigma_ou * tau_c * tau_c * x * x * x * (1.0 / 12.0 - x / 32.0);
  }
  return 2.0 * sigma_ou * sigma_ou * tau_c * tau_c *
         (x - 3.0 + 4.0 * std::exp(-0.5 * x) - std::exp(-x));
}

double calibrate_ou_sigma(double t2echo, double tau_c) {
  if (!(t2echo > 0.0) || !(tau_c > 0.0)) {
    throw ValidationError("calibrate_ou_sigma: times must be > 0");
  }
  // Coherence exp(-Var/2) = e^{-1}  =>  Var(t2echo) = 2.
  double unit = ou_phase_variance_echo(t2echo, 1.0, tau_c);
  return std::sqrt(2.0 / unit);
}

}  // namespace znelab
