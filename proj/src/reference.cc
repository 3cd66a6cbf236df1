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

#include "znelab/reference.h"

#include <algorithm>
#include <cmath>

namespace znelab::reference {

namespace {

Mat2 kraus_depolarize(const Mat2 &rho, double p) {
  const Mat2 x = Mat2::pauli_x(), y = Mat2::pauli_y(), z = Mat2::pauli_z();
  return rho * (1.0 - 0.75 * p) +
         (conjugate(x, rho) + conjugate(y, rho) + conjugate(z, rho)) * (0.25 * p);
}

Mat2 kraus_decay(const Mat2 &rho, double h, double t1, double t_phi) {
  double gamma = t1 < kInfinity ? 1.0 - std::exp(-h / t1) : 0.0;
  Mat2 k0{{1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)}};
  Mat2 k1{{0.0, std::sqrt(gamma), 0.0, 0.0}};
  Mat2 out = k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint();
  double deph = t_phi < kInfinity ? std::exp(-h / t_phi) : 1.0;
  double q = 0.5 * (1.0 - deph);
  return out * (1.0 - q) + conjugate(Mat2::pauli_z(), out) * q;
}

Mat2 hamiltonian(const PulseSegment &seg, double delta) {
  return Mat2::pauli_z() * (0.5 * (seg.detuning + delta)) +
         Mat2::pauli_x() * (0.5 * seg.amplitude * std::cos(seg.phase)) +
         Mat2::pauli_y() * (0.5 * seg.amplitude * std::sin(seg.phase));
}

}  // namespace

DensityMatrix run_pulse(const PulseSchedule &s, const NoiseModel &nm, const DensityMatrix &rho0,
                        const EngineConfig &cfg) {
  const double dt = effective_dt(nm, cfg);
  check_pulse_step(s, nm, dt);
  const int n = trajectory_count(nm, cfg);
  Mat2 sum = Mat2::zero();
  for (int k = 0; k < n; ++k) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
    const double quasi = sample_quasistatic(nm.sigma_qs, rng);
    OuProcess ou(nm.sigma_ou, nm.tau_c, rng);
    Mat2 rho = rho0.matrix();
    for (const auto &seg : s.segments) {
      auto steps = static_cast<long>(std::ceil(seg.duration / dt - 1e-9));
      steps = std::max(steps, 1L);
      const double h = seg.duration / static_cast<double>(steps);
      for (long j = 0; j < steps; ++j) {
        Mat2 u = mat_exp_unitary(hamiltonian(seg, quasi + ou.value()), h);
        rho = u * rho * u.adjoint();
        if (nm.has_decay()) rho = kraus_decay(rho, h, nm.t1, nm.t_phi);
        if (nm.has_time_varying_detuning()) ou.advance(h, rng);
      }
    }
    sum += rho;
  }
  return DensityMatrix::trusted(sum * (1.0 / n));
}

DensityMatrix run_channel(const Circuit &c, const NoiseModel &nm, const DensityMatrix &rho0) {
  Mat2 rho = rho0.matrix();
  for (const auto &op : c.ops) {
    Mat2 u = op.unitary();
    rho = u * rho * u.adjoint();
    rho = kraus_depolarize(rho, nm.p_dep);
    rho = kraus_decay(rho, op.duration, nm.t1, nm.t_phi);
  }
  return DensityMatrix::trusted(rho);
}

}  // namespace znelab::reference
