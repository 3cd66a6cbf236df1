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

// Serial reference implementations of the parallel kernels. They trade speed
// for obviousness: no segment shortcuts, left-to-right accumulation, one
// thread. Tests and benchmarks compare the optimized kernels against them.

#ifndef ZNELAB_REFERENCE_H_
#define ZNELAB_REFERENCE_H_

#include "znelab/gates.h"
#include "znelab/noise.h"
#include "znelab/simulator.h"

namespace znelab::reference {

/// Always steps at dt (also for constant Hamiltonians), builds every step
/// Hamiltonian as a Mat2 and exponentiates it through mat_exp_unitary, and
/// averages trajectories with a running sum. Same seed derivation as
/// run_pulse, so results agree to rounding.
DensityMatrix run_pulse(const PulseSchedule &s, const NoiseModel &nm, const DensityMatrix &rho0,
                        const EngineConfig &cfg);

/// Channel evolution written as explicit Kraus sums.
DensityMatrix run_channel(const Circuit &c, const NoiseModel &nm, const DensityMatrix &rho0);

}  // namespace znelab::reference

#endif  // ZNELAB_REFERENCE_H_
