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


#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "znelab/errors.h"
#include "znelab/qmath.h"

namespace znelab {
namespace {

constexpr double kPi = std::numbers::pi;

Mat2 hermitian(double a, double bx, double by, double bz) {
  return Mat2::identity() * a + Mat2::pauli_x() * bx + Mat2::pauli_y() * by +
         Mat2::pauli_z() * bz;
}

Mat2 from_bloch_unchecked(double x, double y, double z) {
  return (Mat2::identity() + Mat2::pauli_x() * x + Mat2::pauli_y() * y + Mat2::pauli_z() * z) *
         0.5;
}

const Ket kZero{1.0, 0.0};
const Ket kOne{0.0, 1.0};

TEST(MatExp, ZeroHamiltonianGivesIdentity) {
  EXPECT_LT((mat_exp_unitary(Mat2::zero(), 3.7) - Mat2::identity()).max_abs(), 1e-15);
}

TEST(MatExp, PiPulseIsXGate) {
  const double omega = 2 * kPi * 4e6;
  const Mat2 u = mat_exp_unitary(Mat2::pauli_x() * (omega / 2), kPi / omega);
  EXPECT_LT((u - Mat2::pauli_x() * Complex(0, -1)).max_abs(), 1e-12);
  EXPECT_NEAR(std::norm(apply(u, kZero)[1]), 1.0, 1e-12);
}

TEST(MatExp, HalfPiPulseRotatesToMinusY) {
  const double omega = 1e7;
  const Mat2 u = mat_exp_unitary(Mat2::pauli_x() * (omega / 2), kPi / 2 / omega);
  const BlochVector r = bloch_from_rho(DensityMatrix::from_ket(apply(u, kZero)));
  EXPECT_NEAR(r.rx, 0.0, 1e-12);
  EXPECT_NEAR(r.ry, -1.0, 1e-12);
  EXPECT_NEAR(r.rz, 0.0, 1e-12);
}

TEST(MatExp, RejectsNonHermitian) {
  Mat2 h = Mat2::zero();
  h(0, 1) = 1.0;
  EXPECT_THROW(mat_exp_unitary(h, 1.0), ValidationError);
}

TEST(MatExp, RandomHermitianIsUnitary) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1e6);
  std::uniform_real_distribution<double> t(0.0, 1e-5);
  for (int i = 0; i < 1000; ++i) {
    const Mat2 m = mat_exp_unitary(hermitian(n(rng), n(rng), n(rng), n(rng)), t(rng));
    EXPECT_LT((m * m.adjoint() - Mat2::identity()).max_abs(), 1e-10);
  }
}

TEST(MatExp, MatchesTaylorSeries) {
  const Mat2 h = hermitian(0.3, -0.7, 0.2, 1.1);
  const double t = 0.9;
  // exp(-iHt) by truncated series.
  Mat2 term = Mat2::identity(), sum = Mat2::identity();
  for (int k = 1; k < 40; ++k) {
    term = term * h * Complex(0.0, -t / k);
    sum += term;
  }
  EXPECT_LT((mat_exp_unitary(h, t) - sum).max_abs(), 1e-13);
}

TEST(Fidelity, BasicCases) {
  const Ket plus{1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  EXPECT_NEAR(fidelity(DensityMatrix::from_ket(plus), plus), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed(), plus), 0.5, 1e-15);
  EXPECT_NEAR(fidelity(DensityMatrix::ground(), kOne), 0.0, 1e-15);
  EXPECT_THROW(fidelity(DensityMatrix::ground(), Ket{1.0, 1.0}), ValidationError);
}

TEST(Fidelity, EqualsDirectContraction) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    BlochVector r{u(rng), u(rng), u(rng)};
    if (r.norm() > 1.0) continue;
    const DensityMatrix rho = rho_from_bloch(r);
    Ket psi{Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
    const double n = ket_norm(psi);
    psi = {psi[0] / n, psi[1] / n};
    Complex acc = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) acc += std::conj(psi[a]) * rho.matrix()(a, b) * psi[b];
    }
    EXPECT_NEAR(fidelity(rho, psi), acc.real(), 1e-14);
  }
}

TEST(Bloch, PauliEigenstates) {
  const double s = 1 / std::sqrt(2.0);
  const BlochVector z = bloch_from_rho(DensityMatrix::ground());
  EXPECT_NEAR(z.rz, 1.0, 1e-15);
  const BlochVector x = bloch_from_rho(DensityMatrix::from_ket({s, s}));
  EXPECT_NEAR(x.rx, 1.0, 1e-15);
  EXPECT_NEAR(x.ry, 0.0, 1e-15);
  const BlochVector my = bloch_from_rho(DensityMatrix::from_ket({s, Complex(0, -s)}));
  EXPECT_NEAR(my.rx, 0.0, 1e-15);
  EXPECT_NEAR(my.ry, -1.0, 1e-15);
  EXPECT_NEAR(my.rz, 0.0, 1e-15);
}

TEST(Bloch, RoundTrip) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const BlochVector r{u(rng), u(rng), u(rng)};
    if (r.norm() > 1.0) continue;
    const BlochVector back = bloch_from_rho(rho_from_bloch(r));
    EXPECT_NEAR(back.rx, r.rx, 1e-12);
    EXPECT_NEAR(back.ry, r.ry, 1e-12);
    EXPECT_NEAR(back.rz, r.rz, 1e-12);
  }
  EXPECT_THROW(rho_from_bloch({1.0, 0.5, 0.0}), ValidationError);
}

TEST(DensityMatrixInvariants, RejectsInvalidMatrices) {
  EXPECT_THROW(DensityMatrix::from_matrix(Mat2{{0.6, 0.0, 0.0, 0.6}}), ValidationError);
  EXPECT_THROW(DensityMatrix::from_matrix(Mat2{{0.5, 0.1, 0.0, 0.5}}), ValidationError);
  EXPECT_THROW(DensityMatrix::from_matrix(Mat2{{1.1, 0.0, 0.0, -0.1}}), ValidationError);
  EXPECT_NO_THROW(DensityMatrix::from_matrix(Mat2{{0.5, 0.5, 0.5, 0.5}}));
}

TEST(Projection, PhysicalInputUnchanged) {
  const Mat2 m = from_bloch_unchecked(0.3, -0.4, 0.5);
  EXPECT_LT((project_to_physical(m).matrix() - m).frobenius_norm(), 1e-12);
}

TEST(Projection, BlochOutsideBallIsRenormalized) {
  const BlochVector r = bloch_from_rho(project_to_physical(from_bloch_unchecked(1.2, 0.0, 0.0)));
  EXPECT_NEAR(r.rx, 1.0, 1e-12);
  EXPECT_NEAR(r.ry, 0.0, 1e-12);
  EXPECT_NEAR(r.rz, 0.0, 1e-12);
  // Explicit eigendecomposition: eigenvalues (1.1, -0.1) clip to (1, 0).
  const auto ev = hermitian_eigenvalues(from_bloch_unchecked(1.2, 0.0, 0.0));
  EXPECT_NEAR(std::min(ev[0], ev[1]), -0.1, 1e-12);
  EXPECT_NEAR(std::max(ev[0], ev[1]), 1.1, 1e-12);
}

TEST(Projection, ClipsDiagonal) {
  const DensityMatrix out = project_to_physical(Mat2{{1.1, 0.0, 0.0, -0.1}});
  EXPECT_LT((out.matrix() - Mat2{{1.0, 0.0, 0.0, 0.0}}).max_abs(), 1e-12);
}

TEST(Projection, IsIdempotent) {
  const DensityMatrix once = project_to_physical(from_bloch_unchecked(0.9, 0.8, -0.3));
  const DensityMatrix twice = project_to_physical(once.matrix());
  EXPECT_LT((once.matrix() - twice.matrix()).frobenius_norm(), 1e-12);
}

TEST(Projection, NoWorseThanBruteForceGrid) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.6, 1.6);
  // Physical candidates on a grid over the Bloch ball.
  std::vector<Mat2> grid;
  const int n = 24;
  for (int i = -n; i <= n; ++i) {
    for (int j = -n; j <= n; ++j) {
      for (int k = -n; k <= n; ++k) {
        const double x = double(i) / n, y = double(j) / n, z = double(k) / n;
        if (x * x + y * y + z * z <= 1.0) grid.push_back(from_bloch_unchecked(x, y, z));
      }
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    const Mat2 in = from_bloch_unchecked(u(rng), u(rng), u(rng));
    const DensityMatrix out = project_to_physical(in);
    // Output satisfies the invariants.
    EXPECT_NO_THROW(DensityMatrix::from_matrix(out.matrix()));
    double best = 1e300;
    for (const Mat2 &g : grid) best = std::min(best, (g - in).frobenius_norm());
    EXPECT_LE((out.matrix() - in).frobenius_norm(), best + 1e-9);
  }
}

TEST(PhaseDistance, IgnoresGlobalPhase) {
  const Mat2 u = rotation({0.0, 1.0, 0.0}, 0.7);
  EXPECT_LT(phase_insensitive_distance(u, u * std::polar(1.0, 1.3)), 1e-15);
  EXPECT_GT(phase_insensitive_distance(u, Mat2::identity()), 1e-3);
}

}  // namespace
}  // namespace znelab
