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

#include "znelab/qmath.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "znelab/errors.h"

namespace znelab {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Mat2 Mat2::identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
Mat2 Mat2::zero() { return Mat2{}; }
Mat2 Mat2::pauli_x() { return Mat2{{0.0, 1.0, 1.0, 0.0}}; }
Mat2 Mat2::pauli_y() { return Mat2{{0.0, -kI, kI, 0.0}}; }
Mat2 Mat2::pauli_z() { return Mat2{{1.0, 0.0, 0.0, -1.0}}; }

Mat2 Mat2::operator*(const Mat2 &o) const {
  return Mat2{{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
               m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
}

Mat2 Mat2::operator+(const Mat2 &o) const {
  return Mat2{{m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3]}};
}

Mat2 Mat2::operator-(const Mat2 &o) const {
  return Mat2{{m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]}};
}

Mat2 Mat2::operator*(Complex s) const {
  return Mat2{{m[0] * s, m[1] * s, m[2] * s, m[3] * s}};
}

Mat2 &Mat2::operator+=(const Mat2 &o) {
  for (int k = 0; k < 4; ++k) m[k] += o.m[k];
  return *this;
}

Mat2 Mat2::adjoint() const {
  return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

double Mat2::frobenius_norm() const {
  double s = 0.0;
  for (const auto &v : m) s += std::norm(v);
  return std::sqrt(s);
}

double Mat2::max_abs() const {
  double s = 0.0;
  for (const auto &v : m) s = std::max(s, std::abs(v));
  return s;
}

bool Mat2::is_hermitian(double tol) const {
  return (*this - adjoint()).max_abs() <= tol;
}

double ket_norm(const Ket &psi) {
  return std::sqrt(std::norm(psi[0]) + std::norm(psi[1]));
}

Ket apply(const Mat2 &u, const Ket &psi) {
  return {u(0, 0) * psi[0] + u(0, 1) * psi[1], u(1, 0) * psi[0] + u(1, 1) * psi[1]};
}

double phase_insensitive_distance(const Mat2 &a, const Mat2 &b) {
  // Align b to a with the optimal phase, then measure directly; the
  // closed form sqrt(4 - 2|tr(a^dagger b)|) loses half the digits.
  const Complex t = (a.adjoint() * b).trace();
  const double n = std::abs(t);
  const Complex phase = n > 0.0 ? std::conj(t) / n : Complex(1.0);
  return (a - b * phase).frobenius_norm();
}

Mat2 exp_pauli_unchecked(double a, const Vec3 &b, double t) {
  double bn = b.norm();
  double c = std::cos(bn * t);
  // sin(|b|t)/|b| handled as t when |b| -> 0.
  double s_over = bn > 0.0 ? std::sin(bn * t) / bn : t;
  Complex phase = std::polar(1.0, -a * t);
  Complex m00 = Complex(c, -s_over * b.z);
  Complex m11 = Complex(c, s_over * b.z);
  // -i s (bx sx + by sy) off diagonals: m01 = -i s (bx - i by), m10 = -i s (bx + i by)
  Complex m01 = Complex(-s_over * b.y, -s_over * b.x);
  Complex m10 = Complex(s_over * b.y, -s_over * b.x);
  return Mat2{{phase * m00, phase * m01, phase * m10, phase * m11}};
}

Mat2 mat_exp_unitary(const Mat2 &h, double t) {
  if (!h.is_hermitian(1e-10)) {
    throw ValidationError("mat_exp_unitary: Hamiltonian is not Hermitian");
  }
  double a = 0.5 * (h(0, 0).real() + h(1, 1).real());
  Vec3 b{h(0, 1).real(), -h(0, 1).imag(), 0.5 * (h(0, 0).real() - h(1, 1).real())};
  return exp_pauli_unchecked(a, b, t);
}

Mat2 rotation(const Vec3 &axis, double angle) {
  return exp_pauli_unchecked(0.0, axis * 0.5, angle);
}

Mat2 conjugate(const Mat2 &u, const Mat2 &rho) { return u * rho * u.adjoint(); }

double BlochVector::norm() const { return std::sqrt(rx * rx + ry * ry + rz * rz); }

DensityMatrix::DensityMatrix() : rho_{{1.0, 0.0, 0.0, 0.0}} {}

std::array<double, 2> hermitian_eigenvalues(const Mat2 &h) {
  double mean = 0.5 * (h(0, 0).real() + h(1, 1).real());
  double half_diff = 0.5 * (h(0, 0).real() - h(1, 1).real());
  double r = std::hypot(half_diff, std::abs(h(0, 1)));
  return {mean - r, mean + r};
}

DensityMatrix DensityMatrix::from_matrix(const Mat2 &m) {
  if (std::abs(m.trace() - 1.0) > kTraceTol) {
    throw ValidationError("density matrix trace is not one");
  }
  if (!m.is_hermitian(kHermTol)) {
    throw ValidationError("density matrix is not Hermitian");
  }
  if (hermitian_eigenvalues(m)[0] < -kEigTol) {
    throw ValidationError("density matrix has a negative eigenvalue");
  }
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_ket(const Ket &psi) {
  double n = ket_norm(psi);
  if (std::abs(n - 1.0) > 1e-10) throw ValidationError("ket is not normalized");
  return DensityMatrix(Mat2{{psi[0] * std::conj(psi[0]), psi[0] * std::conj(psi[1]),
                             psi[1] * std::conj(psi[0]), psi[1] * std::conj(psi[1])}});
}

DensityMatrix DensityMatrix::maximally_mixed() {
  return DensityMatrix(Mat2{{0.5, 0.0, 0.0, 0.5}});
}

DensityMatrix DensityMatrix::excited() { return DensityMatrix(Mat2{{0.0, 0.0, 0.0, 1.0}}); }

double fidelity(const DensityMatrix &rho, const Ket &psi) {
  if (std::abs(ket_norm(psi) - 1.0) > 1e-10) {
    throw ValidationError("fidelity: target ket is not normalized");
  }
  Ket r = apply(rho.matrix(), psi);
  double f = (std::conj(psi[0]) * r[0] + std::conj(psi[1]) * r[1]).real();
  return std::clamp(f, 0.0, 1.0);
}

double state_fidelity(const DensityMatrix &a, const DensityMatrix &b) {
  double overlap = (a.matrix() * b.matrix()).trace().real();
  double da = std::max(0.0, a.matrix().det().real());
  double db = std::max(0.0, b.matrix().det().real());
  return std::clamp(overlap + 2.0 * std::sqrt(da * db), 0.0, 1.0);
}

BlochVector bloch_from_matrix(const Mat2 &m) {
  // r_i = tr(rho sigma_i)
  return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

BlochVector bloch_from_rho(const DensityMatrix &rho) { return bloch_from_matrix(rho.matrix()); }

DensityMatrix rho_from_bloch(const BlochVector &r) {
  if (r.norm() > 1.0 + 1e-9) {
    throw ValidationError("rho_from_bloch: Bloch vector outside the unit ball");
  }
  return DensityMatrix::trusted(Mat2{{Complex(0.5 * (1.0 + r.rz), 0.0),
                                      Complex(0.5 * r.rx, -0.5 * r.ry),
                                      Complex(0.5 * r.rx, 0.5 * r.ry),
                                      Complex(0.5 * (1.0 - r.rz), 0.0)}});
}

DensityMatrix project_to_physical(const Mat2 &raw) {
  if (!raw.is_hermitian(1e-8) || std::abs(raw.trace() - 1.0) > 1e-8) {
    throw ValidationError("project_to_physical: input must be Hermitian with unit trace");
  }
  BlochVector r = bloch_from_matrix(raw);
  double n = r.norm();
  if (n > 1.0) {
    r.rx /= n;
    r.ry /= n;
    r.rz /= n;
  }
  return rho_from_bloch(r);
}

}  // namespace znelab
