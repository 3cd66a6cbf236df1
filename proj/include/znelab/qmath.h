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

// Dense 2x2 complex algebra for a single qubit. Basis ordering is
// |0> (ground, spin down) then |1> (excited, spin up).

#ifndef ZNELAB_QMATH_H_
#define ZNELAB_QMATH_H_

#include <array>
#include <complex>

namespace znelab {

using Complex = std::complex<double>;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  bool operator==(const Vec3 &) const = default;
};

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
struct Mat2 {
  std::array<Complex, 4> m{};

  static Mat2 identity();
  static Mat2 zero();
  static Mat2 pauli_x();
  static Mat2 pauli_y();
  static Mat2 pauli_z();

  Complex &operator()(int r, int c) { return m[2 * r + c]; }
  const Complex &operator()(int r, int c) const { return m[2 * r + c]; }

  Mat2 operator*(const Mat2 &o) const;
  Mat2 operator+(const Mat2 &o) const;
  Mat2 operator-(const Mat2 &o) const;
  Mat2 operator*(Complex s) const;
  Mat2 &operator+=(const Mat2 &o);

  Mat2 adjoint() const;
  Complex trace() const { return m[0] + m[3]; }
  Complex det() const { return m[0] * m[3] - m[1] * m[2]; }
  double frobenius_norm() const;
  double max_abs() const;
  bool is_hermitian(double tol) const;
  bool operator==(const Mat2 &) const = default;
};

/// Pure single-qubit state amplitude pair.
using Ket = std::array<Complex, 2>;

double ket_norm(const Ket &psi);
Ket apply(const Mat2 &u, const Ket &psi);

/// Frobenius distance between a and b after removing the best global phase,
/// min over phi of |a - e^{i phi} b|.
double phase_insensitive_distance(const Mat2 &a, const Mat2 &b);

/// exp(-i h t) for Hermitian h. Uses the closed form
/// exp(-i(a I + b.sigma)t) = e^{-iat}(cos(|b|t) I - i sin(|b|t) b.sigma/|b|).
/// Throws ValidationError if h is not Hermitian within 1e-10.
Mat2 mat_exp_unitary(const Mat2 &h, double t);

/// Same as mat_exp_unitary without the Hermiticity check, for hot loops where
/// the caller constructs h from real coefficients.
Mat2 exp_pauli_unchecked(double a, const Vec3 &b, double t);

/// exp(-i theta n.sigma / 2).
Mat2 rotation(const Vec3 &axis, double angle);

/// Returns U rho U^dagger.
Mat2 conjugate(const Mat2 &u, const Mat2 &rho);

struct BlochVector {
  double rx = 0.0;
  double ry = 0.0;
  double rz = 0.0;

  double norm() const;
  Vec3 as_vec() const { return {rx, ry, rz}; }
};

/// A validated single-qubit density matrix: unit trace, Hermitian, PSD.
class DensityMatrix {
 public:
  static constexpr double kTraceTol = 1e-10;
  static constexpr double kHermTol = 1e-10;
  static constexpr double kEigTol = 1e-9;

  /// |0><0|.
  DensityMatrix();

  /// Throws ValidationError if `m` violates any of the invariants.
  static DensityMatrix from_matrix(const Mat2 &m);
  static DensityMatrix from_ket(const Ket &psi);
  static DensityMatrix maximally_mixed();
  static DensityMatrix ground() { return DensityMatrix(); }
  static DensityMatrix excited();

  const Mat2 &matrix() const { return rho_; }
  double p0() const { return rho_(0, 0).real(); }
  double p1() const { return rho_(1, 1).real(); }

  /// Wraps a matrix known to satisfy the invariants (channel outputs).
  static DensityMatrix trusted(const Mat2 &m) { return DensityMatrix(m); }

 private:
  explicit DensityMatrix(const Mat2 &m) : rho_(m) {}
  Mat2 rho_;
};

/// <psi|rho|psi>. Throws ValidationError if psi is not normalized within
/// 1e-10.
double fidelity(const DensityMatrix &rho, const Ket &psi);

/// Uhlmann fidelity for two qubit states: tr(rho sigma) + 2 sqrt(det rho det
/// sigma).
double state_fidelity(const DensityMatrix &a, const DensityMatrix &b);

BlochVector bloch_from_rho(const DensityMatrix &rho);
BlochVector bloch_from_matrix(const Mat2 &m);

/// (I + r.sigma)/2. Throws ValidationError when |r| > 1 + 1e-9.
DensityMatrix rho_from_bloch(const BlochVector &r);

/// Nearest density matrix in Frobenius norm: clip negative eigenvalues and
/// renormalize. For a qubit this is radial projection of the Bloch vector
/// onto the unit ball. Precondition: Hermitian, trace one within 1e-8.
DensityMatrix project_to_physical(const Mat2 &raw);

/// Eigenvalues of a Hermitian 2x2 matrix, ascending.
std::array<double, 2> hermitian_eigenvalues(const Mat2 &h);

}  // namespace znelab

#endif  // ZNELAB_QMATH_H_
