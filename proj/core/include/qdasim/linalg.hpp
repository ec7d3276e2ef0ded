// Copyright 2026 The qdasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex Hermitian linear algebra: the operator types every other
// module trades in, eigendecomposition, spectral matrix functions with a
// relative condition-number cutoff, partial trace and trace distance.

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace qdasim::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-9;
inline constexpr Index kMaxDimension = 4096;

/// Largest |H(i,j) - conj(H(j,i))|.
double max_asymmetry(const Matrix& m);

/// Dense N x N complex Hermitian matrix.
///
/// Construction symmetrizes (H + H^dagger)/2 when the asymmetry is below
/// kHermitianTolerance and throws std::invalid_argument (reporting the
/// asymmetry) above it.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries);

  static HermitianOperator identity(Index n);
  static HermitianOperator diagonal(const RealVector& values);
  static HermitianOperator from_real(const RealMatrix& m);

  Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double trace() const { return m_.trace().real(); }

 private:
  Matrix m_;
};

/// Positive semidefinite, unit-trace Hermitian operator.
class DensityOperator {
 public:
  explicit DensityOperator(HermitianOperator base);
  explicit DensityOperator(Matrix entries) : DensityOperator(HermitianOperator(std::move(entries))) {}

  static DensityOperator maximally_mixed(Index n);
  /// |psi><psi| / <psi|psi>.
  static DensityOperator pure(const Vector& psi);
  /// Rescales a PSD operator to unit trace; throws DomainError on zero trace.
  static DensityOperator normalized(const Matrix& psd);

  Index dim() const { return base_.dim(); }
  const HermitianOperator& base() const { return base_; }
  const Matrix& matrix() const { return base_.matrix(); }

 private:
  HermitianOperator base_;
};

/// Full spectrum, eigenvalues sorted descending, eigenvectors column-aligned.
struct EigenSolution {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

/// f(x) = x^r on the positive reals. The named kinds are the exponents the
/// discriminant-analysis chains use.
class SpectralFunction {
 public:
  enum class Kind { identity, sqrt, inverse, inverse_sqrt, power };

  static SpectralFunction identity() { return {Kind::identity, 1.0}; }
  static SpectralFunction sqrt() { return {Kind::sqrt, 0.5}; }
  static SpectralFunction inverse() { return {Kind::inverse, -1.0}; }
  static SpectralFunction inverse_sqrt() { return {Kind::inverse_sqrt, -0.5}; }
  static SpectralFunction power(double exponent);

  /// Accepts "identity", "sqrt", "inverse", "inverse-sqrt", "power(r)".
  static SpectralFunction parse(std::string_view text);

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  std::string name() const;
  double operator()(double x) const;

  friend bool operator==(const SpectralFunction&, const SpectralFunction&) = default;

 private:
  SpectralFunction(Kind kind, double exponent) : kind_(kind), exponent_(exponent) {}
  Kind kind_;
  double exponent_;
};

/// Eigendecomposition with the eigenvalues that survive the relative cutoff
/// lambda / lambda_max >= 1 / kappa_eff marked.
struct FilteredSpectrum {
  EigenSolution eig;
  std::vector<bool> kept;
  double lambda_max = 0.0;
  double kept_min = 0.0;
  Index kept_count = 0;

  /// lambda_max / kept_min over the unfiltered spectrum.
  double condition_number() const { return lambda_max / kept_min; }
  /// max |f| / min |f| over the unfiltered spectrum.
  double function_ratio(const SpectralFunction& f) const;
  double function_max(const SpectralFunction& f) const;
  /// Orthogonal projector onto the unfiltered eigenspace.
  Matrix support_projector() const;
};

EigenSolution eig_hermitian(const HermitianOperator& h);

/// Throws DomainError when every eigenvalue is filtered (lambda_max <= 0).
FilteredSpectrum filtered_spectrum(const HermitianOperator& h, double kappa_eff);

/// sum_l f(lambda_l) |u_l><u_l| over the unfiltered eigenvalues; filtered
/// eigenvalues contribute zero for every f, so f = inverse is a pseudo-inverse.
HermitianOperator matrix_function(const HermitianOperator& h, const SpectralFunction& f,
                                  double kappa_eff);
HermitianOperator matrix_function(const FilteredSpectrum& spectrum, const SpectralFunction& f);

enum class Subsystem { first, second };

/// Reduced operator after tracing out one factor of a d1 x d2 bipartition.
/// Basis index of the joint space is i1 * d2 + i2.
Matrix partial_trace(const Matrix& joint, Index d1, Index d2, Subsystem over);
DensityOperator partial_trace(const DensityOperator& rho, Index d1, Index d2, Subsystem over);
/// Same contraction for a pure joint state |psi><psi| without forming the
/// (d1 d2)^2 projector.
Matrix partial_trace_pure(const Vector& psi, Index d1, Index d2, Subsystem over);

/// (1/2) || rho - sigma ||_1, clamped to [0, 1].
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix projector(const Vector& v);

/// Principal eigenvector of a Hermitian matrix with its phase fixed so the
/// overlap with `reference` is real and positive (or, if that overlap
/// vanishes, the largest-magnitude component is real and positive).
Vector principal_vector(const Matrix& h, const Vector* reference = nullptr);

}  // namespace qdasim::linalg
