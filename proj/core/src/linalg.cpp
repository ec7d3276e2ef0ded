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

#include "qdasim/linalg.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qdasim/error.hpp"

namespace qdasim::linalg {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(os.str());
  }
  if (m.rows() > kMaxDimension) {
    throw std::invalid_argument(std::string(what) + ": dimension exceeds the dense limit");
  }
  if (!m.allFinite()) {
    throw NumericalError(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

double max_asymmetry(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(Matrix entries) : m_(std::move(entries)) {
  require_square(m_, "HermitianOperator");
  const double asym = max_asymmetry(m_);
  if (asym > kHermitianTolerance) {
    std::ostringstream os;
    os << "HermitianOperator: matrix is not Hermitian (max asymmetry " << asym << ")";
    throw std::invalid_argument(os.str());
  }
  m_ = (0.5 * (m_ + m_.adjoint())).eval();
}

HermitianOperator HermitianOperator::identity(Index n) {
  return HermitianOperator(Matrix::Identity(n, n));
}

HermitianOperator HermitianOperator::diagonal(const RealVector& values) {
  return HermitianOperator(Matrix(values.cast<Complex>().asDiagonal()));
}

HermitianOperator HermitianOperator::from_real(const RealMatrix& m) {
  return HermitianOperator(Matrix(m.cast<Complex>()));
}

DensityOperator::DensityOperator(HermitianOperator base) : base_(std::move(base)) {
  const double tr = base_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "DensityOperator: trace " << tr << " differs from 1";
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(base_.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("DensityOperator: eigenvalue solver failed");
  }
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kPsdTolerance) {
    std::ostringstream os;
    os << "DensityOperator: negative eigenvalue " << min_eig;
    throw std::invalid_argument(os.str());
  }
}

DensityOperator DensityOperator::maximally_mixed(Index n) {
  return DensityOperator(Matrix(Matrix::Identity(n, n) / static_cast<double>(n)));
}

DensityOperator DensityOperator::pure(const Vector& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0)) {
    throw DomainError("DensityOperator::pure: zero vector");
  }
  return DensityOperator(Matrix(psi * psi.adjoint() / norm2));
}

DensityOperator DensityOperator::normalized(const Matrix& psd) {
  const double tr = psd.trace().real();
  if (!(tr > 1e-300) || !std::isfinite(tr)) {
    throw DomainError("DensityOperator::normalized: operator has no positive trace");
  }
  return DensityOperator(Matrix(psd / tr));
}

SpectralFunction SpectralFunction::power(double exponent) {
  if (!std::isfinite(exponent)) {
    throw std::invalid_argument("SpectralFunction::power: exponent must be finite");
  }
  return {Kind::power, exponent};
}

SpectralFunction SpectralFunction::parse(std::string_view text) {
  if (text == "identity") return identity();
  if (text == "sqrt") return sqrt();
  if (text == "inverse") return inverse();
  if (text == "inverse-sqrt" || text == "inverse_sqrt") return inverse_sqrt();
  if (text.starts_with("power(") && text.ends_with(")")) {
    const std::string inner(text.substr(6, text.size() - 7));
    std::size_t used = 0;
    double r = 0.0;
    try {
      r = std::stod(inner, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == inner.size() && used > 0) return power(r);
  }
  throw std::invalid_argument("unknown spectral function '" + std::string(text) + "'");
}

std::string SpectralFunction::name() const {
  switch (kind_) {
    case Kind::identity: return "identity";
    case Kind::sqrt: return "sqrt";
    case Kind::inverse: return "inverse";
    case Kind::inverse_sqrt: return "inverse-sqrt";
    case Kind::power: break;
  }
  std::ostringstream os;
  os << "power(" << exponent_ << ")";
  return os.str();
}

double SpectralFunction::operator()(double x) const {
  switch (kind_) {
    case Kind::identity: return x;
    case Kind::sqrt: return std::sqrt(x);
    case Kind::inverse: return 1.0 / x;
    case Kind::inverse_sqrt: return 1.0 / std::sqrt(x);
    case Kind::power: break;
  }
  return exponent_ == 0.0 ? 1.0 : std::pow(x, exponent_);
}

EigenSolution eig_hermitian(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigenvalue solver failed");
  }
  // Eigen sorts ascending.
  EigenSolution out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

double FilteredSpectrum::function_max(const SpectralFunction& f) const {
  double best = 0.0;
  for (Index l = 0; l < eig.eigenvalues.size(); ++l) {
    if (kept[l]) best = std::max(best, std::abs(f(eig.eigenvalues[l])));
  }
  return best;
}

double FilteredSpectrum::function_ratio(const SpectralFunction& f) const {
  double hi = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (Index l = 0; l < eig.eigenvalues.size(); ++l) {
    if (!kept[l]) continue;
    const double v = std::abs(f(eig.eigenvalues[l]));
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return hi / lo;
}

Matrix FilteredSpectrum::support_projector() const {
  const Index n = eig.eigenvalues.size();
  Matrix p = Matrix::Zero(n, n);
  for (Index l = 0; l < n; ++l) {
    if (kept[l]) p += eig.eigenvectors.col(l) * eig.eigenvectors.col(l).adjoint();
  }
  return p;
}

FilteredSpectrum filtered_spectrum(const HermitianOperator& h, double kappa_eff) {
  if (!(kappa_eff >= 1.0)) {
    throw std::invalid_argument("kappa_eff must be >= 1");
  }
  FilteredSpectrum s;
  s.eig = eig_hermitian(h);
  s.lambda_max = s.eig.eigenvalues[0];
  if (!(s.lambda_max > 0.0)) {
    throw DomainError("spectral filter removed every eigenvalue (rank collapse)");
  }
  const Index n = s.eig.eigenvalues.size();
  s.kept.assign(static_cast<std::size_t>(n), false);
  s.kept_min = s.lambda_max;
  for (Index l = 0; l < n; ++l) {
    const double lambda = s.eig.eigenvalues[l];
    if (lambda / s.lambda_max >= 1.0 / kappa_eff) {
      s.kept[l] = true;
      s.kept_min = std::min(s.kept_min, lambda);
      ++s.kept_count;
    }
  }
  return s;
}

HermitianOperator matrix_function(const FilteredSpectrum& spectrum, const SpectralFunction& f) {
  const auto& eig = spectrum.eig;
  RealVector values = RealVector::Zero(eig.eigenvalues.size());
  for (Index l = 0; l < values.size(); ++l) {
    if (spectrum.kept[l]) values[l] = f(eig.eigenvalues[l]);
  }
  Matrix out = eig.eigenvectors * values.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
  return HermitianOperator(std::move(out));
}

HermitianOperator matrix_function(const HermitianOperator& h, const SpectralFunction& f,
                                  double kappa_eff) {
  const FilteredSpectrum spectrum = filtered_spectrum(h, kappa_eff);
  if (spectrum.eig.eigenvalues.minCoeff() < -kPsdTolerance) {
    throw std::invalid_argument("matrix_function: operator is not positive semidefinite");
  }
  return matrix_function(spectrum, f);
}

Matrix partial_trace(const Matrix& joint, Index d1, Index d2, Subsystem over) {
  if (d1 < 1 || d2 < 1 || joint.rows() != d1 * d2 || joint.cols() != d1 * d2) {
    std::ostringstream os;
    os << "partial_trace: operator of dimension " << joint.rows() << " does not factor as " << d1
       << " x " << d2;
    throw std::invalid_argument(os.str());
  }
  if (over == Subsystem::first) {
    Matrix out = Matrix::Zero(d2, d2);
    for (Index k = 0; k < d1; ++k) out += joint.block(k * d2, k * d2, d2, d2);
    return out;
  }
  Matrix out(d1, d1);
  for (Index i = 0; i < d1; ++i) {
    for (Index j = 0; j < d1; ++j) out(i, j) = joint.block(i * d2, j * d2, d2, d2).trace();
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Index d1, Index d2, Subsystem over) {
  return DensityOperator(partial_trace(rho.matrix(), d1, d2, over));
}

Matrix partial_trace_pure(const Vector& psi, Index d1, Index d2, Subsystem over) {
  if (d1 < 1 || d2 < 1 || psi.size() != d1 * d2) {
    throw std::invalid_argument("partial_trace_pure: state does not factor as d1 x d2");
  }
  // Row i1 of `amplitudes` holds <i1, . |psi>.
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      amplitudes(psi.data(), d1, d2);
  if (over == Subsystem::first) {
    return amplitudes.transpose() * amplitudes.conjugate();
  }
  return amplitudes * amplitudes.adjoint();
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("trace_distance: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix() - sigma.matrix(),
                                                Eigen::EigenvaluesOnly);
  const double d = 0.5 * solver.eigenvalues().cwiseAbs().sum();
  return std::clamp(d, 0.0, 1.0);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Vector principal_vector(const Matrix& h, const Vector* reference) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (h + h.adjoint()));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("principal_vector: eigenvalue solver failed");
  }
  Vector v = solver.eigenvectors().col(h.rows() - 1);
  Complex anchor{0.0, 0.0};
  if (reference != nullptr) anchor = reference->dot(v);
  if (std::abs(anchor) < 1e-12) {
    Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    anchor = v[arg];
  }
  return v * (std::abs(anchor) / anchor);
}

}  // namespace qdasim::linalg
