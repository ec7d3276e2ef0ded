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

#include "qdasim/chain.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

#include "qdasim/error.hpp"
#include "qdasim/qsim.hpp"

namespace qdasim::chain {

using linalg::Complex;
using linalg::Index;
using linalg::Matrix;
using linalg::RealVector;

namespace {

constexpr double kHeadroom = 15.0 / 16.0;  // lambda_max reads as this phase
constexpr double kWrapPhase = 31.0 / 32.0; // register values above are negative phases
constexpr double kVanishingBranch = 1e-12;

void check_parameters(int t, double kappa_eff) {
  if (t < 2 || t > 12) throw std::invalid_argument("chain: t must lie in [2, 12]");
  if (!(kappa_eff >= 1.0)) throw std::invalid_argument("chain: kappa_eff must be at least 1");
}

double resolve_constant(const linalg::FilteredSpectrum& spectrum, const SpectralFunction& f,
                        std::optional<double> c, double epsilon) {
  const double f_max = spectrum.function_max(f);
  if (!c) return (1.0 - epsilon) / f_max;
  if (!(*c > 0.0) || *c * f_max > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "chain: C = " << *c << " gives C max|f| = " << *c * f_max << ", outside (0, 1]";
    throw std::invalid_argument(os.str());
  }
  return *c;
}

// Register amplitude left on ancilla |1> for register value m.
struct RotationTable {
  std::vector<double> g;
  int saturated = 0;
};

RotationTable rotation_table(Index size, double kappa_eff, const SpectralFunction& f, double c_reg,
                             const StageOptions& options) {
  RotationTable table;
  table.g.assign(static_cast<std::size_t>(size), 0.0);
  const double floor = kHeadroom / kappa_eff;
  rotation::RotationConfig config = options.rotation;
  config.octaves = rotation::octaves_for(floor, config.octaves);
  for (Index m = 1; m < size; ++m) {
    const double x = static_cast<double>(m) / static_cast<double>(size);
    if (x >= kWrapPhase || x < floor) continue;
    double a1 = 0.0;
    if (options.arithmetic == rotation::Arithmetic::exact) {
      const double cf = c_reg * f(x);
      if (cf >= 1.0) ++table.saturated;
      a1 = std::min(cf, 1.0);
    } else {
      const rotation::AngleResult angle = rotation::rotation_angle(x, f, c_reg, config);
      if (angle.saturated) ++table.saturated;
      a1 = std::sin(angle.theta.to_double());
    }
    table.g[static_cast<std::size_t>(m)] = a1;
  }
  return table;
}

// Gram matrix K(l', l) = <z_l'|z_l> of the uncomputed register states
// z_l = D_l^dagger F^dagger (g . alpha_l).
Matrix register_overlaps(const Matrix& alpha, const std::vector<double>& g, const RealVector& phases) {
  const Index size = alpha.rows();
  const Index n = alpha.cols();
  const auto t_size = static_cast<double>(size);
  Eigen::FFT<double> fft;
  std::vector<Complex> in(static_cast<std::size_t>(size));
  std::vector<Complex> out;
  Matrix z(size, n);
  for (Index l = 0; l < n; ++l) {
    for (Index m = 0; m < size; ++m) in[static_cast<std::size_t>(m)] = g[static_cast<std::size_t>(m)] * alpha(m, l);
    fft.fwd(out, in);
    for (Index tau = 0; tau < size; ++tau) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(tau) * phases(l);
      z(tau, l) = std::polar(1.0, angle) * out[static_cast<std::size_t>(tau)] / std::sqrt(t_size);
    }
  }
  return z.adjoint() * z;
}

}  // namespace

double default_constant(const DensityOperator& a, const SpectralFunction& f, double kappa_eff,
                        double epsilon) {
  return (1.0 - epsilon) / linalg::filtered_spectrum(a.base(), kappa_eff).function_max(f);
}

DensityOperator classical_chain_oracle(const ChainSpec& spec, const std::optional<DensityOperator>& rho0) {
  if (spec.stages.empty() && !rho0) {
    throw std::invalid_argument("classical_chain_oracle: empty chain needs an initial state");
  }
  const Index n = rho0 ? rho0->dim() : spec.stages.front().a.dim();
  Matrix product = Matrix::Identity(n, n);
  for (const auto& stage : spec.stages) {
    if (stage.a.dim() != n) throw std::invalid_argument("classical_chain_oracle: stage dimension mismatch");
    product = linalg::matrix_function(stage.a.base(), stage.f, spec.kappa_eff).matrix() * product;
  }
  const Matrix start = rho0 ? rho0->matrix() : Matrix(Matrix::Identity(n, n) / static_cast<double>(n));
  const Matrix out = product * start * product.adjoint();
  const double tr = out.trace().real();
  if (!(tr >= 1e-14)) {
    throw DomainError("classical_chain_oracle: the chain annihilates the initial state");
  }
  return DensityOperator(Matrix(out / tr));
}

StageResult chain_stage(const DensityOperator& rho_prev, const DensityOperator& a,
                        const SpectralFunction& f, int t, double kappa_eff, std::optional<double> c,
                        double epsilon, const StageOptions& options) {
  check_parameters(t, kappa_eff);
  if (rho_prev.dim() != a.dim()) throw std::invalid_argument("chain_stage: dimension mismatch");
  const linalg::FilteredSpectrum spectrum = linalg::filtered_spectrum(a.base(), kappa_eff);
  const Matrix& v = spectrum.eig.eigenvectors;
  const RealVector& lambda = spectrum.eig.eigenvalues;
  const Index n = a.dim();
  const Matrix beta = v.adjoint() * rho_prev.matrix() * v;

  StageResult result{.output = rho_prev};
  result.c = resolve_constant(spectrum, f, c, epsilon);
  result.bound = 1.0 / std::pow(spectrum.function_ratio(f), 2);
  result.condition_number = spectrum.condition_number();
  result.support_weight = (spectrum.support_projector() * rho_prev.matrix()).trace().real();
  const double f_min = spectrum.function_max(f) / spectrum.function_ratio(f);
  result.guaranteed = std::pow(std::min(result.c * f_min, 1.0), 2) * result.support_weight;

  Matrix out_eigenbasis;
  if (options.path == StagePath::exact) {
    RealVector h = RealVector::Zero(n);
    for (Index l = 0; l < n; ++l) {
      if (spectrum.kept[static_cast<std::size_t>(l)]) h(l) = result.c * f(lambda(l));
    }
    out_eigenbasis = beta.cwiseProduct((h * h.transpose()).cast<Complex>());
  } else {
    const Index size = Index{1} << t;
    result.time_scale = kHeadroom / spectrum.lambda_max;
    const RealVector phases = (lambda * result.time_scale).cwiseMax(0.0);
    const Matrix alpha = qsim::register_amplitudes(phases, size, qsim::Window::sine);
    // C f(lambda) = C sigma^-r f(sigma lambda) for f = x^r.
    const double c_reg = result.c * std::pow(result.time_scale, -f.exponent());
    const RotationTable table = rotation_table(size, kappa_eff, f, c_reg, options);
    result.saturated_values = table.saturated;
    const Matrix overlaps = register_overlaps(alpha, table.g, phases);
    out_eigenbasis = beta.cwiseProduct(overlaps.transpose());
  }

  result.success = out_eigenbasis.trace().real();
  if (!(result.success >= kVanishingBranch)) {
    std::ostringstream os;
    os << "chain_stage: ancilla success probability " << result.success
       << " vanishes (input has no weight on the kept spectrum)";
    throw DomainError(os.str());
  }
  result.output = DensityOperator(Matrix(v * out_eigenbasis * v.adjoint() / result.success));
  return result;
}

ChainReport chain_apply(const ChainSpec& spec, const std::optional<DensityOperator>& rho0,
                        const StageOptions& options) {
  if (spec.stages.empty() && !rho0) {
    throw std::invalid_argument("chain_apply: empty chain needs an initial state");
  }
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    throw std::invalid_argument("chain_apply: epsilon must lie in (0, 1)");
  }
  check_parameters(spec.t, spec.kappa_eff);
  ChainReport report{.output = rho0 ? *rho0 : DensityOperator::maximally_mixed(spec.stages.front().a.dim())};
  for (std::size_t j = 0; j < spec.stages.size(); ++j) {
    const Stage& stage = spec.stages[j];
    const StageResult r = chain_stage(report.output, stage.a, stage.f, spec.t, spec.kappa_eff,
                                      stage.c, spec.epsilon, options);
    report.output = r.output;
    report.stage_success_probabilities.push_back(r.success);
    report.total_success_probability *= r.success;
    report.copies_used.push_back(copies_required(r.condition_number, spec.epsilon));
    report.theoretical_bound.push_back(r.bound);
    report.guaranteed_bound.push_back(r.guaranteed);
    report.constants.push_back(r.c);
    report.support_weights.push_back(r.support_weight);
    report.condition_numbers.push_back(r.condition_number);
    if (j == 0) report.amplified_bound_stage1 = std::sqrt(r.bound);
  }
  return report;
}

std::int64_t copies_required(double condition_number, double epsilon) {
  return static_cast<std::int64_t>(
      std::ceil(condition_number * condition_number / (epsilon * epsilon * epsilon) - 1e-9));
}

double complexity_estimate(const ChainSpec& spec, double construction_cost) {
  double kappa_sum = 0.0;
  double ratios = 1.0;
  for (std::size_t j = 0; j < spec.stages.size(); ++j) {
    const auto spectrum = linalg::filtered_spectrum(spec.stages[j].a.base(), spec.kappa_eff);
    kappa_sum += spectrum.condition_number() * spectrum.condition_number();
    const double r = spectrum.function_ratio(spec.stages[j].f);
    ratios *= j == 0 ? r : r * r;
  }
  const double eps3 = spec.epsilon * spec.epsilon * spec.epsilon;
  return construction_cost / eps3 * kappa_sum * ratios;
}

}  // namespace qdasim::chain
