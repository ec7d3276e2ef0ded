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

// Normalized Hermitian chain products F F^dagger / Tr(F F^dagger) with
// F = f_k(A_k) ... f_1(A_1): an exact spectral-calculus oracle and a staged
// simulation (phase estimation, eigenvalue-controlled ancilla rotation,
// uncomputation, postselection) with per-stage resource accounting.

#include <cstdint>
#include <optional>
#include <vector>

#include "qdasim/linalg.hpp"
#include "qdasim/rotation.hpp"

namespace qdasim::chain {

using linalg::DensityOperator;
using linalg::SpectralFunction;

struct Stage {
  DensityOperator a;
  SpectralFunction f;
  std::optional<double> c;  ///< defaults to (1 - epsilon) / max |f| on the kept spectrum
};

struct ChainSpec {
  std::vector<Stage> stages;
  double kappa_eff = 100.0;
  double epsilon = 0.1;
  int t = 8;
};

enum class StagePath {
  exact,     ///< ideal rotation amplitudes C f(lambda_l) per eigenvector
  register_  ///< t-bit eigenvalue register, rotation read from register values
};

struct StageOptions {
  StagePath path = StagePath::register_;
  rotation::Arithmetic arithmetic = rotation::Arithmetic::fixed_point;
  rotation::RotationConfig rotation;  ///< octaves are widened to reach 1/kappa_eff
};

struct StageResult {
  DensityOperator output;
  double success = 0.0;          ///< exact probability of ancilla = 1
  double bound = 0.0;            ///< (min |f| / max |f|)^2 on the kept spectrum
  double guaranteed = 0.0;       ///< (C min |f|)^2 Tr(P rho_prev), exact-path lower bound
  double c = 0.0;                ///< normalization constant used
  double support_weight = 0.0;   ///< Tr(P rho_prev) for the kept eigenspace P
  double condition_number = 0.0; ///< lambda_max / smallest kept eigenvalue
  double time_scale = 0.0;       ///< register phase per unit eigenvalue (register path)
  int saturated_values = 0;      ///< register values whose rotation hit C f = 1
};

struct ChainReport {
  DensityOperator output;
  std::vector<double> stage_success_probabilities{};
  double total_success_probability = 1.0;
  std::vector<std::int64_t> copies_used{};  ///< ceil(kappa_j^2 / epsilon^3)
  std::vector<double> theoretical_bound{};
  std::vector<double> guaranteed_bound{};
  double amplified_bound_stage1 = 1.0;    ///< min |f_1| / max |f_1|
  std::vector<double> constants{};
  std::vector<double> support_weights{};
  std::vector<double> condition_numbers{};
};

/// Default constant (1 - epsilon) / max |f(lambda)| over the kept spectrum.
double default_constant(const DensityOperator& a, const SpectralFunction& f, double kappa_eff,
                        double epsilon);

/// F F^dagger / Tr(F F^dagger) by exact spectral calculus; filtered
/// eigenvalues map to zero. Throws DomainError when the trace is below 1e-14.
DensityOperator classical_chain_oracle(const ChainSpec& spec,
                                       const std::optional<DensityOperator>& rho0 = std::nullopt);

/// One stage: returns rho' proportional to f(A) rho f(A)^dagger and the
/// exact ancilla success probability. `epsilon` only enters the default C.
///
/// The register path places the eigenvalue register in a sine-window state,
/// scales A so lambda_max reads as 15/16 and treats register values at or
/// above 31/32 as wrapped negative phases. After the rotation the register is
/// uncomputed and traced out, so register garbage left by imperfect phase
/// estimation decoheres the output exactly as it would on hardware.
///
/// Throws DomainError if every eigenvalue is filtered or the ancilla branch
/// vanishes.
StageResult chain_stage(const DensityOperator& rho_prev, const DensityOperator& a,
                        const SpectralFunction& f, int t, double kappa_eff, std::optional<double> c,
                        double epsilon = 0.1, const StageOptions& options = {});

/// Folds chain_stage over the stages in order, starting from rho0 (I/N when
/// absent). An empty chain returns rho0 with total success 1.
ChainReport chain_apply(const ChainSpec& spec,
                        const std::optional<DensityOperator>& rho0 = std::nullopt,
                        const StageOptions& options = {});

std::int64_t copies_required(double condition_number, double epsilon);

/// X / eps^3 * sum_j kappa_j^2 * r_1 * prod_{j>=2} r_j^2 with r_j = max |f_j| / min |f_j|
/// on the kept spectrum of A_j and kappa_j its condition number.
double complexity_estimate(const ChainSpec& spec, double construction_cost);

}  // namespace qdasim::chain
