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

// Simulation primitives over explicit density matrices: swap-interaction
// exponentiation of a density operator, phase estimation into a t-bit
// eigenvalue register, sampled swap and Hadamard overlap tests, and
// postselection on a named register.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdasim/linalg.hpp"

namespace qdasim::qsim {

using linalg::DensityOperator;
using linalg::Index;
using linalg::Matrix;
using linalg::Vector;

struct Register {
  std::string name;
  Index dimension;
};

/// Joint state over an ordered list of registers; the first register is the
/// most significant digit of the joint basis index.
///
/// A state is either coherent (one dense density operator) or dephased in the
/// leading register: then only the diagonal blocks P_m = <m|rho|m> are kept,
/// which is the state after that register has been measured and forgotten.
/// Everything that reads the register out (probabilities, conditionals,
/// postselection, sampling) is identical on both forms.
class RegisteredState {
 public:
  RegisteredState(std::vector<Register> layout, DensityOperator state);
  /// `blocks[m]` is the unnormalized state of the trailing registers with the
  /// leading register at m. The traces must sum to 1.
  static RegisteredState dephased(std::vector<Register> layout, std::vector<Matrix> blocks);

  const std::vector<Register>& layout() const { return layout_; }
  Index dim() const;
  bool coherent() const { return state_.has_value(); }
  /// Coherent form only.
  const DensityOperator& state() const;
  /// Dephased form only.
  const std::vector<Matrix>& blocks() const { return blocks_; }

  std::size_t index_of(const std::string& name) const;
  /// Outcome distribution of measuring one register.
  linalg::RealVector probabilities(const std::string& name) const;
  /// State of the remaining registers given `name` reads `outcome`.
  /// Throws DomainError when that outcome has probability below 1e-12.
  DensityOperator conditional(const std::string& name, Index outcome) const;
  /// Dense joint matrix; the dephased form comes out block diagonal.
  Matrix dense() const;

 private:
  RegisteredState(std::vector<Register> layout, std::vector<Matrix> blocks);
  std::vector<Register> layout_;
  std::optional<DensityOperator> state_;
  std::vector<Matrix> blocks_;
};

struct ShotResult {
  double estimate = 0.0;
  std::int64_t shots = 0;
  double standard_error = 0.0;
  double acceptance_probability = 0.0;  ///< exact P(ancilla = 0)
};

/// Tr_1[e^{-iS dt} (generator (x) target) e^{iS dt}] with S the swap of the
/// two factors. Requires |dt| <= 1.
DensityOperator density_exponentiation_step(const DensityOperator& generator,
                                            const DensityOperator& target, double dt);

enum class Window { uniform, sine };
enum class QpePath { exact, simulation };

/// Slice count ceil(t0 / dt) for the evolution time t0 = kappa / epsilon.
int slice_count(double kappa_eff, double epsilon, double dt = 0.05);
inline constexpr int kDefaultSteps = 20000;  // slice_count(100, 0.1)

/// Slices per application of U that keep the exponentiation error summed
/// over the 2^t - 1 controlled powers near epsilon: each slice errs by
/// O(dt^2) with dt = 2 pi time_scale / steps. At least 64.
int simulation_steps(double time_scale, int t, double epsilon);

inline constexpr const char* kEigenvalueRegister = "eigenvalue";
inline constexpr const char* kSystemRegister = "system";

struct PhaseEstimationOptions {
  QpePath path = QpePath::exact;
  Window window = Window::uniform;
  /// Phase read into the register is lambda * time_scale; U = e^{-2 pi i G time_scale}.
  double time_scale = 1.0;
  /// Simulation path: exponentiation slices per application of U.
  int steps = kDefaultSteps;
  /// Keep register coherences (dense joint state) instead of the dephased form.
  bool coherent = false;
};

/// Normalized register preparation sum_tau w_tau |tau>.
linalg::RealVector window_state(Index register_size, Window window);

/// Column l holds the register amplitudes after controlled-U^tau and the
/// readout transform for eigenphase phases[l]:
/// alpha[m] = T^{-1/2} sum_tau w_tau e^{2 pi i tau (m / T - phase)}.
Matrix register_amplitudes(const linalg::RealVector& phases, Index register_size, Window window);

/// Joint eigenvalue-register (x) system state with layout
/// {"eigenvalue": 2^t, "system": N}. Throws std::invalid_argument when t is
/// outside [2, 12] or the scaled spectrum leaves [0, 1).
RegisteredState phase_estimation(const DensityOperator& generator, const DensityOperator& input,
                                 int t, const PhaseEstimationOptions& options = {});

struct EigenpairSample {
  Index register_value = 0;
  double phase = 0.0;       ///< register_value / 2^t
  Vector eigenvector;       ///< principal vector of the conditional system state
  double frequency = 0.0;   ///< empirical
  double probability = 0.0; ///< exact outcome probability
};

/// Measures the eigenvalue register `draws` times. One entry per distinct
/// outcome, ordered by descending phase.
std::vector<EigenpairSample> sample_eigenpairs(const RegisteredState& joint, std::int64_t draws,
                                               std::uint64_t seed);

/// Ancilla-controlled swap: P(0) = 1/2 + |<a|b>|^2 / 2, estimate 2 p0_hat - 1.
ShotResult swap_test(const Vector& a, const Vector& b, std::int64_t shots, std::uint64_t seed);

/// Hadamard test on the ancilla-controlled preparation of a or b:
/// P(0) = (1 + Re<a|b>) / 2, estimate 2 p0_hat - 1.
ShotResult overlap_test_signed(const Vector& a, const Vector& b, std::int64_t shots,
                               std::uint64_t seed);

/// Projects `name` onto |outcome>, renormalizes, keeps the layout.
/// Throws DomainError when the branch probability is below 1e-12.
std::pair<RegisteredState, double> postselect_ancilla(const RegisteredState& joint,
                                                      const std::string& name, Index outcome);

}  // namespace qdasim::qsim
