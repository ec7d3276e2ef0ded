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

#include "qdasim/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unsupported/Eigen/FFT>

#include "qdasim/error.hpp"

namespace qdasim::qsim {

using linalg::Complex;
using linalg::RealVector;

namespace {

constexpr double kVanishingBranch = 1e-12;
constexpr Index kCoherentLimit = 1024;          // register x system dimension
constexpr Index kSimulationEntryLimit = Index{1} << 24;  // (T N)^2 stored entries

Index product_of(const std::vector<Register>& layout, std::size_t from = 0) {
  Index d = 1;
  for (std::size_t k = from; k < layout.size(); ++k) d *= layout[k].dimension;
  return d;
}

void check_layout(const std::vector<Register>& layout) {
  if (layout.empty()) throw std::invalid_argument("RegisteredState: empty layout");
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i].dimension < 1) {
      throw std::invalid_argument("RegisteredState: register '" + layout[i].name +
                                  "' has no basis states");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (layout[i].name == layout[j].name) {
        throw std::invalid_argument("RegisteredState: duplicate register '" + layout[i].name + "'");
      }
    }
  }
}

// Digit of register `k` in the joint basis index.
struct DigitMap {
  Index stride;
  Index dimension;
  Index digit(Index joint) const { return (joint / stride) % dimension; }
};

DigitMap digit_map(const std::vector<Register>& layout, std::size_t k) {
  return {product_of(layout, k + 1), layout[k].dimension};
}

std::vector<Index> indices_with(const std::vector<Register>& layout, std::size_t k, Index outcome) {
  const DigitMap map = digit_map(layout, k);
  std::vector<Index> out;
  const Index total = product_of(layout);
  for (Index i = 0; i < total; ++i) {
    if (map.digit(i) == outcome) out.push_back(i);
  }
  return out;
}

Matrix submatrix(const Matrix& m, const std::vector<Index>& idx) {
  const auto n = static_cast<Index>(idx.size());
  Matrix out(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) out(r, c) = m(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
  }
  return out;
}

Matrix project(const Matrix& m, const std::vector<Register>& layout, std::size_t k, Index outcome) {
  const DigitMap map = digit_map(layout, k);
  Matrix out = m;
  for (Index r = 0; r < m.rows(); ++r) {
    const bool keep_r = map.digit(r) == outcome;
    for (Index c = 0; c < m.cols(); ++c) {
      if (!keep_r || map.digit(c) != outcome) out(r, c) = 0.0;
    }
  }
  return out;
}

void check_outcome(const std::vector<Register>& layout, std::size_t k, Index outcome) {
  if (outcome < 0 || outcome >= layout[k].dimension) {
    std::ostringstream os;
    os << "register '" << layout[k].name << "' has no outcome " << outcome;
    throw std::invalid_argument(os.str());
  }
}

double vanishing_check(double p, const std::string& name, Index outcome) {
  if (p < kVanishingBranch) {
    std::ostringstream os;
    os << "outcome " << outcome << " on register '" << name << "' has probability " << p
       << " (vanishing postselection branch)";
    throw DomainError(os.str());
  }
  return p;
}

void require_unit(const Vector& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-9) {
    std::ostringstream os;
    os << what << ": input is not normalized (norm " << v.norm() << ")";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// RegisteredState

RegisteredState::RegisteredState(std::vector<Register> layout, DensityOperator state)
    : layout_(std::move(layout)), state_(std::move(state)) {
  check_layout(layout_);
  if (product_of(layout_) != state_->dim()) {
    std::ostringstream os;
    os << "RegisteredState: layout dimension " << product_of(layout_) << " does not match state dimension "
       << state_->dim();
    throw std::invalid_argument(os.str());
  }
}

RegisteredState::RegisteredState(std::vector<Register> layout, std::vector<Matrix> blocks)
    : layout_(std::move(layout)), blocks_(std::move(blocks)) {}

RegisteredState RegisteredState::dephased(std::vector<Register> layout, std::vector<Matrix> blocks) {
  check_layout(layout);
  const Index inner = product_of(layout, 1);
  if (static_cast<Index>(blocks.size()) != layout.front().dimension) {
    throw std::invalid_argument("RegisteredState: one block per leading-register value required");
  }
  double total = 0.0;
  for (auto& b : blocks) {
    if (b.rows() != inner || b.cols() != inner) {
      throw std::invalid_argument("RegisteredState: block dimension does not match the layout");
    }
    if (linalg::max_asymmetry(b) > linalg::kHermitianTolerance) {
      throw std::invalid_argument("RegisteredState: block is not Hermitian");
    }
    b = (0.5 * (b + b.adjoint())).eval();
    total += b.trace().real();
  }
  if (std::abs(total - 1.0) > linalg::kTraceTolerance) {
    std::ostringstream os;
    os << "RegisteredState: block traces sum to " << total;
    throw std::invalid_argument(os.str());
  }
  return RegisteredState(std::move(layout), std::move(blocks));
}

Index RegisteredState::dim() const { return product_of(layout_); }

const DensityOperator& RegisteredState::state() const {
  if (!state_) throw std::logic_error("RegisteredState::state: state is dephased");
  return *state_;
}

std::size_t RegisteredState::index_of(const std::string& name) const {
  for (std::size_t k = 0; k < layout_.size(); ++k) {
    if (layout_[k].name == name) return k;
  }
  throw std::invalid_argument("RegisteredState: no register named '" + name + "'");
}

RealVector RegisteredState::probabilities(const std::string& name) const {
  const std::size_t k = index_of(name);
  RealVector p = RealVector::Zero(layout_[k].dimension);
  if (state_) {
    const DigitMap map = digit_map(layout_, k);
    const Matrix& m = state_->matrix();
    for (Index i = 0; i < m.rows(); ++i) p(map.digit(i)) += m(i, i).real();
  } else if (k == 0) {
    for (std::size_t b = 0; b < blocks_.size(); ++b) p(static_cast<Index>(b)) = blocks_[b].trace().real();
  } else {
    const std::vector<Register> inner(layout_.begin() + 1, layout_.end());
    const DigitMap map = digit_map(inner, k - 1);
    for (const auto& b : blocks_) {
      for (Index i = 0; i < b.rows(); ++i) p(map.digit(i)) += b(i, i).real();
    }
  }
  return p.cwiseMax(0.0);
}

DensityOperator RegisteredState::conditional(const std::string& name, Index outcome) const {
  const std::size_t k = index_of(name);
  check_outcome(layout_, k, outcome);
  Matrix reduced;
  if (!state_ && k == 0) {
    reduced = blocks_[static_cast<std::size_t>(outcome)];
  } else {
    reduced = submatrix(dense(), indices_with(layout_, k, outcome));
  }
  const double p = vanishing_check(reduced.trace().real(), name, outcome);
  return DensityOperator(Matrix(reduced / p));
}

Matrix RegisteredState::dense() const {
  if (state_) return state_->matrix();
  const Index inner = product_of(layout_, 1);
  Matrix out = Matrix::Zero(dim(), dim());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    out.block(static_cast<Index>(b) * inner, static_cast<Index>(b) * inner, inner, inner) = blocks_[b];
  }
  return out;
}

std::pair<RegisteredState, double> postselect_ancilla(const RegisteredState& joint,
                                                      const std::string& name, Index outcome) {
  const std::size_t k = joint.index_of(name);
  check_outcome(joint.layout(), k, outcome);
  const double p = vanishing_check(joint.probabilities(name)(outcome), name, outcome);
  if (joint.coherent()) {
    Matrix m = project(joint.state().matrix(), joint.layout(), k, outcome) / p;
    return {RegisteredState(joint.layout(), DensityOperator(std::move(m))), p};
  }
  std::vector<Matrix> blocks = joint.blocks();
  if (k == 0) {
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b] = static_cast<Index>(b) == outcome ? Matrix(blocks[b] / p)
                                                   : Matrix::Zero(blocks[b].rows(), blocks[b].cols());
    }
  } else {
    const std::vector<Register> inner(joint.layout().begin() + 1, joint.layout().end());
    for (auto& b : blocks) b = project(b, inner, k - 1, outcome) / p;
  }
  return {RegisteredState::dephased(joint.layout(), std::move(blocks)), p};
}

// ---------------------------------------------------------------------------
// Density-matrix exponentiation

DensityOperator density_exponentiation_step(const DensityOperator& generator,
                                            const DensityOperator& target, double dt) {
  if (generator.dim() != target.dim()) {
    throw std::invalid_argument("density_exponentiation_step: dimension mismatch");
  }
  if (!(std::abs(dt) <= 1.0)) {
    throw std::invalid_argument("density_exponentiation_step: |dt| must not exceed 1");
  }
  const Index n = generator.dim();
  const double c = std::cos(dt);
  const double s = std::sin(dt);
  const Complex ics(0.0, c * s);
  if (n > 16) {
    // Tr_1 of the four terms of (c - isS)(G (x) X)(c + isS), contracted by hand.
    const Matrix& g = generator.matrix();
    const Matrix& x = target.matrix();
    return DensityOperator(Matrix(c * c * x + s * s * x.trace() * g - ics * (g * x - x * g)));
  }
  Matrix swap = Matrix::Zero(n * n, n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) swap(i * n + j, j * n + i) = 1.0;
  }
  const Matrix id = Matrix::Identity(n * n, n * n);
  const Matrix forward = c * id - Complex(0.0, s) * swap;
  const Matrix backward = c * id + Complex(0.0, s) * swap;
  const Matrix joint = forward * linalg::kron(generator.matrix(), target.matrix()) * backward;
  return DensityOperator(linalg::partial_trace(joint, n, n, linalg::Subsystem::first));
}

// ---------------------------------------------------------------------------
// Phase estimation

int slice_count(double kappa_eff, double epsilon, double dt) {
  if (!(kappa_eff >= 1.0) || !(epsilon > 0.0 && epsilon < 1.0) || !(dt > 0.0)) {
    throw std::invalid_argument("slice_count: need kappa >= 1, epsilon in (0, 1), dt > 0");
  }
  return static_cast<int>(std::ceil(kappa_eff / epsilon / dt - 1e-9));
}

int simulation_steps(double time_scale, int t, double epsilon) {
  if (!(time_scale > 0.0) || t < 1 || t > 12 || !(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("simulation_steps: need time_scale > 0, t in [1, 12], epsilon in (0, 1)");
  }
  const double angle = 2.0 * std::numbers::pi * time_scale;
  const double steps = std::ceil(std::ldexp(angle * angle, t) / epsilon);
  if (steps > static_cast<double>(std::numeric_limits<int>::max())) {
    throw std::invalid_argument("simulation_steps: slice count overflows");
  }
  return std::max(64, static_cast<int>(steps));
}

RealVector window_state(Index register_size, Window window) {
  if (register_size < 1) throw std::invalid_argument("window_state: empty register");
  RealVector w(register_size);
  if (window == Window::uniform) {
    w.setConstant(1.0);
  } else {
    for (Index tau = 0; tau < register_size; ++tau) {
      w(tau) = std::sin(std::numbers::pi * (static_cast<double>(tau) + 0.5) /
                        static_cast<double>(register_size));
    }
  }
  return w / w.norm();
}

Matrix register_amplitudes(const RealVector& phases, Index register_size, Window window) {
  const RealVector w = window_state(register_size, window);
  const auto t_size = static_cast<double>(register_size);
  Eigen::FFT<double> fft;
  std::vector<Complex> in(static_cast<std::size_t>(register_size));
  std::vector<Complex> out;
  Matrix alpha(register_size, phases.size());
  for (Index l = 0; l < phases.size(); ++l) {
    for (Index tau = 0; tau < register_size; ++tau) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>(tau) * phases(l);
      in[static_cast<std::size_t>(tau)] = w(tau) * std::polar(1.0, angle);
    }
    // Eigen's inverse transform is (1/T) sum_tau x_tau e^{+2 pi i m tau / T}.
    fft.inv(out, in);
    for (Index m = 0; m < register_size; ++m) {
      alpha(m, l) = std::sqrt(t_size) * out[static_cast<std::size_t>(m)];
    }
  }
  return alpha;
}

namespace {

struct ScaledSpectrum {
  linalg::EigenSolution eig;
  RealVector phases;
};

ScaledSpectrum scaled_spectrum(const DensityOperator& generator, double time_scale) {
  if (!(time_scale > 0.0) || !std::isfinite(time_scale)) {
    throw std::invalid_argument("phase_estimation: time_scale must be positive");
  }
  ScaledSpectrum s{linalg::eig_hermitian(generator.base()), {}};
  s.phases = s.eig.eigenvalues * time_scale;
  const double top = s.phases.maxCoeff();
  if (top >= 1.0) {
    std::ostringstream os;
    os << "phase_estimation: scaled spectrum reaches " << top
       << ", outside [0, 1); rescale with time_scale < " << 1.0 / s.eig.eigenvalues.maxCoeff();
    throw std::invalid_argument(os.str());
  }
  if (s.phases.minCoeff() < -linalg::kPsdTolerance) {
    throw std::invalid_argument("phase_estimation: generator has a negative eigenvalue");
  }
  s.phases = s.phases.cwiseMax(0.0);
  return s;
}

// Entry (l, l') of the eigenbasis block is beta_{ll'} alpha_l[m] conj(alpha_l'[m']).
Matrix eigen_block(const Matrix& beta, const Matrix& alpha, Index m, Index mp) {
  const Vector a = alpha.row(m).transpose();
  const Vector b = alpha.row(mp).transpose();
  return beta.cwiseProduct(a * b.adjoint());
}

// Complex power by repeated squaring.
Complex ipow(Complex z, std::int64_t n) {
  Complex result(1.0, 0.0);
  while (n > 0) {
    if (n & 1) result *= z;
    z *= z;
    n >>= 1;
  }
  return result;
}

linalg::RealMatrix mpow(linalg::RealMatrix m, std::int64_t n) {
  linalg::RealMatrix result = linalg::RealMatrix::Identity(m.rows(), m.cols());
  while (n > 0) {
    if (n & 1) result = result * m;
    m = m * m;
    n >>= 1;
  }
  return result;
}

// Register x register matrices for every system entry (l, l'), all in the
// generator's eigenbasis: x[l * N + l'](tau, tau').
using RegisterPlanes = std::vector<Matrix>;

// Controlled exponentiation for every register bit, slice by slice in the
// limit of exact slice composition. In the generator eigenbasis the control
// blocks act entrywise:
//   (1,0): X -> cX - is GX,  (0,1): X -> cX + is XG,
//   (1,1): X -> c^2 X + s^2 Tr(X) G - ics [G, X],
// and only the (1,1) trace term couples entries (the diagonal ones).
RegisterPlanes simulate_controlled_evolution(const RealVector& lambda, const Matrix& beta,
                                             const RealVector& w, int t, double time_scale,
                                             int steps) {
  const Index n = lambda.size();
  const Index size = w.size();
  RegisterPlanes planes(static_cast<std::size_t>(n * n));
  for (Index l = 0; l < n; ++l) {
    for (Index lp = 0; lp < n; ++lp) {
      planes[static_cast<std::size_t>(l * n + lp)] = beta(l, lp) * (w * w.transpose()).cast<Complex>();
    }
  }
  const double dt = 2.0 * std::numbers::pi * time_scale / steps;
  const double c = std::cos(dt);
  const double s = std::sin(dt);
  const Complex i_unit(0.0, 1.0);
  linalg::RealMatrix diag_step = c * c * linalg::RealMatrix::Identity(n, n);
  diag_step += s * s * lambda * RealVector::Ones(n).transpose();

  for (int bit = 0; bit < t; ++bit) {
    const std::int64_t slices = static_cast<std::int64_t>(steps) << bit;
    std::vector<Complex> m10(static_cast<std::size_t>(n));
    std::vector<Complex> m01(static_cast<std::size_t>(n));
    for (Index l = 0; l < n; ++l) {
      m10[static_cast<std::size_t>(l)] = ipow(c - i_unit * s * lambda(l), slices);
      m01[static_cast<std::size_t>(l)] = ipow(c + i_unit * s * lambda(l), slices);
    }
    Matrix m11(n, n);
    for (Index l = 0; l < n; ++l) {
      for (Index lp = 0; lp < n; ++lp) {
        m11(l, lp) = ipow(c * c - i_unit * c * s * (lambda(l) - lambda(lp)), slices);
      }
    }
    const linalg::RealMatrix diag_power = mpow(diag_step, slices);

    for (Index tau = 0; tau < size; ++tau) {
      const bool a = (tau >> bit) & 1;
      for (Index taup = 0; taup < size; ++taup) {
        const bool b = (taup >> bit) & 1;
        if (!a && !b) continue;
        for (Index l = 0; l < n; ++l) {
          for (Index lp = 0; lp < n; ++lp) {
            if (a && b && l == lp) continue;
            Complex factor = a && b ? m11(l, lp) : a ? m10[static_cast<std::size_t>(l)]
                                                     : m01[static_cast<std::size_t>(lp)];
            planes[static_cast<std::size_t>(l * n + lp)](tau, taup) *= factor;
          }
        }
        if (a && b) {
          Vector d(n);
          for (Index l = 0; l < n; ++l) d(l) = planes[static_cast<std::size_t>(l * n + l)](tau, taup);
          const Vector next = diag_power.cast<Complex>() * d;
          for (Index l = 0; l < n; ++l) planes[static_cast<std::size_t>(l * n + l)](tau, taup) = next(l);
        }
      }
    }
  }
  return planes;
}

// Y = F X F^dagger with F[m, tau] = e^{2 pi i m tau / T} / sqrt(T).
Matrix readout(const Matrix& x, bool diagonal_only) {
  const Index size = x.rows();
  const auto t_size = static_cast<double>(size);
  Eigen::FFT<double> fft;
  std::vector<Complex> in(static_cast<std::size_t>(size));
  std::vector<Complex> out;
  Matrix z(size, size);
  for (Index col = 0; col < size; ++col) {
    for (Index i = 0; i < size; ++i) in[static_cast<std::size_t>(i)] = x(i, col);
    fft.inv(out, in);
    for (Index i = 0; i < size; ++i) z(i, col) = std::sqrt(t_size) * out[static_cast<std::size_t>(i)];
  }
  Matrix y = Matrix::Zero(size, diagonal_only ? 1 : size);
  for (Index row = 0; row < size; ++row) {
    for (Index i = 0; i < size; ++i) in[static_cast<std::size_t>(i)] = z(row, i);
    fft.fwd(out, in);
    if (diagonal_only) {
      y(row, 0) = out[static_cast<std::size_t>(row)] / std::sqrt(t_size);
    } else {
      for (Index i = 0; i < size; ++i) y(row, i) = out[static_cast<std::size_t>(i)] / std::sqrt(t_size);
    }
  }
  return y;
}

}  // namespace

RegisteredState phase_estimation(const DensityOperator& generator, const DensityOperator& input,
                                 int t, const PhaseEstimationOptions& options) {
  if (t < 2 || t > 12) {
    throw std::invalid_argument("phase_estimation: t must lie in [2, 12]");
  }
  if (generator.dim() != input.dim()) {
    throw std::invalid_argument("phase_estimation: generator and input dimensions differ");
  }
  const Index size = Index{1} << t;
  const Index n = generator.dim();
  if (options.coherent && size * n > kCoherentLimit) {
    throw std::invalid_argument("phase_estimation: coherent joint state exceeds the dense limit");
  }
  const ScaledSpectrum spec = scaled_spectrum(generator, options.time_scale);
  const Matrix& v = spec.eig.eigenvectors;
  const Matrix beta = v.adjoint() * input.matrix() * v;
  const std::vector<Register> layout{{kEigenvalueRegister, size}, {kSystemRegister, n}};

  // eigen_blocks(m, m') in the generator eigenbasis.
  std::function<Matrix(Index, Index)> eigen_blocks;
  Matrix alpha;
  RegisterPlanes planes;
  if (options.path == QpePath::exact) {
    alpha = register_amplitudes(spec.phases, size, options.window);
    eigen_blocks = [&](Index m, Index mp) { return eigen_block(beta, alpha, m, mp); };
  } else {
    if (options.steps < 1) throw std::invalid_argument("phase_estimation: steps must be positive");
    if (size * size * n * n > kSimulationEntryLimit) {
      throw std::invalid_argument("phase_estimation: simulation path exceeds the memory limit");
    }
    planes = simulate_controlled_evolution(spec.eig.eigenvalues, beta,
                                           window_state(size, options.window), t,
                                           options.time_scale, options.steps);
    for (auto& p : planes) p = readout(p, !options.coherent);
    eigen_blocks = [&](Index m, Index mp) {
      Matrix b(n, n);
      for (Index l = 0; l < n; ++l) {
        for (Index lp = 0; lp < n; ++lp) {
          const Matrix& y = planes[static_cast<std::size_t>(l * n + lp)];
          b(l, lp) = options.coherent ? y(m, mp) : y(m, 0);
        }
      }
      return b;
    };
  }

  if (options.coherent) {
    Matrix joint(size * n, size * n);
    for (Index m = 0; m < size; ++m) {
      for (Index mp = 0; mp < size; ++mp) {
        joint.block(m * n, mp * n, n, n) = v * eigen_blocks(m, mp) * v.adjoint();
      }
    }
    return RegisteredState(layout, DensityOperator(std::move(joint)));
  }
  std::vector<Matrix> blocks(static_cast<std::size_t>(size));
  double total = 0.0;
  for (Index m = 0; m < size; ++m) {
    blocks[static_cast<std::size_t>(m)] = v * eigen_blocks(m, m) * v.adjoint();
    total += blocks[static_cast<std::size_t>(m)].trace().real();
  }
  // The simulated channel is trace preserving only up to slice error.
  for (auto& b : blocks) b /= total;
  return RegisteredState::dephased(layout, std::move(blocks));
}

std::vector<EigenpairSample> sample_eigenpairs(const RegisteredState& joint, std::int64_t draws,
                                               std::uint64_t seed) {
  if (draws < 1) throw std::invalid_argument("sample_eigenpairs: draws must be positive");
  const RealVector p = joint.probabilities(kEigenvalueRegister);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<Index> dist(p.data(), p.data() + p.size());
  std::map<Index, std::int64_t> counts;
  for (std::int64_t d = 0; d < draws; ++d) ++counts[dist(rng)];

  std::vector<EigenpairSample> out;
  const auto size = static_cast<double>(p.size());
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    EigenpairSample sample;
    sample.register_value = it->first;
    sample.phase = static_cast<double>(it->first) / size;
    sample.frequency = static_cast<double>(it->second) / static_cast<double>(draws);
    sample.probability = p(it->first);
    sample.eigenvector =
        linalg::principal_vector(joint.conditional(kEigenvalueRegister, it->first).matrix());
    out.push_back(std::move(sample));
  }
  return out;
}

namespace {

ShotResult ancilla_estimate(double p0, std::int64_t shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("overlap test: shots must be positive");
  p0 = std::clamp(p0, 0.0, 1.0);
  std::mt19937_64 rng(seed);
  std::binomial_distribution<std::int64_t> dist(shots, p0);
  const std::int64_t zeros = dist(rng);
  const double p_hat = static_cast<double>(zeros) / static_cast<double>(shots);
  ShotResult r;
  r.shots = shots;
  r.acceptance_probability = p0;
  r.estimate = 2.0 * p_hat - 1.0;
  r.standard_error = 2.0 * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(shots));
  return r;
}

void check_pair(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size() || a.size() == 0) {
    throw std::invalid_argument(std::string(what) + ": states differ in dimension");
  }
  require_unit(a, what);
  require_unit(b, what);
}

}  // namespace

ShotResult swap_test(const Vector& a, const Vector& b, std::int64_t shots, std::uint64_t seed) {
  check_pair(a, b, "swap_test");
  return ancilla_estimate(0.5 + 0.5 * std::norm(a.dot(b)), shots, seed);
}

ShotResult overlap_test_signed(const Vector& a, const Vector& b, std::int64_t shots,
                               std::uint64_t seed) {
  check_pair(a, b, "overlap_test_signed");
  return ancilla_estimate(0.5 * (1.0 + a.dot(b).real()), shots, seed);
}

}  // namespace qdasim::qsim
