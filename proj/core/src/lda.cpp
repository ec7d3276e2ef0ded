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

#include "qdasim/lda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "qdasim/error.hpp"
#include "qdasim/qram_oracle.hpp"
#include "qdasim/qsim.hpp"

namespace qdasim::lda {

using linalg::Complex;
using linalg::DensityOperator;
using linalg::Index;
using linalg::Matrix;
using linalg::SpectralFunction;
using linalg::Vector;

namespace {

constexpr double kHeadroom = 15.0 / 16.0;
constexpr double kWrapPhase = 31.0 / 32.0;
constexpr double kMergeOverlap = 0.9;
constexpr double kSupportThreshold = 0.5;
constexpr std::int64_t kNoiseFloorCount = 8;

void check_p(int p, Index n) {
  if (p < 1 || p > n) {
    std::ostringstream os;
    os << "p = " << p << " must lie in [1, " << n << "]";
    throw std::invalid_argument(os.str());
  }
}

// Real direction from a complex vector whose global phase is arbitrary.
Eigen::VectorXd real_direction(const Vector& v) {
  Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  const Complex anchor = v(arg);
  Eigen::VectorXd w = (v * (std::abs(anchor) / anchor)).real();
  const double norm = w.norm();
  if (!(norm > 0.0)) throw NumericalError("direction collapsed to zero");
  return w / norm;
}

// Classical Gram-Schmidt in the given order; earlier vectors are kept as is.
void orthonormalize(std::vector<Vector>& vs) {
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) vs[i] -= vs[j].dot(vs[i]) * vs[j];
    const double norm = vs[i].norm();
    if (norm < 1e-8) throw DomainError("sampled eigenvectors are linearly dependent");
    vs[i] /= norm;
  }
}

std::string rank_message(int p, Index rank) {
  std::ostringstream os;
  os << "requested p = " << p << " directions but the discriminant operator has rank " << rank
     << " (achievable p <= " << rank << ")";
  return os.str();
}

struct Cluster {
  Matrix state;               // sum of count-weighted conditional states
  std::int64_t count = 0;
  double register_sum = 0.0;  // sum of count * m
  Index lowest_value = 0;
  Vector eigenvector;

  void refresh() { eigenvector = linalg::principal_vector(state); }
};

// Groups register outcomes around histogram peaks, then merges groups whose
// principal vectors coincide (overlap >= 0.9).
std::vector<Cluster> cluster_outcomes(const qsim::RegisteredState& joint,
                                      const std::map<Index, std::int64_t>& counts) {
  std::vector<Index> peaks;
  for (const auto& [m, c] : counts) {
    const auto below = counts.find(m - 1);
    const auto above = counts.find(m + 1);
    const std::int64_t cb = below == counts.end() ? 0 : below->second;
    const std::int64_t ca = above == counts.end() ? 0 : above->second;
    if (c > cb && c >= ca) peaks.push_back(m);
  }
  std::map<Index, Cluster> by_peak;
  for (const auto& [m, c] : counts) {
    Index best = peaks.front();
    for (Index peak : peaks) {
      const Index d = std::abs(peak - m);
      const Index db = std::abs(best - m);
      if (d < db || (d == db && counts.at(peak) > counts.at(best))) best = peak;
    }
    Cluster& cl = by_peak[best];
    const Matrix cond = joint.conditional(qsim::kEigenvalueRegister, m).matrix();
    if (cl.count == 0) {
      cl.state = Matrix::Zero(cond.rows(), cond.cols());
      cl.lowest_value = m;
    }
    cl.state += static_cast<double>(c) * cond;
    cl.count += c;
    cl.register_sum += static_cast<double>(c) * static_cast<double>(m);
    cl.lowest_value = std::min(cl.lowest_value, m);
  }
  std::vector<Cluster> clusters;
  for (auto& [peak, cl] : by_peak) {
    cl.refresh();
    clusters.push_back(std::move(cl));
  }
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < clusters.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < clusters.size() && !merged; ++j) {
        if (std::abs(clusters[i].eigenvector.dot(clusters[j].eigenvector)) >= kMergeOverlap) {
          clusters[i].state += clusters[j].state;
          clusters[i].count += clusters[j].count;
          clusters[i].register_sum += clusters[j].register_sum;
          clusters[i].lowest_value = std::min(clusters[i].lowest_value, clusters[j].lowest_value);
          clusters[i].refresh();
          clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
  }
  return clusters;
}

}  // namespace

Eigen::MatrixXd ProjectionBasis::matrix() const {
  if (directions.empty()) return {};
  Eigen::MatrixXd w(directions.front().size(), static_cast<Index>(directions.size()));
  for (std::size_t r = 0; r < directions.size(); ++r) w.col(static_cast<Index>(r)) = directions[r];
  return w;
}

ScatterPair scatter_matrices(const LabeledDataset& data) {
  const auto stats = oracle::class_statistics(data);
  return {oracle::classical_between_scatter(stats), oracle::classical_within_scatter(data, stats)};
}

ProjectionBasis classical_lda_oracle(const LabeledDataset& data, int p, double kappa_eff) {
  check_p(p, data.dimension());
  const auto stats = oracle::class_statistics(data);
  const DensityOperator sb = oracle::between_scatter(stats);
  const DensityOperator sw = oracle::within_scatter(data, stats);
  const Matrix sb_half = linalg::matrix_function(sb.base(), SpectralFunction::sqrt(), kappa_eff).matrix();
  const Matrix sw_inv = linalg::matrix_function(sw.base(), SpectralFunction::inverse(), kappa_eff).matrix();
  const linalg::HermitianOperator omega(Matrix(sb_half * sw_inv * sb_half));
  const auto spectrum = linalg::filtered_spectrum(omega, kappa_eff);
  if (p > spectrum.kept_count) throw DomainError(rank_message(p, spectrum.kept_count));
  // w = S_W^-1 S_B^1/2 v is an eigenvector of S_W^-1 S_B; it is parallel to
  // S_B^-1/2 v whenever S_B is invertible and stays correct when it is not.
  const Matrix back = sw_inv * sb_half;

  ProjectionBasis basis;
  basis.p = p;
  const double trace = omega.trace();
  for (int r = 0; r < p; ++r) {
    const Vector v = real_direction(spectrum.eig.eigenvectors.col(r)).cast<Complex>();
    basis.intermediate.push_back(v);
    basis.directions.push_back(real_direction(back * v));
    basis.eigenvalue_estimates.push_back(spectrum.eig.eigenvalues(r) / trace);
  }
  return basis;
}

std::int64_t default_draws(int t) {
  return std::max<std::int64_t>(4096, std::int64_t{64} << t);
}

ProjectionBasis quantum_lda(const LabeledDataset& data, int p, double kappa_eff,
                            const QuantumLdaOptions& options) {
  check_p(p, data.dimension());
  if (options.t < 4 || options.t > 12) throw std::invalid_argument("quantum_lda: t must lie in [4, 12]");
  ProjectionBasis basis;
  basis.p = p;
  basis.draws = options.draws > 0 ? options.draws : default_draws(options.t);

  // Step 1: scatter operators from the data oracles.
  const auto stats = oracle::class_statistics(data);
  const DensityOperator sb = oracle::between_scatter(stats);
  const DensityOperator sw = oracle::within_scatter(data, stats);

  // Step 2: rho proportional to S_B^1/2 S_W^-1 S_B^1/2.
  chain::ChainSpec spec;
  spec.stages = {{sw, SpectralFunction::inverse_sqrt(), std::nullopt},
                 {sb, SpectralFunction::sqrt(), std::nullopt}};
  spec.kappa_eff = kappa_eff;
  spec.epsilon = options.epsilon;
  spec.t = options.t;
  const chain::ChainReport report = chain::chain_apply(spec, std::nullopt, options.stage);
  basis.chain_success_probabilities = report.stage_success_probabilities;
  basis.copies_used = report.copies_used;

  // Step 3: phase estimation with rho as both generator and input, so each
  // eigenvalue is read with probability equal to itself.
  const double lambda_max = linalg::eig_hermitian(report.output.base()).eigenvalues(0);
  qsim::PhaseEstimationOptions qpe;
  qpe.window = qsim::Window::sine;
  qpe.time_scale = kHeadroom / lambda_max;
  const qsim::RegisteredState joint = qsim::phase_estimation(report.output, report.output, options.t, qpe);
  const auto samples = qsim::sample_eigenpairs(joint, basis.draws, options.seed);
  const Index size = Index{1} << options.t;

  std::map<Index, std::int64_t> counts;
  for (const auto& s : samples) {
    if (s.phase >= kWrapPhase) continue;
    counts[s.register_value] = std::llround(s.frequency * static_cast<double>(basis.draws));
  }
  if (counts.empty()) throw DomainError("quantum_lda: no eigenvalue register outcomes observed");
  std::vector<Cluster> clusters = cluster_outcomes(joint, counts);
  const auto estimate = [&](const Cluster& c) {
    return c.register_sum / static_cast<double>(c.count) / static_cast<double>(size) / qpe.time_scale;
  };
  std::sort(clusters.begin(), clusters.end(), [&](const Cluster& a, const Cluster& b) {
    const double ea = estimate(a);
    const double eb = estimate(b);
    if (ea != eb) return ea > eb;
    if (a.count != b.count) return a.count > b.count;
    return a.lowest_value < b.lowest_value;
  });
  const double top = estimate(clusters.front());
  std::vector<Cluster> kept;
  for (auto& c : clusters) {
    if (c.count >= kNoiseFloorCount && estimate(c) >= top / kappa_eff) kept.push_back(std::move(c));
  }
  if (static_cast<int>(kept.size()) < p) {
    std::ostringstream os;
    os << "quantum_lda: recovered " << kept.size() << " eigenpair(s) above the noise floor but p = "
       << p << " was requested (achievable p <= " << kept.size() << ")";
    throw DomainError(os.str());
  }

  std::vector<Vector> vs;
  for (int r = 0; r < p; ++r) {
    vs.push_back(kept[static_cast<std::size_t>(r)].eigenvector);
    basis.eigenvalue_estimates.push_back(estimate(kept[static_cast<std::size_t>(r)]));
    basis.sample_frequencies.push_back(static_cast<double>(kept[static_cast<std::size_t>(r)].count) /
                                       static_cast<double>(basis.draws));
  }
  orthonormalize(vs);

  // Step 4: w_r = S_W^-1 S_B^1/2 v_r as a two-stage chain on |v_r><v_r|.
  const auto sb_spectrum = linalg::filtered_spectrum(sb.base(), kappa_eff);
  const Matrix support = sb_spectrum.support_projector();
  chain::ChainSpec back;
  back.stages = {{sb, SpectralFunction::sqrt(), std::nullopt}, {sw, SpectralFunction::inverse(), std::nullopt}};
  back.kappa_eff = kappa_eff;
  back.epsilon = options.epsilon;
  back.t = options.t;
  for (const Vector& v : vs) {
    const double weight = v.dot(support * v).real();
    if (weight < kSupportThreshold) {
      std::ostringstream os;
      os << "quantum_lda: sampled eigenvector has weight " << weight
         << " on the between-class support";
      throw DomainError(os.str());
    }
    const chain::ChainReport stage = chain::chain_apply(back, DensityOperator::pure(v), options.stage);
    basis.back_transform_success.push_back(stage.total_success_probability);
    basis.copies_used.insert(basis.copies_used.end(), stage.copies_used.begin(), stage.copies_used.end());
    const Vector w = linalg::principal_vector(stage.output.matrix(), &v);
    basis.directions.push_back(real_direction(w));
    basis.intermediate.push_back(v);
  }
  return basis;
}

double fisher_criterion(const ScatterPair& scatter, const Eigen::MatrixXd& w) {
  if (w.rows() != scatter.between.rows() || w.cols() < 1) {
    throw std::invalid_argument("fisher_criterion: direction dimension mismatch");
  }
  const double scale = w.squaredNorm();
  if (!(scale > 0.0)) throw std::invalid_argument("fisher_criterion: zero direction");
  const double num = (w.transpose() * scatter.between * w).trace();
  const double den = (w.transpose() * scatter.within * w).trace();
  if (den < 1e-14 * scale) {
    throw DomainError("fisher_criterion: no within-class variance along the direction");
  }
  return num / den;
}

double fisher_criterion(const LabeledDataset& data, const ProjectionBasis& basis) {
  return fisher_criterion(scatter_matrices(data), basis.matrix());
}

LabeledDataset project(const LabeledDataset& data, const ProjectionBasis& basis) {
  Eigen::MatrixXd w = basis.matrix();
  if (w.rows() != data.dimension()) throw std::invalid_argument("project: dimension mismatch");
  std::vector<std::string> names;
  for (Index r = 0; r < w.cols(); ++r) {
    w.col(r).normalize();
    names.push_back("w" + std::to_string(r + 1));
  }
  return LabeledDataset(data.samples() * w, data.labels(), data.class_count(), names, data.class_names());
}

LabeledDataset feature_map(const LabeledDataset& data, int degree) {
  if (degree < 1 || degree > 3) throw std::invalid_argument("feature_map: degree must be 1, 2 or 3");
  const Index n = data.dimension();
  std::vector<std::vector<Index>> monomials;
  std::vector<Index> current;
  const auto extend = [&](auto&& self, Index start, int remaining) -> void {
    if (remaining == 0) {
      monomials.push_back(current);
      return;
    }
    for (Index i = start; i < n; ++i) {
      current.push_back(i);
      self(self, i, remaining - 1);
      current.pop_back();
    }
  };
  for (int d = 1; d <= degree; ++d) {
    extend(extend, 0, d);
    if (monomials.size() > 256) {
      throw std::invalid_argument("feature_map: output dimension exceeds 256");
    }
  }
  Eigen::MatrixXd out(data.size(), static_cast<Index>(monomials.size()));
  std::vector<std::string> names;
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    const auto& mono = monomials[k];
    std::string name;
    for (std::size_t i = 0; i < mono.size();) {
      std::size_t j = i;
      while (j < mono.size() && mono[j] == mono[i]) ++j;
      if (!name.empty()) name += "*";
      name += data.feature_names()[static_cast<std::size_t>(mono[i])];
      if (j - i > 1) name += "^" + std::to_string(j - i);
      i = j;
    }
    names.push_back(name);
    for (Index row = 0; row < data.size(); ++row) {
      double v = 1.0;
      for (Index i : mono) v *= data.samples()(row, i);
      out(row, static_cast<Index>(k)) = v;
    }
  }
  return LabeledDataset(std::move(out), data.labels(), data.class_count(), names, data.class_names());
}

ProjectionBasis pca(const LabeledDataset& data, int p) {
  check_p(p, data.dimension());
  if (data.size() < 2) throw DomainError("pca: need at least two samples");
  const Eigen::RowVectorXd mean = data.samples().colwise().mean();
  const Eigen::MatrixXd centered = data.samples().rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(data.size() - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  ProjectionBasis basis;
  basis.p = p;
  const Index n = data.dimension();
  for (int r = 0; r < p; ++r) {
    const Eigen::VectorXd u = solver.eigenvectors().col(n - 1 - r);
    basis.directions.push_back(real_direction(u.cast<Complex>()));
    basis.intermediate.push_back(basis.directions.back().cast<Complex>());
    basis.eigenvalue_estimates.push_back(solver.eigenvalues()(n - 1 - r));
  }
  return basis;
}

}  // namespace qdasim::lda
