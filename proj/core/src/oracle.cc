// Copyright 2026 The fwsum Authors.
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

#include "fwsum/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fwsum::oracle {

double dense_objective(const Eigen::MatrixXd& k, const Eigen::MatrixXd& x) {
  const Eigen::MatrixXd kx = k * x;
  return (x.transpose() * kx).trace() - 2.0 * kx.trace() + k.trace();
}

Eigen::MatrixXd project_group_l1(const Eigen::MatrixXd& x, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
  const Eigen::VectorXd norms = x.rowwise().norm();
  if (norms.sum() <= beta) return x;

  // sum_i max(norm_i - theta, 0) is decreasing in theta; bracket the root.
  double lo = 0.0;
  double hi = norms.maxCoeff();
  auto excess = [&](double theta) {
    return (norms.array() - theta).max(0.0).sum() - beta;
  };
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double theta = 0.5 * (lo + hi);
  Eigen::MatrixXd projected = x;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double norm = norms(i);
    projected.row(i) *= norm > theta ? (norm - theta) / norm : 0.0;
  }
  return projected;
}

double power_iteration_lambda_max(const Eigen::MatrixXd& k,
                                  std::size_t iterations) {
  const Eigen::Index n = k.rows();
  if (n == 0) return 0.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
  double lambda = 0.0;
  for (std::size_t it = 0; it < iterations; ++it) {
    Eigen::VectorXd w = k * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double next = v.dot(w);
    v = w / norm;
    if (std::abs(next - lambda) <= 1e-14 * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  // Power iteration approaches lambda_max from below; pad slightly so that
  // 1 / (2 lambda) stays a safe step.
  return lambda * (1.0 + 1e-6);
}

OracleResult projected_gradient_solve(const Eigen::MatrixXd& k, double beta,
                                      std::size_t iterations, double tol) {
  const Eigen::Index n = k.rows();
  const double lambda = power_iteration_lambda_max(k);
  const double step = lambda > 0.0 ? 1.0 / (2.0 * lambda) : 1.0;

  OracleResult result;
  result.x = Eigen::MatrixXd::Zero(n, n);
  double previous = dense_objective(k, result.x);
  for (std::size_t it = 0; it < iterations; ++it) {
    const Eigen::MatrixXd grad = 2.0 * (k * result.x - k);
    result.x = project_group_l1(result.x - step * grad, beta);
    const double current = dense_objective(k, result.x);
    result.iterations = it + 1;
    const double change = std::abs(previous - current);
    previous = current;
    if (change <= tol * std::max(std::abs(current), 1e-300)) break;
  }
  result.objective = previous;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (result.x.row(i).norm() > 0.0) {
      result.support.push_back(static_cast<std::size_t>(i));
    }
  }
  return result;
}

OracleResult restricted_nonnegative_solve(
    const Eigen::MatrixXd& k, const std::vector<std::size_t>& support,
    double tol) {
  const Eigen::Index n = k.rows();
  const auto m = static_cast<Eigen::Index>(support.size());
  OracleResult result;
  result.x = Eigen::MatrixXd::Zero(n, n);
  result.support = support;
  std::sort(result.support.begin(), result.support.end());
  if (m == 0) {
    result.objective = k.trace();
    return result;
  }

  // Column c: min_y y^T K_JJ y - 2 K_Jc^T y + K_cc, y >= 0.
  Eigen::MatrixXd kjj(m, m);
  Eigen::MatrixXd kjc(m, n);
  for (Eigen::Index a = 0; a < m; ++a) {
    const auto ra = static_cast<Eigen::Index>(result.support[a]);
    for (Eigen::Index b = 0; b < m; ++b) {
      kjj(a, b) = k(ra, static_cast<Eigen::Index>(result.support[b]));
    }
    kjc.row(a) = k.row(ra);
  }
  const double lambda = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(
                            kjj, Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .maxCoeff();
  const double step = lambda > 0.0 ? 1.0 / (2.0 * lambda) : 1.0;

  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(m, n);
  constexpr std::size_t kMaxIterations = 200000;
  for (std::size_t it = 0; it < kMaxIterations; ++it) {
    const Eigen::MatrixXd grad = 2.0 * (kjj * y - kjc);
    const Eigen::MatrixXd next = (y - step * grad).cwiseMax(0.0);
    const double moved = (next - y).cwiseAbs().maxCoeff();
    y = next;
    result.iterations = it + 1;
    if (moved <= tol) break;
  }
  for (Eigen::Index a = 0; a < m; ++a) {
    result.x.row(static_cast<Eigen::Index>(result.support[a])) = y.row(a);
  }
  result.objective = dense_objective(k, result.x);
  return result;
}

OracleResult exhaustive_cardinality_solve(const Eigen::MatrixXd& k,
                                          std::size_t max_support) {
  const auto n = static_cast<std::size_t>(k.rows());
  if (n > kMaxExhaustiveN) {
    throw std::invalid_argument("exhaustive search refused: n = " +
                                std::to_string(n) + " > " +
                                std::to_string(kMaxExhaustiveN));
  }
  OracleResult best;
  best.x = Eigen::MatrixXd::Zero(k.rows(), k.cols());
  best.objective = k.trace();
  const std::size_t limit = std::min(max_support, n);
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) support.push_back(i);
    }
    if (support.size() > limit) continue;
    OracleResult candidate = restricted_nonnegative_solve(k, support);
    // Strict improvement keeps the first (lexicographically earliest) optimum.
    if (candidate.objective < best.objective - 1e-12) best = std::move(candidate);
  }
  return best;
}

}  // namespace fwsum::oracle
