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

// Reference solvers for validating the Frank-Wolfe summarizer. Nothing here
// is shared with fw_solver: objective, gradient and iterate handling are
// re-derived on dense matrices so that agreement between the two is evidence
// rather than a tautology.

#ifndef FWSUM_ORACLE_H_
#define FWSUM_ORACLE_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace fwsum::oracle {

struct OracleResult {
  Eigen::MatrixXd x;
  double objective = 0.0;
  std::vector<std::size_t> support;  // ascending row indices
  std::size_t iterations = 0;
};

// Largest exhaustive instance accepted by exhaustive_cardinality_solve.
inline constexpr std::size_t kMaxExhaustiveN = 12;

// ||AX - A||_F^2 in kernel form, computed densely.
double dense_objective(const Eigen::MatrixXd& k, const Eigen::MatrixXd& x);

// Euclidean projection onto { X : sum_i ||X_(i)||_2 <= beta } by group
// soft-thresholding, with the threshold found by bisection.
Eigen::MatrixXd project_group_l1(const Eigen::MatrixXd& x, double beta);

// Largest eigenvalue of a symmetric PSD matrix by power iteration.
double power_iteration_lambda_max(const Eigen::MatrixXd& k,
                                  std::size_t iterations = 1000);

// Projected gradient on the group-L1 constrained problem with step
// 1 / (2 lambda_max). Stops when the relative objective change drops below
// `tol` or after `iterations` steps.
OracleResult projected_gradient_solve(const Eigen::MatrixXd& k, double beta,
                                      std::size_t iterations, double tol);

// min f(X) over X >= 0 with rows outside `support` fixed at zero. Each column
// is an independent non-negative least-squares problem solved by projected
// gradient to `tol`.
OracleResult restricted_nonnegative_solve(const Eigen::MatrixXd& k,
                                          const std::vector<std::size_t>& support,
                                          double tol = 1e-10);

// Exact solution of the cardinality-constrained problem by enumerating every
// support of size <= k. Throws std::invalid_argument when n > kMaxExhaustiveN.
OracleResult exhaustive_cardinality_solve(const Eigen::MatrixXd& k,
                                          std::size_t max_support);

}  // namespace fwsum::oracle

#endif  // FWSUM_ORACLE_H_
