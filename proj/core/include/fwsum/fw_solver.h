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

// Frank-Wolfe solver for group-sparse self-expressive summarization:
//
//   min_X  ||AX - A||_F^2 = tr(X^T K X) - 2 tr(K X) + tr(K)
//   s.t.   sum_i ||X_(i)||_2 <= beta
//
// Starting from X = 0, every iteration moves towards a single-row vertex of
// the group-L1 ball, so at most one new sentence (row) enters the support per
// iteration. The product KX is cached and updated with a rank-1 correction
// instead of being recomputed.

#ifndef FWSUM_FW_SOLVER_H_
#define FWSUM_FW_SOLVER_H_

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "fwsum/kernel.h"

namespace fwsum::solver {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Rows whose Euclidean norm falls below this are dropped after an update.
inline constexpr double kRowEvictionThreshold = 1e-12;

// n x n matrix that stores only its non-zero rows, keyed by row index.
class SparseRowMatrix {
 public:
  using Rows = std::map<std::size_t, Eigen::VectorXd>;

  explicit SparseRowMatrix(std::size_t n = 0) : n_(n) {}

  static SparseRowMatrix from_dense(const Eigen::MatrixXd& dense);

  std::size_t n() const { return n_; }
  const Rows& rows() const { return rows_; }
  std::size_t stored_rows() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  // Null when the row is not stored (i.e. exactly zero).
  const Eigen::VectorXd* row(std::size_t i) const;

  // Stores `values` as row i; a zero-norm row erases the entry instead.
  void set_row(std::size_t i, Eigen::VectorXd values);

  void scale(double factor);
  void evict_below(double threshold);

  // sum_i ||X_(i)||_2
  double group_norm() const;

  Eigen::MatrixXd to_dense() const;

 private:
  std::size_t n_ = 0;
  Rows rows_;
};

// <A, B> over stored rows of A against a dense B.
double inner(const SparseRowMatrix& a, const RowMajorMatrix& b);

enum class StepRule { kDecaying, kLineSearch };
enum class ExitReason { kKReached, kConverged, kMaxIters };

std::string_view to_string(StepRule rule);
std::string_view to_string(ExitReason reason);
StepRule parse_step_rule(std::string_view text);      // throws ConfigError
ExitReason parse_exit_reason(std::string_view text);  // throws InputError

struct SolverConfig {
  std::size_t k = 1;
  double beta = 1.0;
  double eps = 1e-6;
  StepRule step_rule = StepRule::kLineSearch;
  std::size_t max_iters = 1000;
  bool respect_nonnegativity = false;

  // beta = k, eps = 1e-6 tr(K), line search, max_iters = 10k + 100.
  static SolverConfig defaults(std::size_t k, const kernel::Kernel& kernel);

  // Throws ConfigError unless k >= 1, beta > 0, eps > 0, max_iters >= k.
  void validate() const;
};

struct IterationRecord {
  std::size_t t = 0;       // iteration number, 1-based
  double objective = 0.0;  // f after the update
  double gap = 0.0;        // FW gap at the iterate before the update
  double step = 0.0;
  std::size_t row = 0;     // row of the LMO vertex
};

struct SolverState {
  SparseRowMatrix x;
  RowMajorMatrix kx;  // cached K * x
  std::size_t t = 0;
  double last_gap = 0.0;
  std::vector<IterationRecord> history;

  static SolverState initial(std::size_t n);
};

struct SolverResult {
  std::vector<std::size_t> selected;
  SparseRowMatrix x_final;
  double objective = 0.0;
  double gap = 0.0;
  std::size_t iterations = 0;
  ExitReason exit_reason = ExitReason::kMaxIters;
  std::vector<IterationRecord> history;
  std::string diagnostic;
};

// f(X) = tr(X^T K X) - 2 tr(KX) + tr(K), evaluated from the stored rows only.
// Throws ConfigError on a dimension mismatch.
double objective(const kernel::Kernel& k, const SparseRowMatrix& x);

// 2 (KX - K) using the cached product.
RowMajorMatrix gradient(const kernel::Kernel& k, const SolverState& state);

// Single-row vertex of the group-L1 ball (intersected with X >= 0 when
// respect_nonnegativity is set) minimizing <S, grad>. Ties pick the smallest
// row index; a zero selected row gives the zero matrix.
SparseRowMatrix lmo(const RowMajorMatrix& grad, double beta,
                    bool respect_nonnegativity);

// 2 / (t + 2) or the exact minimizer of f(X + r D) over [0, 1] for
// D = S - X, computed from the row supports of D.
double step_size(std::size_t t, StepRule rule, const RowMajorMatrix& grad,
                 const kernel::Kernel& k, const SparseRowMatrix& direction);

// D = S - X over the union of row supports.
SparseRowMatrix difference(const SparseRowMatrix& s, const SparseRowMatrix& x);

// X <- (1 - r) X + r S and KX <- (1 - r) KX + r K^(j) S_(j); evicts rows that
// fall below kRowEvictionThreshold and increments t. S must have at most one
// stored row.
void gradient_update(const kernel::Kernel& k, SolverState& state,
                     const SparseRowMatrix& s, double r);

// -<grad, S - X>.
double duality_gap(const RowMajorMatrix& grad, const SparseRowMatrix& s,
                   const SparseRowMatrix& x);

// All stored rows when there are at most k; otherwise the k largest by norm
// (ties to the smaller index). Sorted by position. An all-zero X gives an
// empty summary and a message in `diagnostic` when provided.
std::vector<std::size_t> get_summary(const SparseRowMatrix& x, std::size_t k,
                                     std::string* diagnostic = nullptr);

// Called after every update with the current state.
using IterationObserver = std::function<void(const SolverState&)>;

SolverResult solve(const kernel::Kernel& k, const SolverConfig& config,
                   const IterationObserver& observer = {});

}  // namespace fwsum::solver

#endif  // FWSUM_FW_SOLVER_H_
