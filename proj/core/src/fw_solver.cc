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

#include "fwsum/fw_solver.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "fwsum/error.h"

namespace fwsum::solver {
namespace {

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

void check_dimensions(const kernel::Kernel& k, std::size_t n) {
  if (k.n() != n) {
    throw ConfigError("dimension mismatch: kernel is " +
                      std::to_string(k.n()) + "x" + std::to_string(k.n()) +
                      ", iterate has " + std::to_string(n) + " columns");
  }
}

// Row score used by the LMO: ||g||^2, or ||min(g, 0)||^2 in the
// non-negative variant.
template <typename Row>
double row_score(const Row& g, bool respect_nonnegativity) {
  return respect_nonnegativity ? g.cwiseMin(0.0).squaredNorm()
                               : g.squaredNorm();
}

// The vertex whose single non-zero row j points along -g (or -min(g, 0)).
SparseRowMatrix vertex_for_row(const Eigen::VectorXd& grad_row,
                               std::size_t j, std::size_t n, double beta,
                               bool respect_nonnegativity) {
  SparseRowMatrix s(n);
  Eigen::VectorXd direction = respect_nonnegativity
                                  ? Eigen::VectorXd(-grad_row.cwiseMin(0.0))
                                  : Eigen::VectorXd(-grad_row);
  const double norm = direction.norm();
  if (norm == 0.0) return s;
  s.set_row(j, (beta / norm) * direction);
  return s;
}

double clamp_step(double numerator, double curvature) {
  // numerator = <grad, D>, curvature = tr(D^T K D).
  if (curvature <= 0.0) return numerator < 0.0 ? 1.0 : 0.0;
  return std::clamp(-numerator / (2.0 * curvature), 0.0, 1.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// SparseRowMatrix

SparseRowMatrix SparseRowMatrix::from_dense(const Eigen::MatrixXd& dense) {
  SparseRowMatrix m(static_cast<std::size_t>(dense.rows()));
  for (Eigen::Index i = 0; i < dense.rows(); ++i) {
    m.set_row(static_cast<std::size_t>(i), dense.row(i).transpose());
  }
  return m;
}

const Eigen::VectorXd* SparseRowMatrix::row(std::size_t i) const {
  auto it = rows_.find(i);
  return it == rows_.end() ? nullptr : &it->second;
}

void SparseRowMatrix::set_row(std::size_t i, Eigen::VectorXd values) {
  if (i >= n_ || static_cast<std::size_t>(values.size()) != n_) {
    throw ConfigError("row index or length out of range");
  }
  if (values.squaredNorm() == 0.0) {
    rows_.erase(i);
  } else {
    rows_[i] = std::move(values);
  }
}

void SparseRowMatrix::scale(double factor) {
  if (factor == 0.0) {
    rows_.clear();
    return;
  }
  for (auto& entry : rows_) entry.second *= factor;
}

void SparseRowMatrix::evict_below(double threshold) {
  std::erase_if(rows_, [threshold](const auto& entry) {
    return entry.second.norm() < threshold;
  });
}

double SparseRowMatrix::group_norm() const {
  double total = 0.0;
  for (const auto& entry : rows_) total += entry.second.norm();
  return total;
}

Eigen::MatrixXd SparseRowMatrix::to_dense() const {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(idx(n_), idx(n_));
  for (const auto& [i, values] : rows_) dense.row(idx(i)) = values.transpose();
  return dense;
}

double inner(const SparseRowMatrix& a, const RowMajorMatrix& b) {
  double total = 0.0;
  for (const auto& [i, values] : a.rows()) {
    total += b.row(idx(i)).dot(values.transpose());
  }
  return total;
}

// ---------------------------------------------------------------------------
// Names

std::string_view to_string(StepRule rule) {
  return rule == StepRule::kDecaying ? "decaying" : "line_search";
}

std::string_view to_string(ExitReason reason) {
  switch (reason) {
    case ExitReason::kKReached:
      return "k_reached";
    case ExitReason::kConverged:
      return "converged";
    case ExitReason::kMaxIters:
      break;
  }
  return "max_iters";
}

StepRule parse_step_rule(std::string_view text) {
  if (text == "decaying") return StepRule::kDecaying;
  if (text == "line_search" || text == "line-search") {
    return StepRule::kLineSearch;
  }
  throw ConfigError("unknown step rule '" + std::string(text) +
                    "' (expected decaying or line_search)");
}

ExitReason parse_exit_reason(std::string_view text) {
  if (text == "k_reached") return ExitReason::kKReached;
  if (text == "converged") return ExitReason::kConverged;
  if (text == "max_iters") return ExitReason::kMaxIters;
  throw InputError("unknown exit reason '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Config and state

SolverConfig SolverConfig::defaults(std::size_t k,
                                    const kernel::Kernel& kernel) {
  SolverConfig config;
  config.k = k;
  config.beta = static_cast<double>(k);
  config.eps = 1e-6 * kernel.trace();
  config.step_rule = StepRule::kLineSearch;
  config.max_iters = 10 * k + 100;
  config.respect_nonnegativity = false;
  return config;
}

void SolverConfig::validate() const {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (!(beta > 0.0)) throw ConfigError("beta must be > 0");
  if (!(eps > 0.0)) throw ConfigError("eps must be > 0");
  if (max_iters < k) throw ConfigError("max_iters must be >= k");
}

SolverState SolverState::initial(std::size_t n) {
  SolverState state;
  state.x = SparseRowMatrix(n);
  state.kx = RowMajorMatrix::Zero(idx(n), idx(n));
  return state;
}

// ---------------------------------------------------------------------------
// Operations

double objective(const kernel::Kernel& k, const SparseRowMatrix& x) {
  check_dimensions(k, x.n());
  const Eigen::MatrixXd& kd = k.entries();
  double quadratic = 0.0;  // tr(X^T K X) = sum_{r,q} K_rq <X_r, X_q>
  double linear = 0.0;     // tr(K X) = sum_r <K_r, X_r>
  for (const auto& [r, xr] : x.rows()) {
    linear += kd.col(idx(r)).dot(xr);
    for (const auto& [q, xq] : x.rows()) {
      quadratic += kd(idx(r), idx(q)) * xr.dot(xq);
    }
  }
  return quadratic - 2.0 * linear + k.trace();
}

RowMajorMatrix gradient(const kernel::Kernel& k, const SolverState& state) {
  check_dimensions(k, state.x.n());
  return 2.0 * (state.kx - k.entries());
}

SparseRowMatrix lmo(const RowMajorMatrix& grad, double beta,
                    bool respect_nonnegativity) {
  const auto n = static_cast<std::size_t>(grad.rows());
  std::size_t best = 0;
  double best_score = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double score = row_score(grad.row(idx(i)), respect_nonnegativity);
    if (score > best_score) {
      best_score = score;
      best = i;
    }
  }
  if (n == 0 || best_score <= 0.0) return SparseRowMatrix(n);
  return vertex_for_row(grad.row(idx(best)).transpose(), best, n, beta,
                        respect_nonnegativity);
}

SparseRowMatrix difference(const SparseRowMatrix& s,
                           const SparseRowMatrix& x) {
  SparseRowMatrix d(x.n());
  for (const auto& [i, values] : x.rows()) d.set_row(i, -values);
  for (const auto& [i, values] : s.rows()) {
    const Eigen::VectorXd* current = d.row(i);
    d.set_row(i, current == nullptr ? Eigen::VectorXd(values)
                                    : Eigen::VectorXd(values + *current));
  }
  return d;
}

double step_size(std::size_t t, StepRule rule, const RowMajorMatrix& grad,
                 const kernel::Kernel& k, const SparseRowMatrix& direction) {
  if (rule == StepRule::kDecaying) {
    return 2.0 / (static_cast<double>(t) + 2.0);
  }
  const Eigen::MatrixXd& kd = k.entries();
  const double slope = inner(direction, grad);
  double curvature = 0.0;  // tr(D^T K D) over the row support of D
  for (const auto& [i, di] : direction.rows()) {
    for (const auto& [l, dl] : direction.rows()) {
      curvature += kd(idx(i), idx(l)) * di.dot(dl);
    }
  }
  return clamp_step(slope, curvature);
}

void gradient_update(const kernel::Kernel& k, SolverState& state,
                     const SparseRowMatrix& s, double r) {
  check_dimensions(k, state.x.n());
  if (s.stored_rows() > 1) {
    throw SolverError("LMO vertex must have at most one non-zero row");
  }
  if (r != 0.0) {
    const Eigen::MatrixXd& kd = k.entries();
    state.x.scale(1.0 - r);
    state.kx *= (1.0 - r);
    for (const auto& [j, sj] : s.rows()) {
      const Eigen::VectorXd* current = state.x.row(j);
      state.x.set_row(j, current == nullptr ? Eigen::VectorXd(r * sj)
                                            : Eigen::VectorXd(*current + r * sj));
      // Rank-1 correction: column j of K times row j of S.
      state.kx.noalias() += (r * kd.col(idx(j))) * sj.transpose();
    }
    state.x.evict_below(kRowEvictionThreshold);
  }
  ++state.t;
}

double duality_gap(const RowMajorMatrix& grad, const SparseRowMatrix& s,
                   const SparseRowMatrix& x) {
  return -(inner(s, grad) - inner(x, grad));
}

std::vector<std::size_t> get_summary(const SparseRowMatrix& x, std::size_t k,
                                     std::string* diagnostic) {
  std::vector<std::size_t> selected;
  if (x.empty()) {
    if (diagnostic != nullptr) {
      *diagnostic = "solution has no non-zero rows; summary is empty";
    }
    return selected;
  }
  if (x.stored_rows() <= k) {
    for (const auto& entry : x.rows()) selected.push_back(entry.first);
    return selected;
  }
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(x.stored_rows());
  for (const auto& [i, values] : x.rows()) ranked.emplace_back(values.norm(), i);
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first > b.first;
                     return a.second < b.second;
                   });
  for (std::size_t i = 0; i < k; ++i) selected.push_back(ranked[i].second);
  std::sort(selected.begin(), selected.end());
  return selected;
}

// ---------------------------------------------------------------------------
// Main loop. The gradient is never stored: one pass over KX and K yields the
// LMO row scores, and gradient rows are rebuilt from the cache on demand
// (only for the selected row and the support of X).

namespace {

double inner_with_cache(const SolverState& state) {
  double total = 0.0;
  for (const auto& [q, xq] : state.x.rows()) {
    total += state.kx.row(idx(q)).dot(xq.transpose());
  }
  return total;
}

}  // namespace

SolverResult solve(const kernel::Kernel& k, const SolverConfig& config,
                   const IterationObserver& observer) {
  config.validate();
  const std::size_t n = k.n();
  if (n == 0) throw ConfigError("kernel is empty");
  const Eigen::MatrixXd& kd = k.entries();

  auto grad_row = [&](const SolverState& state, std::size_t i) {
    return Eigen::VectorXd(
        2.0 * (state.kx.row(idx(i)).transpose() - kd.col(idx(i))));
  };

  SolverState state = SolverState::initial(n);
  SolverResult result;
  result.exit_reason = ExitReason::kMaxIters;
  double x_kx = 0.0;  // <X, KX> at the current iterate

  // LMO row scores for the current iterate. They are refreshed in the same
  // pass that updates the KX cache, so each iteration reads K and KX once.
  std::vector<double> scores(n);
  auto score_of = [&](std::size_t i) {
    return 4.0 * row_score(state.kx.row(idx(i)) - kd.col(idx(i)).transpose(),
                           config.respect_nonnegativity);
  };
  for (std::size_t i = 0; i < n; ++i) scores[i] = score_of(i);

  while (true) {
    // LMO row selection.
    std::size_t j = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (scores[i] > best_score) {
        best_score = scores[i];
        j = i;
      }
    }
    SparseRowMatrix s(n);
    const Eigen::VectorXd grad_j = grad_row(state, j);
    if (best_score > 0.0) {
      s = vertex_for_row(grad_j, j, n, config.beta,
                         config.respect_nonnegativity);
    }

    // <grad, S> from the cached row; <grad, X> = 2 (<X, KX> - tr(KX)).
    double grad_dot_s = 0.0;
    if (const Eigen::VectorXd* sj = s.row(j)) grad_dot_s = grad_j.dot(*sj);
    const double grad_dot_x = 2.0 * (x_kx - state.kx.diagonal().sum());
    const double gap = -(grad_dot_s - grad_dot_x);
    state.last_gap = gap;

    if (state.t >= config.max_iters) {
      result.exit_reason = ExitReason::kMaxIters;
      break;
    }
    if (gap < config.eps) {
      result.exit_reason = ExitReason::kConverged;
      break;
    }

    double r = 0.0;
    if (config.step_rule == StepRule::kDecaying) {
      r = 2.0 / (static_cast<double>(state.t) + 2.0);
    } else {
      // tr(D^T K D) = tr(S^T K S) - 2 <S, KX> + <X, KX>.
      double curvature = x_kx;
      if (const Eigen::VectorXd* sj = s.row(j)) {
        curvature += kd(idx(j), idx(j)) * sj->squaredNorm() -
                     2.0 * state.kx.row(idx(j)).dot(sj->transpose());
      }
      r = clamp_step(grad_dot_s - grad_dot_x, curvature);
    }

    // Same update as gradient_update(), fused with the score refresh.
    if (r != 0.0) {
      state.x.scale(1.0 - r);
      const Eigen::VectorXd* sj = s.row(j);
      if (sj != nullptr) {
        const Eigen::VectorXd* current = state.x.row(j);
        state.x.set_row(j, current == nullptr ? Eigen::VectorXd(r * *sj)
                                              : Eigen::VectorXd(*current + r * *sj));
      }
      for (std::size_t i = 0; i < n; ++i) {
        auto row = state.kx.row(idx(i));
        row *= (1.0 - r);
        if (sj != nullptr) row.noalias() += (r * kd(idx(i), idx(j))) * sj->transpose();
        scores[i] = score_of(i);
      }
      state.x.evict_below(kRowEvictionThreshold);
    }
    ++state.t;

    x_kx = inner_with_cache(state);
    const double f = x_kx - 2.0 * state.kx.diagonal().sum() + k.trace();
    state.history.push_back({state.t, f, gap, r, j});
    if (observer) observer(state);

    if (state.x.stored_rows() >= config.k) {
      result.exit_reason = ExitReason::kKReached;
      break;
    }
  }

  result.selected = get_summary(state.x, config.k, &result.diagnostic);
  result.objective = x_kx - 2.0 * state.kx.diagonal().sum() + k.trace();
  result.gap = state.last_gap;
  result.iterations = state.t;
  result.history = std::move(state.history);
  result.x_final = std::move(state.x);
  return result;
}

}  // namespace fwsum::solver
