// Copyright 2026 The Authors.
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

#include "revbound/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace revbound {

namespace {

constexpr double kPivotTol = 1e-11;     // minimum usable pivot magnitude
constexpr double kReducedTol = 1e-9;    // entering-candidate threshold
constexpr double kDegenerateTol = 1e-12;
constexpr double kPrimalCertTol = 1e-9;
constexpr double kGapCertTol = 1e-7;

// Columns 0..cols-1 are structural; cols..cols+rows-1 are slacks.
class Tableau {
 public:
  explicit Tableau(const LpProblem& p) : p_(p), m_(p.rows), n_(p.cols) {
    basis_.resize(m_);
    in_basis_.assign(n_ + m_, false);
    for (std::size_t r = 0; r < m_; ++r) {
      basis_[r] = n_ + r;
      in_basis_[n_ + r] = true;
    }
    binv_.assign(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) binv_[r * m_ + r] = 1.0;
    xb_ = p_.b;
  }

  std::size_t basis(std::size_t r) const { return basis_[r]; }
  bool in_basis(std::size_t j) const { return in_basis_[j]; }
  double xb(std::size_t r) const { return xb_[r]; }

  double cost(std::size_t j) const { return j < n_ ? p_.c[j] : 0.0; }

  // y = c_B' B^{-1}.
  std::vector<double> duals() const {
    std::vector<double> y(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      const double cb = cost(basis_[r]);
      if (cb == 0.0) continue;
      const double* row = &binv_[r * m_];
      for (std::size_t k = 0; k < m_; ++k) y[k] += cb * row[k];
    }
    return y;
  }

  // Reduced cost of column j given duals y.
  double reduced_cost(std::size_t j, const std::vector<double>& y) const {
    if (j >= n_) return -y[j - n_];
    const double* col = &p_.a[j * m_];
    double dot = 0.0;
    for (std::size_t r = 0; r < m_; ++r) dot += y[r] * col[r];
    return p_.c[j] - dot;
  }

  // w = B^{-1} A_j.
  void ftran(std::size_t j, std::vector<double>* w) const {
    w->assign(m_, 0.0);
    if (j >= n_) {
      const std::size_t k = j - n_;
      for (std::size_t r = 0; r < m_; ++r) (*w)[r] = binv_[r * m_ + k];
      return;
    }
    const double* col = &p_.a[j * m_];
    for (std::size_t k = 0; k < m_; ++k) {
      const double v = col[k];
      if (v == 0.0) continue;
      for (std::size_t r = 0; r < m_; ++r) (*w)[r] += binv_[r * m_ + k] * v;
    }
  }

  // Pivot: column `entering` replaces basis row `leave`.
  void pivot(std::size_t entering, std::size_t leave,
             const std::vector<double>& w) {
    const double piv = w[leave];
    double* lrow = &binv_[leave * m_];
    const double inv_piv = 1.0 / piv;
    for (std::size_t k = 0; k < m_; ++k) lrow[k] *= inv_piv;
    const double t = xb_[leave] * inv_piv;
    xb_[leave] = t;
    for (std::size_t r = 0; r < m_; ++r) {
      if (r == leave) continue;
      const double f = w[r];
      if (f == 0.0) continue;
      double* row = &binv_[r * m_];
      for (std::size_t k = 0; k < m_; ++k) row[k] -= f * lrow[k];
      xb_[r] -= f * t;
    }
    in_basis_[basis_[leave]] = false;
    basis_[leave] = entering;
    in_basis_[entering] = true;
  }

  // Rebuilds B^{-1} from scratch by Gauss-Jordan with partial pivoting,
  // then recomputes x_B = B^{-1} b.  Counters accumulated floating-point
  // drift from long pivot sequences.
  void refactorize() {
    std::vector<double> mat(m_ * m_, 0.0);  // row-major basis matrix
    for (std::size_t col = 0; col < m_; ++col) {
      const std::size_t j = basis_[col];
      if (j >= n_) {
        mat[(j - n_) * m_ + col] = 1.0;
      } else {
        const double* a = &p_.a[j * m_];
        for (std::size_t r = 0; r < m_; ++r) mat[r * m_ + col] = a[r];
      }
    }
    std::vector<double> inv(m_ * m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) inv[r * m_ + r] = 1.0;
    for (std::size_t col = 0; col < m_; ++col) {
      std::size_t piv = col;
      double best = std::fabs(mat[col * m_ + col]);
      for (std::size_t r = col + 1; r < m_; ++r) {
        const double v = std::fabs(mat[r * m_ + col]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < 1e-300) {
        throw std::runtime_error("simplex: singular basis on refactorize");
      }
      if (piv != col) {
        for (std::size_t k = 0; k < m_; ++k) {
          std::swap(mat[piv * m_ + k], mat[col * m_ + k]);
          std::swap(inv[piv * m_ + k], inv[col * m_ + k]);
        }
      }
      const double inv_piv = 1.0 / mat[col * m_ + col];
      for (std::size_t k = 0; k < m_; ++k) {
        mat[col * m_ + k] *= inv_piv;
        inv[col * m_ + k] *= inv_piv;
      }
      for (std::size_t r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = mat[r * m_ + col];
        if (f == 0.0) continue;
        for (std::size_t k = 0; k < m_; ++k) {
          mat[r * m_ + k] -= f * mat[col * m_ + k];
          inv[r * m_ + k] -= f * inv[col * m_ + k];
        }
      }
    }
    binv_ = std::move(inv);
    for (std::size_t r = 0; r < m_; ++r) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m_; ++k) acc += binv_[r * m_ + k] * p_.b[k];
      xb_[r] = acc;
    }
  }

  std::size_t total_cols() const { return n_ + m_; }

 private:
  const LpProblem& p_;
  std::size_t m_, n_;
  std::vector<std::size_t> basis_;
  std::vector<bool> in_basis_;
  std::vector<double> binv_;  // row-major m x m
  std::vector<double> xb_;
};

}  // namespace

LpSolution solve_lp(const LpProblem& problem, int max_iterations) {
  const std::size_t m = problem.rows;
  const std::size_t n = problem.cols;
  if (m == 0 || n == 0 || problem.a.size() != m * n ||
      problem.b.size() != m || problem.c.size() != n) {
    throw std::invalid_argument("solve_lp: inconsistent problem dimensions");
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (!(problem.b[r] >= 0.0)) {
      throw std::invalid_argument(
          "solve_lp: b must be nonnegative (slack basis start)");
    }
  }
  if (max_iterations <= 0) {
    max_iterations = std::max<int>(1000, static_cast<int>(60 * (m + n)));
  }

  Tableau tab(problem);
  LpSolution sol;
  std::vector<double> w;
  int degenerate_run = 0;
  const int bland_after = 10 * static_cast<int>(n);
  bool bland = false;
  int since_refactor = 0;

  // Outer loop: pivot to (apparent) optimality, refactorize, and re-price;
  // only a clean basis inverse is allowed to declare optimality.
  bool optimal = false;
  while (!optimal && sol.iterations < max_iterations) {
    while (sol.iterations < max_iterations) {
      const std::vector<double> y = tab.duals();
      // Pricing: Dantzig (most positive reduced cost) or Bland (lowest
      // index) after a long degenerate run.
      std::size_t entering = tab.total_cols();
      double best = kReducedTol;
      for (std::size_t j = 0; j < tab.total_cols(); ++j) {
        if (tab.in_basis(j)) continue;
        const double d = tab.reduced_cost(j, y);
        if (bland) {
          if (d > kReducedTol) {
            entering = j;
            break;
          }
        } else if (d > best) {
          best = d;
          entering = j;
        }
      }
      if (entering == tab.total_cols()) {
        optimal = true;
        break;
      }

      tab.ftran(entering, &w);
      // Ratio test; ties by smallest basis column index for determinism.
      std::size_t leave = m;
      double best_ratio = 0.0;
      for (std::size_t r = 0; r < m; ++r) {
        if (w[r] <= kPivotTol) continue;
        const double ratio = tab.xb(r) / w[r];
        if (leave == m || ratio < best_ratio - 1e-12 ||
            (std::fabs(ratio - best_ratio) <= 1e-12 &&
             tab.basis(r) < tab.basis(leave))) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == m) {
        sol.status = LpStatus::kUnbounded;
        sol.iterations += 1;
        return sol;
      }
      if (best_ratio <= kDegenerateTol) {
        if (++degenerate_run > bland_after) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      tab.pivot(entering, leave, w);
      ++sol.iterations;
      if (++since_refactor >= 3000) {
        tab.refactorize();
        since_refactor = 0;
      }
    }
    // Re-verify optimality against a freshly refactorized inverse; resume
    // pivoting if drift was hiding an improving column.
    tab.refactorize();
    since_refactor = 0;
    if (optimal) {
      const std::vector<double> y = tab.duals();
      for (std::size_t j = 0; j < tab.total_cols(); ++j) {
        if (!tab.in_basis(j) && tab.reduced_cost(j, y) > kReducedTol) {
          optimal = false;
          break;
        }
      }
      if (!optimal) continue;  // more pivots needed on the clean basis
    }
  }
  if (!optimal) {
    sol.status = LpStatus::kIterationLimit;
  }

  // Assemble the solution and its certificate.
  sol.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis(r) < n) sol.x[tab.basis(r)] = tab.xb(r);
  }
  sol.y = tab.duals();

  double cx = 0.0;
  for (std::size_t j = 0; j < n; ++j) cx += problem.c[j] * sol.x[j];
  sol.objective = cx;
  double by = 0.0;
  for (std::size_t r = 0; r < m; ++r) by += problem.b[r] * sol.y[r];
  sol.duality_gap = std::fabs(cx - by);

  double primal_violation = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    primal_violation = std::max(primal_violation, -sol.x[j]);
  }
  for (std::size_t r = 0; r < m; ++r) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += problem.at(r, j) * sol.x[j];
    }
    primal_violation = std::max(primal_violation, row - problem.b[r]);
  }
  sol.max_primal_violation = primal_violation;

  double dual_violation = 0.0;
  for (std::size_t r = 0; r < m; ++r) {
    dual_violation = std::max(dual_violation, -sol.y[r]);
  }
  for (std::size_t j = 0; j < tab.total_cols(); ++j) {
    if (tab.in_basis(j)) continue;
    dual_violation = std::max(dual_violation, tab.reduced_cost(j, sol.y));
  }
  sol.max_dual_violation = dual_violation;

  sol.certified = sol.status == LpStatus::kOptimal &&
                  sol.max_primal_violation <= kPrimalCertTol &&
                  sol.max_dual_violation <= 1e-6 &&
                  sol.duality_gap <=
                      kGapCertTol * std::max(1.0, std::fabs(sol.objective));
  return sol;
}

}  // namespace revbound
