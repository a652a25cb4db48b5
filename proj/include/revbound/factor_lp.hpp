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

#ifndef REVBOUND_FACTOR_LP_HPP_
#define REVBOUND_FACTOR_LP_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "revbound/simplex.hpp"

namespace revbound {

// ---------------------------------------------------------------------------
// Worst-case programs bounding the posted-price and eager-second-price
// mechanisms against the optimal auction.  Each finite program discretizes
// quantile space into k levels s_i = i/k and asks how much optimal revenue
// (the objective sum w_i) an adversary can pack per unit of mechanism
// revenue (the constraints); the guarantee factor is 1 / optimum.

// Continuous limit of the posted-price program, solved in closed form:
// tau_star solves  integral_{1/H}^{tau} fH(1/t) dt = H^H / (H! e^H)  with
// fH(x) = H - sum_{i<H} (H-i) P[Poisson(x)=i]; the program value is
// 1 + ln(H tau_star) and the guarantee factor its reciprocal.
struct ContinuousBound {
  int H = 1;
  double tau_star = 0.0;
  double lp_value = 0.0;
  double factor = 0.0;
  double baseline = 0.0;  // 1 - H^H / (H! e^H)
  bool converged = false;
  int evaluations = 0;    // integrand evaluations spent
};

ContinuousBound solve_lp_spm_continuous();  // the H = 1 case
ContinuousBound solve_lp_spm_H(int H);

// Finite posted-price program for n bidders at discretization k:
//   maximize sum_i w_i  subject to w >= 0,
//   rows j = 1..k-1:  sum_{i>j} w_i s_j / s_i <= 1
//   final row:        sum_i w_i (1 - q_n(s_i)) / s_i <= 1
LpProblem build_lp_spm_n(int n, int k);

// Finite eager-second-price program, n -> infinity kernels:
//   rows j = 1..k:
//     sum_{i<=j} w_i (2(1-e^{-s_i}) - s_i e^{-s_i}) / s_i
//       + sum_{i>j} w_i (s_j + 1 - e^{-s_i}) / s_i <= 2
//   final row: sum_i w_i (1 - e^{-s_i}) / s_i <= 1
LpProblem build_lp_esp(int k);

// Finite eager-second-price program with n-bidder kernels q_n and r_n.
LpProblem build_lp_esp_n(int n, int k);

// ---------------------------------------------------------------------------
// Bound tables.

struct BoundRow {
  int n = 0;  // 0 when not applicable
  int H = 0;
  int k = 0;  // 0 for continuous solves
  double lp_value = 0.0;
  double bound = 0.0;     // 1 / lp_value
  double baseline = 0.0;  // prophet-style baseline for the same row
};

struct BoundTable {
  std::string which;  // "multiunit" | "spm-n" | "esp-k" | "esp-n"
  std::vector<BoundRow> rows;
};

BoundTable table_multiunit(const std::vector<int>& Hs);
BoundTable table_spm_n(const std::vector<int>& ns, const std::vector<int>& ks);
BoundTable table_esp_k(const std::vector<int>& ks);
BoundTable table_esp_n(const std::vector<int>& ns, const std::vector<int>& ks);

// Baselines: what a single uniform threshold already achieves.
double baseline_spm_n(int n);  // 1 - (1 - 1/n)^n
double baseline_multiunit(int H);  // 1 - H^H / (H! e^H)

// Guarantee for a partitioned market: the weakest per-cap multiunit factor.
double partition_guarantee(const std::vector<int>& caps);

// ---------------------------------------------------------------------------
// Analytical checks backing the programs' kernels.

struct CheckResult {
  bool passed = true;
  long long cells_checked = 0;
  double worst_violation = 0.0;
  std::string detail;  // human-readable description of the worst cell
};

// Verifies, on a y-grid, that the row kernels are nonincreasing in y:
// (x + 1 - q_n(y)) / y for each x in x_grid, and (2 - r_n(y)) / y, for
// every n in [n_min, n_max] and for the limiting kernels; also checks the
// small-y limits ((2 - r_n(y))/y -> 1).  Overrides exist so tests can
// inject a broken kernel and watch the check fail.
struct MonotoneCheckOptions {
  int n_min = 1;
  int n_max = 50;
  int y_points = 1000;
  double y_min = 1e-3;
  double y_max = 1.0;
  std::vector<double> x_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::function<double(int, double)> q_override;  // replaces kernel_q_n
  std::function<double(int, double)> r_override;  // replaces kernel_r_n
};
CheckResult monotone_kernel_check(const MonotoneCheckOptions& options = {});

// Verifies that among Bernoulli success masses (s_1..s_n) with a fixed sum,
// the balanced point maximizes sum_{i<H} (H-i) P[Z=i] (Z the acceptance
// count): random feasible points never beat the balanced point beyond
// 1e-12.  Also confirms the closed forms at the balanced point: for H = 1
// it equals q_n(s_total), and 2 P[Z=0] + P[Z=1] equals r_n(s_total).
struct PolynomialCheckOptions {
  int n_max = 6;
  int H_max = 3;
  std::vector<double> s_totals = {0.25, 0.5, 0.75, 1.0};
  int points_per_cell = 10000;
  std::uint64_t seed = 20260816;
};
CheckResult polynomial_extremal_check(const PolynomialCheckOptions& options = {});

}  // namespace revbound

#endif  // REVBOUND_FACTOR_LP_HPP_
