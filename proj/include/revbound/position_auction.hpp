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

#ifndef REVBOUND_POSITION_AUCTION_HPP_
#define REVBOUND_POSITION_AUCTION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "revbound/exact.hpp"
#include "revbound/instance.hpp"
#include "revbound/myerson.hpp"

namespace revbound {

// A position auction: n bidders compete for n slots with weakly decreasing
// click-through rates alpha_1 >= alpha_2 >= ... >= alpha_n >= 0.  Slot j's
// winner receives alpha_j expected clicks.  Writing w_j = alpha_j -
// alpha_{j+1} (alpha_{n+1} = 0), any position allocation decomposes into
// layers: layer j awards one click-fraction w_j to each of at most j
// bidders, so the whole market is a w-weighted stack of j-unit problems.
struct PaInstance {
  std::vector<Distribution> bidders;
  std::vector<double> alphas;

  std::size_t n() const { return bidders.size(); }
  void validate() const;
  std::vector<double> layer_weights() const;  // w_j = alpha_j - alpha_{j+1}

  Instance layer_instance(int j) const;  // same bidders, j-unit feasibility
};

// Feasibility of an expected-click vector x: for every set S of bidders,
// sum_{i in S} x_i <= alpha_1 + ... + alpha_{|S|}.  Equivalently (and this
// is how it is checked) the prefix sums of x sorted decreasing are bounded
// by the prefix sums of alpha.
struct PaFeasibilityResult {
  bool feasible = true;
  int violated_cardinality = 0;  // first violated prefix size; 0 if none
  double lhs = 0.0;
  double rhs = 0.0;
};
PaFeasibilityResult pa_feasible(const std::vector<double>& clicks,
                                const std::vector<double>& alphas,
                                double tol = 1e-9);

// Exponential-time subset check, kept as a test oracle for pa_feasible.
bool pa_feasible_by_subsets(const std::vector<double>& clicks,
                            const std::vector<double>& alphas,
                            double tol = 1e-9);

// Outcome of a layered position mechanism, in expected-click space.
struct PaOutcome {
  std::vector<double> clicks;                     // x_i
  std::vector<double> payments;                   // per-bidder expected pay
  std::vector<double> weights;                    // w_j, j = 1..n
  std::vector<std::vector<double>> layer_clicks;  // [j-1][i]
  std::vector<std::vector<double>> layer_payments;
  double revenue = 0.0;
};

// Revenue-optimal position auction evaluated on one value profile: layer j
// runs the j-unit optimal auction; outcomes compose by the layer weights.
// All layers rank by the same global ironed ordering, so winner sets are
// nested in j; a nesting violation throws std::logic_error.
class PaSolver {
 public:
  explicit PaSolver(const PaInstance& pa);

  const PaInstance& pa_instance() const { return pa_; }

  // Per-profile optimal outcome (values must be support points).
  PaOutcome optimal_outcome(const std::vector<double>& values) const;

  // Expected optimal revenue, per-layer revenues, and the layer revenue
  // fractions f_j = w_j Opt_j / sum_k w_k Opt_k (entries for layers with
  // zero weight are zero).  Exact, by per-layer profile enumeration.
  struct ExpectedOptimal {
    double revenue = 0.0;
    std::vector<double> layer_opt;  // Opt_j, j = 1..n
    std::vector<double> f;          // revenue fractions, sum to 1
  };
  ExpectedOptimal expected_optimal() const;

  // Exact expected revenue of the layered posted-price mechanism: each
  // layer independently runs its best-of-two (Myersonian vs uniform)
  // j-unit posted-price mechanism.
  double expected_spm_revenue(double budget = kDefaultEnumBudget) const;

  // Monte Carlo version of the layered posted-price mechanism with fresh
  // per-layer prices each trial.  Also validates every composed per-trial
  // click vector against pa_feasible.
  struct SpmEstimate {
    PaOutcome expected;
    double revenue_std_error = 0.0;
    int trials = 0;
    long long feasibility_violations = 0;
  };
  SpmEstimate spm_estimate(int trials, std::uint64_t seed,
                           double budget = kDefaultEnumBudget) const;

 private:
  PaInstance pa_;
  std::vector<double> weights_;
  std::vector<MyersonSolver> layers_;  // layer j at index j-1
};

// The composite guarantee: given layer revenue fractions f (nonnegative,
// summing to 1) and the per-layer program values LP(j), the layered
// mechanism earns at least sum_j f_j / LP(j) times the optimal revenue.
double pa_bound(const std::vector<double>& f,
                const std::vector<double>& lp_values);

}  // namespace revbound

#endif  // REVBOUND_POSITION_AUCTION_HPP_
