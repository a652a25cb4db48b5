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

#ifndef REVBOUND_MYERSON_HPP_
#define REVBOUND_MYERSON_HPP_

#include <cstddef>
#include <limits>
#include <vector>

#include "revbound/instance.hpp"
#include "revbound/rng.hpp"

namespace revbound {

inline constexpr double kNoSale = std::numeric_limits<double>::infinity();

// Distribution of a bidder's threshold over random opponent profiles.
// Values are sorted ascending; a final +infinity atom collects the profiles
// under which the bidder cannot win at any value.
struct ThresholdMarginal {
  std::vector<double> values;
  std::vector<double> probs;
};

// Revenue-optimal auction for independent finite-support bidders under a
// k-unit constraint: allocate to feasible bidders in order of decreasing
// ironed virtual value (ties by bidder index), excluding negative ironed
// values, and charge each winner the smallest value at which they would
// still win against the same opponents.
class MyersonSolver {
 public:
  // Whether equal ironed virtual values are resolved in favor of the lower
  // or the higher bidder index.  Either choice yields an optimal auction
  // (ironed values are constant across an ironed interval, so expected
  // revenue is unaffected); the alternative exists to let tests verify
  // exactly that invariance.
  enum class TieRule { kLowIndexFirst, kHighIndexFirst };

  // By default the winner set is constrained by instance.feasibility; a
  // custom independence oracle (assumed to describe a matroid, so that the
  // greedy rule stays optimal and thresholds stay monotone) may be supplied
  // instead.
  explicit MyersonSolver(const Instance& instance,
                         TieRule tie_rule = TieRule::kLowIndexFirst,
                         IndependenceOracle oracle = nullptr);

  const Instance& instance() const { return instance_; }

  // Ironed virtual value of bidder i at their j-th support point.
  double ironed_virtual(std::size_t i, std::size_t j) const {
    return ironed_[i][j];
  }

  // Winner set for a value profile (all entries must be support points),
  // sorted by bidder index.
  std::vector<std::size_t> allocate(const std::vector<double>& values) const;

  // Threshold of bidder i against the others' values: the smallest own
  // support value at which i wins, or kNoSale if i never wins.  Found by
  // binary search over the support; winning is monotone in own value
  // because ironed virtual values are nondecreasing and ties depend only
  // on the bidder index.
  double threshold(std::size_t i, const std::vector<double>& values) const;

  // Reference implementation by ascending linear scan (for tests).
  double threshold_by_scan(std::size_t i,
                           const std::vector<double>& values) const;

  // Payments for a profile under the taxation principle: winners pay their
  // threshold, losers pay zero.  payments[i] aligns with bidder i.
  std::vector<double> payments(const std::vector<double>& values) const;

  // Exact distribution of threshold(i, .) over opponent profiles, by full
  // enumeration of the product of the other bidders' supports.
  ThresholdMarginal exact_threshold_marginal(std::size_t i) const;

  // One resampled threshold per bidder, each from an independent fresh
  // opponent profile.
  std::vector<double> resample_thresholds(Rng& rng) const;

 private:
  bool wins_at(std::size_t i, std::size_t j,
               const std::vector<double>& values) const;
  std::size_t support_index(std::size_t i, double value) const;

  Instance instance_;
  TieRule tie_rule_;
  IndependenceOracle oracle_;
  std::vector<std::vector<double>> ironed_;
};

// Expected-payments curve of an auction: s(tau) = expected number of
// winners whose payment is at least tau, tabulated on a grid.  The grid
// always starts at tau = 0, where s equals the expected number of winners.
struct SCurve {
  enum class Provenance { kExact, kMonteCarlo };

  std::vector<double> taus;
  std::vector<double> s;              // exact values, or raw MC estimates
  std::vector<double> s_regularized;  // MC only: isotonic (nonincreasing) fit
  Provenance provenance = Provenance::kExact;
  std::size_t trials = 0;  // sample count behind MC estimates; 0 when exact

  // sum_k (tau_k - tau_{k-1}) * s(tau_k).  For the exact curve on the grid
  // of payment atoms this equals the auction's expected revenue, because
  // s is constant on each interval between consecutive atoms.
  double step_integral() const;
};

// Exact s-curve of the optimal auction, on the grid {0} plus all payment
// atoms, by full enumeration of opponent profiles per bidder.
SCurve exact_s_curve(const MyersonSolver& solver);

// Monte Carlo s-curve on a caller-supplied grid (taus must be ascending and
// start at 0).  Each grid point is an unbiased estimate; `s_regularized`
// additionally projects the raw estimates onto nonincreasing curves.
SCurve mc_s_curve(const MyersonSolver& solver, const std::vector<double>& taus,
                  int trials, std::uint64_t seed);

}  // namespace revbound

#endif  // REVBOUND_MYERSON_HPP_
