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

#ifndef REVBOUND_MECHANISMS_HPP_
#define REVBOUND_MECHANISMS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "revbound/instance.hpp"
#include "revbound/myerson.hpp"

namespace revbound {

// Per-bidder posted prices (sequential-offer mechanisms) or reserves
// (second-price mechanisms).  Entries may be kNoSale (+infinity), meaning
// the bidder can never buy.
struct PriceVector {
  std::vector<double> prices;
  std::string label;  // "myersonian" | "uniform" | "custom"
};

struct MechanismOutcome {
  std::string mechanism;              // "spm" | "esp"
  std::vector<std::size_t> winners;   // sorted by bidder index
  std::vector<double> payments;       // per bidder; losers pay 0
  double revenue = 0.0;
  double welfare = 0.0;               // sum of winners' values
};

// Sequential posted-price mechanism: visits bidders in decreasing price
// order (ties: lower index first), offers p_i whenever adding i keeps the
// partial winner set feasible, and sells at p_i iff v_i >= p_i.
MechanismOutcome run_spm(const Instance& instance, const PriceVector& prices,
                         const std::vector<double>& values,
                         const IndependenceOracle& oracle = nullptr);

// Eager second-price mechanism with personalized reserves: buyers below
// their reserve are eliminated up front; among survivors S the max-value
// feasible subset S* wins (greedy by value, ties: lower index; exact for
// matroid feasibility).  Winner i pays the larger of their reserve and the
// externality imposed on the others:
//   sum_{j in A(S \ {i})} v_j - sum_{j in S*, j != i} v_j,
// where A(.) re-runs the allocation without i.
MechanismOutcome run_esp(const Instance& instance, const PriceVector& reserves,
                         const std::vector<double>& values,
                         const IndependenceOracle& oracle = nullptr);

// Exact optimal uniform posted price for k-unit feasibility.  Revenue of
// price p is p * E[min(#{i : v_i >= p}, cap)], evaluated through the
// Poisson-binomial distribution of the acceptance count.  Candidate prices
// are the union of support points: between consecutive support points the
// acceptance probabilities are constant, so revenue is linear in p there
// and maximized at a support point.  Ties return the lowest price.
struct UniformPriceResult {
  double price = 0.0;
  double revenue = 0.0;
};
UniformPriceResult uniform_price_search(const Instance& instance);

// Monte Carlo estimate of expected revenue.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  int trials = 0;
};

enum class MechanismKind { kSpm, kEsp };

// Resampled-threshold prices: each trial draws fresh values and a fresh
// threshold vector (independent opponent profile per bidder) as prices.
McEstimate mc_threshold_price_revenue(const MyersonSolver& solver,
                                      MechanismKind kind, int trials,
                                      std::uint64_t seed);

// Fixed price vector: each trial draws fresh values only.
McEstimate mc_fixed_price_revenue(const Instance& instance, MechanismKind kind,
                                  const PriceVector& prices, int trials,
                                  std::uint64_t seed);

// Convenience wrapper for the posted-price mechanism with resampled
// threshold prices.
McEstimate myersonian_spm_revenue(const MyersonSolver& solver, int trials,
                                  std::uint64_t seed);

// Myersonian posted prices under a general matroid independence oracle:
// thresholds and feasibility both come from the oracle-constrained optimal
// auction.  Verifies downward closure of the oracle on the fly and throws
// std::logic_error on a violation.
McEstimate matroid_myersonian_spm(const Instance& instance,
                                  const IndependenceOracle& oracle, int trials,
                                  std::uint64_t seed);

}  // namespace revbound

#endif  // REVBOUND_MECHANISMS_HPP_
