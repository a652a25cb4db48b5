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

#ifndef REVBOUND_EXACT_HPP_
#define REVBOUND_EXACT_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "revbound/instance.hpp"
#include "revbound/mechanisms.hpp"
#include "revbound/myerson.hpp"

namespace revbound {

// Default enumeration budget: (value profiles) x (threshold profiles).
inline constexpr double kDefaultEnumBudget = 1e7;

// Expected revenue of the optimal auction, by full enumeration of value
// profiles and the taxation-principle payments (winners pay thresholds).
double exact_opt(const MyersonSolver& solver);

// The same quantity through the virtual-value identity: expected sum of
// winners' ironed virtual values.  Agrees with exact_opt to rounding.
double exact_opt_virtual(const MyersonSolver& solver);

// Expected revenue of the posted-price mechanism whose price vector is an
// independent draw from each bidder's threshold marginal.  Exact: sums over
// the product of value profiles and per-bidder threshold atoms.  Throws
// std::runtime_error if that product exceeds `budget`.
double exact_myersonian_spm(const MyersonSolver& solver,
                            double budget = kDefaultEnumBudget);

// Same enumeration, but running the eager second-price mechanism with the
// resampled thresholds as reserves.
double exact_myersonian_esp(const MyersonSolver& solver,
                            double budget = kDefaultEnumBudget);

// Expected revenue of a fixed price/reserve vector, by value enumeration.
double exact_fixed_price_revenue(const Instance& instance, MechanismKind kind,
                                 const PriceVector& prices,
                                 double budget = kDefaultEnumBudget);

// Optimal uniform reserve for the eager second-price auction (1-unit):
// maximizes E[max(p, second value) * 1{max value >= p}] over support-point
// candidates; ties pick the lowest price.
UniformPriceResult uniform_esp_search(const Instance& instance,
                                      double budget = kDefaultEnumBudget);

// Best-of-two posted-price mechanism value: max of the Myersonian and the
// uniform arm.  The Myersonian arm is exact when within budget, otherwise
// a Monte Carlo estimate (flagged by mp_exact).
struct BestSpm {
  double value = 0.0;
  std::string arm;        // "myersonian" | "uniform"
  double mp = 0.0;        // Myersonian-price arm
  bool mp_exact = true;
  double mp_std_error = 0.0;
  double up = 0.0;        // uniform-price arm (always exact)
  double up_price = 0.0;
};
BestSpm best_spm_revenue(const Instance& instance,
                         double budget = kDefaultEnumBudget,
                         int mc_trials = 200000, std::uint64_t seed = 1);

// Eager second-price counterparts (1-unit feasibility required).
struct EspRevenues {
  double me = 0.0;        // Myersonian reserves
  bool me_exact = true;
  double me_std_error = 0.0;
  double ue = 0.0;        // uniform reserve (exact scan when within budget)
  bool ue_exact = true;
  double ue_price = 0.0;
  double best = 0.0;
  std::string arm;        // "myersonian" | "uniform"
};
EspRevenues esp_revenues(const Instance& instance,
                         double budget = kDefaultEnumBudget,
                         int mc_trials = 200000, std::uint64_t seed = 1);

// Partition-matroid posted pricing: the mechanism decomposes into an
// independent cap-units problem per group, so each group runs its own
// best-of-two posted-price mechanism.  The guarantee factor is the minimum
// of the per-cap bounds and is supplied by the factor-program layer.
struct PartitionSpm {
  std::vector<BestSpm> groups;  // aligned with feasibility.groups
  std::vector<int> caps;
  double total = 0.0;
};
PartitionSpm partition_spm(const Instance& instance,
                           double budget = kDefaultEnumBudget,
                           int mc_trials = 200000, std::uint64_t seed = 1);

// Checks, per value profile and per resampled-threshold price profile (and
// for the optimal uniform price), that the eager second-price mechanism
// with a given price vector never collects less than the posted-price
// mechanism with the identical vector.
struct DominanceReport {
  bool holds = true;
  long long profiles_checked = 0;
  // First violation found, if any.
  std::vector<double> prices;
  std::vector<double> values;
  double spm_revenue = 0.0;
  double esp_revenue = 0.0;
};
DominanceReport check_esp_dominance(const MyersonSolver& solver,
                                    double budget = kDefaultEnumBudget);

// Largest value of tau * s(tau) over the exact s-curve atoms, minus the
// optimal uniform-price revenue.  Nonpositive (up to rounding): a uniform
// price of tau already collects tau * s(tau).
double scurve_price_bound_slack(const MyersonSolver& solver);

// Deterministic random instance generator for certification suites.
struct RandomInstanceParams {
  int max_n = 3;
  int max_support = 3;
  int cap = 1;
};
Instance random_instance(std::uint64_t seed, const RandomInstanceParams& params);

}  // namespace revbound

#endif  // REVBOUND_EXACT_HPP_
