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

#include "revbound/myerson.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "revbound/numerics.hpp"

namespace revbound {

MyersonSolver::MyersonSolver(const Instance& instance, TieRule tie_rule,
                             IndependenceOracle oracle)
    : instance_(instance), tie_rule_(tie_rule), oracle_(std::move(oracle)) {
  if (instance_.n() == 0) {
    throw std::invalid_argument("myerson: instance has no bidders");
  }
  if (!oracle_) oracle_ = instance_.feasibility.oracle();
  ironed_.reserve(instance_.n());
  for (const Distribution& d : instance_.bidders) {
    ironed_.push_back(d.ironed_virtual_values());
  }
}

std::size_t MyersonSolver::support_index(std::size_t i, double value) const {
  const std::vector<double>& sup = instance_.bidders[i].support();
  const auto it = std::lower_bound(sup.begin(), sup.end(), value - 1e-12);
  if (it == sup.end() || std::fabs(*it - value) > 1e-12) {
    throw std::invalid_argument("myerson: value " + std::to_string(value) +
                                " is not a support point of bidder " +
                                std::to_string(i));
  }
  return static_cast<std::size_t>(it - sup.begin());
}

std::vector<std::size_t> MyersonSolver::allocate(
    const std::vector<double>& values) const {
  if (values.size() != instance_.n()) {
    throw std::invalid_argument("myerson: profile has wrong length");
  }
  struct Candidate {
    double phi;
    std::size_t index;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(instance_.n());
  for (std::size_t i = 0; i < instance_.n(); ++i) {
    const double phi = ironed_[i][support_index(i, values[i])];
    if (phi >= 0.0) candidates.push_back({phi, i});
  }
  const bool low_first = tie_rule_ == TieRule::kLowIndexFirst;
  std::sort(candidates.begin(), candidates.end(),
            [low_first](const Candidate& a, const Candidate& b) {
              if (a.phi != b.phi) return a.phi > b.phi;
              return low_first ? a.index < b.index : a.index > b.index;
            });
  // Greedy in priority order against the independence oracle; the winner
  // set is kept index-sorted so oracle implementations see canonical sets.
  std::vector<std::size_t> winners;
  for (const Candidate& c : candidates) {
    const auto pos =
        std::lower_bound(winners.begin(), winners.end(), c.index);
    winners.insert(pos, c.index);
    if (!oracle_(winners)) {
      winners.erase(std::lower_bound(winners.begin(), winners.end(), c.index));
    }
  }
  return winners;
}

bool MyersonSolver::wins_at(std::size_t i, std::size_t j,
                            const std::vector<double>& values) const {
  std::vector<double> probe = values;
  probe[i] = instance_.bidders[i].support()[j];
  const std::vector<std::size_t> winners = allocate(probe);
  return std::binary_search(winners.begin(), winners.end(), i);
}

double MyersonSolver::threshold(std::size_t i,
                                const std::vector<double>& values) const {
  const std::vector<double>& sup = instance_.bidders[i].support();
  if (!wins_at(i, sup.size() - 1, values)) return kNoSale;
  // Smallest support index at which i wins; the win predicate is monotone
  // in j, so the boundary is well defined.
  std::size_t lo = 0, hi = sup.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (wins_at(i, mid, values)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return sup[lo];
}

double MyersonSolver::threshold_by_scan(
    std::size_t i, const std::vector<double>& values) const {
  const std::vector<double>& sup = instance_.bidders[i].support();
  for (std::size_t j = 0; j < sup.size(); ++j) {
    if (wins_at(i, j, values)) return sup[j];
  }
  return kNoSale;
}

std::vector<double> MyersonSolver::payments(
    const std::vector<double>& values) const {
  std::vector<double> pay(instance_.n(), 0.0);
  const std::vector<std::size_t> winners = allocate(values);
  for (std::size_t i : winners) {
    pay[i] = threshold(i, values);
  }
  return pay;
}

ThresholdMarginal MyersonSolver::exact_threshold_marginal(
    std::size_t i) const {
  // Enumerate the product of the other bidders' supports with an odometer
  // over a reduced instance, keeping bidder i pinned at an arbitrary value
  // (threshold() ignores values[i]).
  std::map<double, double> atom_mass;
  std::vector<std::size_t> idx(instance_.n(), 0);
  std::vector<double> values(instance_.n());
  for (std::size_t j = 0; j < instance_.n(); ++j) {
    values[j] = instance_.bidders[j].support()[0];
  }
  bool done = false;
  while (!done) {
    double prob = 1.0;
    for (std::size_t j = 0; j < instance_.n(); ++j) {
      if (j != i) prob *= instance_.bidders[j].probs()[idx[j]];
    }
    atom_mass[threshold(i, values)] += prob;
    done = true;
    for (std::size_t j = instance_.n(); j-- > 0;) {
      if (j == i) continue;
      if (idx[j] + 1 < instance_.bidders[j].size()) {
        ++idx[j];
        values[j] = instance_.bidders[j].support()[idx[j]];
        done = false;
        break;
      }
      idx[j] = 0;
      values[j] = instance_.bidders[j].support()[0];
    }
  }
  ThresholdMarginal out;
  for (const auto& [value, mass] : atom_mass) {
    out.values.push_back(value);
    out.probs.push_back(mass);
  }
  return out;
}

std::vector<double> MyersonSolver::resample_thresholds(Rng& rng) const {
  std::vector<double> values(instance_.n());
  std::vector<double> out(instance_.n());
  for (std::size_t i = 0; i < instance_.n(); ++i) {
    for (std::size_t j = 0; j < instance_.n(); ++j) {
      values[j] = instance_.bidders[j].sample(rng);
    }
    out[i] = threshold(i, values);
  }
  return out;
}

double SCurve::step_integral() const {
  double total = 0.0;
  for (std::size_t k = 1; k < taus.size(); ++k) {
    total += (taus[k] - taus[k - 1]) * s[k];
  }
  return total;
}

SCurve exact_s_curve(const MyersonSolver& solver) {
  const Instance& instance = solver.instance();
  // Pairs (threshold t, mass * P[v_i >= t]) per bidder and opponent profile.
  std::map<double, double> weight_at;  // finite thresholds only
  for (std::size_t i = 0; i < instance.n(); ++i) {
    const ThresholdMarginal marginal = solver.exact_threshold_marginal(i);
    for (std::size_t a = 0; a < marginal.values.size(); ++a) {
      const double t = marginal.values[a];
      if (t == kNoSale) continue;
      weight_at[t] += marginal.probs[a] * instance.bidders[i].tail(t);
    }
  }
  SCurve curve;
  curve.provenance = SCurve::Provenance::kExact;
  curve.taus.push_back(0.0);
  for (const auto& [t, unused] : weight_at) curve.taus.push_back(t);
  curve.s.resize(curve.taus.size());
  // s(tau_k) = total mass of sales with payment >= tau_k: suffix sums.
  double suffix = 0.0;
  for (std::size_t k = curve.taus.size(); k-- > 1;) {
    suffix += weight_at.at(curve.taus[k]);
    curve.s[k] = suffix;
  }
  curve.s[0] = suffix;
  return curve;
}

SCurve mc_s_curve(const MyersonSolver& solver, const std::vector<double>& taus,
                  int trials, std::uint64_t seed) {
  if (taus.empty() || taus.front() != 0.0) {
    throw std::invalid_argument("mc_s_curve: grid must start at 0");
  }
  if (!std::is_sorted(taus.begin(), taus.end())) {
    throw std::invalid_argument("mc_s_curve: grid must be ascending");
  }
  if (trials <= 0) {
    throw std::invalid_argument("mc_s_curve: trials must be positive");
  }
  const Instance& instance = solver.instance();
  std::vector<double> count(taus.size(), 0.0);
  std::vector<double> values(instance.n());
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    for (std::size_t i = 0; i < instance.n(); ++i) {
      values[i] = instance.bidders[i].sample(rng);
    }
    for (std::size_t i = 0; i < instance.n(); ++i) {
      const double t = solver.threshold(i, values);
      if (t == kNoSale || values[i] < t) continue;
      // This sale pays t; it counts toward every grid point tau <= t.
      const auto it = std::upper_bound(taus.begin(), taus.end(), t);
      const std::size_t last = static_cast<std::size_t>(it - taus.begin());
      for (std::size_t k = 0; k < last; ++k) count[k] += 1.0;
    }
  }
  SCurve curve;
  curve.provenance = SCurve::Provenance::kMonteCarlo;
  curve.trials = static_cast<std::size_t>(trials);
  curve.taus = taus;
  curve.s.resize(taus.size());
  for (std::size_t k = 0; k < taus.size(); ++k) {
    curve.s[k] = count[k] / static_cast<double>(trials);
  }
  curve.s_regularized = isotonic_decreasing(curve.s);
  return curve;
}

}  // namespace revbound
