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

#include "revbound/exact.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace revbound {

namespace {

void require_k_unit(const Instance& instance, const char* who, int cap = 0) {
  if (instance.feasibility.kind != Feasibility::Kind::kKUnit) {
    throw std::invalid_argument(std::string(who) +
                                ": requires k-unit feasibility");
  }
  if (cap > 0 && instance.feasibility.cap != cap) {
    throw std::invalid_argument(std::string(who) + ": requires cap = " +
                                std::to_string(cap));
  }
}

// Odometer over the product of per-bidder threshold marginals.
class ThresholdProduct {
 public:
  explicit ThresholdProduct(const MyersonSolver& solver) {
    const std::size_t n = solver.instance().n();
    marginals_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      marginals_.push_back(solver.exact_threshold_marginal(i));
    }
  }

  double combinations() const {
    double total = 1.0;
    for (const ThresholdMarginal& m : marginals_) {
      total *= static_cast<double>(m.values.size());
    }
    return total;
  }

  // Calls f(prices, probability) for every combination of atoms.
  template <typename F>
  void for_each(F&& f) const {
    const std::size_t n = marginals_.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> prices(n);
    for (std::size_t i = 0; i < n; ++i) prices[i] = marginals_[i].values[0];
    while (true) {
      double prob = 1.0;
      for (std::size_t i = 0; i < n; ++i) prob *= marginals_[i].probs[idx[i]];
      f(prices, prob);
      std::size_t i = n;
      while (i-- > 0) {
        if (idx[i] + 1 < marginals_[i].values.size()) {
          ++idx[i];
          prices[i] = marginals_[i].values[idx[i]];
          break;
        }
        idx[i] = 0;
        prices[i] = marginals_[i].values[0];
      }
      if (i == static_cast<std::size_t>(-1)) return;
    }
  }

 private:
  std::vector<ThresholdMarginal> marginals_;
};

double enumerate_threshold_price_revenue(const MyersonSolver& solver,
                                         MechanismKind kind, double budget,
                                         const char* who) {
  const Instance& instance = solver.instance();
  const ThresholdProduct product(solver);
  const double cost = product.combinations() * instance.profile_count();
  if (cost > budget) {
    throw std::runtime_error(std::string(who) + ": enumeration size " +
                             std::to_string(cost) + " exceeds budget " +
                             std::to_string(budget));
  }
  double total = 0.0;
  product.for_each([&](const std::vector<double>& prices, double p_prob) {
    PriceVector pv;
    pv.label = "myersonian";
    pv.prices = prices;
    double inner = 0.0;
    for (ProfileIterator it(instance); !it.done(); it.next()) {
      const MechanismOutcome out =
          kind == MechanismKind::kSpm
              ? run_spm(instance, pv, it.values())
              : run_esp(instance, pv, it.values());
      inner += it.probability() * out.revenue;
    }
    total += p_prob * inner;
  });
  return total;
}

}  // namespace

double exact_opt(const MyersonSolver& solver) {
  const Instance& instance = solver.instance();
  double total = 0.0;
  for (ProfileIterator it(instance); !it.done(); it.next()) {
    const std::vector<double> pay = solver.payments(it.values());
    double sum = 0.0;
    for (double p : pay) sum += p;
    total += it.probability() * sum;
  }
  return total;
}

double exact_opt_virtual(const MyersonSolver& solver) {
  const Instance& instance = solver.instance();
  double total = 0.0;
  for (ProfileIterator it(instance); !it.done(); it.next()) {
    const std::vector<std::size_t> winners = solver.allocate(it.values());
    double sum = 0.0;
    for (std::size_t i : winners) {
      sum += solver.ironed_virtual(i, it.indices()[i]);
    }
    total += it.probability() * sum;
  }
  return total;
}

double exact_myersonian_spm(const MyersonSolver& solver, double budget) {
  return enumerate_threshold_price_revenue(solver, MechanismKind::kSpm, budget,
                                           "exact_myersonian_spm");
}

double exact_myersonian_esp(const MyersonSolver& solver, double budget) {
  return enumerate_threshold_price_revenue(solver, MechanismKind::kEsp, budget,
                                           "exact_myersonian_esp");
}

double exact_fixed_price_revenue(const Instance& instance, MechanismKind kind,
                                 const PriceVector& prices, double budget) {
  if (instance.profile_count() > budget) {
    throw std::runtime_error(
        "exact_fixed_price_revenue: profile count exceeds budget");
  }
  double total = 0.0;
  for (ProfileIterator it(instance); !it.done(); it.next()) {
    const MechanismOutcome out = kind == MechanismKind::kSpm
                                     ? run_spm(instance, prices, it.values())
                                     : run_esp(instance, prices, it.values());
    total += it.probability() * out.revenue;
  }
  return total;
}

UniformPriceResult uniform_esp_search(const Instance& instance,
                                      double budget) {
  require_k_unit(instance, "uniform_esp_search", 1);
  const std::vector<double> candidates = instance.support_union();
  if (instance.profile_count() * static_cast<double>(candidates.size()) >
      budget) {
    throw std::runtime_error("uniform_esp_search: enumeration exceeds budget");
  }
  UniformPriceResult best;
  best.revenue = -1.0;
  for (double p : candidates) {
    PriceVector pv;
    pv.label = "uniform";
    pv.prices.assign(instance.n(), p);
    const double rev =
        exact_fixed_price_revenue(instance, MechanismKind::kEsp, pv, budget);
    if (rev > best.revenue + 1e-15) {
      best.revenue = rev;
      best.price = p;
    }
  }
  return best;
}

BestSpm best_spm_revenue(const Instance& instance, double budget,
                         int mc_trials, std::uint64_t seed) {
  require_k_unit(instance, "best_spm_revenue");
  const MyersonSolver solver(instance);
  BestSpm out;
  try {
    out.mp = exact_myersonian_spm(solver, budget);
    out.mp_exact = true;
  } catch (const std::runtime_error&) {
    const McEstimate est = myersonian_spm_revenue(solver, mc_trials, seed);
    out.mp = est.mean;
    out.mp_exact = false;
    out.mp_std_error = est.std_error;
  }
  const UniformPriceResult up = uniform_price_search(instance);
  out.up = up.revenue;
  out.up_price = up.price;
  if (out.mp >= out.up) {
    out.value = out.mp;
    out.arm = "myersonian";
  } else {
    out.value = out.up;
    out.arm = "uniform";
  }
  return out;
}

EspRevenues esp_revenues(const Instance& instance, double budget,
                         int mc_trials, std::uint64_t seed) {
  require_k_unit(instance, "esp_revenues", 1);
  const MyersonSolver solver(instance);
  EspRevenues out;
  try {
    out.me = exact_myersonian_esp(solver, budget);
    out.me_exact = true;
  } catch (const std::runtime_error&) {
    const McEstimate est =
        mc_threshold_price_revenue(solver, MechanismKind::kEsp, mc_trials, seed);
    out.me = est.mean;
    out.me_exact = false;
    out.me_std_error = est.std_error;
  }
  try {
    const UniformPriceResult ue = uniform_esp_search(instance, budget);
    out.ue = ue.revenue;
    out.ue_price = ue.price;
    out.ue_exact = true;
  } catch (const std::runtime_error&) {
    // Scan candidates with common random numbers (same seed, hence the
    // same value draws per candidate) and keep the best estimate.
    out.ue_exact = false;
    out.ue = -1.0;
    for (double p : instance.support_union()) {
      PriceVector pv;
      pv.label = "uniform";
      pv.prices.assign(instance.n(), p);
      const McEstimate est = mc_fixed_price_revenue(
          instance, MechanismKind::kEsp, pv, mc_trials, seed);
      if (est.mean > out.ue + 1e-15) {
        out.ue = est.mean;
        out.ue_price = p;
      }
    }
  }
  if (out.me >= out.ue) {
    out.best = out.me;
    out.arm = "myersonian";
  } else {
    out.best = out.ue;
    out.arm = "uniform";
  }
  return out;
}

PartitionSpm partition_spm(const Instance& instance, double budget,
                           int mc_trials, std::uint64_t seed) {
  if (instance.feasibility.kind != Feasibility::Kind::kPartition) {
    throw std::invalid_argument("partition_spm: requires partition feasibility");
  }
  instance.feasibility.validate_partition(instance.n());
  PartitionSpm out;
  out.caps = instance.feasibility.caps;
  for (std::size_t g = 0; g < instance.feasibility.groups.size(); ++g) {
    Instance sub;
    for (std::size_t i : instance.feasibility.groups[g]) {
      sub.bidders.push_back(instance.bidders[i]);
    }
    sub.feasibility = Feasibility::k_unit(instance.feasibility.caps[g]);
    out.groups.push_back(best_spm_revenue(
        sub, budget, mc_trials, derive_seed(seed, static_cast<std::uint64_t>(g))));
    out.total += out.groups.back().value;
  }
  return out;
}

DominanceReport check_esp_dominance(const MyersonSolver& solver,
                                    double budget) {
  const Instance& instance = solver.instance();
  const ThresholdProduct product(solver);
  const double cost =
      (product.combinations() + 1.0) * instance.profile_count();
  if (cost > budget) {
    throw std::runtime_error("check_esp_dominance: enumeration size " +
                             std::to_string(cost) + " exceeds budget");
  }
  DominanceReport report;
  const auto compare_under = [&](const PriceVector& pv) {
    for (ProfileIterator it(instance); !it.done(); it.next()) {
      const double spm = run_spm(instance, pv, it.values()).revenue;
      const double esp = run_esp(instance, pv, it.values()).revenue;
      ++report.profiles_checked;
      if (esp < spm - 1e-12 && report.holds) {
        report.holds = false;
        report.prices = pv.prices;
        report.values = it.values();
        report.spm_revenue = spm;
        report.esp_revenue = esp;
      }
    }
  };
  product.for_each([&](const std::vector<double>& prices, double) {
    PriceVector pv;
    pv.label = "myersonian";
    pv.prices = prices;
    compare_under(pv);
  });
  PriceVector uniform;
  uniform.label = "uniform";
  uniform.prices.assign(instance.n(), uniform_price_search(instance).price);
  compare_under(uniform);
  return report;
}

double scurve_price_bound_slack(const MyersonSolver& solver) {
  const SCurve curve = exact_s_curve(solver);
  double max_floor = 0.0;
  for (std::size_t k = 1; k < curve.taus.size(); ++k) {
    max_floor = std::max(max_floor, curve.taus[k] * curve.s[k]);
  }
  return max_floor - uniform_price_search(solver.instance()).revenue;
}

Instance random_instance(std::uint64_t seed,
                         const RandomInstanceParams& params) {
  if (params.max_n < 1 || params.max_support < 1 || params.cap < 1) {
    throw std::invalid_argument("random_instance: invalid parameters");
  }
  Rng rng = make_rng(derive_seed(seed, 0xa5a5a5a5ULL));
  const int n =
      1 + static_cast<int>(rng() % static_cast<std::uint64_t>(params.max_n));
  Instance instance;
  instance.feasibility = Feasibility::k_unit(params.cap);
  for (int i = 0; i < n; ++i) {
    const int m = 1 + static_cast<int>(
                          rng() % static_cast<std::uint64_t>(params.max_support));
    std::set<double> points;
    while (static_cast<int>(points.size()) < m) {
      const double raw = 0.1 + 9.9 * uniform01(rng);
      points.insert(std::round(raw * 1000.0) / 1000.0);
    }
    std::vector<double> support(points.begin(), points.end());
    std::vector<double> probs(support.size());
    double total = 0.0;
    for (double& p : probs) {
      p = -std::log(1.0 - 0.999999 * uniform01(rng));
      total += p;
    }
    for (double& p : probs) p /= total;
    instance.bidders.emplace_back(std::move(support), std::move(probs));
  }
  return instance;
}

}  // namespace revbound
