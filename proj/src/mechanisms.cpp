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

#include "revbound/mechanisms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

#include "revbound/numerics.hpp"

namespace revbound {

namespace {


void insert_sorted(std::vector<std::size_t>* set, std::size_t i) {
  set->insert(std::lower_bound(set->begin(), set->end(), i), i);
}

void erase_sorted(std::vector<std::size_t>* set, std::size_t i) {
  set->erase(std::lower_bound(set->begin(), set->end(), i));
}

void check_prices(const Instance& instance, const PriceVector& prices) {
  if (prices.prices.size() != instance.n()) {
    throw std::invalid_argument("prices: length " +
                                std::to_string(prices.prices.size()) +
                                " does not match bidder count " +
                                std::to_string(instance.n()));
  }
  for (std::size_t i = 0; i < prices.prices.size(); ++i) {
    const double p = prices.prices[i];
    if (std::isnan(p) || p < 0.0) {
      throw std::invalid_argument("prices: entry " + std::to_string(i) +
                                  " must be >= 0");
    }
  }
}

// Greedy max-total-value feasible subset of `candidates` (which must be
// index-sorted): exact for matroid feasibility.
std::vector<std::size_t> greedy_max_value(
    const std::vector<std::size_t>& candidates,
    const std::vector<double>& values, const IndependenceOracle& oracle) {
  std::vector<std::size_t> order = candidates;
  std::sort(order.begin(), order.end(),
            [&values](std::size_t a, std::size_t b) {
              if (values[a] != values[b]) return values[a] > values[b];
              return a < b;
            });
  std::vector<std::size_t> chosen;
  for (std::size_t i : order) {
    insert_sorted(&chosen, i);
    if (!oracle(chosen)) erase_sorted(&chosen, i);
  }
  return chosen;
}

}  // namespace

MechanismOutcome run_spm(const Instance& instance, const PriceVector& prices,
                         const std::vector<double>& values,
                         const IndependenceOracle& oracle) {
  check_prices(instance, prices);
  if (values.size() != instance.n()) {
    throw std::invalid_argument("run_spm: profile has wrong length");
  }
  const IndependenceOracle feasible =
      oracle ? oracle : instance.feasibility.oracle();
  std::vector<std::size_t> order(instance.n());
  for (std::size_t i = 0; i < instance.n(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&prices](std::size_t a, std::size_t b) {
              if (prices.prices[a] != prices.prices[b]) {
                return prices.prices[a] > prices.prices[b];
              }
              return a < b;
            });
  MechanismOutcome out;
  out.mechanism = "spm";
  out.payments.assign(instance.n(), 0.0);
  for (std::size_t i : order) {
    // Offer only if i could still be accommodated.
    insert_sorted(&out.winners, i);
    if (!feasible(out.winners)) {
      erase_sorted(&out.winners, i);
      continue;
    }
    if (values[i] >= prices.prices[i]) {
      out.payments[i] = prices.prices[i];
      out.revenue += prices.prices[i];
      out.welfare += values[i];
    } else {
      erase_sorted(&out.winners, i);
    }
  }
  return out;
}

MechanismOutcome run_esp(const Instance& instance, const PriceVector& reserves,
                         const std::vector<double>& values,
                         const IndependenceOracle& oracle) {
  check_prices(instance, reserves);
  if (values.size() != instance.n()) {
    throw std::invalid_argument("run_esp: profile has wrong length");
  }
  const IndependenceOracle feasible =
      oracle ? oracle : instance.feasibility.oracle();
  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < instance.n(); ++i) {
    if (values[i] >= reserves.prices[i]) survivors.push_back(i);
  }
  MechanismOutcome out;
  out.mechanism = "esp";
  out.payments.assign(instance.n(), 0.0);
  out.winners = greedy_max_value(survivors, values, feasible);
  double winner_total = 0.0;
  for (std::size_t i : out.winners) winner_total += values[i];
  for (std::size_t i : out.winners) {
    // Allocation among the survivors other than i.
    std::vector<std::size_t> others = survivors;
    erase_sorted(&others, i);
    const std::vector<std::size_t> alt =
        greedy_max_value(others, values, feasible);
    double alt_total = 0.0;
    for (std::size_t j : alt) alt_total += values[j];
    const double externality = alt_total - (winner_total - values[i]);
    const double pay = std::max(reserves.prices[i], externality);
    out.payments[i] = pay;
    out.revenue += pay;
    out.welfare += values[i];
  }
  return out;
}

UniformPriceResult uniform_price_search(const Instance& instance) {
  if (instance.feasibility.kind != Feasibility::Kind::kKUnit) {
    throw std::invalid_argument(
        "uniform_price_search: requires k-unit feasibility");
  }
  const std::vector<double> candidates = instance.support_union();
  UniformPriceResult best;
  best.revenue = -1.0;
  std::vector<double> accept(instance.n());
  for (double p : candidates) {
    for (std::size_t i = 0; i < instance.n(); ++i) {
      accept[i] = instance.bidders[i].tail(p);
    }
    const double rev =
        p * expected_min_count(accept, instance.feasibility.cap);
    if (rev > best.revenue + 1e-15) {
      best.revenue = rev;
      best.price = p;
    }
  }
  return best;
}

namespace {

int thread_count_from_env() {
  const char* env = std::getenv("REVBOUND_THREADS");
  if (env == nullptr) return 1;
  const int v = std::atoi(env);
  return v >= 1 ? v : 1;
}

// Deterministic Monte Carlo mean: trials are grouped into fixed chunks;
// chunk sums are accumulated in chunk order no matter how many threads
// computed them, so the result is identical for any REVBOUND_THREADS.
McEstimate mc_mean(int trials, std::uint64_t seed,
                   const std::function<double(Rng&)>& sample_one) {
  if (trials <= 0) {
    throw std::invalid_argument("monte carlo: trials must be positive");
  }
  constexpr int kChunk = 4096;
  const int chunks = (trials + kChunk - 1) / kChunk;
  std::vector<double> sums(static_cast<std::size_t>(chunks), 0.0);
  std::vector<double> sumsqs(static_cast<std::size_t>(chunks), 0.0);
  const auto run_chunk = [&](int c) {
    const int begin = c * kChunk;
    const int end = std::min(trials, begin + kChunk);
    double sum = 0.0, sumsq = 0.0;
    for (int t = begin; t < end; ++t) {
      Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
      const double x = sample_one(rng);
      sum += x;
      sumsq += x * x;
    }
    sums[static_cast<std::size_t>(c)] = sum;
    sumsqs[static_cast<std::size_t>(c)] = sumsq;
  };
  const int threads = std::min(thread_count_from_env(), chunks);
  if (threads <= 1) {
    for (int c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&]() {
        for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
          run_chunk(c);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }
  double sum = 0.0, sumsq = 0.0;
  for (int c = 0; c < chunks; ++c) {
    sum += sums[static_cast<std::size_t>(c)];
    sumsq += sumsqs[static_cast<std::size_t>(c)];
  }
  McEstimate est;
  est.trials = trials;
  est.mean = sum / trials;
  if (trials > 1) {
    const double var =
        std::max(0.0, (sumsq - trials * est.mean * est.mean) / (trials - 1));
    est.std_error = std::sqrt(var / trials);
  }
  return est;
}

}  // namespace

McEstimate mc_threshold_price_revenue(const MyersonSolver& solver,
                                      MechanismKind kind, int trials,
                                      std::uint64_t seed) {
  const Instance& instance = solver.instance();
  return mc_mean(trials, seed, [&](Rng& rng) {
    PriceVector prices;
    prices.label = "myersonian";
    prices.prices = solver.resample_thresholds(rng);
    std::vector<double> values(instance.n());
    for (std::size_t i = 0; i < instance.n(); ++i) {
      values[i] = instance.bidders[i].sample(rng);
    }
    const MechanismOutcome out = kind == MechanismKind::kSpm
                                     ? run_spm(instance, prices, values)
                                     : run_esp(instance, prices, values);
    return out.revenue;
  });
}

McEstimate mc_fixed_price_revenue(const Instance& instance, MechanismKind kind,
                                  const PriceVector& prices, int trials,
                                  std::uint64_t seed) {
  check_prices(instance, prices);
  return mc_mean(trials, seed, [&](Rng& rng) {
    std::vector<double> values(instance.n());
    for (std::size_t i = 0; i < instance.n(); ++i) {
      values[i] = instance.bidders[i].sample(rng);
    }
    const MechanismOutcome out = kind == MechanismKind::kSpm
                                     ? run_spm(instance, prices, values)
                                     : run_esp(instance, prices, values);
    return out.revenue;
  });
}

McEstimate myersonian_spm_revenue(const MyersonSolver& solver, int trials,
                                  std::uint64_t seed) {
  return mc_threshold_price_revenue(solver, MechanismKind::kSpm, trials, seed);
}

McEstimate matroid_myersonian_spm(const Instance& instance,
                                  const IndependenceOracle& oracle, int trials,
                                  std::uint64_t seed) {
  if (!oracle) {
    throw std::invalid_argument("matroid_myersonian_spm: oracle is required");
  }
  if (!oracle({})) {
    throw std::logic_error(
        "matroid_myersonian_spm: oracle rejects the empty set");
  }
  // Downward-closure spot check on singletons and their extensions: every
  // subset of a feasible set must be feasible.
  for (std::size_t i = 0; i < instance.n(); ++i) {
    for (std::size_t j = i + 1; j < instance.n(); ++j) {
      if (oracle({i, j}) && (!oracle({i}) || !oracle({j}))) {
        throw std::logic_error(
            "matroid_myersonian_spm: oracle is not downward closed");
      }
    }
  }
  const MyersonSolver solver(instance, MyersonSolver::TieRule::kLowIndexFirst,
                             oracle);
  const Instance& inst = solver.instance();
  return mc_mean(trials, seed, [&](Rng& rng) {
    PriceVector prices;
    prices.label = "myersonian";
    prices.prices = solver.resample_thresholds(rng);
    std::vector<double> values(inst.n());
    for (std::size_t i = 0; i < inst.n(); ++i) {
      values[i] = inst.bidders[i].sample(rng);
    }
    return run_spm(inst, prices, values, oracle).revenue;
  });
}

}  // namespace revbound
