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

#include "revbound/position_auction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "revbound/mechanisms.hpp"

namespace revbound {

void PaInstance::validate() const {
  if (bidders.empty()) {
    throw std::invalid_argument("position auction: no bidders");
  }
  if (alphas.size() != bidders.size()) {
    throw std::invalid_argument("position auction: " +
                                std::to_string(alphas.size()) +
                                " alphas for " + std::to_string(bidders.size()) +
                                " bidders");
  }
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    if (!(alphas[j] >= 0.0) || !std::isfinite(alphas[j])) {
      throw std::invalid_argument("position auction: alphas[" +
                                  std::to_string(j) + "] must be >= 0");
    }
    if (j > 0 && alphas[j] > alphas[j - 1] + 1e-12) {
      throw std::invalid_argument(
          "position auction: alphas must be weakly decreasing (entry " +
          std::to_string(j) + ")");
    }
  }
  if (!(alphas[0] > 0.0)) {
    throw std::invalid_argument("position auction: alphas[0] must be > 0");
  }
}

std::vector<double> PaInstance::layer_weights() const {
  std::vector<double> w(alphas.size());
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    const double next = j + 1 < alphas.size() ? alphas[j + 1] : 0.0;
    w[j] = std::max(0.0, alphas[j] - next);
  }
  return w;
}

Instance PaInstance::layer_instance(int j) const {
  Instance instance;
  instance.bidders = bidders;
  instance.feasibility = Feasibility::k_unit(j);
  return instance;
}

PaFeasibilityResult pa_feasible(const std::vector<double>& clicks,
                                const std::vector<double>& alphas,
                                double tol) {
  if (clicks.size() != alphas.size()) {
    throw std::invalid_argument("pa_feasible: clicks/alphas length mismatch");
  }
  PaFeasibilityResult out;
  std::vector<double> sorted = clicks;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < -tol) {
      out.feasible = false;
      out.violated_cardinality = 1;
      out.lhs = sorted[i];
      out.rhs = 0.0;
      return out;
    }
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double lhs = 0.0, rhs = 0.0;
  for (std::size_t t = 0; t < sorted.size(); ++t) {
    lhs += sorted[t];
    rhs += alphas[t];
    if (lhs > rhs + tol) {
      out.feasible = false;
      out.violated_cardinality = static_cast<int>(t + 1);
      out.lhs = lhs;
      out.rhs = rhs;
      return out;
    }
  }
  return out;
}

bool pa_feasible_by_subsets(const std::vector<double>& clicks,
                            const std::vector<double>& alphas, double tol) {
  const std::size_t n = clicks.size();
  if (n != alphas.size()) {
    throw std::invalid_argument(
        "pa_feasible_by_subsets: clicks/alphas length mismatch");
  }
  if (n > 20) {
    throw std::invalid_argument("pa_feasible_by_subsets: n too large");
  }
  for (double x : clicks) {
    if (x < -tol) return false;
  }
  std::vector<double> alpha_prefix(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    alpha_prefix[j + 1] = alpha_prefix[j] + alphas[j];
  }
  for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
    double sum = 0.0;
    int size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i)) {
        sum += clicks[i];
        ++size;
      }
    }
    if (sum > alpha_prefix[static_cast<std::size_t>(size)] + tol) return false;
  }
  return true;
}

PaSolver::PaSolver(const PaInstance& pa) : pa_(pa) {
  pa_.validate();
  weights_ = pa_.layer_weights();
  layers_.reserve(pa_.n());
  for (std::size_t j = 1; j <= pa_.n(); ++j) {
    layers_.emplace_back(pa_.layer_instance(static_cast<int>(j)));
  }
}

PaOutcome PaSolver::optimal_outcome(const std::vector<double>& values) const {
  const std::size_t n = pa_.n();
  PaOutcome out;
  out.weights = weights_;
  out.clicks.assign(n, 0.0);
  out.payments.assign(n, 0.0);
  out.layer_clicks.assign(n, std::vector<double>(n, 0.0));
  out.layer_payments.assign(n, std::vector<double>(n, 0.0));
  std::vector<std::size_t> previous;
  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<std::size_t> winners = layers_[j].allocate(values);
    // Layers share one ironed ranking, so each winner set must contain the
    // previous layer's.
    if (!std::includes(winners.begin(), winners.end(), previous.begin(),
                       previous.end())) {
      throw std::logic_error(
          "position auction: layer winner sets are not nested");
    }
    previous = winners;
    for (std::size_t i : winners) {
      out.layer_clicks[j][i] = 1.0;
      const double t = layers_[j].threshold(i, values);
      out.layer_payments[j][i] = t;
      out.clicks[i] += weights_[j];
      out.payments[i] += weights_[j] * t;
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.revenue += out.payments[i];
  return out;
}

PaSolver::ExpectedOptimal PaSolver::expected_optimal() const {
  ExpectedOptimal out;
  out.layer_opt.resize(pa_.n());
  out.f.assign(pa_.n(), 0.0);
  for (std::size_t j = 0; j < pa_.n(); ++j) {
    out.layer_opt[j] = exact_opt(layers_[j]);
    out.revenue += weights_[j] * out.layer_opt[j];
  }
  if (out.revenue > 0.0) {
    for (std::size_t j = 0; j < pa_.n(); ++j) {
      out.f[j] = weights_[j] * out.layer_opt[j] / out.revenue;
    }
  }
  return out;
}

double PaSolver::expected_spm_revenue(double budget) const {
  double total = 0.0;
  for (std::size_t j = 0; j < pa_.n(); ++j) {
    if (weights_[j] == 0.0) continue;
    total +=
        weights_[j] *
        best_spm_revenue(pa_.layer_instance(static_cast<int>(j + 1)), budget)
            .value;
  }
  return total;
}

PaSolver::SpmEstimate PaSolver::spm_estimate(int trials, std::uint64_t seed,
                                             double budget) const {
  if (trials <= 0) {
    throw std::invalid_argument("spm_estimate: trials must be positive");
  }
  const std::size_t n = pa_.n();
  // Decide each layer's arm (and uniform price) once, exactly if possible.
  std::vector<bool> layer_uses_uniform(n, false);
  std::vector<double> layer_uniform_price(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (weights_[j] == 0.0) continue;
    const Instance layer = pa_.layer_instance(static_cast<int>(j + 1));
    try {
      const BestSpm best = best_spm_revenue(layer, budget);
      layer_uses_uniform[j] = best.arm == "uniform";
      layer_uniform_price[j] = best.up_price;
    } catch (const std::runtime_error&) {
      const UniformPriceResult up = uniform_price_search(layer);
      layer_uses_uniform[j] = false;
      layer_uniform_price[j] = up.price;
    }
  }
  SpmEstimate est;
  est.trials = trials;
  PaOutcome& acc = est.expected;
  acc.weights = weights_;
  acc.clicks.assign(n, 0.0);
  acc.payments.assign(n, 0.0);
  acc.layer_clicks.assign(n, std::vector<double>(n, 0.0));
  acc.layer_payments.assign(n, std::vector<double>(n, 0.0));
  double rev_sum = 0.0, rev_sumsq = 0.0;
  std::vector<double> values(n);
  std::vector<double> trial_clicks(n);
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = pa_.bidders[i].sample(rng);
    }
    double trial_revenue = 0.0;
    std::fill(trial_clicks.begin(), trial_clicks.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (weights_[j] == 0.0) continue;
      PriceVector prices;
      if (layer_uses_uniform[j]) {
        prices.label = "uniform";
        prices.prices.assign(n, layer_uniform_price[j]);
      } else {
        prices.label = "myersonian";
        prices.prices = layers_[j].resample_thresholds(rng);
      }
      const Instance layer = pa_.layer_instance(static_cast<int>(j + 1));
      const MechanismOutcome out = run_spm(layer, prices, values);
      trial_revenue += weights_[j] * out.revenue;
      for (std::size_t i : out.winners) {
        acc.layer_clicks[j][i] += 1.0;
        acc.layer_payments[j][i] += out.payments[i];
        trial_clicks[i] += weights_[j];
        acc.payments[i] += weights_[j] * out.payments[i];
      }
    }
    for (std::size_t i = 0; i < n; ++i) acc.clicks[i] += trial_clicks[i];
    if (!pa_feasible(trial_clicks, pa_.alphas).feasible) {
      ++est.feasibility_violations;
    }
    rev_sum += trial_revenue;
    rev_sumsq += trial_revenue * trial_revenue;
  }
  const double inv = 1.0 / static_cast<double>(trials);
  for (std::size_t i = 0; i < n; ++i) {
    acc.clicks[i] *= inv;
    acc.payments[i] *= inv;
    for (std::size_t j = 0; j < n; ++j) {
      acc.layer_clicks[j][i] *= inv;
      acc.layer_payments[j][i] *= inv;
    }
  }
  acc.revenue = rev_sum * inv;
  if (trials > 1) {
    const double var = std::max(
        0.0, (rev_sumsq - trials * acc.revenue * acc.revenue) / (trials - 1));
    est.revenue_std_error = std::sqrt(var / trials);
  }
  return est;
}

double pa_bound(const std::vector<double>& f,
                const std::vector<double>& lp_values) {
  if (f.size() > lp_values.size()) {
    throw std::invalid_argument("pa_bound: missing program values");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (f[j] < -1e-12) {
      throw std::invalid_argument("pa_bound: f[" + std::to_string(j) +
                                  "] is negative");
    }
    sum += f[j];
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("pa_bound: f sums to " + std::to_string(sum) +
                                ", expected 1");
  }
  double bound = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!(lp_values[j] > 0.0)) {
      throw std::invalid_argument("pa_bound: program value must be positive");
    }
    bound += f[j] / lp_values[j];
  }
  return bound;
}

}  // namespace revbound
