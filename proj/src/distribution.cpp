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

#include "revbound/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace revbound {

Distribution::Distribution(std::vector<double> support,
                           std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
  if (support_.empty()) {
    throw std::invalid_argument("distribution: support is empty");
  }
  if (support_.size() != probs_.size()) {
    throw std::invalid_argument(
        "distribution: support has " + std::to_string(support_.size()) +
        " entries but probs has " + std::to_string(probs_.size()));
  }
  double total = 0.0;
  for (std::size_t j = 0; j < support_.size(); ++j) {
    if (!(support_[j] > 0.0) || !std::isfinite(support_[j])) {
      throw std::invalid_argument("distribution: support[" +
                                  std::to_string(j) +
                                  "] must be a positive finite value");
    }
    if (j > 0 && !(support_[j] > support_[j - 1])) {
      throw std::invalid_argument("distribution: support[" +
                                  std::to_string(j) +
                                  "] must exceed support[" +
                                  std::to_string(j - 1) + "]");
    }
    if (!(probs_[j] > 0.0) || !std::isfinite(probs_[j])) {
      throw std::invalid_argument("distribution: probs[" + std::to_string(j) +
                                  "] must be a positive finite value");
    }
    total += probs_[j];
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("distribution: probs sum to " +
                                std::to_string(total) + ", expected 1");
  }
  for (double& p : probs_) p /= total;

  cum_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < probs_.size(); ++j) {
    acc += probs_[j];
    cum_[j] = acc;
  }
  cum_.back() = 1.0;
  tail_.resize(probs_.size());
  acc = 0.0;
  for (std::size_t j = probs_.size(); j-- > 0;) {
    acc += probs_[j];
    tail_[j] = acc;
  }
  tail_.front() = 1.0;
}

Distribution Distribution::uniform_grid(double lo, double hi, int m) {
  // Midpoints are strictly positive whenever lo >= 0, which is all the
  // Distribution invariant needs.
  if (!(lo >= 0.0) || !(hi > lo) || m < 1) {
    throw std::invalid_argument("uniform_grid: need 0 <= lo < hi and m >= 1");
  }
  std::vector<double> support(static_cast<std::size_t>(m));
  std::vector<double> probs(static_cast<std::size_t>(m),
                            1.0 / static_cast<double>(m));
  for (int j = 0; j < m; ++j) {
    support[static_cast<std::size_t>(j)] =
        lo + (static_cast<double>(j) + 0.5) * (hi - lo) / static_cast<double>(m);
  }
  return Distribution(std::move(support), std::move(probs));
}

double Distribution::cdf(double v) const {
  const auto it =
      std::upper_bound(support_.begin(), support_.end(), v);
  if (it == support_.begin()) return 0.0;
  return cum_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double Distribution::tail(double v) const {
  const auto it = std::lower_bound(support_.begin(), support_.end(), v);
  if (it == support_.end()) return 0.0;
  return tail_[static_cast<std::size_t>(it - support_.begin())];
}

double Distribution::expectation() const {
  double acc = 0.0;
  for (std::size_t j = 0; j < support_.size(); ++j) {
    acc += support_[j] * probs_[j];
  }
  return acc;
}

std::vector<double> Distribution::raw_virtual_values() const {
  const std::size_t n = support_.size();
  std::vector<double> phi(n);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    phi[j] = support_[j] -
             tail_[j + 1] * (support_[j + 1] - support_[j]) / probs_[j];
  }
  phi[n - 1] = support_[n - 1];
  return phi;
}

std::vector<double> Distribution::ironed_virtual_values() const {
  const std::size_t n = support_.size();
  // Revenue-curve points in increasing quantile order: (0, 0) followed by
  // (q_j, q_j v_j) for j = n-1 down to 0 (q_j increases as j decreases).
  std::vector<double> qs(n + 1), rs(n + 1);
  qs[0] = 0.0;
  rs[0] = 0.0;
  for (std::size_t idx = 1; idx <= n; ++idx) {
    const std::size_t j = n - idx;
    qs[idx] = tail_[j];
    rs[idx] = tail_[j] * support_[j];
  }
  // Upper concave hull via a monotone chain over the points left to right.
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i <= n; ++i) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull[hull.size() - 1];
      const double cross = (qs[b] - qs[a]) * (rs[i] - rs[a]) -
                           (rs[b] - rs[a]) * (qs[i] - qs[a]);
      if (cross >= 0.0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  // The ironed value of v_j is the hull slope over the quantile interval
  // (q_{j+1}, q_j]; locate the segment whose right endpoint is >= q_j.
  std::vector<double> ironed(n);
  std::size_t seg = 1;
  // Walk support points from largest value (smallest quantile) upward.
  for (std::size_t idx = 1; idx <= n; ++idx) {
    const std::size_t j = n - idx;
    const double q = tail_[j];
    while (seg + 1 < hull.size() && qs[hull[seg]] < q - 1e-15) ++seg;
    const std::size_t a = hull[seg - 1];
    const std::size_t b = hull[seg];
    ironed[j] = (rs[b] - rs[a]) / (qs[b] - qs[a]);
  }
  return ironed;
}

bool Distribution::is_regular() const {
  const std::vector<double> phi = raw_virtual_values();
  for (std::size_t j = 0; j + 1 < phi.size(); ++j) {
    if (phi[j] > phi[j + 1] + 1e-12) return false;
  }
  return true;
}

double Distribution::monopoly_price() const {
  double best = -1.0;
  double best_rev = -1.0;
  for (std::size_t j = 0; j < support_.size(); ++j) {
    const double rev = support_[j] * tail_[j];
    if (rev > best_rev + 1e-15) {
      best_rev = rev;
      best = support_[j];
    }
  }
  return best;
}

double Distribution::sample(Rng& rng) const {
  return support_[sample_index(rng)];
}

std::size_t Distribution::sample_index(Rng& rng) const {
  const double u = uniform01(rng);
  const auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
  const std::size_t idx = static_cast<std::size_t>(it - cum_.begin());
  return std::min(idx, cum_.size() - 1);
}

}  // namespace revbound
