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

#ifndef REVBOUND_DISTRIBUTION_HPP_
#define REVBOUND_DISTRIBUTION_HPP_

#include <cstddef>
#include <vector>

#include "revbound/rng.hpp"

namespace revbound {

// A finite-support value distribution: strictly increasing positive support
// points with positive probabilities summing to one.
//
// The revenue curve is the function R(q) = q * price(q) on quantile space,
// where price(q) is the largest price sold with probability at least q.
// With tail quantiles q_j = P[V >= v_j] (decreasing in j for v sorted
// ascending), the curve interpolates {(0, 0)} plus {(q_j, q_j * v_j)}.
class Distribution {
 public:
  // Validates and normalizes.  Throws std::invalid_argument with a message
  // naming the offending entry if support is not strictly increasing and
  // positive, a probability is not positive, or the total differs from one
  // by more than 1e-9 (smaller drift is renormalized away).
  Distribution(std::vector<double> support, std::vector<double> probs);

  // Equal-weight m-point midpoint grid of the uniform distribution on
  // [lo, hi]: support points lo + (j - 1/2) (hi - lo) / m.
  static Distribution uniform_grid(double lo, double hi, int m);

  std::size_t size() const { return support_.size(); }
  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }

  // P[V <= v].
  double cdf(double v) const;
  // P[V >= v].
  double tail(double v) const;
  // Tail quantile of support point j: q_j = P[V >= support[j]].
  double quantile(std::size_t j) const { return tail_[j]; }

  double expectation() const;
  double max_value() const { return support_.back(); }

  // Raw virtual values phi(v_j): left slopes of the revenue curve, i.e.
  // phi(v_j) = v_j - P[V > v_j] * (v_{j+1} - v_j) / P[V = v_j], and
  // phi(v_last) = v_last.  Nondecreasing iff the distribution is regular.
  std::vector<double> raw_virtual_values() const;

  // Ironed virtual values: left derivatives of the least concave majorant
  // of the revenue curve, constant across each ironed interval and always
  // nondecreasing in v.
  std::vector<double> ironed_virtual_values() const;

  bool is_regular() const;

  // Smallest support point maximizing v * P[V >= v].
  double monopoly_price() const;

  // Inverse-CDF sample using one uniform draw from rng.
  double sample(Rng& rng) const;
  // Index of the sampled support point.
  std::size_t sample_index(Rng& rng) const;

 private:
  std::vector<double> support_;
  std::vector<double> probs_;
  std::vector<double> tail_;     // tail_[j] = P[V >= support_[j]]
  std::vector<double> cum_;      // cum_[j] = P[V <= support_[j]]
};

}  // namespace revbound

#endif  // REVBOUND_DISTRIBUTION_HPP_
