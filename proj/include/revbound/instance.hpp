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

#ifndef REVBOUND_INSTANCE_HPP_
#define REVBOUND_INSTANCE_HPP_

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "revbound/distribution.hpp"

namespace revbound {

// An independence oracle over bidder index sets.  Must describe a
// downward-closed family containing the empty set.
using IndependenceOracle =
    std::function<bool(const std::vector<std::size_t>&)>;

// Feasibility constraint on the winner set.  Two built-in kinds:
//  - kKUnit: at most `cap` simultaneous winners (a uniform matroid);
//  - kPartition: bidders are split into disjoint groups, group g may hold
//    at most caps[g] winners (a partition matroid).
// Arbitrary downward-closed families can additionally be plugged in through
// an explicit oracle where an API accepts one.
struct Feasibility {
  enum class Kind { kKUnit, kPartition };

  Kind kind = Kind::kKUnit;
  int cap = 1;                                  // kKUnit
  std::vector<std::vector<std::size_t>> groups;  // kPartition
  std::vector<int> caps;                         // kPartition

  static Feasibility k_unit(int cap) {
    if (cap < 1) throw std::invalid_argument("feasibility: cap must be >= 1");
    Feasibility f;
    f.kind = Kind::kKUnit;
    f.cap = cap;
    return f;
  }

  // Groups must be disjoint; bidders outside every group are unconstrained
  // only if they appear in a singleton group, so we require a full cover,
  // which `validate_partition(n)` checks against the bidder count.
  static Feasibility partition(std::vector<std::vector<std::size_t>> groups,
                               std::vector<int> caps);

  void validate_partition(std::size_t n) const;

  bool feasible(const std::vector<std::size_t>& set) const;

  IndependenceOracle oracle() const {
    Feasibility copy = *this;
    return [copy](const std::vector<std::size_t>& set) {
      return copy.feasible(set);
    };
  }
};

// A market: independent private-value bidders plus a feasibility constraint
// on who may win simultaneously.
struct Instance {
  std::vector<Distribution> bidders;
  Feasibility feasibility;

  std::size_t n() const { return bidders.size(); }

  // Number of value profiles in full enumeration.
  double profile_count() const {
    double total = 1.0;
    for (const Distribution& d : bidders) {
      total *= static_cast<double>(d.size());
    }
    return total;
  }

  // Union of all bidders' support points, sorted ascending, deduplicated.
  std::vector<double> support_union() const;
};

// Odometer over the product of bidder supports.  Visits profiles in
// lexicographic order; `probability` is the product of point masses.
class ProfileIterator {
 public:
  explicit ProfileIterator(const Instance& instance);

  bool done() const { return done_; }
  void next();

  const std::vector<std::size_t>& indices() const { return idx_; }
  const std::vector<double>& values() const { return values_; }
  double probability() const;

 private:
  const Instance& instance_;
  std::vector<std::size_t> idx_;
  std::vector<double> values_;
  bool done_ = false;
};

}  // namespace revbound

#endif  // REVBOUND_INSTANCE_HPP_
