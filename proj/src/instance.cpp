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

#include "revbound/instance.hpp"

#include <algorithm>
#include <string>

namespace revbound {

Feasibility Feasibility::partition(
    std::vector<std::vector<std::size_t>> groups, std::vector<int> caps) {
  Feasibility f;
  f.kind = Kind::kPartition;
  f.groups = std::move(groups);
  f.caps = std::move(caps);
  if (f.groups.size() != f.caps.size()) {
    throw std::invalid_argument(
        "feasibility: partition has " + std::to_string(f.groups.size()) +
        " groups but " + std::to_string(f.caps.size()) + " caps");
  }
  for (std::size_t g = 0; g < f.caps.size(); ++g) {
    if (f.caps[g] < 1) {
      throw std::invalid_argument("feasibility: caps[" + std::to_string(g) +
                                  "] must be >= 1");
    }
    if (f.groups[g].empty()) {
      throw std::invalid_argument("feasibility: groups[" + std::to_string(g) +
                                  "] is empty");
    }
  }
  return f;
}

void Feasibility::validate_partition(std::size_t n) const {
  if (kind != Kind::kPartition) return;
  std::vector<bool> seen(n, false);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t i : groups[g]) {
      if (i >= n) {
        throw std::invalid_argument("feasibility: groups[" +
                                    std::to_string(g) + "] refers to bidder " +
                                    std::to_string(i) + " but n = " +
                                    std::to_string(n));
      }
      if (seen[i]) {
        throw std::invalid_argument("feasibility: bidder " +
                                    std::to_string(i) +
                                    " appears in two groups");
      }
      seen[i] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) {
      throw std::invalid_argument("feasibility: bidder " + std::to_string(i) +
                                  " is in no group");
    }
  }
}

bool Feasibility::feasible(const std::vector<std::size_t>& set) const {
  if (kind == Kind::kKUnit) {
    return static_cast<int>(set.size()) <= cap;
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    int count = 0;
    for (std::size_t i : set) {
      if (std::find(groups[g].begin(), groups[g].end(), i) !=
          groups[g].end()) {
        ++count;
      }
    }
    if (count > caps[g]) return false;
  }
  return true;
}

std::vector<double> Instance::support_union() const {
  std::vector<double> all;
  for (const Distribution& d : bidders) {
    all.insert(all.end(), d.support().begin(), d.support().end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

ProfileIterator::ProfileIterator(const Instance& instance)
    : instance_(instance),
      idx_(instance.n(), 0),
      values_(instance.n()) {
  if (instance_.n() == 0) {
    done_ = true;
    return;
  }
  for (std::size_t i = 0; i < instance_.n(); ++i) {
    values_[i] = instance_.bidders[i].support()[0];
  }
}

void ProfileIterator::next() {
  for (std::size_t i = instance_.n(); i-- > 0;) {
    if (idx_[i] + 1 < instance_.bidders[i].size()) {
      ++idx_[i];
      values_[i] = instance_.bidders[i].support()[idx_[i]];
      return;
    }
    idx_[i] = 0;
    values_[i] = instance_.bidders[i].support()[0];
  }
  done_ = true;
}

double ProfileIterator::probability() const {
  double p = 1.0;
  for (std::size_t i = 0; i < instance_.n(); ++i) {
    p *= instance_.bidders[i].probs()[idx_[i]];
  }
  return p;
}

}  // namespace revbound
