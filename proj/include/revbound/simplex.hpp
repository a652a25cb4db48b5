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

#ifndef REVBOUND_SIMPLEX_HPP_
#define REVBOUND_SIMPLEX_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace revbound {

// Linear program in the canonical inequality form
//     maximize    c' x
//     subject to  A x <= b,  x >= 0,
// with b >= 0 so the slack basis is primal feasible.
struct LpProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // column-major: a[j * rows + r]
  std::vector<double> b;
  std::vector<double> c;
  std::string name;

  double& at(std::size_t r, std::size_t j) { return a[j * rows + r]; }
  double at(std::size_t r, std::size_t j) const { return a[j * rows + r]; }
};

enum class LpStatus { kOptimal, kIterationLimit, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kOptimal;
  double objective = 0.0;
  std::vector<double> x;  // primal solution, length cols
  std::vector<double> y;  // dual solution (one multiplier per row)
  int iterations = 0;

  // Certificate quantities, filled in by the solver:
  double max_primal_violation = 0.0;  // max over rows of (Ax - b)_r and -x_j
  double max_dual_violation = 0.0;    // max reduced cost / negative dual
  double duality_gap = 0.0;           // |c'x - b'y|
  bool certified = false;             // all three within tolerance
};

// Dense revised primal simplex with an explicit basis inverse.  Dantzig
// pricing with a Bland fallback after a run of degenerate pivots, periodic
// refactorization of the basis inverse, and an optimality certificate via
// the dual solution.  Deterministic: no randomization anywhere.
LpSolution solve_lp(const LpProblem& problem, int max_iterations = 0);

}  // namespace revbound

#endif  // REVBOUND_SIMPLEX_HPP_
