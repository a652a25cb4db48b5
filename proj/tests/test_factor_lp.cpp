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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "revbound/factor_lp.hpp"
#include "revbound/kernels.hpp"
#include "revbound/numerics.hpp"
#include "revbound/simplex.hpp"

using namespace revbound;

namespace {

// Guarantee factors of the continuous programs, double-checked against an
// independent quadrature + bisection evaluation before being frozen here.
constexpr double kFactorByH[10] = {
    0.654405, 0.742562, 0.785406, 0.811994, 0.830569,
    0.844497, 0.855445, 0.864346, 0.871770, 0.878085};

double solve_bound(const LpProblem& lp) {
  const LpSolution sol = solve_lp(lp);
  REQUIRE(sol.status == LpStatus::kOptimal);
  REQUIRE(sol.certified);
  return 1.0 / sol.objective;
}

}  // namespace

TEST_SUITE_BEGIN("factor_lp");

TEST_CASE("scalar kernels: closed forms and limits") {
  CHECK(kernel_f(0.0) == 0.0);
  CHECK(kernel_f(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-14));
  // The normalized form f(x)/x starts at 1 and decreases.
  CHECK(kernel_f(1e-9) / 1e-9 == doctest::Approx(1.0).epsilon(1e-6));
  double prev = 2.0;
  for (int i = 1; i <= 10000; ++i) {
    const double x = 10.0 * i / 10000.0;
    const double ratio = kernel_f(x) / x;
    CHECK(ratio < prev);
    prev = ratio;
  }

  CHECK(kernel_q_limit(0.3) == doctest::Approx(std::exp(-0.3)).epsilon(1e-15));
  CHECK(kernel_r_limit(0.3) ==
        doctest::Approx(2.3 * std::exp(-0.3)).epsilon(1e-15));

  CHECK(balanced_poisson_tail(1) ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(balanced_poisson_tail(2) ==
        doctest::Approx(2.0 * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("capped kernels: identity with the Poisson expectation") {
  for (const int H : {1, 2, 3, 5}) {
    for (const double x : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      // Direct expectation of min(Poisson(x), H), truncated far in the tail.
      const std::vector<double> pmf = poisson_pmf(x, 80);
      double expectation = 0.0;
      double mass = 0.0;
      for (std::size_t k = 0; k < pmf.size(); ++k) {
        expectation += std::min<double>(static_cast<double>(k), H) * pmf[k];
        mass += pmf[k];
      }
      expectation += H * (1.0 - mass);
      CHECK(kernel_f_H(H, x) == doctest::Approx(expectation).epsilon(1e-12));

      // Derivative identity against a central finite difference.
      const double h = 1e-6;
      const double fd =
          (kernel_f_H(H, x + h) - kernel_f_H(H, x - h)) / (2.0 * h);
      CHECK(kernel_f_H_derivative(H, x) == doctest::Approx(fd).epsilon(1e-6));
    }
    // H = 1 reduces to the basic kernel.
    CHECK(kernel_f_H(1, 0.77) == doctest::Approx(kernel_f(0.77)).epsilon(1e-14));
  }
}

TEST_CASE("finite-n kernels approach their limits from the right side") {
  for (const double y : {0.05, 0.25, 0.5, 0.75, 1.0}) {
    double prev_q = -1.0;
    for (const int n : {1, 2, 5, 20, 100, 10000}) {
      const double q = kernel_q_n(n, y);
      CHECK(q <= kernel_q_limit(y) + 1e-15);  // (1 - y/n)^n <= e^{-y}
      CHECK(q >= prev_q);                     // increasing in n
      prev_q = q;
    }
    CHECK(kernel_q_n(100000, y) ==
          doctest::Approx(kernel_q_limit(y)).epsilon(1e-4));
    CHECK(kernel_r_n(100000, y) ==
          doctest::Approx(kernel_r_limit(y)).epsilon(1e-4));
  }
  // One bidder, the whole quantile mass: the single event fires surely and
  // the second-price kernel still counts its reserve collection once.
  CHECK(kernel_r_n(1, 1.0) == 1.0);
}

TEST_CASE("continuous program: frozen solution of the 1-unit case") {
  const ContinuousBound bound = solve_lp_spm_continuous();
  CHECK(bound.H == 1);
  CHECK(bound.converged);
  CHECK(bound.evaluations > 0);
  CHECK(std::abs(bound.tau_star - 1.6957155359) <= 1e-6);
  CHECK(std::abs(bound.lp_value - 1.528105) <= 1e-5);
  CHECK(std::abs(bound.factor - 0.654405) <= 1e-5);
  CHECK(bound.baseline ==
        doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
  // Internal consistency: value = 1 + ln(tau*), factor = 1/value.
  CHECK(bound.lp_value ==
        doctest::Approx(1.0 + std::log(bound.tau_star)).epsilon(1e-9));
  CHECK(bound.factor == doctest::Approx(1.0 / bound.lp_value).epsilon(1e-12));
}

TEST_CASE("continuous program: frozen factors for 1..10 units") {
  for (int H = 1; H <= 10; ++H) {
    const ContinuousBound bound = solve_lp_spm_H(H);
    CHECK(bound.converged);
    CHECK(std::abs(bound.factor - kFactorByH[H - 1]) <= 1e-6);
    CHECK(bound.baseline ==
          doctest::Approx(1.0 - balanced_poisson_tail(H)).epsilon(1e-12));
    // The program strictly improves on the single-threshold baseline.
    CHECK(bound.factor > bound.baseline);
    // More units help: factors increase with H.
    if (H > 1) CHECK(bound.factor > kFactorByH[H - 2]);
  }
}

TEST_CASE("finite posted-price program: frozen bounds") {
  // One bidder: the final row pins sum w_i = 1, so the program value is 1.
  CHECK(solve_bound(build_lp_spm_n(1, 200)) == doctest::Approx(1.0).epsilon(1e-9));

  CHECK(std::abs(solve_bound(build_lp_spm_n(2, 200)) - 0.7584960237) <= 1e-8);
  CHECK(std::abs(solve_bound(build_lp_spm_n(2, 400)) - 0.7585755123) <= 1e-8);
  CHECK(std::abs(solve_bound(build_lp_spm_n(10, 200)) - 0.6706461062) <= 1e-8);
  CHECK(std::abs(solve_bound(build_lp_spm_n(10, 400)) - 0.6707751264) <= 1e-8);
}

TEST_CASE("finite eager-second-price programs: frozen bounds") {
  CHECK(std::abs(solve_bound(build_lp_esp(50)) - 0.6606445535) <= 1e-8);
  CHECK(std::abs(solve_bound(build_lp_esp(100)) - 0.6613313646) <= 1e-8);
  CHECK(std::abs(solve_bound(build_lp_esp(200)) - 0.6616701853) <= 1e-8);
  CHECK(std::abs(solve_bound(build_lp_esp(400)) - 0.6618393943) <= 1e-8);

  CHECK(std::abs(solve_bound(build_lp_esp_n(2, 200)) - 0.7609653828) <= 1e-8);
  CHECK(std::abs(solve_bound(build_lp_esp_n(2, 400)) - 0.7610616162) <= 1e-8);
  CHECK(std::abs(solve_bound(build_lp_esp_n(3, 200)) - 0.7207467704) <= 1e-8);
  CHECK(std::abs(solve_bound(build_lp_esp_n(3, 400)) - 0.7208710691) <= 1e-8);
}

TEST_CASE("discretization drift between k=200 and k=400 is small") {
  for (const int n : {2, 5, 10}) {
    const double a = solve_bound(build_lp_spm_n(n, 200));
    const double b = solve_bound(build_lp_spm_n(n, 400));
    CHECK(std::abs(a - b) <= 2e-3);
  }
  CHECK(std::abs(solve_bound(build_lp_esp(200)) -
                 solve_bound(build_lp_esp(400))) <= 2e-3);
}

TEST_CASE("bound ladder: second price >= posted price >= single threshold") {
  for (const int n : {2, 3, 10}) {
    const double spm = solve_bound(build_lp_spm_n(n, 200));
    const double esp = solve_bound(build_lp_esp_n(n, 200));
    CHECK(esp >= spm - 1e-9);
    CHECK(spm >= baseline_spm_n(n) - 1e-9);
  }
  CHECK(baseline_spm_n(1) == doctest::Approx(1.0));
  CHECK(baseline_spm_n(2) == doctest::Approx(0.75));
  CHECK(solve_bound(build_lp_esp(200)) >= 1.0 - std::exp(-1.0));
}

TEST_CASE("bound tables carry consistent rows") {
  const BoundTable multi = table_multiunit({1, 2});
  REQUIRE(multi.rows.size() == 2);
  CHECK(multi.which == "multiunit");
  CHECK(multi.rows[0].H == 1);
  CHECK(std::abs(multi.rows[0].bound - 0.654405) <= 1e-5);
  CHECK(std::abs(multi.rows[1].bound - 0.742562) <= 1e-5);
  for (const BoundRow& row : multi.rows) {
    CHECK(row.bound > 0.0);
    CHECK(row.bound <= 1.0);
    CHECK(row.bound == doctest::Approx(1.0 / row.lp_value).epsilon(1e-12));
    CHECK(row.baseline ==
          doctest::Approx(1.0 - balanced_poisson_tail(row.H)).epsilon(1e-12));
  }

  const BoundTable spm = table_spm_n({2}, {200, 400});
  REQUIRE(spm.rows.size() == 2);
  CHECK(spm.rows[0].n == 2);
  CHECK(spm.rows[0].k == 200);
  CHECK(std::abs(spm.rows[0].bound - 0.7584960237) <= 1e-8);
  CHECK(spm.rows[0].baseline == doctest::Approx(0.75));

  const BoundTable esp = table_esp_k({50});
  REQUIRE(esp.rows.size() == 1);
  CHECK(esp.rows[0].k == 50);
  CHECK(std::abs(esp.rows[0].bound - 0.6606445535) <= 1e-8);

  const BoundTable espn = table_esp_n({3}, {200});
  REQUIRE(espn.rows.size() == 1);
  CHECK(espn.rows[0].n == 3);
  CHECK(std::abs(espn.rows[0].bound - 0.7207467704) <= 1e-8);
}

TEST_CASE("partitioned markets inherit the weakest per-cap factor") {
  const double f1 = solve_lp_spm_H(1).factor;
  const double f2 = solve_lp_spm_H(2).factor;
  const double f3 = solve_lp_spm_H(3).factor;
  CHECK(partition_guarantee({1}) == doctest::Approx(f1).epsilon(1e-12));
  CHECK(partition_guarantee({1, 2}) == doctest::Approx(f1).epsilon(1e-12));
  CHECK(partition_guarantee({2, 3}) == doctest::Approx(f2).epsilon(1e-12));
  CHECK(partition_guarantee({3, 3}) == doctest::Approx(f3).epsilon(1e-12));
  CHECK_THROWS_AS(partition_guarantee({}), std::invalid_argument);
  CHECK_THROWS_AS(partition_guarantee({0}), std::invalid_argument);
}

TEST_CASE("kernel monotonicity harness passes and catches sabotage") {
  MonotoneCheckOptions options;
  options.n_max = 10;
  options.y_points = 200;
  const CheckResult ok = monotone_kernel_check(options);
  CHECK(ok.passed);
  CHECK(ok.cells_checked > 0);
  CHECK(ok.worst_violation <= 1e-9);

  // Negative control: a kernel that rises in y must be caught.
  MonotoneCheckOptions broken = options;
  broken.q_override = [](int, double y) { return 1.0 - y * y; };
  const CheckResult caught = monotone_kernel_check(broken);
  CHECK_FALSE(caught.passed);
  CHECK(caught.worst_violation > 0.0);
  CHECK_FALSE(caught.detail.empty());

  MonotoneCheckOptions flipped = options;
  flipped.r_override = [](int n, double y) { return -kernel_r_n(n, y); };
  CHECK_FALSE(monotone_kernel_check(flipped).passed);
}

TEST_CASE("balanced success masses maximize the capped-count objective") {
  PolynomialCheckOptions options;
  options.n_max = 4;
  options.H_max = 2;
  options.points_per_cell = 2000;
  const CheckResult result = polynomial_extremal_check(options);
  CHECK(result.passed);
  CHECK(result.cells_checked > 0);
  CHECK(result.worst_violation <= 1e-12);
}

TEST_CASE("simplex: textbook problems with certificates") {
  // max x + y  s.t.  x <= 1, y <= 2.
  LpProblem box;
  box.rows = 2;
  box.cols = 2;
  box.a = {1.0, 0.0, 0.0, 1.0};  // column-major
  box.b = {1.0, 2.0};
  box.c = {1.0, 1.0};
  const LpSolution sol = solve_lp(box);
  CHECK(sol.status == LpStatus::kOptimal);
  CHECK(sol.objective == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(sol.x[0] == doctest::Approx(1.0));
  CHECK(sol.x[1] == doctest::Approx(2.0));
  CHECK(sol.y[0] == doctest::Approx(1.0));
  CHECK(sol.y[1] == doctest::Approx(1.0));
  CHECK(sol.certified);
  CHECK(sol.duality_gap <= 1e-9);

  // max 3x + 2y  s.t.  x + y <= 4, x <= 2: optimum (2, 2), duals (2, 1).
  LpProblem mix;
  mix.rows = 2;
  mix.cols = 2;
  mix.a = {1.0, 1.0, 1.0, 0.0};
  mix.b = {4.0, 2.0};
  mix.c = {3.0, 2.0};
  const LpSolution mixed = solve_lp(mix);
  CHECK(mixed.objective == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(mixed.x[0] == doctest::Approx(2.0));
  CHECK(mixed.x[1] == doctest::Approx(2.0));
  CHECK(mixed.y[0] == doctest::Approx(2.0));
  CHECK(mixed.y[1] == doctest::Approx(1.0));
  CHECK(mixed.certified);

  // Degenerate duplicate rows do not trip the solver.
  LpProblem degenerate;
  degenerate.rows = 3;
  degenerate.cols = 2;
  degenerate.a = {1.0, 1.0, 0.0, 0.0, 0.0, 1.0};
  degenerate.b = {1.0, 1.0, 1.0};
  degenerate.c = {1.0, 1.0};
  const LpSolution deg = solve_lp(degenerate);
  CHECK(deg.status == LpStatus::kOptimal);
  CHECK(deg.objective == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(deg.certified);
}

TEST_CASE("simplex: unbounded rays, iteration limits, and validation") {
  LpProblem ray;
  ray.rows = 1;
  ray.cols = 1;
  ray.a = {0.0};
  ray.b = {1.0};
  ray.c = {1.0};
  const LpSolution unbounded = solve_lp(ray);
  CHECK(unbounded.status == LpStatus::kUnbounded);
  CHECK_FALSE(unbounded.certified);

  LpProblem box;
  box.rows = 2;
  box.cols = 2;
  box.a = {1.0, 0.0, 0.0, 1.0};
  box.b = {1.0, 2.0};
  box.c = {1.0, 1.0};
  const LpSolution cut_short = solve_lp(box, /*max_iterations=*/1);
  CHECK(cut_short.status == LpStatus::kIterationLimit);
  CHECK_FALSE(cut_short.certified);

  LpProblem bad = box;
  bad.b = {-1.0, 2.0};
  CHECK_THROWS_AS(solve_lp(bad), std::invalid_argument);
  LpProblem empty;
  CHECK_THROWS_AS(solve_lp(empty), std::invalid_argument);
}

TEST_SUITE_END();
