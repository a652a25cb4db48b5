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
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "revbound/distribution.hpp"
#include "revbound/exact.hpp"
#include "revbound/instance.hpp"
#include "revbound/myerson.hpp"
#include "revbound/position_auction.hpp"
#include "revbound/rng.hpp"

using namespace revbound;

namespace {

PaInstance fair_pair_positions(std::vector<double> alphas) {
  const Distribution d({1.0, 2.0}, {0.5, 0.5});
  return PaInstance{{d, d}, std::move(alphas)};
}

}  // namespace

TEST_SUITE_BEGIN("position_auction");

TEST_CASE("click feasibility: frozen witness and edge cases") {
  // alpha = (1, 0.5) cannot give both bidders 0.8 expected clicks:
  // 1.6 > 1.5 at cardinality 2.
  const PaFeasibilityResult bad = pa_feasible({0.8, 0.8}, {1.0, 0.5});
  CHECK_FALSE(bad.feasible);
  CHECK(bad.violated_cardinality == 2);
  CHECK(bad.lhs == doctest::Approx(1.6));
  CHECK(bad.rhs == doctest::Approx(1.5));

  // The identity assignment is feasible with every constraint tight.
  CHECK(pa_feasible({1.0, 0.5}, {1.0, 0.5}).feasible);
  // Permutations of alpha are feasible too.
  CHECK(pa_feasible({0.5, 1.0}, {1.0, 0.5}).feasible);
  // The zero vector is always feasible.
  CHECK(pa_feasible({0.0, 0.0}, {1.0, 0.5}).feasible);
  // Single coordinate above alpha_1 is not.
  CHECK_FALSE(pa_feasible({1.1, 0.0}, {1.0, 0.5}).feasible);
}

TEST_CASE("prefix check agrees with the exponential subset oracle") {
  Rng rng = make_rng(20260816);
  int infeasible_seen = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const std::size_t n = 2 + static_cast<std::size_t>(uniform01(rng) * 7.0);
    std::vector<double> alphas(n);
    double level = 1.0;
    for (double& a : alphas) {
      a = level;
      level *= 0.3 + 0.7 * uniform01(rng);
    }
    std::vector<double> clicks(n);
    for (double& x : clicks) x = 1.2 * uniform01(rng);
    const bool fast = pa_feasible(clicks, alphas).feasible;
    const bool slow = pa_feasible_by_subsets(clicks, alphas);
    REQUIRE(fast == slow);
    infeasible_seen += fast ? 0 : 1;
  }
  // The sample must exercise both outcomes to mean anything.
  CHECK(infeasible_seen > 100);
  CHECK(infeasible_seen < 9900);
}

TEST_CASE("degenerate click curves reduce to k-unit auctions") {
  // alpha = (1, 0): only layer 1 carries weight, so the position auction
  // is exactly the 1-unit auction.
  const PaInstance top_only = fair_pair_positions({1.0, 0.0});
  const PaSolver solver(top_only);
  const PaSolver::ExpectedOptimal opt = solver.expected_optimal();
  const Distribution d({1.0, 2.0}, {0.5, 0.5});
  const MyersonSolver one_unit(Instance{{d, d}, Feasibility::k_unit(1)});
  CHECK(opt.revenue == doctest::Approx(exact_opt(one_unit)));
  CHECK(opt.f[0] == doctest::Approx(1.0));
  CHECK(opt.f[1] == doctest::Approx(0.0));

  // Equal alphas: telescoping weights vanish except the last layer, so the
  // auction is alpha_1 times the n-unit auction.
  const PaInstance flat = fair_pair_positions({0.7, 0.7});
  const MyersonSolver two_unit(Instance{{d, d}, Feasibility::k_unit(2)});
  CHECK(PaSolver(flat).expected_optimal().revenue ==
        doctest::Approx(0.7 * exact_opt(two_unit)));
}

TEST_CASE("optimal revenue decomposes into weighted layer optima") {
  const PaInstance pa = fair_pair_positions({1.0, 0.5});
  const PaSolver solver(pa);
  const PaSolver::ExpectedOptimal opt = solver.expected_optimal();
  const std::vector<double> weights = pa.layer_weights();
  REQUIRE(weights.size() == 2);
  CHECK(weights[0] == doctest::Approx(0.5));
  CHECK(weights[1] == doctest::Approx(0.5));

  double composed = 0.0;
  double f_total = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const MyersonSolver layer(pa.layer_instance(static_cast<int>(j) + 1));
    CHECK(opt.layer_opt[j] == doctest::Approx(exact_opt(layer)));
    composed += weights[j] * opt.layer_opt[j];
    f_total += opt.f[j];
  }
  CHECK(opt.revenue == doctest::Approx(composed).epsilon(1e-12));
  CHECK(f_total == doctest::Approx(1.0).epsilon(1e-9));

  // Frozen values: layer optima are 1.5 and 2.5... computed below.
  CHECK(opt.layer_opt[0] == doctest::Approx(1.5));
  CHECK(opt.revenue ==
        doctest::Approx(0.5 * opt.layer_opt[0] + 0.5 * opt.layer_opt[1]));
}

TEST_CASE("per-profile outcomes compose by layer weights and nest") {
  const Distribution a({1.0, 2.0}, {0.5, 0.5});
  const Distribution b({1.0, 2.0, 10.0}, {0.45, 0.1, 0.45});
  const PaInstance pa{{a, b, a}, {1.0, 0.6, 0.1}};
  const PaSolver solver(pa);
  const std::vector<double> weights = pa.layer_weights();

  for (ProfileIterator it(Instance{pa.bidders, Feasibility::k_unit(1)});
       !it.done(); it.next()) {
    const PaOutcome out = solver.optimal_outcome(it.values());
    REQUIRE(out.layer_clicks.size() == pa.n());
    double revenue = 0.0;
    for (std::size_t i = 0; i < pa.n(); ++i) {
      double clicks = 0.0;
      double payment = 0.0;
      for (std::size_t j = 0; j < pa.n(); ++j) {
        // Layer click indicators are 0/1 and weakly increase with j.
        const double x_ij = out.layer_clicks[j][i];
        CHECK((x_ij == 0.0 || x_ij == 1.0));
        if (j > 0) CHECK(x_ij >= out.layer_clicks[j - 1][i]);
        clicks += weights[j] * x_ij;
        payment += weights[j] * out.layer_payments[j][i];
      }
      CHECK(out.clicks[i] == doctest::Approx(clicks).epsilon(1e-12));
      CHECK(out.payments[i] == doctest::Approx(payment).epsilon(1e-12));
      CHECK(out.payments[i] >= -1e-12);
      revenue += out.payments[i];
    }
    CHECK(out.revenue == doctest::Approx(revenue).epsilon(1e-12));
    CHECK(pa_feasible(out.clicks, pa.alphas).feasible);
  }
}

TEST_CASE("layered posted prices: click vectors stay feasible") {
  const Distribution a({1.0, 3.0}, {0.6, 0.4});
  const Distribution b({2.0, 5.0}, {0.5, 0.5});
  const PaInstance pa{{a, b}, {1.0, 0.4}};
  const PaSolver solver(pa);
  const PaSolver::SpmEstimate est = solver.spm_estimate(10000, 123);
  CHECK(est.trials == 10000);
  CHECK(est.feasibility_violations == 0);
  CHECK(pa_feasible(est.expected.clicks, pa.alphas).feasible);

  // The Monte Carlo revenue agrees with the exact layered evaluation.
  const double exact = solver.expected_spm_revenue();
  CHECK(std::abs(est.expected.revenue - exact) <=
        5.0 * est.revenue_std_error + 1e-12);

  // And the exact layered mechanism clears the composite guarantee with
  // the worst-case single-layer factor.
  const double opt = solver.expected_optimal().revenue;
  CHECK(exact >= 0.6543 * opt);
}

TEST_CASE("composite bound arithmetic and validation") {
  // Program values for layers 1 and 2 (1-unit and 2-unit).
  const std::vector<double> lp{1.528105359, 1.346677009};

  CHECK(pa_bound({1.0, 0.0}, lp) == doctest::Approx(0.654405).epsilon(1e-5));
  CHECK(pa_bound({0.0, 1.0}, lp) == doctest::Approx(0.742562).epsilon(1e-5));
  CHECK(pa_bound({0.5, 0.5}, lp) == doctest::Approx(0.698483).epsilon(1e-5));

  // Any f mixes the per-layer factors, so the result dominates the worst.
  CHECK(pa_bound({0.25, 0.75}, lp) >= 0.6543);

  CHECK_THROWS_AS(pa_bound({0.5, 0.4}, lp), std::invalid_argument);
  CHECK_THROWS_AS(pa_bound({1.5, -0.5}, lp), std::invalid_argument);
  CHECK_THROWS_AS(pa_bound({0.5, 0.5, 0.0}, lp), std::invalid_argument);
}

TEST_CASE("position instance validation") {
  const Distribution d({1.0, 2.0}, {0.5, 0.5});
  // Increasing alphas are rejected.
  CHECK_THROWS_AS((PaInstance{{d, d}, {0.5, 1.0}}.validate()),
                  std::invalid_argument);
  // Negative alphas are rejected.
  CHECK_THROWS_AS((PaInstance{{d, d}, {1.0, -0.1}}.validate()),
                  std::invalid_argument);
  // Length mismatch is rejected.
  CHECK_THROWS_AS((PaInstance{{d, d}, {1.0}}.validate()),
                  std::invalid_argument);
  // A valid instance passes.
  CHECK_NOTHROW((PaInstance{{d, d}, {1.0, 0.5}}.validate()));
}

TEST_SUITE_END();
