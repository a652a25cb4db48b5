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
#include "revbound/kernels.hpp"
#include "revbound/numerics.hpp"
#include "revbound/rng.hpp"

using namespace revbound;

TEST_SUITE_BEGIN("numerics");

TEST_CASE("ipow matches repeated multiplication") {
  CHECK(ipow(2.0, 10) == 1024.0);
  CHECK(ipow(7.5, 0) == 1.0);
  CHECK(ipow(-3.0, 3) == -27.0);
  CHECK(ipow(0.0, 0) == 1.0);
  CHECK(ipow(0.5, 4) == doctest::Approx(0.0625).epsilon(1e-15));
}

TEST_CASE("quadrature integrates smooth functions to tight tolerance") {
  const auto cubic = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(cubic.converged);
  CHECK(cubic.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  const auto sine = integrate([](double x) { return std::sin(x); }, 0.0,
                              std::acos(-1.0), 1e-12);
  CHECK(sine.converged);
  CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-12));

  // 1/x over [1, e] has integral 1 and tests panel subdivision.
  const auto log_like =
      integrate([](double x) { return 1.0 / x; }, 1.0, std::exp(1.0), 1e-12);
  CHECK(log_like.converged);
  CHECK(log_like.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(log_like.evaluations > 0);
}

TEST_CASE("quadrature handles reversed and empty ranges") {
  const auto empty = integrate([](double) { return 5.0; }, 2.0, 2.0, 1e-10);
  CHECK(empty.value == doctest::Approx(0.0));
}

TEST_CASE("bisection finds bracketed roots and rejects non-brackets") {
  const auto root =
      bisect([](double x) { return std::cos(x); }, 0.0, 2.0, 1e-12);
  CHECK(root.converged);
  CHECK(root.x == doctest::Approx(std::acos(-1.0) / 2.0).epsilon(1e-11));

  CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("newton polish sharpens a coarse root") {
  const auto f = [](double x) { return x * x - 2.0; };
  const auto df = [](double x) { return 2.0 * x; };
  const auto polished = newton_polish(f, df, 1.4, 1.0, 2.0, 1e-14);
  CHECK(polished.converged);
  CHECK(polished.x == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("isotonic decreasing projection pools violators") {
  // Already nonincreasing: unchanged.
  const std::vector<double> sorted{3.0, 2.0, 2.0, 1.0};
  CHECK(isotonic_decreasing(sorted) == sorted);

  // One violating pair pools to its mean.
  const std::vector<double> fit = isotonic_decreasing({1.0, 3.0, 2.0});
  REQUIRE(fit.size() == 3);
  CHECK(fit[0] == doctest::Approx(2.0));
  CHECK(fit[1] == doctest::Approx(2.0));
  CHECK(fit[2] == doctest::Approx(2.0));

  const std::vector<double> fit2 = isotonic_decreasing({3.0, 1.0, 2.0});
  CHECK(fit2[0] == doctest::Approx(3.0));
  CHECK(fit2[1] == doctest::Approx(1.5));
  CHECK(fit2[2] == doctest::Approx(1.5));
}

TEST_CASE("isotonic projection is monotone and mean-preserving") {
  Rng rng = make_rng(123);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> y(20);
    double mean = 0.0;
    for (double& v : y) {
      v = uniform01(rng);
      mean += v;
    }
    const std::vector<double> fit = isotonic_decreasing(y);
    double fit_mean = 0.0;
    for (std::size_t i = 0; i + 1 < fit.size(); ++i) {
      CHECK(fit[i] >= fit[i + 1] - 1e-12);
    }
    for (double v : fit) fit_mean += v;
    CHECK(fit_mean == doctest::Approx(mean).epsilon(1e-12));
    // Idempotent.
    CHECK(isotonic_decreasing(fit) == fit);
  }
}

TEST_CASE("poisson pmf and cdf match closed forms") {
  const std::vector<double> pmf = poisson_pmf(2.0, 6);
  REQUIRE(pmf.size() == 7);
  double factorial = 1.0;
  for (int i = 0; i <= 6; ++i) {
    if (i > 0) factorial *= i;
    CHECK(pmf[static_cast<std::size_t>(i)] ==
          doctest::Approx(std::exp(-2.0) * ipow(2.0, i) / factorial)
              .epsilon(1e-13));
  }
  CHECK(poisson_cdf(2.0, 3) ==
        doctest::Approx(pmf[0] + pmf[1] + pmf[2] + pmf[3]).epsilon(1e-13));
  // P[Pois(5) = 5] = 5^5 e^-5 / 5!  (the "balanced" tail mass).
  CHECK(poisson_pmf(5.0, 5).back() ==
        doctest::Approx(0.17546736976785068).epsilon(1e-12));
  CHECK(balanced_poisson_tail(5) ==
        doctest::Approx(0.17546736976785068).epsilon(1e-12));
}

namespace {

// Oracle: Poisson-binomial pmf by explicit subset enumeration.
std::vector<double> subset_pmf(const std::vector<double>& p) {
  std::vector<double> pmf(p.size() + 1, 0.0);
  const std::size_t n = p.size();
  for (std::size_t mask = 0; mask < (1u << n); ++mask) {
    double prob = 1.0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        prob *= p[i];
        ++count;
      } else {
        prob *= 1.0 - p[i];
      }
    }
    pmf[static_cast<std::size_t>(count)] += prob;
  }
  return pmf;
}

}  // namespace

TEST_CASE("poisson binomial pmf matches subset enumeration") {
  const std::vector<double> fair = poisson_binomial_pmf({0.5, 0.5});
  REQUIRE(fair.size() == 3);
  CHECK(fair[0] == doctest::Approx(0.25));
  CHECK(fair[1] == doctest::Approx(0.5));
  CHECK(fair[2] == doctest::Approx(0.25));

  Rng rng = make_rng(99);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> p(4);
    for (double& v : p) v = uniform01(rng);
    const std::vector<double> fast = poisson_binomial_pmf(p);
    const std::vector<double> slow = subset_pmf(p);
    REQUIRE(fast.size() == slow.size());
    double total = 0.0;
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-12));
      total += fast[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("expected_min_count truncates the count at the cap") {
  // Two fair coins: E[min(Z,1)] = P[Z >= 1] = 3/4; E[min(Z,2)] = E[Z] = 1.
  CHECK(expected_min_count({0.5, 0.5}, 1) == doctest::Approx(0.75));
  CHECK(expected_min_count({0.5, 0.5}, 2) == doctest::Approx(1.0));
  // Cap larger than n behaves like plain expectation.
  CHECK(expected_min_count({0.2, 0.7}, 5) == doctest::Approx(0.9));
}

TEST_CASE("ks statistic on tiny frozen samples") {
  const KsResult same = ks_two_sample({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0});
  CHECK(same.statistic == doctest::Approx(0.0));
  CHECK_FALSE(same.reject);

  std::vector<double> low(100), high(100);
  for (int i = 0; i < 100; ++i) {
    low[static_cast<std::size_t>(i)] = 1.0 + 0.01 * i;
    high[static_cast<std::size_t>(i)] = 5.0 + 0.01 * i;
  }
  const KsResult far = ks_two_sample(low, high);
  CHECK(far.statistic == doctest::Approx(1.0));
  CHECK(far.reject);

  const KsResult half = ks_two_sample({1.0, 2.0}, {1.5});
  CHECK(half.statistic == doctest::Approx(0.5));
}

TEST_CASE("ks accepts two streams of the same discrete sampler") {
  Rng rng_a = make_rng(derive_seed(5, 0));
  Rng rng_b = make_rng(derive_seed(5, 1));
  std::vector<double> a(4000), b(4000);
  for (double& v : a) v = uniform01(rng_a) < 0.5 ? 1.0 : 2.0;
  for (double& v : b) v = uniform01(rng_b) < 0.5 ? 1.0 : 2.0;
  CHECK_FALSE(ks_two_sample(a, b).reject);
}

TEST_SUITE_END();
