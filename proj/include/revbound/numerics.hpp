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

#ifndef REVBOUND_NUMERICS_HPP_
#define REVBOUND_NUMERICS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

namespace revbound {

// Integer power by repeated squaring.  Used instead of std::pow for kernel
// evaluation so that results do not depend on the platform's libm.
double ipow(double base, int exp);

// ---------------------------------------------------------------------------
// Adaptive quadrature (Gauss-Kronrod 7/15 with interval bisection).

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;  // accumulated |K15 - G7| over accepted panels
  int evaluations = 0;
  bool converged = false;
};

// Integrates f over [a, b] to absolute tolerance abs_tol.  Panels are split
// until the local Kronrod-Gauss discrepancy falls below the local budget.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol = 1e-10);

// ---------------------------------------------------------------------------
// Root finding.

struct RootResult {
  double x = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Bisection on [lo, hi]; requires f(lo) and f(hi) of opposite sign.
RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  double x_tol = 1e-10, int max_iter = 200);

// A few Newton steps starting from x0, used to polish a bisection root when
// the derivative is available.  Falls back to x0 if a step leaves [lo, hi].
RootResult newton_polish(const std::function<double(double)>& f,
                         const std::function<double(double)>& df, double x0,
                         double lo, double hi, double f_tol = 1e-9,
                         int max_iter = 40);

// ---------------------------------------------------------------------------
// Isotonic regression (pool-adjacent-violators).

// Returns the least-squares projection of y onto nonincreasing sequences.
std::vector<double> isotonic_decreasing(const std::vector<double>& y);

// ---------------------------------------------------------------------------
// Poisson and Poisson-binomial utilities.

// pmf[i] = P[Poisson(x) = i] for i = 0..max_i, computed by the stable
// forward recurrence pmf_0 = e^-x, pmf_i = pmf_{i-1} * x / i.
std::vector<double> poisson_pmf(double x, int max_i);

// P[Poisson(x) <= m].
double poisson_cdf(double x, int m);

// pmf[s] = P[sum of independent Bernoulli(p_i) = s], s = 0..n, by the
// standard O(n^2) convolution.
std::vector<double> poisson_binomial_pmf(const std::vector<double>& p);

// E[min(Z, cap)] for Z ~ PoissonBinomial(p) = sum_{h=1..cap} P[Z >= h].
double expected_min_count(const std::vector<double>& p, int cap);

// ---------------------------------------------------------------------------
// Two-sample Kolmogorov-Smirnov test.

struct KsResult {
  double statistic = 0.0;  // sup-norm distance between empirical CDFs
  double threshold = 0.0;  // c(alpha) * sqrt((m + n) / (m * n))
  bool reject = false;
};

// Compares two samples at significance alpha in {0.05, 0.01, 0.001}.
// Infinite sample values are allowed and handled as a shared top atom.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                       double alpha = 0.01);

}  // namespace revbound

#endif  // REVBOUND_NUMERICS_HPP_
