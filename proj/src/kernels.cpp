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

#include "revbound/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "revbound/numerics.hpp"

namespace revbound {

namespace {

void check_nH(int n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + " must be >= 1");
}

}  // namespace

double kernel_f(double x) {
  // 1 - e^{-x} with expm1 to keep full precision near zero.
  return -std::expm1(-x);
}

double kernel_f_H(int H, double x) {
  check_nH(H, "kernel_f_H: H");
  const std::vector<double> pmf = poisson_pmf(x, H - 1);
  double acc = static_cast<double>(H);
  for (int i = 0; i < H; ++i) {
    acc -= static_cast<double>(H - i) * pmf[static_cast<std::size_t>(i)];
  }
  return acc;
}

double kernel_f_H_derivative(int H, double x) {
  check_nH(H, "kernel_f_H_derivative: H");
  return poisson_cdf(x, H - 1);
}

double kernel_q_n(int n, double y) {
  check_nH(n, "kernel_q_n: n");
  const double base = 1.0 - y / static_cast<double>(n);
  if (base <= 0.0) return 0.0;
  return ipow(base, n);
}

double kernel_r_n(int n, double y) {
  check_nH(n, "kernel_r_n: n");
  // Clamp below y = n so the polynomial's domain extension stays
  // nonnegative; at base = 0 the second term is y * 0^(n-1), which is y
  // itself when n = 1 (0^0 = 1), so the clamp must not short-circuit it.
  const double base = std::max(0.0, 1.0 - y / static_cast<double>(n));
  return 2.0 * ipow(base, n) + y * ipow(base, n - 1);
}

double kernel_q_limit(double y) { return std::exp(-y); }

double kernel_r_limit(double y) { return (2.0 + y) * std::exp(-y); }

double balanced_poisson_tail(int H) {
  check_nH(H, "balanced_poisson_tail: H");
  const double h = static_cast<double>(H);
  return std::exp(h * std::log(h) - std::lgamma(h + 1.0) - h);
}

}  // namespace revbound
