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

#ifndef REVBOUND_KERNELS_HPP_
#define REVBOUND_KERNELS_HPP_

namespace revbound {

// Scalar kernels underlying the factor-revealing programs.  Throughout,
// y is a cumulative quantile mass in [0, n] and n the number of bidders.

// kernel_f(x) = 1 - e^{-x}: limiting probability that at least one of many
// independent small-probability events fires when their rates sum to x.
double kernel_f(double x);

// kernel_f_H(H, x) = E[min(Poisson(x), H)]
//                  = H - sum_{i=0}^{H-1} (H - i) P[Poisson(x) = i].
// Equals kernel_f for H = 1.  Its derivative in x is P[Poisson(x) <= H-1].
double kernel_f_H(int H, double x);

// d/dx kernel_f_H(H, x) = P[Poisson(x) <= H - 1].
double kernel_f_H_derivative(int H, double x);

// kernel_q_n(n, y) = (1 - y/n)^n: probability that none of n independent
// events of total mass y fires.  Decreasing in y; tends to e^{-y}.
double kernel_q_n(int n, double y);

// kernel_r_n(n, y) = 2 (1 - y/n)^n + y (1 - y/n)^{n-1}: twice the
// no-event probability plus the single-event correction used by the
// second-price rows.  Tends to 2 e^{-y} + y e^{-y}.
double kernel_r_n(int n, double y);

// Limits of q_n and r_n as n grows: e^{-y} and (2 + y) e^{-y}.
double kernel_q_limit(double y);
double kernel_r_limit(double y);

// H^H / (H! e^H): the H-unit analogue of 1/e that calibrates the
// continuous program's target mass.  Computed in the log domain.
double balanced_poisson_tail(int H);

}  // namespace revbound

#endif  // REVBOUND_KERNELS_HPP_
