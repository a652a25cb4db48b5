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

#include "revbound/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace revbound {

double ipow(double base, int exp) {
  if (exp < 0) return 1.0 / ipow(base, -exp);
  double result = 1.0;
  double acc = base;
  while (exp > 0) {
    if (exp & 1) result *= acc;
    acc *= acc;
    exp >>= 1;
  }
  return result;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct PanelEstimate {
  double kronrod;
  double gauss;
};

PanelEstimate evaluate_panel(const std::function<double(double)>& f, double a,
                             double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double fv[15];
  for (int i = 0; i < 7; ++i) {
    fv[i] = f(center - half * kXgk[i]);
    fv[14 - i] = f(center + half * kXgk[i]);
  }
  fv[7] = f(center);
  double k15 = kWgk[7] * fv[7];
  for (int i = 0; i < 7; ++i) {
    k15 += kWgk[i] * (fv[i] + fv[14 - i]);
  }
  // The even Kronrod nodes (indices 1, 3, 5, 7 in kXgk) are the Gauss nodes.
  double g7 = kWg[3] * fv[7];
  for (int i = 0; i < 3; ++i) {
    g7 += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
  }
  return {half * k15, half * g7};
}

void integrate_panel(const std::function<double(double)>& f, double a,
                     double b, double tol, int depth, QuadratureResult* out) {
  PanelEstimate est = evaluate_panel(f, a, b);
  out->evaluations += 15;
  const double err = std::fabs(est.kronrod - est.gauss);
  if (err <= tol || depth >= 52) {
    out->value += est.kronrod;
    out->error_estimate += err;
    if (err > tol) out->converged = false;
    return;
  }
  const double mid = 0.5 * (a + b);
  integrate_panel(f, a, mid, 0.5 * tol, depth + 1, out);
  integrate_panel(f, mid, b, 0.5 * tol, depth + 1, out);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double abs_tol) {
  QuadratureResult out;
  out.converged = true;
  if (a == b) return out;
  integrate_panel(f, a, b, abs_tol, 0, &out);
  return out;
}

RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  double x_tol, int max_iter) {
  RootResult out;
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0, true};
  if (fhi == 0.0) return {hi, 0, true};
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw std::invalid_argument("bisect: interval does not bracket a root");
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    ++out.iterations;
    if (fmid == 0.0 || hi - lo < x_tol) {
      out.x = mid;
      out.converged = true;
      return out;
    }
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  out.x = 0.5 * (lo + hi);
  out.converged = (hi - lo) < x_tol;
  return out;
}

RootResult newton_polish(const std::function<double(double)>& f,
                         const std::function<double(double)>& df, double x0,
                         double lo, double hi, double f_tol, int max_iter) {
  RootResult out;
  double x = x0;
  for (int i = 0; i < max_iter; ++i) {
    const double fx = f(x);
    ++out.iterations;
    if (std::fabs(fx) <= f_tol) {
      out.x = x;
      out.converged = true;
      return out;
    }
    const double d = df(x);
    if (d == 0.0) break;
    const double next = x - fx / d;
    if (!(next >= lo && next <= hi)) break;
    if (next == x) {
      out.x = x;
      out.converged = true;
      return out;
    }
    x = next;
  }
  out.x = x;
  out.converged = std::fabs(f(x)) <= f_tol;
  return out;
}

std::vector<double> isotonic_decreasing(const std::vector<double>& y) {
  // PAV on the reversed sequence gives a nondecreasing fit; reverse again.
  const std::size_t n = y.size();
  std::vector<double> level(n), weight(n);
  std::vector<std::size_t> count(n);
  std::size_t blocks = 0;
  for (std::size_t r = 0; r < n; ++r) {
    level[blocks] = y[n - 1 - r];
    weight[blocks] = 1.0;
    count[blocks] = 1;
    ++blocks;
    while (blocks >= 2 && level[blocks - 2] > level[blocks - 1]) {
      const double w = weight[blocks - 2] + weight[blocks - 1];
      level[blocks - 2] =
          (weight[blocks - 2] * level[blocks - 2] +
           weight[blocks - 1] * level[blocks - 1]) /
          w;
      weight[blocks - 2] = w;
      count[blocks - 2] += count[blocks - 1];
      --blocks;
    }
  }
  std::vector<double> fit(n);
  std::size_t pos = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t i = 0; i < count[b]; ++i) fit[pos++] = level[b];
  }
  std::reverse(fit.begin(), fit.end());
  return fit;
}

std::vector<double> poisson_pmf(double x, int max_i) {
  std::vector<double> pmf(static_cast<std::size_t>(max_i) + 1);
  pmf[0] = std::exp(-x);
  for (int i = 1; i <= max_i; ++i) {
    pmf[static_cast<std::size_t>(i)] =
        pmf[static_cast<std::size_t>(i) - 1] * x / static_cast<double>(i);
  }
  return pmf;
}

double poisson_cdf(double x, int m) {
  if (m < 0) return 0.0;
  const std::vector<double> pmf = poisson_pmf(x, m);
  double total = 0.0;
  for (double v : pmf) total += v;
  return std::min(total, 1.0);
}

std::vector<double> poisson_binomial_pmf(const std::vector<double>& p) {
  std::vector<double> pmf{1.0};
  pmf.reserve(p.size() + 1);
  for (double pi : p) {
    pmf.push_back(0.0);
    for (std::size_t s = pmf.size() - 1; s > 0; --s) {
      pmf[s] = pmf[s] * (1.0 - pi) + pmf[s - 1] * pi;
    }
    pmf[0] *= (1.0 - pi);
  }
  return pmf;
}

double expected_min_count(const std::vector<double>& p, int cap) {
  const std::vector<double> pmf = poisson_binomial_pmf(p);
  // E[min(Z, cap)] = sum_{h=1..cap} P[Z >= h].
  double total = 0.0;
  double tail = 1.0;  // P[Z >= h], starting at h = 0 with value 1
  for (int h = 1; h <= cap; ++h) {
    tail -= pmf[static_cast<std::size_t>(h) - 1];
    if (tail < 0.0) tail = 0.0;
    total += tail;
  }
  return total;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b,
                       double alpha) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() && ib < b.size()) {
    const double x = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= x) ++ia;
    while (ib < b.size() && b[ib] <= x) ++ib;
    d = std::max(d, std::fabs(static_cast<double>(ia) / na -
                              static_cast<double>(ib) / nb));
  }
  double c;
  if (alpha == 0.05) {
    c = 1.358;
  } else if (alpha == 0.01) {
    c = 1.628;
  } else if (alpha == 0.001) {
    c = 1.949;
  } else {
    throw std::invalid_argument("ks_two_sample: unsupported alpha");
  }
  KsResult out;
  out.statistic = d;
  out.threshold = c * std::sqrt((na + nb) / (na * nb));
  out.reject = d > out.threshold;
  return out;
}

}  // namespace revbound
