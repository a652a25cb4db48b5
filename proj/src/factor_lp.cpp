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

#include "revbound/factor_lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "revbound/kernels.hpp"
#include "revbound/numerics.hpp"
#include "revbound/rng.hpp"

namespace revbound {

namespace {

void check_nk(int n, int k) {
  if (n < 1) throw std::invalid_argument("factor program: n must be >= 1");
  if (k < 2) throw std::invalid_argument("factor program: k must be >= 2");
}

ContinuousBound solve_continuous(int H) {
  if (H < 1) throw std::invalid_argument("solve_lp_spm_H: H must be >= 1");
  ContinuousBound out;
  out.H = H;
  out.baseline = baseline_multiunit(H);
  const double target = balanced_poisson_tail(H);  // H^H / (H! e^H)
  const double lo = 1.0 / static_cast<double>(H);
  int evals = 0;
  const auto integrand = [H, &evals](double t) {
    ++evals;
    return kernel_f_H(H, 1.0 / t);
  };
  // g(tau) = integral_lo^tau fH(1/t) dt - target, increasing in tau.
  const auto g = [&](double tau) {
    return integrate(integrand, lo, tau, 1e-12).value - target;
  };
  double hi = lo + 1.0;
  while (g(hi) < 0.0) {
    hi += 1.0;
    if (hi > 64.0) throw std::runtime_error("solve_lp_spm_H: no bracket");
  }
  const RootResult root = bisect(g, lo, hi, 1e-10);
  // Polish with Newton: g'(tau) is just the integrand at tau.
  const RootResult polished = newton_polish(
      g, [&](double tau) { return integrand(tau); }, root.x, lo, hi, 1e-12);
  out.tau_star = polished.converged ? polished.x : root.x;
  out.converged = root.converged || polished.converged;
  out.evaluations = evals;
  out.lp_value = 1.0 + std::log(static_cast<double>(H) * out.tau_star);
  out.factor = 1.0 / out.lp_value;
  return out;
}

}  // namespace

ContinuousBound solve_lp_spm_continuous() { return solve_continuous(1); }

ContinuousBound solve_lp_spm_H(int H) { return solve_continuous(H); }

LpProblem build_lp_spm_n(int n, int k) {
  check_nk(n, k);
  LpProblem p;
  p.name = "spm-n n=" + std::to_string(n) + " k=" + std::to_string(k);
  p.rows = static_cast<std::size_t>(k);
  p.cols = static_cast<std::size_t>(k);
  p.a.assign(p.rows * p.cols, 0.0);
  p.b.assign(p.rows, 1.0);
  p.c.assign(p.cols, 1.0);
  const double kd = static_cast<double>(k);
  for (int i = 1; i <= k; ++i) {
    const double si = static_cast<double>(i) / kd;
    const std::size_t col = static_cast<std::size_t>(i - 1);
    // Rows j = 1..k-1 (indices 0..k-2): price level s_j collects s_j/s_i
    // from every higher quantile level i > j.
    for (int j = 1; j < i; ++j) {
      const double sj = static_cast<double>(j) / kd;
      p.at(static_cast<std::size_t>(j - 1), col) = sj / si;
    }
    // Final row: the uniform-threshold constraint with the n-bidder
    // no-sale kernel.
    p.at(p.rows - 1, col) = (1.0 - kernel_q_n(n, si)) / si;
  }
  return p;
}

namespace {

LpProblem build_esp_core(int k, const std::function<double(double)>& q,
                         const std::function<double(double)>& r,
                         std::string name) {
  LpProblem p;
  p.name = std::move(name);
  p.rows = static_cast<std::size_t>(k) + 1;
  p.cols = static_cast<std::size_t>(k);
  p.a.assign(p.rows * p.cols, 0.0);
  p.b.assign(p.rows, 2.0);
  p.b[p.rows - 1] = 1.0;
  p.c.assign(p.cols, 1.0);
  const double kd = static_cast<double>(k);
  for (int i = 1; i <= k; ++i) {
    const double si = static_cast<double>(i) / kd;
    const std::size_t col = static_cast<std::size_t>(i - 1);
    const double competition = (2.0 - r(si)) / si;  // applies to rows j >= i
    const double qi = q(si);
    for (int j = 1; j <= k; ++j) {
      const double sj = static_cast<double>(j) / kd;
      p.at(static_cast<std::size_t>(j - 1), col) =
          j >= i ? competition : (sj + 1.0 - qi) / si;
    }
    p.at(p.rows - 1, col) = (1.0 - qi) / si;
  }
  return p;
}

}  // namespace

LpProblem build_lp_esp(int k) {
  check_nk(2, k);
  return build_esp_core(
      k, [](double y) { return kernel_q_limit(y); },
      [](double y) { return kernel_r_limit(y); },
      "esp k=" + std::to_string(k));
}

LpProblem build_lp_esp_n(int n, int k) {
  check_nk(n, k);
  return build_esp_core(
      k, [n](double y) { return kernel_q_n(n, y); },
      [n](double y) { return kernel_r_n(n, y); },
      "esp-n n=" + std::to_string(n) + " k=" + std::to_string(k));
}

double baseline_spm_n(int n) {
  if (n < 1) throw std::invalid_argument("baseline_spm_n: n must be >= 1");
  return 1.0 - ipow(1.0 - 1.0 / static_cast<double>(n), n);
}

double baseline_multiunit(int H) { return 1.0 - balanced_poisson_tail(H); }

namespace {

BoundRow solved_row(const LpProblem& problem) {
  const LpSolution sol = solve_lp(problem);
  if (sol.status != LpStatus::kOptimal || !sol.certified) {
    throw std::runtime_error("bound table: solver failed to certify '" +
                             problem.name + "'");
  }
  BoundRow row;
  row.lp_value = sol.objective;
  row.bound = 1.0 / sol.objective;
  return row;
}

}  // namespace

BoundTable table_multiunit(const std::vector<int>& Hs) {
  BoundTable t;
  t.which = "multiunit";
  for (int H : Hs) {
    const ContinuousBound cb = solve_lp_spm_H(H);
    BoundRow row;
    row.H = H;
    row.lp_value = cb.lp_value;
    row.bound = cb.factor;
    row.baseline = cb.baseline;
    t.rows.push_back(row);
  }
  return t;
}

BoundTable table_spm_n(const std::vector<int>& ns,
                       const std::vector<int>& ks) {
  BoundTable t;
  t.which = "spm-n";
  for (int n : ns) {
    for (int k : ks) {
      BoundRow row = solved_row(build_lp_spm_n(n, k));
      row.n = n;
      row.k = k;
      row.baseline = baseline_spm_n(n);
      t.rows.push_back(row);
    }
  }
  return t;
}

BoundTable table_esp_k(const std::vector<int>& ks) {
  BoundTable t;
  t.which = "esp-k";
  for (int k : ks) {
    BoundRow row = solved_row(build_lp_esp(k));
    row.k = k;
    row.baseline = 1.0 - std::exp(-1.0);
    t.rows.push_back(row);
  }
  return t;
}

BoundTable table_esp_n(const std::vector<int>& ns,
                       const std::vector<int>& ks) {
  BoundTable t;
  t.which = "esp-n";
  for (int n : ns) {
    for (int k : ks) {
      BoundRow row = solved_row(build_lp_esp_n(n, k));
      row.n = n;
      row.k = k;
      row.baseline = baseline_spm_n(n);
      t.rows.push_back(row);
    }
  }
  return t;
}

double partition_guarantee(const std::vector<int>& caps) {
  if (caps.empty()) {
    throw std::invalid_argument("partition_guarantee: no caps");
  }
  double factor = 1.0;
  for (int cap : caps) {
    factor = std::min(factor, solve_lp_spm_H(cap).factor);
  }
  return factor;
}

CheckResult monotone_kernel_check(const MonotoneCheckOptions& options) {
  CheckResult out;
  if (options.n_min < 1 || options.n_max < options.n_min ||
      options.y_points < 2 || !(options.y_min > 0.0) ||
      !(options.y_max > options.y_min)) {
    throw std::invalid_argument("monotone_kernel_check: invalid options");
  }
  const auto q = options.q_override
                     ? options.q_override
                     : [](int n, double y) { return kernel_q_n(n, y); };
  const auto r = options.r_override
                     ? options.r_override
                     : [](int n, double y) { return kernel_r_n(n, y); };
  // n = 0 encodes the limiting kernels.
  const auto q_at = [&](int n, double y) {
    return n == 0 ? kernel_q_limit(y) : q(n, y);
  };
  const auto r_at = [&](int n, double y) {
    return n == 0 ? kernel_r_limit(y) : r(n, y);
  };
  std::vector<double> ys(static_cast<std::size_t>(options.y_points));
  for (int t = 0; t < options.y_points; ++t) {
    ys[static_cast<std::size_t>(t)] =
        options.y_min + (options.y_max - options.y_min) * t /
                            static_cast<double>(options.y_points - 1);
  }
  const auto record = [&out](double violation, const std::string& what) {
    if (violation > out.worst_violation) {
      out.worst_violation = violation;
      out.detail = what;
    }
    if (violation > 1e-12) out.passed = false;
  };
  std::vector<int> ns = {0};  // 0 stands for the limiting kernels
  for (int n = options.n_min; n <= options.n_max; ++n) ns.push_back(n);
  for (int n : ns) {
    for (double x : options.x_grid) {
      double prev = (x + 1.0 - q_at(n, ys[0])) / ys[0];
      for (std::size_t t = 1; t < ys.size(); ++t) {
        const double cur = (x + 1.0 - q_at(n, ys[t])) / ys[t];
        record(cur - prev, "posted-price kernel rises: n=" +
                               std::to_string(n) + " x=" + std::to_string(x) +
                               " y=" + std::to_string(ys[t]));
        prev = cur;
        ++out.cells_checked;
      }
    }
    double prev = (2.0 - r_at(n, ys[0])) / ys[0];
    for (std::size_t t = 1; t < ys.size(); ++t) {
      const double cur = (2.0 - r_at(n, ys[t])) / ys[t];
      record(cur - prev, "second-price kernel rises: n=" + std::to_string(n) +
                             " y=" + std::to_string(ys[t]));
      prev = cur;
      ++out.cells_checked;
    }
    // Small-y limit of the second-price kernel is 1.
    const double tiny = 1e-7;
    record(std::fabs((2.0 - r_at(n, tiny)) / tiny - 1.0) - 1e-5,
           "second-price kernel limit at 0 is off: n=" + std::to_string(n));
    ++out.cells_checked;
  }
  return out;
}

CheckResult polynomial_extremal_check(const PolynomialCheckOptions& options) {
  CheckResult out;
  if (options.n_max < 1 || options.H_max < 1 || options.points_per_cell < 1) {
    throw std::invalid_argument("polynomial_extremal_check: invalid options");
  }
  const auto weighted_lowmass = [](const std::vector<double>& s, int H) {
    const std::vector<double> pmf = poisson_binomial_pmf(s);
    double acc = 0.0;
    for (int i = 0; i < H && i < static_cast<int>(pmf.size()); ++i) {
      acc += static_cast<double>(H - i) * pmf[static_cast<std::size_t>(i)];
    }
    return acc;
  };
  Rng rng = make_rng(options.seed);
  const auto record = [&out](double violation, const std::string& what) {
    if (violation > out.worst_violation) {
      out.worst_violation = violation;
      out.detail = what;
    }
    if (violation > 1e-12) out.passed = false;
  };
  for (int n = 1; n <= options.n_max; ++n) {
    for (int H = 1; H <= options.H_max; ++H) {
      for (double s_total : options.s_totals) {
        if (s_total > static_cast<double>(n)) continue;
        const std::vector<double> equal(
            static_cast<std::size_t>(n), s_total / static_cast<double>(n));
        const double at_equal = weighted_lowmass(equal, H);
        // Closed forms at the balanced point.
        if (H == 1) {
          record(std::fabs(at_equal - kernel_q_n(n, s_total)),
                 "balanced point mismatch with q_n: n=" + std::to_string(n));
        }
        if (H == 2) {
          record(std::fabs(at_equal - kernel_r_n(n, s_total)),
                 "balanced point mismatch with r_n: n=" + std::to_string(n));
        }
        std::vector<double> s(static_cast<std::size_t>(n));
        for (int point = 0; point < options.points_per_cell; ++point) {
          // Random split of s_total with every coordinate <= 1.
          while (true) {
            double total = 0.0;
            for (double& v : s) {
              v = -std::log(1.0 - 0.999999 * uniform01(rng));
              total += v;
            }
            bool ok = true;
            for (double& v : s) {
              v *= s_total / total;
              if (v > 1.0) ok = false;
            }
            if (ok) break;
          }
          const double val = weighted_lowmass(s, H);
          record(val - at_equal,
                 "unbalanced point beats balanced: n=" + std::to_string(n) +
                     " H=" + std::to_string(H) +
                     " s_total=" + std::to_string(s_total));
          ++out.cells_checked;
        }
      }
    }
  }
  return out;
}

}  // namespace revbound
