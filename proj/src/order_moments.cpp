/*******************************************************************************
 * Copyright 2026 The ordstat authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/

#include "ordstat/order_moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ordstat/errors.hpp"
#include "ordstat/kernels.hpp"
#include "ordstat/special.hpp"
#include "quadrature.hpp"

namespace ordstat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTrim = 1e-6;
// Each tail panel shrinks the remaining endpoint width by e^-kPanelLen.
constexpr double kPanelLen = 6.907755278982137;  // ln(1000)
constexpr std::uint64_t kRepStride = 1ull << 20;

double eval_one(const quad::BatchFn& f, double x) {
  double y;
  f(&x, &y, 1);
  return y;
}

}  // namespace

void validate(const OrderStatSpec& s) {
  if (s.n < 1 || s.i < 1 || s.i > s.n) {
    std::ostringstream msg;
    msg << "order statistic spec requires 1 <= i <= n, got i=" << s.i
        << " n=" << s.n;
    throw std::domain_error(msg.str());
  }
}

MomentParams MomentParams::from(double k, double delta) {
  if (!(k > 0.0) || !std::isfinite(k) || !(delta > 0.0) ||
      !std::isfinite(delta))
    throw std::domain_error("moment exponents k, delta must be positive");
  MomentParams p;
  p.k = k;
  p.delta = delta;
  p.rho = k / delta;
  p.floor_rho = static_cast<int>(std::floor(p.rho));
  return p;
}

const char* method_name(MomentMethod m) {
  switch (m) {
    case MomentMethod::quadrature: return "quadrature";
    case MomentMethod::discrete_oracle: return "discrete_oracle";
    case MomentMethod::monte_carlo: return "monte_carlo";
  }
  return "?";
}

MomentEstimate moment_quadrature(const Distribution& d, OrderStatSpec s,
                                 double k) {
  validate(s);
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::domain_error("moment_quadrature: k must be positive");
  const int n = s.n;
  const int i = s.i;
  const double lnB = sf::log_beta(i, n - i + 1);
  const double di = static_cast<double>(i - 1);
  const double dni = static_cast<double>(n - i);

  const quad::BatchFn fu = [&d, k, di, dni, lnB](const double* u, double* out,
                                                 std::size_t m) {
    double lq[64], lnu[64], ln1mu[64];
    d.log_abs_quantile_batch({u, m}, {lq, m});
    kernels::log_array(u, lnu, m);
    for (std::size_t j = 0; j < m; ++j) ln1mu[j] = 1.0 - u[j];
    kernels::log_array(ln1mu, ln1mu, m);
    for (std::size_t j = 0; j < m; ++j)
      out[j] = k * lq[j] + di * lnu[j] + dni * ln1mu[j] - lnB;
    kernels::exp_array(out, out, m);
  };
  // u = e^-t near zero; ln u = -t exactly.
  const quad::BatchFn gl = [&d, k, di, dni, lnB](const double* t, double* out,
                                                 std::size_t m) {
    double w[64], lq[64], ln1mw[64];
    for (std::size_t j = 0; j < m; ++j) w[j] = -t[j];
    kernels::exp_array(w, w, m);
    d.log_abs_quantile_batch({w, m}, {lq, m});
    for (std::size_t j = 0; j < m; ++j) ln1mw[j] = 1.0 - w[j];
    kernels::log_array(ln1mw, ln1mw, m);
    for (std::size_t j = 0; j < m; ++j)
      out[j] = k * lq[j] - di * t[j] + dni * ln1mw[j] - lnB - t[j];
    kernels::exp_array(out, out, m);
  };
  // u = 1 - e^-t near one; ln(1-u) = -t exactly.
  const quad::BatchFn gr = [&d, k, di, dni, lnB](const double* t, double* out,
                                                 std::size_t m) {
    double w[64], lqu[64], lnu[64];
    for (std::size_t j = 0; j < m; ++j) w[j] = -t[j];
    kernels::exp_array(w, w, m);
    d.log_abs_quantile_upper_batch({w, m}, {lqu, m});
    for (std::size_t j = 0; j < m; ++j) lnu[j] = 1.0 - w[j];
    kernels::log_array(lnu, lnu, m);
    for (std::size_t j = 0; j < m; ++j)
      out[j] = k * lqu[j] + di * lnu[j] - dni * t[j] - lnB - t[j];
    kernels::exp_array(out, out, m);
  };

  // Core split points: trims, quantile jumps/kinks, the beta-weight mode.
  std::vector<double> pts;
  pts.push_back(kTrim);
  for (double b : d.interior_breakpoints())
    if (b > kTrim && b < 1.0 - kTrim) pts.push_back(b);
  if (n >= 2) {
    const double mode = di / static_cast<double>(n - 1);
    if (mode > kTrim && mode < 1.0 - kTrim) pts.push_back(mode);
  }
  pts.push_back(1.0 - kTrim);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](double a, double b) { return b - a < 1e-12; }),
            pts.end());

  // Interior maximum scan, the trigger for the endpoint substitutions.
  static constexpr double kFrac[16] = {
      0.02, 0.08, 0.15, 0.22, 0.30, 0.38, 0.45, 0.50,
      0.55, 0.62, 0.70, 0.78, 0.85, 0.92, 0.97, 0.99};
  double fmax = 0.0;
  for (std::size_t seg = 0; seg + 1 < pts.size(); ++seg) {
    double xs[16], fs[16];
    for (int j = 0; j < 16; ++j)
      xs[j] = pts[seg] + (pts[seg + 1] - pts[seg]) * kFrac[j];
    fu(xs, fs, 16);
    for (int j = 0; j < 16; ++j) fmax = std::max(fmax, fs[j]);
  }
  const double f_left = eval_one(fu, kTrim);
  const double f_right = eval_one(fu, 1.0 - kTrim);
  const bool sub_left =
      !d.lower_tail_bounded() && f_left >= fmax && f_left > 0.0;
  const bool sub_right =
      !d.upper_tail_bounded() && f_right >= fmax && f_right > 0.0;

  const auto core = quad::integrate_adaptive(fu, pts, 0.0, 1e-12, 2000);
  if (core.nonfinite)
    throw ToleranceFailure("quadrature: non-finite core integrand for " +
                           d.name());
  double value = core.integral;
  double err = core.error;
  const double tail_tol = std::max(1e-15, 1e-12 * std::fabs(value));
  const double t0 = -std::log(kTrim);

  if (sub_left) {
    const auto tl = quad::integrate_tail(gl, t0, kPanelLen, 100, tail_tol);
    if (tl.diverged)
      return {kInf, kInf, MomentMethod::quadrature, true};
    value += tl.integral;
    err += tl.error;
  } else {
    const double seg[2] = {0.0, kTrim};
    const auto al = quad::integrate_adaptive(fu, seg, tail_tol, 1e-12, 400);
    if (al.nonfinite)
      throw ToleranceFailure("quadrature: non-finite left endpoint for " +
                             d.name());
    value += al.integral;
    err += al.error;
  }
  if (sub_right) {
    const auto tr = quad::integrate_tail(gr, t0, kPanelLen, 100, tail_tol);
    if (tr.diverged)
      return {kInf, kInf, MomentMethod::quadrature, true};
    value += tr.integral;
    err += tr.error;
  } else {
    const double seg[2] = {1.0 - kTrim, 1.0};
    const auto ar = quad::integrate_adaptive(fu, seg, tail_tol, 1e-12, 400);
    if (ar.nonfinite)
      throw ToleranceFailure("quadrature: non-finite right endpoint for " +
                             d.name());
    value += ar.integral;
    err += ar.error;
  }

  const double ceiling = std::max(1e-10, 1e-8 * std::fabs(value));
  if (!(err <= ceiling)) {
    std::ostringstream msg;
    msg << "quadrature for " << d.name() << " (n=" << n << ", i=" << i
        << ", k=" << k << ") achieved error " << err << " > target "
        << ceiling << " without divergence evidence";
    throw ToleranceFailure(msg.str());
  }
  return {value, err, MomentMethod::quadrature, false};
}

MomentEstimate moment_discrete_oracle(const Distribution& d, OrderStatSpec s,
                                      double k) {
  validate(s);
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::domain_error("moment_discrete_oracle: k must be positive");
  if (!d.has_finite_support())
    throw std::domain_error(
        "moment_discrete_oracle: requires a finite-support law");
  const auto& atoms = d.atoms();
  const std::size_t count = atoms.size();
  const int n = s.n;
  const int i = s.i;

  std::vector<long double> binom(n + 1);
  binom[0] = 1.0L;
  for (int m = 1; m <= n; ++m)
    binom[m] = binom[m - 1] * static_cast<long double>(n - m + 1) /
               static_cast<long double>(m);

  long double cdf_prev = 0.0L;
  long double cum = 0.0L;
  long double value = 0.0L;
  for (std::size_t j = 0; j < count; ++j) {
    cum += static_cast<long double>(atoms[j].probability);
    const long double F = std::min(cum, 1.0L);
    long double tail = 0.0L;
    for (int m = i; m <= n; ++m)
      tail += binom[m] * powl(F, m) * powl(1.0L - F, n - m);
    const long double pmf = std::max(tail - cdf_prev, 0.0L);
    cdf_prev = tail;
    value += powl(fabsl(static_cast<long double>(atoms[j].value)),
                  static_cast<long double>(k)) *
             pmf;
  }
  const double v = static_cast<double>(value);
  return {v, 1e-14 * std::fabs(v) + 1e-300, MomentMethod::discrete_oracle,
          false};
}

namespace {

MomentEstimate mc_from_column(const double* col, std::uint64_t reps,
                              double k) {
  std::vector<double> y(reps);
  kernels::abs_pow_array(col, k, y.data(), reps);
  const double s1 = kernels::block_sum(y.data(), reps);
  const double mean = s1 / static_cast<double>(reps);
  const double s2 = kernels::block_sum_sq_dev(y.data(), reps, mean);
  const double sd =
      std::sqrt(std::max(0.0, s2 / static_cast<double>(reps - 1)));
  const double se = sd / std::sqrt(static_cast<double>(reps));
  return {mean, se, MomentMethod::monte_carlo, false};
}

void mc_check_args(const OrderStatSpec& s, std::uint64_t reps) {
  validate(s);
  if (reps < 2)
    throw std::domain_error("monte carlo requires reps >= 2");
  if (static_cast<std::uint64_t>(s.n) >= kRepStride)
    throw std::domain_error("monte carlo sample size exceeds stream stride");
}

}  // namespace

MomentEstimate moment_monte_carlo(const Distribution& d, OrderStatSpec s,
                                  double k, std::uint64_t reps,
                                  std::uint64_t seed) {
  mc_check_args(s, reps);
  if (!(k > 0.0) || !std::isfinite(k))
    throw std::domain_error("moment_monte_carlo: k must be positive");
  const std::size_t n = static_cast<std::size_t>(s.n);
  constexpr std::size_t kChunk = 1024;
  std::vector<double> u(kChunk * n), x(kChunk * n), col(reps);
  for (std::uint64_t r0 = 0; r0 < reps; r0 += kChunk) {
    const std::size_t m = static_cast<std::size_t>(
        std::min<std::uint64_t>(kChunk, reps - r0));
    for (std::size_t r = 0; r < m; ++r)
      kernels::uniform_stream_fill(seed, (r0 + r) * kRepStride, &u[r * n], n);
    d.quantile_batch({u.data(), m * n}, {x.data(), m * n});
    for (std::size_t r = 0; r < m; ++r) {
      double* row = &x[r * n];
      std::nth_element(row, row + (s.i - 1), row + n);
      col[r0 + r] = row[s.i - 1];
    }
  }
  return mc_from_column(col.data(), reps, k);
}

McCellEvaluator::McCellEvaluator(const Distribution& d, int n,
                                 std::uint64_t reps, std::uint64_t seed)
    : n_(n), reps_(reps) {
  mc_check_args({n, 1}, reps);
  const std::size_t nn = static_cast<std::size_t>(n);
  columns_.resize(nn * reps);
  constexpr std::size_t kChunk = 1024;
  std::vector<double> u(kChunk * nn), x(kChunk * nn);
  for (std::uint64_t r0 = 0; r0 < reps; r0 += kChunk) {
    const std::size_t m = static_cast<std::size_t>(
        std::min<std::uint64_t>(kChunk, reps - r0));
    for (std::size_t r = 0; r < m; ++r)
      kernels::uniform_stream_fill(seed, (r0 + r) * kRepStride, &u[r * nn],
                                   nn);
    d.quantile_batch({u.data(), m * nn}, {x.data(), m * nn});
    for (std::size_t r = 0; r < m; ++r) {
      double* row = &x[r * nn];
      std::sort(row, row + nn);
      for (std::size_t rank = 0; rank < nn; ++rank)
        columns_[rank * reps + (r0 + r)] = row[rank];
    }
  }
}

MomentEstimate McCellEvaluator::moment(int i, double k) const {
  if (i < 1 || i > n_)
    throw std::domain_error("McCellEvaluator: rank out of range");
  return mc_from_column(&columns_[(static_cast<std::size_t>(i) - 1) * reps_],
                        reps_, k);
}

AbsMomentResult abs_moment_numeric(const Distribution& d, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::domain_error("abs_moment_numeric: delta must be positive");
  const MomentEstimate e = moment_quadrature(d, {1, 1}, delta);
  return {e.value, e.error_bound, e.diverged};
}

}  // namespace ordstat
