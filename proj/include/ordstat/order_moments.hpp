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
#pragma once

#include <cstdint>
#include <vector>

#include "ordstat/distributions.hpp"

namespace ordstat {

/// The i-th order statistic of an n-sample, X_{1:n} <= ... <= X_{n:n}.
struct OrderStatSpec {
  int n = 1;
  int i = 1;
};

/// Throws std::domain_error unless 1 <= i <= n.
void validate(const OrderStatSpec& s);

/// Exponent pair (k, delta) with the derived ratio rho = k/delta and its
/// integer part.
struct MomentParams {
  double k;
  double delta;
  double rho;
  int floor_rho;

  static MomentParams from(double k, double delta);
};

enum class MomentMethod { quadrature, discrete_oracle, monte_carlo };
const char* method_name(MomentMethod m);

/// A computed value of E|X_{i:n}|^k. `diverged` means the moment is +infinity
/// (established by the tail test); such estimates are excluded from
/// inequality comparisons.
struct MomentEstimate {
  double value;
  double error_bound;
  MomentMethod method;
  bool diverged;
};

/// Quadrature over the beta-weighted quantile representation
///   E|X_{i:n}|^k = 1/B(i, n-i+1) * int_0^1 |F^-1(u)|^k u^(i-1) (1-u)^(n-i) du
/// with endpoint substitution u = 1 - e^-t (resp. e^-t) on unbounded tails
/// and splits at every quantile jump. Throws ToleranceFailure when the target
/// max(1e-10, 1e-8*value) cannot be met without divergence evidence.
MomentEstimate moment_quadrature(const Distribution& d, OrderStatSpec s,
                                 double k);

/// Exact enumeration for finite-support laws through the order-statistic CDF
///   P(X_{i:n} <= x_j) = sum_{m=i..n} C(n,m) F(x_j)^m (1-F(x_j))^(n-m).
MomentEstimate moment_discrete_oracle(const Distribution& d, OrderStatSpec s,
                                      double k);

/// Monte Carlo with deterministic per-repetition streams derived from
/// (seed, rep): identical (seed, reps, parameters) give bit-identical results
/// on any thread count. error_bound is the standard error of the mean.
MomentEstimate moment_monte_carlo(const Distribution& d, OrderStatSpec s,
                                  double k, std::uint64_t reps,
                                  std::uint64_t seed);

/// Sweep-side Monte Carlo: draws the (distribution, n, seed) sample streams
/// once and serves every (i, k) cell from them. Because repetition streams
/// depend only on (seed, rep), moment(i, k) is bit-identical to a standalone
/// moment_monte_carlo call with the same parameters.
class McCellEvaluator {
 public:
  McCellEvaluator(const Distribution& d, int n, std::uint64_t reps,
                  std::uint64_t seed);
  MomentEstimate moment(int i, double k) const;
  int n() const { return n_; }

 private:
  int n_;
  std::uint64_t reps_;
  std::vector<double> columns_;  // columns_[(i-1)*reps + r]
};

}  // namespace ordstat
