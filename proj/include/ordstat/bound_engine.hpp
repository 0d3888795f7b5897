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

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ordstat/distributions.hpp"
#include "ordstat/order_moments.hpp"

namespace ordstat {

/// Which branch of the case analysis covers (i, n) at a given rho:
/// Central: rho+1 <= i <= n-rho; LowerEdge: rho <= i < rho+1;
/// UpperEdge: n-rho < i <= n-rho+1; Invalid otherwise.
enum class ProofCase { Central, LowerEdge, UpperEdge, Invalid };
const char* proof_case_name(ProofCase c);
ProofCase proof_case(OrderStatSpec s, double rho);

/// g(u) = u(1-u), the rank weight of the bound.
inline double g_weight(double u) { return u * (1.0 - u); }

/// C(rho) = 2 sqrt(rho) exp(rho + 7/6).
double c_rho(double rho);

struct BoundParams {
  MomentParams p;
  OrderStatSpec s;
  double abs_moment_delta;  // E|X_1|^delta; +infinity allowed
};

/// Returns a description of the violated hypothesis (n >= 2*rho+1,
/// rho <= i <= n-rho+1), or nullopt when the bound applies.
std::optional<std::string> applicability_failure(const BoundParams& b);

/// C(rho) * (E|X_1|^delta / g(i/(n+1)))^rho; +infinity when the moment is
/// infinite (vacuous case). Throws std::domain_error naming the failed
/// hypothesis when the parameters are outside the validity region.
double theorem1_bound(const BoundParams& b);

/// The uniform-in-(n,i) constant: C(alpha,beta,rho) * (E|X_1|^delta)^rho with
/// C(alpha,beta,rho) = c_rho(rho) / min(g(alpha/2), g(beta))^rho, which
/// dominates theorem1_bound whenever rho <= n*alpha < i < n*beta <= n-rho+1.
double consequence_bound(double abs_moment_delta, double alpha, double beta,
                         double rho);

/// One checked inequality. Values are carried in both linear and log scale;
/// `holds` is decided in log scale so wide-range quantities (e.g. the
/// Stirling bracket at x = 1e3) never saturate.
struct InequalityReport {
  std::string name;    // eq3, eq4, eq5, eq7_lt_eq8, eq11, eq12, eq13, eq16,
                       // eq18, chebyshev, theorem1, holder_i1, consequence
  std::string detail;  // which link of a chain, or a skip annotation
  double lhs = 0.0;
  double rhs = 0.0;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  bool holds = false;
  bool skipped = false;  // vacuous case, excluded from pass/fail accounting

  // parameter tuple (NaN/0 where not applicable)
  double rho = std::nan("");
  int n = 0;
  double i = std::nan("");
  double x = std::nan("");
  double u = std::nan("");
  double delta = std::nan("");

  double margin() const { return rhs - lhs; }
  double log_margin() const { return log_rhs - log_lhs; }
};

/// The proof-opening Chebyshev bound |F^-1(u)|^delta * min(u, 1-u)-side
/// weight <= E|X_1|^delta. An infinite moment yields a skipped report, not a
/// failure.
InequalityReport chebyshev_check(const Distribution& d, double delta,
                                 double u);
InequalityReport chebyshev_check(const Distribution& d, double delta, double u,
                                 double abs_moment_delta);

/// B(i-rho, n-i+1)/B(i, n-i+1) < e^(rho+7/6) (n/i)^rho for i >= rho+1.
/// The printed-constant variant e^(1+7/6) (n/i)^rho is recorded as
/// informational fields on the report, not asserted.
struct BetaRatioReport : InequalityReport {
  double printed_rhs = 0.0;
  double printed_log_rhs = 0.0;
  bool printed_holds = false;
};
BetaRatioReport check_beta_ratio_lower(double i, int n, double rho);
/// Mirror bound for B(i, n-rho-i+1)/B(i, n-i+1), i <= n-rho; also verifies
/// the symmetry identity against check_beta_ratio_lower at rank n-i+1.
BetaRatioReport check_beta_ratio_upper(double i, int n, double rho);

/// The central-rank chain: exact ratio <= the Stirling majorant, its three
/// elementary factor bounds, and the closing comparisons down to
/// e^(rho+7/6) (n/i)^rho. Requires rho+2 <= i <= n-rho.
std::vector<InequalityReport> check_central_chain(int i, int n, double rho);

/// Edge-rank displays: which of them applies is decided by rho (integer or
/// not, its integer part), the inapplicable ones are omitted.
std::vector<InequalityReport> check_edge_cases(int n, double rho);

/// n^rho, the i=1 Holder factor for rho <= 1.
double holder_i1_bound(int n, double rho);
/// Checks n^rho <= c_rho(rho) * g(1/(n+1))^-rho.
InequalityReport check_holder_i1(int n, double rho);

/// Stirling bracket rows (eq3) at a given x: lower < Gamma(1+x) < upper.
std::vector<InequalityReport> check_stirling(double x);

/// theorem1_bound <= consequence_bound at every integer i in
/// (n*alpha, n*beta) intersected with [rho, n-rho+1].
std::vector<InequalityReport> check_consequence_domination(
    double abs_moment_delta, double alpha, double beta, double rho, int n);

}  // namespace ordstat
