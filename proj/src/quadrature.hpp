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

#include <functional>
#include <span>

namespace ordstat::quad {

/// Batch integrand: fill fx[j] = f(x[j]) for j < n. n never exceeds 64.
using BatchFn = std::function<void(const double* x, double* fx, std::size_t n)>;

struct PanelResult {
  double integral;
  double error;
};

/// One Gauss-Kronrod 7/15 panel on [a, b] with the QUADPACK error estimate.
PanelResult gk15(const BatchFn& f, double a, double b);

struct AdaptiveResult {
  double integral;
  double error;
  bool converged;  // error <= max(abs_tol, rel_tol * |integral|)
  bool nonfinite;  // a panel evaluated to inf/NaN
};

/// Globally adaptive bisection over the initial segments
/// [pts[0],pts[1]], ..., always refining the worst panel.
AdaptiveResult integrate_adaptive(const BatchFn& f, std::span<const double> pts,
                                  double abs_tol, double rel_tol,
                                  int max_panels);

struct TailResult {
  double integral;
  double error;
  bool converged;
  bool diverged;  // panel contributions fail the Cauchy (decrease) test
};

/// Integral over [t0, inf) taken in consecutive panels of length t_panel.
/// Contributions of a convergent integrand decay geometrically here (each
/// panel multiplies the remaining endpoint width by e^-t_panel); a
/// non-decreasing pair of positive contributions, or a non-finite one, is
/// divergence evidence.
TailResult integrate_tail(const BatchFn& g, double t0, double t_panel,
                          int max_panels, double abs_tol);

}  // namespace ordstat::quad
