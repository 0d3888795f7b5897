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

#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace ordstat::quad {

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kUflow = std::numeric_limits<double>::min();

}  // namespace

PanelResult gk15(const BatchFn& f, double a, double b) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double xs[15];
  double fv[15];
  xs[0] = centr;
  for (int j = 0; j < 7; ++j) {
    const double absc = hlgth * kXgk[j];
    xs[1 + 2 * j] = centr - absc;
    xs[2 + 2 * j] = centr + absc;
  }
  f(xs, fv, 15);

  const double fc = fv[0];
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::fabs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double f1 = fv[1 + 2 * j];
    const double f2 = fv[2 + 2 * j];
    const double fsum = f1 + f2;
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;  // Gauss nodes are the odd ones
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::fabs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::fabs(fv[1 + 2 * j] - reskh) +
                         std::fabs(fv[2 + 2 * j] - reskh));
  }
  const double result = resk * hlgth;
  resabs *= std::fabs(hlgth);
  resasc *= std::fabs(hlgth);
  double abserr = std::fabs((resk - resg) * hlgth);
  if (resasc != 0.0 && abserr != 0.0)
    abserr = resasc * std::min(1.0, std::pow(200.0 * abserr / resasc, 1.5));
  if (resabs > kUflow / (50.0 * kEps))
    abserr = std::max(kEps * 50.0 * resabs, abserr);
  return {result, abserr};
}

AdaptiveResult integrate_adaptive(const BatchFn& f, std::span<const double> pts,
                                  double abs_tol, double rel_tol,
                                  int max_panels) {
  struct Panel {
    double a, b, integral, error;
  };
  std::vector<Panel> panels;
  panels.reserve(64);
  AdaptiveResult res{0.0, 0.0, false, false};

  for (std::size_t s = 0; s + 1 < pts.size(); ++s) {
    if (!(pts[s + 1] > pts[s])) continue;
    const auto pr = gk15(f, pts[s], pts[s + 1]);
    panels.push_back({pts[s], pts[s + 1], pr.integral, pr.error});
  }
  if (panels.empty()) return {0.0, 0.0, true, false};

  auto recompute = [&]() {
    double total = 0.0, err = 0.0;
    for (const auto& p : panels) {
      total += p.integral;
      err += p.error;
    }
    res.integral = total;
    res.error = err;
    res.nonfinite = !std::isfinite(total) || !std::isfinite(err);
  };
  recompute();

  while (static_cast<int>(panels.size()) < max_panels) {
    if (res.nonfinite) return res;
    if (res.error <= std::max(abs_tol, rel_tol * std::fabs(res.integral))) {
      res.converged = true;
      return res;
    }
    std::size_t worst = 0;
    for (std::size_t p = 1; p < panels.size(); ++p)
      if (panels[p].error > panels[worst].error) worst = p;
    const Panel w = panels[worst];
    const double mid = 0.5 * (w.a + w.b);
    if (!(mid > w.a && mid < w.b)) break;  // interval exhausted in doubles
    const auto left = gk15(f, w.a, mid);
    const auto right = gk15(f, mid, w.b);
    panels[worst] = {w.a, mid, left.integral, left.error};
    panels.push_back({mid, w.b, right.integral, right.error});
    recompute();
  }
  res.converged =
      res.error <= std::max(abs_tol, rel_tol * std::fabs(res.integral)) &&
      !res.nonfinite;
  return res;
}

TailResult integrate_tail(const BatchFn& g, double t0, double t_panel,
                          int max_panels, double abs_tol) {
  TailResult res{0.0, 0.0, false, false};
  double prev = std::numeric_limits<double>::infinity();
  for (int m = 0; m < max_panels; ++m) {
    const double a = t0 + m * t_panel;
    const double b = a + t_panel;
    const double pts[2] = {a, b};
    const auto pr = integrate_adaptive(g, pts, abs_tol * 0.125, 1e-12, 60);
    const double contrib = std::fabs(pr.integral);
    if (pr.nonfinite || !std::isfinite(contrib)) {
      res.diverged = true;
      return res;
    }
    res.integral += pr.integral;
    res.error += pr.error;
    if (m >= 1 && contrib >= prev && contrib > abs_tol) {
      res.diverged = true;  // contributions must decrease for convergence
      return res;
    }
    if (contrib <= abs_tol && contrib <= prev) {
      // geometric decay: remaining tail is at most one more contribution
      res.error += contrib;
      res.converged = true;
      return res;
    }
    prev = contrib;
  }
  return res;  // ran out of panels: neither converged nor provably divergent
}

}  // namespace ordstat::quad
