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

#include "ordstat/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ordstat/errors.hpp"
#include "ordstat/kernels.hpp"
#include "ordstat/special.hpp"

namespace ordstat {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kChunk = 256;

double klog1(double x) {
  double y;
  kernels::log_array(&x, &y, 1);
  return y;
}

double kexp1(double x) {
  double y;
  kernels::exp_array(&x, &y, 1);
  return y;
}

double knq1(double u) {
  double y;
  kernels::normal_quantile_array(&u, &y, 1);
  return y;
}
}  // namespace

double RandomSource::next_unit() {
  return kernels::unit_double(kernels::mix64(key_, ctr_++));
}

Distribution Distribution::uniform01() {
  Distribution d;
  d.family_ = Family::uniform;
  d.name_ = "uniform";
  d.cdf_at_zero_ = 0.0;
  d.lower_bounded_ = true;
  d.upper_bounded_ = true;
  return d;
}

Distribution Distribution::exponential1() {
  Distribution d;
  d.family_ = Family::exponential;
  d.name_ = "exponential";
  d.cdf_at_zero_ = 0.0;
  d.lower_bounded_ = true;
  d.upper_bounded_ = false;
  return d;
}

Distribution Distribution::standard_normal() {
  Distribution d;
  d.family_ = Family::normal;
  d.name_ = "normal";
  d.cdf_at_zero_ = 0.5;
  d.lower_bounded_ = false;
  d.upper_bounded_ = false;
  d.breakpoints_ = {0.5};  // |quantile| kink at the zero crossing
  return d;
}

Distribution Distribution::pareto(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw std::domain_error("pareto: alpha must be positive");
  Distribution d;
  d.family_ = Family::pareto;
  std::ostringstream name;
  name << "pareto" << alpha;
  d.name_ = name.str();
  d.alpha_ = alpha;
  d.neg_inv_alpha_ = -1.0 / alpha;
  d.cdf_at_zero_ = 0.0;  // support [1, inf)
  d.lower_bounded_ = true;
  d.upper_bounded_ = false;
  return d;
}

Distribution Distribution::two_point() {
  return finite_discrete("two_point", {{-1.0, 0.5}, {1.0, 0.5}});
}

Distribution Distribution::finite_discrete(std::string name,
                                           std::vector<Atom> atoms) {
  if (atoms.empty())
    throw UsageError("finite_discrete: at least one atom required");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.value < b.value; });
  double sum = 0.0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (!std::isfinite(atoms[j].value))
      throw UsageError("finite_discrete: atom values must be finite");
    if (!(atoms[j].probability > 0.0))
      throw UsageError("finite_discrete: probabilities must be positive");
    if (j > 0 && !(atoms[j].value > atoms[j - 1].value))
      throw UsageError("finite_discrete: atom values must be distinct");
    sum += atoms[j].probability;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw UsageError("finite_discrete: probabilities sum to " +
                     std::to_string(sum) + ", not 1");
  for (auto& a : atoms) a.probability /= sum;

  Distribution d;
  d.family_ = Family::finite_discrete;
  d.name_ = std::move(name);
  d.atoms_ = std::move(atoms);
  d.finalize_discrete();
  return d;
}

void Distribution::finalize_discrete() {
  cum_.clear();
  log_abs_x_.clear();
  breakpoints_.clear();
  double c = 0.0;
  for (const auto& a : atoms_) {
    c += a.probability;
    cum_.push_back(c);
    log_abs_x_.push_back(a.value == 0.0 ? -kInf
                                        : std::log(std::fabs(a.value)));
  }
  cum_.back() = 1.0;
  for (std::size_t j = 0; j + 1 < cum_.size(); ++j)
    breakpoints_.push_back(cum_[j]);
  cdf_at_zero_ = 0.0;
  for (std::size_t j = 0; j < atoms_.size(); ++j)
    if (atoms_[j].value <= 0.0) cdf_at_zero_ = cum_[j];
  lower_bounded_ = true;
  upper_bounded_ = true;
}

double Distribution::quantile(double u) const {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("quantile: u must lie in (0,1)");
  switch (family_) {
    case Family::uniform:
      return scale_ * u;
    case Family::exponential:
      return scale_ * -klog1(1.0 - u);
    case Family::normal:
      return scale_ * knq1(u);
    case Family::pareto:
      return scale_ * kexp1(neg_inv_alpha_ * klog1(1.0 - u));
    case Family::finite_discrete: {
      const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
      const std::size_t j =
          it == cum_.end() ? cum_.size() - 1
                           : static_cast<std::size_t>(it - cum_.begin());
      return atoms_[j].value;
    }
  }
  return 0.0;
}

double Distribution::quantile_upper(double w) const {
  if (!(w > 0.0 && w < 1.0))
    throw std::domain_error("quantile_upper: w must lie in (0,1)");
  switch (family_) {
    case Family::uniform:
      return scale_ * (1.0 - w);
    case Family::exponential:
      return scale_ * -klog1(w);
    case Family::normal:
      return scale_ * -knq1(w);
    case Family::pareto:
      return scale_ * kexp1(neg_inv_alpha_ * klog1(w));
    case Family::finite_discrete:
      return quantile(1.0 - w);
  }
  return 0.0;
}

void Distribution::quantile_batch(std::span<const double> u,
                                  std::span<double> out) const {
  const std::size_t n = u.size();
  switch (family_) {
    case Family::uniform:
      for (std::size_t i = 0; i < n; ++i) out[i] = scale_ * u[i];
      return;
    case Family::exponential: {
      double buf[kChunk];
      for (std::size_t i0 = 0; i0 < n; i0 += kChunk) {
        const std::size_t m = std::min(kChunk, n - i0);
        for (std::size_t i = 0; i < m; ++i) buf[i] = 1.0 - u[i0 + i];
        kernels::log_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i) out[i0 + i] = scale_ * -buf[i];
      }
      return;
    }
    case Family::normal:
      kernels::normal_quantile_array(u.data(), out.data(), n);
      if (scale_ != 1.0)
        for (std::size_t i = 0; i < n; ++i) out[i] *= scale_;
      return;
    case Family::pareto: {
      double buf[kChunk];
      for (std::size_t i0 = 0; i0 < n; i0 += kChunk) {
        const std::size_t m = std::min(kChunk, n - i0);
        for (std::size_t i = 0; i < m; ++i) buf[i] = 1.0 - u[i0 + i];
        kernels::log_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i) buf[i] *= neg_inv_alpha_;
        kernels::exp_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i) out[i0 + i] = scale_ * buf[i];
      }
      return;
    }
    case Family::finite_discrete:
      for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::lower_bound(cum_.begin(), cum_.end(), u[i]);
        const std::size_t j =
            it == cum_.end() ? cum_.size() - 1
                             : static_cast<std::size_t>(it - cum_.begin());
        out[i] = atoms_[j].value;
      }
      return;
  }
}

void Distribution::log_abs_quantile_batch(std::span<const double> u,
                                          std::span<double> out) const {
  const std::size_t n = u.size();
  switch (family_) {
    case Family::uniform:
      kernels::log_array(u.data(), out.data(), n);
      break;
    case Family::exponential: {
      double buf[kChunk];
      for (std::size_t i0 = 0; i0 < n; i0 += kChunk) {
        const std::size_t m = std::min(kChunk, n - i0);
        for (std::size_t i = 0; i < m; ++i) buf[i] = 1.0 - u[i0 + i];
        kernels::log_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i) buf[i] = -buf[i];
        kernels::log_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i) out[i0 + i] = buf[i];
      }
      break;
    }
    case Family::normal: {
      double buf[kChunk];
      for (std::size_t i0 = 0; i0 < n; i0 += kChunk) {
        const std::size_t m = std::min(kChunk, n - i0);
        kernels::normal_quantile_array(u.data() + i0, buf, m);
        for (std::size_t i = 0; i < m; ++i) buf[i] = std::fabs(buf[i]);
        kernels::log_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i) out[i0 + i] = buf[i];
      }
      break;
    }
    case Family::pareto: {
      double buf[kChunk];
      for (std::size_t i0 = 0; i0 < n; i0 += kChunk) {
        const std::size_t m = std::min(kChunk, n - i0);
        for (std::size_t i = 0; i < m; ++i) buf[i] = 1.0 - u[i0 + i];
        kernels::log_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i)
          out[i0 + i] = neg_inv_alpha_ * buf[i];
      }
      break;
    }
    case Family::finite_discrete:
      for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::lower_bound(cum_.begin(), cum_.end(), u[i]);
        const std::size_t j =
            it == cum_.end() ? cum_.size() - 1
                             : static_cast<std::size_t>(it - cum_.begin());
        out[i] = log_abs_x_[j];
      }
      break;
  }
  if (log_scale_ != 0.0)
    for (std::size_t i = 0; i < n; ++i) out[i] += log_scale_;
}

void Distribution::log_abs_quantile_upper_batch(std::span<const double> w,
                                                std::span<double> out) const {
  const std::size_t n = w.size();
  switch (family_) {
    case Family::uniform: {
      double buf[kChunk];
      for (std::size_t i0 = 0; i0 < n; i0 += kChunk) {
        const std::size_t m = std::min(kChunk, n - i0);
        for (std::size_t i = 0; i < m; ++i) buf[i] = 1.0 - w[i0 + i];
        kernels::log_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i) out[i0 + i] = buf[i];
      }
      break;
    }
    case Family::exponential: {
      double buf[kChunk];
      for (std::size_t i0 = 0; i0 < n; i0 += kChunk) {
        const std::size_t m = std::min(kChunk, n - i0);
        kernels::log_array(w.data() + i0, buf, m);
        for (std::size_t i = 0; i < m; ++i) buf[i] = -buf[i];
        kernels::log_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i) out[i0 + i] = buf[i];
      }
      break;
    }
    case Family::normal: {
      double buf[kChunk];
      for (std::size_t i0 = 0; i0 < n; i0 += kChunk) {
        const std::size_t m = std::min(kChunk, n - i0);
        kernels::normal_quantile_array(w.data() + i0, buf, m);
        for (std::size_t i = 0; i < m; ++i) buf[i] = std::fabs(buf[i]);
        kernels::log_array(buf, buf, m);
        for (std::size_t i = 0; i < m; ++i) out[i0 + i] = buf[i];
      }
      break;
    }
    case Family::pareto:
      kernels::log_array(w.data(), out.data(), n);
      for (std::size_t i = 0; i < n; ++i) out[i] *= neg_inv_alpha_;
      break;
    case Family::finite_discrete:
      for (std::size_t i = 0; i < n; ++i) {
        const double u = 1.0 - w[i];
        const auto it = std::lower_bound(cum_.begin(), cum_.end(), u);
        const std::size_t j =
            it == cum_.end() ? cum_.size() - 1
                             : static_cast<std::size_t>(it - cum_.begin());
        out[i] = log_abs_x_[j];
      }
      break;
  }
  if (log_scale_ != 0.0)
    for (std::size_t i = 0; i < n; ++i) out[i] += log_scale_;
}

std::optional<double> Distribution::abs_moment_closed_form(
    double delta) const {
  if (!(delta > 0.0)) throw std::domain_error("abs moment: delta must be > 0");
  double base;
  switch (family_) {
    case Family::uniform:
      base = 1.0 / (1.0 + delta);
      break;
    case Family::exponential:
      base = std::exp(sf::log_gamma(1.0 + delta));
      break;
    case Family::normal:
      base = std::exp(0.5 * delta * std::log(2.0) +
                      sf::log_gamma(0.5 * (delta + 1.0)) -
                      0.5 * std::log(M_PI));
      break;
    case Family::pareto:
      base = delta < alpha_ ? alpha_ / (alpha_ - delta) : kInf;
      break;
    case Family::finite_discrete: {
      double s = 0.0;
      for (const auto& a : atoms_)
        s += a.probability * std::pow(std::fabs(a.value), delta);
      return s;  // atoms already carry any scaling
    }
    default:
      return std::nullopt;
  }
  if (scale_ != 1.0 && std::isfinite(base))
    base *= std::pow(scale_, delta);
  return base;
}

double Distribution::sample(RandomSource& rs) const {
  return quantile(rs.next_unit());
}

const std::vector<Atom>& Distribution::atoms() const {
  if (family_ != Family::finite_discrete)
    throw std::domain_error("atoms(): not a finite-discrete law");
  return atoms_;
}

Distribution Distribution::scaled_by(double c) const {
  if (!(c > 0.0) || !std::isfinite(c))
    throw std::domain_error("scaled_by: factor must be positive and finite");
  if (family_ == Family::finite_discrete) {
    std::vector<Atom> scaled = atoms_;
    for (auto& a : scaled) a.value *= c;
    return finite_discrete(name_ + "_x" + std::to_string(c), scaled);
  }
  Distribution d = *this;
  d.scale_ = scale_ * c;
  d.log_scale_ = std::log(d.scale_);
  d.name_ = name_ + "_x" + std::to_string(c);
  return d;
}

std::vector<Distribution> make_zoo() {
  std::vector<Distribution> zoo;
  zoo.push_back(Distribution::uniform01());
  zoo.push_back(Distribution::exponential1());
  zoo.push_back(Distribution::standard_normal());
  zoo.push_back(Distribution::pareto(1.5));
  zoo.push_back(Distribution::pareto(3.0));
  zoo.push_back(Distribution::two_point());
  zoo.push_back(Distribution::finite_discrete(
      "four_atom",
      {{-2.0, 0.2}, {-0.5, 0.3}, {1.0, 0.3}, {3.0, 0.2}}));
  return zoo;
}

Distribution resolve_distribution(const std::string& token) {
  for (auto& d : make_zoo())
    if (d.name() == token) return d;
  if (std::filesystem::exists(token)) return load_finite_discrete(token);
  throw UsageError("unknown distribution '" + token +
                   "' (not a zoo name or a readable file)");
}

Distribution parse_finite_discrete(std::istream& in, std::string name) {
  std::vector<Atom> atoms;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double v, p;
    if (!(ls >> v)) continue;  // blank or comment-only line
    if (!(ls >> p))
      throw UsageError(name + ":" + std::to_string(lineno) +
                       ": expected 'value probability'");
    std::string extra;
    if (ls >> extra)
      throw UsageError(name + ":" + std::to_string(lineno) +
                       ": trailing content '" + extra + "'");
    atoms.push_back({v, p});
  }
  return Distribution::finite_discrete(std::move(name), std::move(atoms));
}

Distribution load_finite_discrete(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open distribution file '" + path + "'");
  return parse_finite_discrete(in, std::filesystem::path(path).stem().string());
}

double quantile_of_finite(const Distribution& d, double u) {
  if (d.family() != Family::finite_discrete)
    throw std::domain_error("quantile_of_finite: not a finite-discrete law");
  return d.quantile(u);
}

AbsMomentResult abs_moment_best(const Distribution& d, double delta) {
  if (auto cf = d.abs_moment_closed_form(delta)) {
    return {*cf, 0.0, std::isinf(*cf)};
  }
  return abs_moment_numeric(d, delta);
}

}  // namespace ordstat
