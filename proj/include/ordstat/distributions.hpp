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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ordstat {

/// Deterministic counter-based uniform source. Streams at different
/// positions of the same key never overlap, so samples can be regenerated
/// cell by cell regardless of execution order.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t key, std::uint64_t start = 0)
      : key_(key), ctr_(start) {}
  double next_unit();
  std::uint64_t position() const { return ctr_; }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_;
};

struct Atom {
  double value;
  double probability;
};

enum class Family { uniform, exponential, normal, pareto, finite_discrete };

/// A law described through its quantile function F^-1(u) = inf{x: F(x) >= u}.
/// Everything downstream (moments, bounds, sampling) works in quantile space.
class Distribution {
 public:
  static Distribution uniform01();
  static Distribution exponential1();
  static Distribution standard_normal();
  static Distribution pareto(double alpha);
  static Distribution two_point();  // {-1, +1} with equal mass
  static Distribution finite_discrete(std::string name,
                                      std::vector<Atom> atoms);

  const std::string& name() const { return name_; }
  Family family() const { return family_; }
  bool has_finite_support() const { return family_ == Family::finite_discrete; }

  /// u must lie in (0,1); throws std::domain_error otherwise.
  double quantile(double u) const;
  /// quantile(1 - w) evaluated without forming 1 - w, so upper-tail
  /// evaluations stay accurate for w far below machine epsilon.
  double quantile_upper(double w) const;

  void quantile_batch(std::span<const double> u, std::span<double> out) const;
  /// ln|quantile(u)| per element (-inf where the quantile is exactly zero).
  void log_abs_quantile_batch(std::span<const double> u,
                              std::span<double> out) const;
  void log_abs_quantile_upper_batch(std::span<const double> w,
                                    std::span<double> out) const;

  double cdf_at_zero() const { return cdf_at_zero_; }
  /// E|X|^delta when a closed form is known; may be +infinity.
  std::optional<double> abs_moment_closed_form(double delta) const;
  double sample(RandomSource& rs) const;

  bool lower_tail_bounded() const { return lower_bounded_; }
  bool upper_tail_bounded() const { return upper_bounded_; }
  /// Interior u-values where the quantile jumps or |quantile| has a kink
  /// (atom boundaries, the zero crossing). Quadrature splits here.
  std::span<const double> interior_breakpoints() const { return breakpoints_; }

  /// finite_discrete only (throws otherwise).
  const std::vector<Atom>& atoms() const;

  /// The law of c*X for c > 0.
  Distribution scaled_by(double c) const;

 private:
  Distribution() = default;
  void finalize_discrete();

  Family family_ = Family::uniform;
  std::string name_;
  double scale_ = 1.0;
  double log_scale_ = 0.0;
  double alpha_ = 0.0;          // pareto
  double neg_inv_alpha_ = 0.0;  // pareto
  double cdf_at_zero_ = 0.0;
  bool lower_bounded_ = true;
  bool upper_bounded_ = true;
  std::vector<Atom> atoms_;          // finite_discrete
  std::vector<double> cum_;          // cumulative probabilities
  std::vector<double> log_abs_x_;    // ln|value| per atom
  std::vector<double> breakpoints_;  // interior split points
};

/// The verifier's test corpus: uniform(0,1), exponential(1), standard normal,
/// Pareto(1.5), Pareto(3), the symmetric two-point law, and a four-atom law
/// straddling zero.
std::vector<Distribution> make_zoo();

/// Look a distribution up by zoo name, or load `token` as a finite-discrete
/// law file when it names a readable file. Throws UsageError otherwise.
Distribution resolve_distribution(const std::string& token);

/// Plain-text finite-discrete format: one "value probability" pair per line,
/// '#' starts a comment. Probabilities must sum to 1 within 1e-9 (they are
/// renormalized); anything else is rejected.
Distribution load_finite_discrete(const std::string& path);
Distribution parse_finite_discrete(std::istream& in, std::string name);

/// inf{x : F(x) >= u} for a finite-discrete law; tie values (u equal to a
/// cumulative mass) return the attaining atom.
double quantile_of_finite(const Distribution& d, double u);

struct AbsMomentResult {
  double value;        // +infinity when diverged
  double error_bound;  // absolute; finite iff !diverged
  bool diverged;
};

/// Numerically integrates E|X|^delta = int_0^1 |F^-1(u)|^delta du with
/// endpoint handling; divergence is a result, tolerance failure an error.
AbsMomentResult abs_moment_numeric(const Distribution& d, double delta);

/// Closed form where available, otherwise the numeric route.
AbsMomentResult abs_moment_best(const Distribution& d, double delta);

}  // namespace ordstat
