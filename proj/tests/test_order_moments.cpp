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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "ordstat/distributions.hpp"
#include "ordstat/errors.hpp"
#include "ordstat/kernels.hpp"
#include "ordstat/order_moments.hpp"
#include "ordstat/special.hpp"

using namespace ordstat;

namespace {

// Independent closed forms used as oracles for the quadrature route.
// Uniform(0,1): E X_{i:n}^k = B(i+k, n-i+1) / B(i, n-i+1).
double uniform_moment_oracle(int n, int i, double k) {
  return std::exp(sf::log_beta(i + k, n - i + 1) - sf::log_beta(i, n - i + 1));
}

// Exponential(1): E X_{n:n} = H_n.
double harmonic(int n) {
  double h = 0.0;
  for (int j = 1; j <= n; ++j) h += 1.0 / j;
  return h;
}

bool bits_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("spec and params validation") {
  CHECK_THROWS_AS(validate(OrderStatSpec{0, 1}), std::domain_error);
  CHECK_THROWS_AS(validate(OrderStatSpec{5, 6}), std::domain_error);
  CHECK_THROWS_AS(validate(OrderStatSpec{5, 0}), std::domain_error);
  CHECK_NOTHROW(validate(OrderStatSpec{5, 5}));

  const auto p = MomentParams::from(3.0, 2.0);
  CHECK(p.rho == 1.5);
  CHECK(p.floor_rho == 1);
  CHECK(p.rho * p.delta == p.k);  // exact for the sweep exponents
  CHECK(MomentParams::from(1.0, 1.0).floor_rho == 1);
  CHECK(MomentParams::from(1.0, 2.0).floor_rho == 0);
  CHECK_THROWS_AS(MomentParams::from(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(MomentParams::from(1.0, -1.0), std::domain_error);
}

TEST_CASE("quadrature reproduces uniform closed forms") {
  const auto uni = Distribution::uniform01();
  CHECK(moment_quadrature(uni, {9, 5}, 1.0).value ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(moment_quadrature(uni, {4, 2}, 2.0).value ==
        doctest::Approx(0.2).epsilon(1e-12));
  for (int n : {1, 2, 5, 12, 25}) {
    for (double k : {1.0, 2.0, 2.5}) {
      for (int i = 1; i <= n; ++i) {
        const double want = uniform_moment_oracle(n, i, k);
        const auto got = moment_quadrature(uni, {n, i}, k);
        CAPTURE(n);
        CAPTURE(i);
        CAPTURE(k);
        CHECK(!got.diverged);
        CHECK(std::fabs(got.value - want) <= 1e-10 * want);
      }
    }
  }
}

TEST_CASE("quadrature reproduces exponential maxima") {
  const auto expo = Distribution::exponential1();
  CHECK(moment_quadrature(expo, {3, 3}, 1.0).value ==
        doctest::Approx(1.0 + 0.5 + 1.0 / 3.0).epsilon(1e-10));
  for (int n : {1, 2, 5, 10, 17, 25}) {
    const auto got = moment_quadrature(expo, {n, n}, 1.0);
    CAPTURE(n);
    CHECK(std::fabs(got.value - harmonic(n)) <= 1e-8);
  }
}

TEST_CASE("quadrature handles the normal law and matches delta moments") {
  const auto nrm = Distribution::standard_normal();
  // n = i = 1 reduces to E|X|^k
  const auto m1 = moment_quadrature(nrm, {1, 1}, 1.0);
  CHECK(m1.value == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-9));
  const auto m2 = moment_quadrature(nrm, {1, 1}, 2.0);
  CHECK(m2.value == doctest::Approx(1.0).epsilon(1e-9));
  // a central and an extreme rank stay finite and positive
  CHECK(moment_quadrature(nrm, {9, 5}, 2.0).value > 0.0);
  CHECK(moment_quadrature(nrm, {9, 9}, 2.0).value > 1.0);
}

TEST_CASE("discrete oracle exact cases") {
  const auto d01 =
      Distribution::finite_discrete("d01", {{0.0, 0.5}, {1.0, 0.5}});
  CHECK(moment_discrete_oracle(d01, {2, 2}, 1.0).value ==
        doctest::Approx(0.75).epsilon(1e-14));
  CHECK(moment_discrete_oracle(d01, {2, 1}, 1.0).value ==
        doctest::Approx(0.25).epsilon(1e-14));

  const auto deg =
      Distribution::finite_discrete("deg", {{-2.5, 1.0}});
  for (int n : {1, 3, 7}) {
    for (int i = 1; i <= n; i += 2) {
      CHECK(moment_discrete_oracle(deg, {n, i}, 2.0).value ==
            doctest::Approx(6.25).epsilon(1e-14));
    }
  }

  const auto tp = Distribution::two_point();
  CHECK(moment_discrete_oracle(tp, {3, 2}, 1.0).value ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(moment_discrete_oracle(Distribution::uniform01(), {2, 1}, 1.0),
                  std::domain_error);
}

TEST_CASE("quadrature equals the discrete oracle across small-n grids") {
  std::vector<Distribution> laws = {
      Distribution::two_point(),
      Distribution::finite_discrete("d01", {{0.0, 0.5}, {1.0, 0.5}}),
      Distribution::finite_discrete(
          "four_atom", {{-2.0, 0.2}, {-0.5, 0.3}, {1.0, 0.3}, {3.0, 0.2}})};
  for (const auto& d : laws) {
    for (int n = 1; n <= 8; ++n) {
      for (int i = 1; i <= n; ++i) {
        for (double k : {1.0, 2.0, 2.5}) {
          const double oracle = moment_discrete_oracle(d, {n, i}, k).value;
          const double quad = moment_quadrature(d, {n, i}, k).value;
          CAPTURE(d.name());
          CAPTURE(n);
          CAPTURE(i);
          CAPTURE(k);
          CHECK(std::fabs(quad - oracle) <= 1e-8 * (1.0 + oracle));
        }
      }
    }
  }
}

TEST_CASE("rank monotonicity for nonnegative-support laws") {
  for (const auto& d :
       {Distribution::uniform01(), Distribution::exponential1()}) {
    double prev = 0.0;
    for (int i = 1; i <= 7; ++i) {
      const double v = moment_quadrature(d, {7, i}, 1.5).value;
      CAPTURE(d.name());
      CAPTURE(i);
      CHECK(v >= prev - 1e-12);
      prev = v;
    }
  }
}

TEST_CASE("symmetric law gives rank-mirror symmetry") {
  const auto tp = Distribution::two_point();
  for (int n : {3, 5, 8}) {
    for (int i = 1; i <= n; ++i) {
      for (double k : {1.0, 2.0}) {
        const double a = moment_discrete_oracle(tp, {n, i}, k).value;
        const double b = moment_discrete_oracle(tp, {n, n - i + 1}, k).value;
        CHECK(a == doctest::Approx(b).epsilon(1e-14));
        const double qa = moment_quadrature(tp, {n, i}, k).value;
        const double qb = moment_quadrature(tp, {n, n - i + 1}, k).value;
        CHECK(qa == doctest::Approx(qb).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("heavy-tail divergence is detected, finite ranks stay finite") {
  const auto p15 = Distribution::pareto(1.5);
  const auto top = moment_quadrature(p15, {5, 5}, 2.0);
  CHECK(top.diverged);
  CHECK(std::isinf(top.value));
  const auto bottom = moment_quadrature(p15, {5, 1}, 2.0);
  CHECK(!bottom.diverged);
  CHECK(bottom.value > 1.0);
  CHECK(std::isfinite(bottom.value));
  // E|X|^delta routes
  CHECK(abs_moment_numeric(p15, 2.0).diverged);
  CHECK(abs_moment_numeric(p15, 1.0).value == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("abs_moment_numeric agrees with closed forms across the zoo") {
  for (const auto& d : make_zoo()) {
    for (double delta : {0.5, 1.0, 2.0}) {
      const auto cf = d.abs_moment_closed_form(delta);
      REQUIRE(cf.has_value());
      const auto num = abs_moment_numeric(d, delta);
      CAPTURE(d.name());
      CAPTURE(delta);
      if (std::isinf(*cf)) {
        CHECK(num.diverged);
      } else {
        CHECK(!num.diverged);
        CHECK(std::fabs(num.value - *cf) <= 1e-7 * *cf);
      }
    }
  }
  // spec examples
  CHECK(abs_moment_numeric(Distribution::uniform01(), 2.0).value ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-10));
  CHECK(abs_moment_numeric(Distribution::standard_normal(), 1.0).value ==
        doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-8));
  CHECK(abs_moment_numeric(Distribution::pareto(3.0), 1.0).value ==
        doctest::Approx(1.5).epsilon(1e-8));
  // discrete: matches the probability-weighted sum to 1e-10
  const auto fa = Distribution::finite_discrete(
      "fa", {{-2.0, 0.2}, {-0.5, 0.3}, {1.0, 0.3}, {3.0, 0.2}});
  for (double delta : {0.5, 1.0, 2.5}) {
    double want = 0.0;
    for (const auto& a : fa.atoms())
      want += a.probability * std::pow(std::fabs(a.value), delta);
    CHECK(std::fabs(abs_moment_numeric(fa, delta).value - want) <= 1e-10);
  }
}

TEST_CASE("monte carlo hits known targets within 4 standard errors") {
  const auto uni = Distribution::uniform01();
  const auto mc = moment_monte_carlo(uni, {5, 3}, 1.0, 100000, 1);
  CHECK(mc.error_bound > 0.0);
  CHECK(std::fabs(mc.value - 0.5) <= 4.0 * mc.error_bound);

  // degenerate law: exactly |a|^k with zero standard error
  const auto deg = Distribution::finite_discrete("deg", {{2.0, 1.0}});
  const auto mdeg = moment_monte_carlo(deg, {4, 2}, 2.0, 1000, 9);
  CHECK(mdeg.value == 4.0);
  CHECK(mdeg.error_bound == 0.0);

  // symmetric two-point median: |X_{2:3}| is identically 1
  const auto tp = Distribution::two_point();
  CHECK(moment_discrete_oracle(tp, {3, 2}, 1.0).value == 1.0);
  const auto mtp = moment_monte_carlo(tp, {3, 2}, 1.0, 5000, 33);
  CHECK(mtp.value == 1.0);
  CHECK(mtp.error_bound == 0.0);

  CHECK_THROWS_AS(moment_monte_carlo(uni, {5, 3}, 1.0, 1, 1),
                  std::domain_error);
}

TEST_CASE("monte carlo determinism and shared-sample equivalence") {
  const auto expo = Distribution::exponential1();
  const auto a = moment_monte_carlo(expo, {7, 4}, 1.5, 20000, 77);
  const auto b = moment_monte_carlo(expo, {7, 4}, 1.5, 20000, 77);
  CHECK(bits_equal(a.value, b.value));
  CHECK(bits_equal(a.error_bound, b.error_bound));

  McCellEvaluator cell(expo, 7, 20000, 77);
  for (int i : {1, 4, 7}) {
    for (double k : {1.0, 1.5, 2.0}) {
      const auto direct = moment_monte_carlo(expo, {7, i}, k, 20000, 77);
      const auto shared = cell.moment(i, k);
      CAPTURE(i);
      CAPTURE(k);
      CHECK(bits_equal(direct.value, shared.value));
      CHECK(bits_equal(direct.error_bound, shared.error_bound));
    }
  }
}

TEST_CASE("monte carlo is backend independent") {
  namespace kk = ordstat::kernels;
  if (!kk::backend_available(kk::Backend::avx2)) {
    MESSAGE("AVX2 unavailable; skipping backend comparison");
    return;
  }
  const auto saved = kk::active_backend();
  const auto nrm = Distribution::standard_normal();
  REQUIRE(kk::set_backend(kk::Backend::scalar));
  const auto s = moment_monte_carlo(nrm, {9, 3}, 2.0, 30000, 5);
  REQUIRE(kk::set_backend(kk::Backend::avx2));
  const auto v = moment_monte_carlo(nrm, {9, 3}, 2.0, 30000, 5);
  kk::set_backend(saved);
  CHECK(bits_equal(s.value, v.value));
  CHECK(bits_equal(s.error_bound, v.error_bound));
}

TEST_CASE("monte carlo tracks quadrature across a mixed grid") {
  // statistical sanity on a few representative cells
  for (const auto& d :
       {Distribution::uniform01(), Distribution::exponential1(),
        Distribution::standard_normal()}) {
    McCellEvaluator cell(d, 9, 50000, 4242);
    for (int i : {1, 5, 9}) {
      for (double k : {1.0, 2.0}) {
        const auto mc = cell.moment(i, k);
        const auto q = moment_quadrature(d, {9, i}, k);
        CAPTURE(d.name());
        CAPTURE(i);
        CAPTURE(k);
        CHECK(std::fabs(mc.value - q.value) <= 5.0 * mc.error_bound);
      }
    }
  }
}

TEST_CASE("scale covariance of moments") {
  const auto uni = Distribution::uniform01();
  const auto sc = uni.scaled_by(10.0);
  for (double k : {1.0, 2.0, 2.5}) {
    const double base = moment_quadrature(uni, {6, 4}, k).value;
    const double scaled = moment_quadrature(sc, {6, 4}, k).value;
    CHECK(scaled == doctest::Approx(std::pow(10.0, k) * base).epsilon(1e-9));
  }
}
