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
#include <stdexcept>
#include <vector>

#include "ordstat/special.hpp"

using namespace ordstat;

namespace {

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> v(n);
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) v[i] = std::exp(a + (b - a) * i / (n - 1));
  return v;
}

}  // namespace

TEST_CASE("log_gamma at exactly known points") {
  CHECK(std::fabs(sf::log_gamma(1.0)) <= 1e-14);
  CHECK(std::fabs(sf::log_gamma(2.0)) <= 1e-14);
  CHECK(sf::log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(sf::log_gamma(0.5) ==
        doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
}

TEST_CASE("log_gamma matches factorials for integer arguments") {
  double fact = 1.0;
  for (int m = 1; m <= 20; ++m) {
    fact *= m;
    const double got = std::exp(sf::log_gamma(m + 1.0));
    CHECK(std::fabs(got - fact) <= 1e-10 * fact);
  }
}

TEST_CASE("log_gamma recurrence consistency over [0.5, 1e3]") {
  for (double x : log_grid(0.5, 1000.0, 4000)) {
    const double resid =
        sf::log_gamma(x + 1.0) - sf::log_gamma(x) - std::log(x);
    CAPTURE(x);
    CHECK(std::fabs(resid) <= 1e-11);
  }
}

TEST_CASE("log_gamma against the C library, including small arguments") {
  for (double x : log_grid(1e-6, 1000.0, 4000)) {
    const double ref = static_cast<double>(lgammal(static_cast<long double>(x)));
    CAPTURE(x);
    CHECK(std::fabs(sf::log_gamma(x) - ref) <= 1e-12);
  }
}

TEST_CASE("log_gamma rejects bad input") {
  CHECK_THROWS_AS(sf::log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(sf::log_gamma(-3.0), std::domain_error);
  CHECK_THROWS_AS(sf::log_gamma(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(sf::log_gamma(INFINITY), std::domain_error);
}

TEST_CASE("log_beta identities") {
  CHECK(std::fabs(sf::log_beta(1.0, 1.0)) <= 1e-13);
  CHECK(sf::log_beta(2.0, 3.0) ==
        doctest::Approx(-std::log(12.0)).epsilon(1e-12));
  // B(i, n-i+1) = 1/(n * binom(n-1, i-1)); (i, n) = (3, 10) -> 1/360
  CHECK(sf::log_beta(3.0, 8.0) ==
        doctest::Approx(-std::log(360.0)).epsilon(1e-12));
  // symmetric formula is exactly symmetric as computed
  for (double a : {0.3, 1.0, 2.5, 17.0, 123.456}) {
    for (double b : {0.7, 3.0, 55.5}) {
      CHECK(sf::log_beta(a, b) == sf::log_beta(b, a));
    }
  }
}

TEST_CASE("gamma_ratio exact and large-argument behavior") {
  CHECK(sf::gamma_ratio(11.0, 9.0) == doctest::Approx(90.0).epsilon(1e-10));
  CHECK(sf::gamma_ratio(3.0, 3.0) == 1.0);
  CHECK(sf::gamma_ratio(5.5, 4.5) == doctest::Approx(4.5).epsilon(1e-12));
  // Gamma(x+1)/Gamma(x) = x at x = 1e6: a naive log_gamma subtraction would
  // only get ~1e-9 here.
  CHECK(sf::gamma_ratio(1e6 + 1.0, 1e6) ==
        doctest::Approx(1e6).epsilon(1e-12));
  CHECK(sf::gamma_ratio(1e6, 1e6 - 2.0) ==
        doctest::Approx((1e6 - 1.0) * (1e6 - 2.0)).epsilon(1e-12));
  // half-integer shift against a telescoped reference
  CHECK(sf::gamma_ratio(20.5, 16.5) ==
        doctest::Approx(19.5 * 18.5 * 17.5 * 16.5).epsilon(1e-12));
  CHECK_THROWS_AS(sf::gamma_ratio(500.0, 1.0), std::overflow_error);
  CHECK_THROWS_AS(sf::gamma_ratio(-1.0, 1.0), std::domain_error);
}

TEST_CASE("stirling sandwich brackets Gamma(1+x) on the wide grid") {
  for (double x : log_grid(1e-3, 1e3, 200)) {
    const auto s = sf::stirling_sandwich(x);
    CAPTURE(x);
    CHECK(s.brackets());
    CHECK(s.log_margin_lower() > 0.0);
    CHECK(s.log_margin_upper() > 0.0);
  }
}

TEST_CASE("stirling sandwich pointwise values") {
  {
    const auto s = sf::stirling_sandwich(2.0);
    const double lower_ref =
        std::sqrt(2.0 * M_PI) * std::pow(2.0, 2.5) * std::exp(-2.0);
    CHECK(s.lower() == doctest::Approx(lower_ref).epsilon(1e-13));
    CHECK(s.lower() == doctest::Approx(1.9190).epsilon(1e-4));
    CHECK(s.value_hint() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.upper() == doctest::Approx(lower_ref * std::exp(1.0 / 24.0))
                           .epsilon(1e-13));
    CHECK(s.upper() == doctest::Approx(2.0008).epsilon(1e-4));
    CHECK(s.lower() < 2.0);
    CHECK(2.0 < s.upper());
  }
  {
    const auto s = sf::stirling_sandwich(1.0);
    CHECK(s.lower() == doctest::Approx(0.9221).epsilon(1e-4));
    CHECK(s.upper() == doctest::Approx(1.0023).epsilon(1e-4));
    CHECK(s.lower() < 1.0);
    CHECK(1.0 < s.upper());
  }
  {
    // ratio upper/lower is e^(1/(12x)) by construction
    const auto s = sf::stirling_sandwich(100.0);
    CHECK(s.log_upper - s.log_lower ==
          doctest::Approx(1.0 / 1200.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(sf::stirling_sandwich(0.0), std::domain_error);
  CHECK_THROWS_AS(sf::stirling_sandwich(-1.0), std::domain_error);
}
