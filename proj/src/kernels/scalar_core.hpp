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

// Scalar reference kernels. These define the exact operation sequence; the
// AVX2 variants in avx2.cpp mirror it instruction for instruction (same
// rounding, same fma placement), which is what the bit-equivalence tests pin
// down. Keep any change here in lockstep with avx2.cpp.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace ordstat::kernels::detail {

// ---------------------------------------------------------------------------
// exp, Cephes-style rational approximation, ~1 ulp.
// ---------------------------------------------------------------------------

inline constexpr double kLog2E = 1.4426950408889634073599;
inline constexpr double kLn2Hi = 6.93145751953125e-1;
inline constexpr double kLn2Lo = 1.42860682030941723212e-6;
inline constexpr double kExpHi = 709.782712893383996843;
inline constexpr double kExpLo = -745.2;  // below the smallest subnormal's log

inline constexpr double kExpP0 = 1.26177193074810590878e-4;
inline constexpr double kExpP1 = 3.02994407707441961300e-2;
inline constexpr double kExpP2 = 9.99999999999999999910e-1;
inline constexpr double kExpQ0 = 3.00198505138664455042e-6;
inline constexpr double kExpQ1 = 2.52448340349684104192e-3;
inline constexpr double kExpQ2 = 2.27265548208155028766e-1;
inline constexpr double kExpQ3 = 2.00000000000000000005e0;

inline double pow2i(int e) {
  return std::bit_cast<double>(static_cast<std::uint64_t>(1023 + e) << 52);
}

inline double exp_one(double x) {
  if (std::isnan(x)) return x;
  if (x > kExpHi) return std::numeric_limits<double>::infinity();
  if (x < kExpLo) return 0.0;
  const double nd = std::nearbyint(x * kLog2E);
  double r = std::fma(-nd, kLn2Hi, x);
  r = std::fma(-nd, kLn2Lo, r);
  const double rr = r * r;
  const double p = r * std::fma(rr, std::fma(rr, kExpP0, kExpP1), kExpP2);
  const double q =
      std::fma(rr, std::fma(rr, std::fma(rr, kExpQ0, kExpQ1), kExpQ2), kExpQ3);
  const double e = p / (q - p);
  double y = std::fma(2.0, e, 1.0);
  // Scale by 2^n in two exact power-of-two multiplies so gradual underflow
  // rounds once, at the end.
  const int ni = static_cast<int>(nd);
  const int n1 = ni / 2;
  const int n2 = ni - n1;
  y = y * pow2i(n1);
  y = y * pow2i(n2);
  return y;
}

// ---------------------------------------------------------------------------
// log, Cephes-style rational approximation, ~1 ulp relative away from 1.
// ---------------------------------------------------------------------------

inline constexpr double kSqrtHalf = 0.70710678118654752440;
inline constexpr double kLogCHi = 0.693359375;
inline constexpr double kLogCLo = -2.121944400546905827679e-4;

inline constexpr double kLogP0 = 1.01875663804580931796e-4;
inline constexpr double kLogP1 = 4.97494994976747001425e-1;
inline constexpr double kLogP2 = 4.70579119878881725854e0;
inline constexpr double kLogP3 = 1.44989225341610930846e1;
inline constexpr double kLogP4 = 1.79368678507819816313e1;
inline constexpr double kLogP5 = 7.70838733755885391666e0;
inline constexpr double kLogQ0 = 1.12873587189167450590e1;
inline constexpr double kLogQ1 = 4.52279145837532221105e1;
inline constexpr double kLogQ2 = 8.29875266912776603211e1;
inline constexpr double kLogQ3 = 7.11544750618563894466e1;
inline constexpr double kLogQ4 = 2.31251620126765340583e1;

inline double log_one(double x) {
  if (std::isnan(x)) return x;
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  if (x < 0.0) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(x)) return x;
  double xs = x;
  double esub = 0.0;
  if (xs < std::numeric_limits<double>::min()) {
    xs *= 0x1p54;
    esub = -54.0;
  }
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(xs);
  double e = static_cast<double>(static_cast<int>(bits >> 52) - 1022) + esub;
  double m = std::bit_cast<double>((bits & 0x000FFFFFFFFFFFFFULL) |
                                   0x3FE0000000000000ULL);
  if (m < kSqrtHalf) {
    m = m + m;
    e = e - 1.0;
  }
  const double z = m - 1.0;
  const double num = std::fma(
      std::fma(std::fma(std::fma(std::fma(kLogP0, z, kLogP1), z, kLogP2), z,
                        kLogP3),
               z, kLogP4),
      z, kLogP5);
  const double den = std::fma(
      std::fma(std::fma(std::fma(z + kLogQ0, z, kLogQ1), z, kLogQ2), z,
               kLogQ3),
      z, kLogQ4);
  const double zz = z * z;
  double y = (zz * (num / den)) * z;
  y = std::fma(-0.5, zz, y);
  y = std::fma(e, kLogCLo, y);
  double r = z + y;
  r = std::fma(e, kLogCHi, r);
  return r;
}

// ---------------------------------------------------------------------------
// |x|^k with a fixed exponent. Route is chosen once per call from k.
// ---------------------------------------------------------------------------

enum class PowRoute { integer, half_integer, generic };

inline PowRoute pow_route(double k, int& m) {
  if (k > 0.0 && k <= 32.0 && k == std::nearbyint(k)) {
    m = static_cast<int>(k);
    return PowRoute::integer;
  }
  if (k > 0.0 && k <= 32.5 && 2.0 * k == std::nearbyint(2.0 * k)) {
    m = static_cast<int>(k - 0.5);
    return PowRoute::half_integer;
  }
  m = 0;
  return PowRoute::generic;
}

inline double ipow_one(double y, int m) {
  double r = (m & 1) ? y : 1.0;
  double b = y;
  for (int mm = m >> 1; mm != 0; mm >>= 1) {
    b = b * b;
    if (mm & 1) r = r * b;
  }
  return r;
}

inline double abs_pow_one(double x, double k, PowRoute route, int m) {
  const double y = std::fabs(x);
  switch (route) {
    case PowRoute::integer:
      return ipow_one(y, m);
    case PowRoute::half_integer:
      return ipow_one(y, m) * std::sqrt(y);
    case PowRoute::generic:
    default:
      return exp_one(k * log_one(y));
  }
}

// ---------------------------------------------------------------------------
// Standard normal quantile, Wichura's PPND16 rational approximation.
// ---------------------------------------------------------------------------

inline constexpr double kNqA[8] = {
    3.3871328727963666080e0,  1.3314166789178437745e+2,
    1.9715909503065514427e+3, 1.3731693765509461125e+4,
    4.5921953931549871457e+4, 6.7265770927008700853e+4,
    3.3430575583588128105e+4, 2.5090809287301226727e+3};
inline constexpr double kNqB[8] = {
    1.0,                      4.2313330701600911252e+1,
    6.8718700749205790830e+2, 5.3941960214247511077e+3,
    2.1213794301586595867e+4, 3.9307895800092710610e+4,
    2.8729085735721942674e+4, 5.2264952788528545610e+3};
inline constexpr double kNqC[8] = {
    1.42343711074968357734e0,  4.63033784615654529590e0,
    5.76949722146069140550e0,  3.64784832476320460504e0,
    1.27045825245236838258e0,  2.41780725177450611770e-1,
    2.27238449892691845833e-2, 7.74545014278341407640e-4};
inline constexpr double kNqD[8] = {
    1.0,                       2.05319162663775882187e0,
    1.67638483018380384940e0,  6.89767334985100004550e-1,
    1.48103976427480074590e-1, 1.51986665636164571966e-2,
    5.47593808499534494600e-4, 1.05075007164441684324e-9};
inline constexpr double kNqE[8] = {
    6.65790464350110377720e0,  5.46378491116411436990e0,
    1.78482653991729133580e0,  2.96560571828504891230e-1,
    2.65321895265761230930e-2, 1.24266094738807843860e-3,
    2.71155556874348757815e-5, 2.01033439929228813265e-7};
inline constexpr double kNqF[8] = {
    1.0,                       5.99832206555887937690e-1,
    1.36929880922735805310e-1, 1.48753612908506148525e-2,
    7.86869131145613259100e-4, 1.84631831751005468180e-5,
    1.42151175831644588870e-7, 2.04426310338993978564e-15};

inline double poly7(const double c[8], double t) {
  double r = c[7];
  r = std::fma(r, t, c[6]);
  r = std::fma(r, t, c[5]);
  r = std::fma(r, t, c[4]);
  r = std::fma(r, t, c[3]);
  r = std::fma(r, t, c[2]);
  r = std::fma(r, t, c[1]);
  r = std::fma(r, t, c[0]);
  return r;
}

inline double normal_quantile_one(double u) {
  const double q = u - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = std::fma(-q, q, 0.180625);
    return q * (poly7(kNqA, r) / poly7(kNqB, r));
  }
  const double ru = (q < 0.0) ? u : 1.0 - u;
  const double s = std::sqrt(-log_one(ru));
  double x;
  if (s <= 5.0) {
    const double t = s - 1.6;
    x = poly7(kNqC, t) / poly7(kNqD, t);
  } else {
    const double t = s - 5.0;
    x = poly7(kNqE, t) / poly7(kNqF, t);
  }
  return (q < 0.0) ? -x : x;
}

// ---------------------------------------------------------------------------
// Counter-based RNG: SplitMix64 indexed at an absolute stream position.
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kMixM1 = 0xBF58476D1CE4E5B9ULL;
inline constexpr std::uint64_t kMixM2 = 0x94D049BB133111EBULL;

inline std::uint64_t mix64_at(std::uint64_t key, std::uint64_t index) {
  std::uint64_t z = key + (index + 1) * kGamma;
  z = (z ^ (z >> 30)) * kMixM1;
  z = (z ^ (z >> 27)) * kMixM2;
  return z ^ (z >> 31);
}

inline double unit_double_from(std::uint64_t z) {
  return (static_cast<double>(z >> 12) + 0.5) * 0x1p-52;
}

// ---------------------------------------------------------------------------
// Fixed-shape reductions: four independent accumulators over blocks of four,
// folded as (a0+a2)+(a1+a3), serial tail. The AVX2 variant reproduces this
// exactly with a single vector accumulator.
// ---------------------------------------------------------------------------

inline double block_sum_ref(const double* x, std::size_t n) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    a0 += x[i];
    a1 += x[i + 1];
    a2 += x[i + 2];
    a3 += x[i + 3];
  }
  double s = (a0 + a2) + (a1 + a3);
  for (; i < n; ++i) s += x[i];
  return s;
}

inline double block_sum_sq_dev_ref(const double* x, std::size_t n,
                                   double mean) {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const double d0 = x[i] - mean;
    const double d1 = x[i + 1] - mean;
    const double d2 = x[i + 2] - mean;
    const double d3 = x[i + 3] - mean;
    a0 = std::fma(d0, d0, a0);
    a1 = std::fma(d1, d1, a1);
    a2 = std::fma(d2, d2, a2);
    a3 = std::fma(d3, d3, a3);
  }
  double s = (a0 + a2) + (a1 + a3);
  for (; i < n; ++i) {
    const double d = x[i] - mean;
    s = std::fma(d, d, s);
  }
  return s;
}

}  // namespace ordstat::kernels::detail
