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

// AVX2 kernel variants. Each function mirrors the operation sequence of its
// scalar reference in scalar_core.hpp exactly (same fma placement, same
// rounding steps), so lane results are bit-identical to the scalar path.
// Remainder elements fall through to the scalar reference.

#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <limits>

#include "kernel_table.hpp"
#include "scalar_core.hpp"

namespace ordstat::kernels {

namespace {

using namespace detail;

inline __m256d vset(double v) { return _mm256_set1_pd(v); }

inline __m256i mullo64(__m256i a, __m256i b) {
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i ahi = _mm256_srli_epi64(a, 32);
  const __m256i bhi = _mm256_srli_epi64(b, 32);
  const __m256i mid =
      _mm256_add_epi64(_mm256_mul_epu32(ahi, b), _mm256_mul_epu32(a, bhi));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(mid, 32));
}

// Pack the low 32 bits of each 64-bit lane into a __m128i.
inline __m128i pack_i64_lo32(__m256i v) {
  const __m256i idx = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  return _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(v, idx));
}

inline __m256d pow2_from_i32(__m128i e) {
  const __m256i wide = _mm256_cvtepi32_epi64(e);
  const __m256i bits =
      _mm256_slli_epi64(_mm256_add_epi64(wide, _mm256_set1_epi64x(1023)), 52);
  return _mm256_castsi256_pd(bits);
}

__m256d exp_vec(__m256d x) {
  const __m256d inf = vset(std::numeric_limits<double>::infinity());
  const __m256d nan_mask = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  const __m256d hi_mask = _mm256_cmp_pd(x, vset(kExpHi), _CMP_GT_OQ);
  const __m256d lo_mask = _mm256_cmp_pd(x, vset(kExpLo), _CMP_LT_OQ);
  const __m256d xc =
      _mm256_min_pd(_mm256_max_pd(x, vset(kExpLo)), vset(kExpHi));

  const __m256d nd = _mm256_round_pd(
      _mm256_mul_pd(xc, vset(kLog2E)),
      _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(nd, vset(kLn2Hi), xc);
  r = _mm256_fnmadd_pd(nd, vset(kLn2Lo), r);
  const __m256d rr = _mm256_mul_pd(r, r);
  const __m256d p = _mm256_mul_pd(
      r, _mm256_fmadd_pd(rr, _mm256_fmadd_pd(rr, vset(kExpP0), vset(kExpP1)),
                         vset(kExpP2)));
  const __m256d q = _mm256_fmadd_pd(
      rr,
      _mm256_fmadd_pd(rr, _mm256_fmadd_pd(rr, vset(kExpQ0), vset(kExpQ1)),
                      vset(kExpQ2)),
      vset(kExpQ3));
  const __m256d e = _mm256_div_pd(p, _mm256_sub_pd(q, p));
  __m256d y = _mm256_fmadd_pd(vset(2.0), e, vset(1.0));

  const __m128i ni = _mm256_cvtpd_epi32(nd);
  const __m128i n1 = _mm256_cvttpd_epi32(_mm256_mul_pd(nd, vset(0.5)));
  const __m128i n2 = _mm_sub_epi32(ni, n1);
  y = _mm256_mul_pd(_mm256_mul_pd(y, pow2_from_i32(n1)), pow2_from_i32(n2));

  y = _mm256_blendv_pd(y, _mm256_setzero_pd(), lo_mask);
  y = _mm256_blendv_pd(y, inf, hi_mask);
  y = _mm256_blendv_pd(y, x, nan_mask);
  return y;
}

__m256d log_vec(__m256d x) {
  const __m256d inf = vset(std::numeric_limits<double>::infinity());
  const __m256d nan_mask = _mm256_cmp_pd(x, x, _CMP_UNORD_Q);
  const __m256d zero_mask = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_EQ_OQ);
  const __m256d neg_mask = _mm256_cmp_pd(x, _mm256_setzero_pd(), _CMP_LT_OQ);
  const __m256d inf_mask = _mm256_cmp_pd(x, inf, _CMP_EQ_OQ);
  const __m256d sub_mask =
      _mm256_cmp_pd(x, vset(std::numeric_limits<double>::min()), _CMP_LT_OQ);

  const __m256d xs =
      _mm256_blendv_pd(x, _mm256_mul_pd(x, vset(0x1p54)), sub_mask);
  const __m256d esub = _mm256_blendv_pd(_mm256_setzero_pd(), vset(-54.0),
                                        sub_mask);
  const __m256i bits = _mm256_castpd_si256(xs);
  const __m128i eraw = pack_i64_lo32(_mm256_srli_epi64(bits, 52));
  __m256d e = _mm256_add_pd(
      _mm256_sub_pd(_mm256_cvtepi32_pd(eraw), vset(1022.0)), esub);
  __m256d m = _mm256_castsi256_pd(_mm256_or_si256(
      _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL)),
      _mm256_set1_epi64x(0x3FE0000000000000LL)));
  const __m256d lo_mask = _mm256_cmp_pd(m, vset(kSqrtHalf), _CMP_LT_OQ);
  m = _mm256_blendv_pd(m, _mm256_add_pd(m, m), lo_mask);
  e = _mm256_blendv_pd(e, _mm256_sub_pd(e, vset(1.0)), lo_mask);

  const __m256d z = _mm256_sub_pd(m, vset(1.0));
  __m256d num = _mm256_fmadd_pd(vset(kLogP0), z, vset(kLogP1));
  num = _mm256_fmadd_pd(num, z, vset(kLogP2));
  num = _mm256_fmadd_pd(num, z, vset(kLogP3));
  num = _mm256_fmadd_pd(num, z, vset(kLogP4));
  num = _mm256_fmadd_pd(num, z, vset(kLogP5));
  __m256d den = _mm256_add_pd(z, vset(kLogQ0));
  den = _mm256_fmadd_pd(den, z, vset(kLogQ1));
  den = _mm256_fmadd_pd(den, z, vset(kLogQ2));
  den = _mm256_fmadd_pd(den, z, vset(kLogQ3));
  den = _mm256_fmadd_pd(den, z, vset(kLogQ4));
  const __m256d zz = _mm256_mul_pd(z, z);
  __m256d y = _mm256_mul_pd(_mm256_mul_pd(zz, _mm256_div_pd(num, den)), z);
  y = _mm256_fnmadd_pd(vset(0.5), zz, y);
  y = _mm256_fmadd_pd(e, vset(kLogCLo), y);
  __m256d r = _mm256_add_pd(z, y);
  r = _mm256_fmadd_pd(e, vset(kLogCHi), r);

  r = _mm256_blendv_pd(r, inf, inf_mask);
  r = _mm256_blendv_pd(r, vset(std::numeric_limits<double>::quiet_NaN()),
                       neg_mask);
  r = _mm256_blendv_pd(r, vset(-std::numeric_limits<double>::infinity()),
                       zero_mask);
  r = _mm256_blendv_pd(r, x, nan_mask);
  return r;
}

void exp_array_avx2(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, exp_vec(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = exp_one(x[i]);
}

void log_array_avx2(const double* x, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, log_vec(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) out[i] = log_one(x[i]);
}

inline __m256d vabs(__m256d x) {
  return _mm256_andnot_pd(vset(-0.0), x);
}

inline __m256d ipow_vec(__m256d y, int m) {
  __m256d r = (m & 1) ? y : vset(1.0);
  __m256d b = y;
  for (int mm = m >> 1; mm != 0; mm >>= 1) {
    b = _mm256_mul_pd(b, b);
    if (mm & 1) r = _mm256_mul_pd(r, b);
  }
  return r;
}

void abs_pow_array_avx2(const double* x, double k, double* out,
                        std::size_t n) {
  int m = 0;
  const PowRoute route = pow_route(k, m);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d y = vabs(_mm256_loadu_pd(x + i));
    __m256d r;
    switch (route) {
      case PowRoute::integer:
        r = ipow_vec(y, m);
        break;
      case PowRoute::half_integer:
        r = _mm256_mul_pd(ipow_vec(y, m), _mm256_sqrt_pd(y));
        break;
      case PowRoute::generic:
      default:
        r = exp_vec(_mm256_mul_pd(vset(k), log_vec(y)));
        break;
    }
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = abs_pow_one(x[i], k, route, m);
}

inline __m256d poly7_vec(const double c[8], __m256d t) {
  __m256d r = vset(c[7]);
  r = _mm256_fmadd_pd(r, t, vset(c[6]));
  r = _mm256_fmadd_pd(r, t, vset(c[5]));
  r = _mm256_fmadd_pd(r, t, vset(c[4]));
  r = _mm256_fmadd_pd(r, t, vset(c[3]));
  r = _mm256_fmadd_pd(r, t, vset(c[2]));
  r = _mm256_fmadd_pd(r, t, vset(c[1]));
  r = _mm256_fmadd_pd(r, t, vset(c[0]));
  return r;
}

__m256d normal_quantile_vec(__m256d u) {
  const __m256d q = _mm256_sub_pd(u, vset(0.5));
  const __m256d central_mask =
      _mm256_cmp_pd(vabs(q), vset(0.425), _CMP_LE_OQ);
  const __m256d rc = _mm256_fnmadd_pd(q, q, vset(0.180625));
  const __m256d xc = _mm256_mul_pd(
      q, _mm256_div_pd(poly7_vec(kNqA, rc), poly7_vec(kNqB, rc)));
  if (_mm256_movemask_pd(central_mask) == 0xF) return xc;

  const __m256d q_neg = _mm256_cmp_pd(q, _mm256_setzero_pd(), _CMP_LT_OQ);
  const __m256d ru = _mm256_blendv_pd(_mm256_sub_pd(vset(1.0), u), u, q_neg);
  const __m256d s = _mm256_sqrt_pd(
      _mm256_xor_pd(log_vec(ru), vset(-0.0)));
  const __m256d near_mask = _mm256_cmp_pd(s, vset(5.0), _CMP_LE_OQ);
  const __m256d t1 = _mm256_sub_pd(s, vset(1.6));
  const __m256d x1 = _mm256_div_pd(poly7_vec(kNqC, t1), poly7_vec(kNqD, t1));
  const __m256d t2 = _mm256_sub_pd(s, vset(5.0));
  const __m256d x2 = _mm256_div_pd(poly7_vec(kNqE, t2), poly7_vec(kNqF, t2));
  __m256d xt = _mm256_blendv_pd(x2, x1, near_mask);
  xt = _mm256_blendv_pd(xt, _mm256_xor_pd(xt, vset(-0.0)), q_neg);
  return _mm256_blendv_pd(xt, xc, central_mask);
}

void normal_quantile_array_avx2(const double* u, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(out + i, normal_quantile_vec(_mm256_loadu_pd(u + i)));
  for (; i < n; ++i) out[i] = normal_quantile_one(u[i]);
}

void uniform_stream_fill_avx2(std::uint64_t key, std::uint64_t ctr0,
                              double* out, std::size_t n) {
  const __m256i vkey = _mm256_set1_epi64x(static_cast<long long>(key));
  const __m256i vgamma = _mm256_set1_epi64x(static_cast<long long>(kGamma));
  const __m256i vm1 = _mm256_set1_epi64x(static_cast<long long>(kMixM1));
  const __m256i vm2 = _mm256_set1_epi64x(static_cast<long long>(kMixM2));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const std::uint64_t base = ctr0 + i + 1;  // mix64_at uses index + 1
    const __m256i idx = _mm256_add_epi64(
        _mm256_set1_epi64x(static_cast<long long>(base)),
        _mm256_setr_epi64x(0, 1, 2, 3));
    __m256i z = _mm256_add_epi64(vkey, mullo64(idx, vgamma));
    z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 30)), vm1);
    z = mullo64(_mm256_xor_si256(z, _mm256_srli_epi64(z, 27)), vm2);
    z = _mm256_xor_si256(z, _mm256_srli_epi64(z, 31));
    const __m256i z12 = _mm256_srli_epi64(z, 12);
    const __m256d d = _mm256_sub_pd(
        _mm256_castsi256_pd(_mm256_or_si256(
            z12, _mm256_set1_epi64x(0x4330000000000000LL))),
        vset(0x1p52));
    _mm256_storeu_pd(out + i,
                     _mm256_mul_pd(_mm256_add_pd(d, vset(0.5)), vset(0x1p-52)));
  }
  for (; i < n; ++i) out[i] = unit_double_from(mix64_at(key, ctr0 + i));
}

double block_sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);  // (a0+a2, a1+a3)
  double s = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (; i < n; ++i) s += x[i];
  return s;
}

double block_sum_sq_dev_avx2(const double* x, std::size_t n, double mean) {
  const __m256d vm = vset(mean);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), vm);
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  double s = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (; i < n; ++i) {
    const double d = x[i] - mean;
    s = std::fma(d, d, s);
  }
  return s;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t = {
      &exp_array_avx2,
      &log_array_avx2,
      &abs_pow_array_avx2,
      &normal_quantile_array_avx2,
      &uniform_stream_fill_avx2,
      &block_sum_avx2,
      &block_sum_sq_dev_avx2,
  };
  return t;
}

}  // namespace ordstat::kernels
