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

#include <cstddef>
#include <cstdint>

namespace ordstat::kernels {

/// Array kernels come in two variants: a scalar reference implementation and
/// an AVX2 one selected at runtime. The two are written to execute the same
/// IEEE operation sequence per element, so results are bit-identical whichever
/// backend runs (the equivalence tests enforce this).
enum class Backend { scalar, avx2 };

Backend active_backend();
const char* backend_name(Backend b);

/// Force a backend (used by tests and the ORDSTAT_KERNELS env var).
/// Returns false if the requested backend is not available on this CPU.
bool set_backend(Backend b);
bool backend_available(Backend b);

// Elementwise transforms. `x` and `out` may alias. NaN propagates; infinities
// and zeros follow the usual conventions (exp(-inf)=0, log(0)=-inf, ...).
void exp_array(const double* x, double* out, std::size_t n);
void log_array(const double* x, double* out, std::size_t n);

/// out[i] = |x[i]|^k for a fixed k > 0, with |0|^k = 0. Small integer and
/// half-integer exponents take exact multiply/sqrt paths; other exponents go
/// through exp(k*log|x|).
void abs_pow_array(const double* x, double k, double* out, std::size_t n);

/// Standard normal quantile (lower tail), u in (0,1). Rational approximation
/// accurate to well below 1e-9 absolute over (1e-12, 1-1e-12) and usable for
/// subnormal u.
void normal_quantile_array(const double* u, double* out, std::size_t n);

/// Counter-based uniform stream: out[j] = unit_double(mix64(key, ctr0 + j)).
/// Values lie strictly inside (0,1). Any (key, counter) cell can be
/// regenerated independently, which is what makes parallel sweeps and the
/// single-cell API produce identical draws.
void uniform_stream_fill(std::uint64_t key, std::uint64_t ctr0, double* out,
                         std::size_t n);

/// Fixed-shape (4-accumulator) blocked sums. The accumulation pattern is part
/// of the contract: it is what makes the scalar and AVX2 variants, and runs
/// with different thread counts, agree bitwise.
double block_sum(const double* x, std::size_t n);
double block_sum_sq_dev(const double* x, std::size_t n, double mean);

/// SplitMix64 evaluated at an arbitrary stream position.
std::uint64_t mix64(std::uint64_t key, std::uint64_t index);
double unit_double(std::uint64_t bits);

}  // namespace ordstat::kernels
