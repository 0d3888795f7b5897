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

#include "ordstat/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "kernel_table.hpp"
#include "scalar_core.hpp"

namespace ordstat::kernels {

namespace {

bool cpu_has_avx2() {
#ifdef ORDSTAT_HAVE_AVX2_TU
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable* table_for(Backend b) {
#ifdef ORDSTAT_HAVE_AVX2_TU
  if (b == Backend::avx2) return &avx2_table();
#endif
  (void)b;
  return &scalar_table();
}

struct State {
  std::atomic<const KernelTable*> table;
  std::atomic<Backend> backend;
  State() {
    Backend b = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
    if (const char* env = std::getenv("ORDSTAT_KERNELS")) {
      if (std::strcmp(env, "scalar") == 0) b = Backend::scalar;
      else if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2())
        b = Backend::avx2;
    }
    backend.store(b);
    table.store(table_for(b));
  }
};

State& state() {
  static State s;
  return s;
}

const KernelTable& active() { return *state().table.load(std::memory_order_relaxed); }

}  // namespace

Backend active_backend() { return state().backend.load(); }

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) {
  return b == Backend::scalar || cpu_has_avx2();
}

bool set_backend(Backend b) {
  if (!backend_available(b)) return false;
  state().backend.store(b);
  state().table.store(table_for(b));
  return true;
}

void exp_array(const double* x, double* out, std::size_t n) {
  active().exp_array(x, out, n);
}

void log_array(const double* x, double* out, std::size_t n) {
  active().log_array(x, out, n);
}

void abs_pow_array(const double* x, double k, double* out, std::size_t n) {
  active().abs_pow_array(x, k, out, n);
}

void normal_quantile_array(const double* u, double* out, std::size_t n) {
  active().normal_quantile_array(u, out, n);
}

void uniform_stream_fill(std::uint64_t key, std::uint64_t ctr0, double* out,
                         std::size_t n) {
  active().uniform_stream_fill(key, ctr0, out, n);
}

double block_sum(const double* x, std::size_t n) {
  return active().block_sum(x, n);
}

double block_sum_sq_dev(const double* x, std::size_t n, double mean) {
  return active().block_sum_sq_dev(x, n, mean);
}

std::uint64_t mix64(std::uint64_t key, std::uint64_t index) {
  return detail::mix64_at(key, index);
}

double unit_double(std::uint64_t bits) {
  return detail::unit_double_from(bits);
}

}  // namespace ordstat::kernels
