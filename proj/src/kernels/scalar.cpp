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

#include "kernel_table.hpp"
#include "scalar_core.hpp"

namespace ordstat::kernels {

namespace {

void exp_array_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::exp_one(x[i]);
}

void log_array_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::log_one(x[i]);
}

void abs_pow_array_scalar(const double* x, double k, double* out,
                          std::size_t n) {
  int m = 0;
  const detail::PowRoute route = detail::pow_route(k, m);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = detail::abs_pow_one(x[i], k, route, m);
}

void normal_quantile_array_scalar(const double* u, double* out,
                                  std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = detail::normal_quantile_one(u[i]);
}

void uniform_stream_fill_scalar(std::uint64_t key, std::uint64_t ctr0,
                                double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    out[i] = detail::unit_double_from(detail::mix64_at(key, ctr0 + i));
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {
      &exp_array_scalar,
      &log_array_scalar,
      &abs_pow_array_scalar,
      &normal_quantile_array_scalar,
      &uniform_stream_fill_scalar,
      &detail::block_sum_ref,
      &detail::block_sum_sq_dev_ref,
  };
  return t;
}

}  // namespace ordstat::kernels
