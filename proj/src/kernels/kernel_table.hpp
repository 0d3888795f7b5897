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

struct KernelTable {
  void (*exp_array)(const double*, double*, std::size_t);
  void (*log_array)(const double*, double*, std::size_t);
  void (*abs_pow_array)(const double*, double, double*, std::size_t);
  void (*normal_quantile_array)(const double*, double*, std::size_t);
  void (*uniform_stream_fill)(std::uint64_t, std::uint64_t, double*,
                              std::size_t);
  double (*block_sum)(const double*, std::size_t);
  double (*block_sum_sq_dev)(const double*, std::size_t, double);
};

const KernelTable& scalar_table();
#ifdef ORDSTAT_HAVE_AVX2_TU
const KernelTable& avx2_table();
#endif

}  // namespace ordstat::kernels
