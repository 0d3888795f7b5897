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

#include <stdexcept>
#include <string>

namespace ordstat {

/// Bad user input: unknown names, malformed files, out-of-range parameters.
/// The CLI maps this to exit code 2.
struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A numeric routine could not reach its accuracy target and has no
/// divergence evidence. Distinct from divergence, which is a result, not an
/// error. The CLI maps this to exit code 3.
struct ToleranceFailure : std::runtime_error {
  explicit ToleranceFailure(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace ordstat
