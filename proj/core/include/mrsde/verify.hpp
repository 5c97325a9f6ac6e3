/*
 * Copyright 2026 The mrsde Authors
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
 */

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mrsde::verify {

/// Self-contained verification checks pitting the library against
/// independent brute-force computations (Gaussian products, quadrature,
/// Monte Carlo simulation, direct measurements). Each check pins its own
/// tolerances; together they form the toolkit's acceptance gate, runnable
/// both from the CLI (`verify`) and the test suite.

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  /// Run only the named check when non-empty.
  std::string only;
  std::uint64_t seed = 0;
  int workers = 0;  // 0 = hardware concurrency (Monte Carlo check only)
  /// Test hook: simulate a build whose posterior variance lost its lambda^2
  /// factor; the conjugacy check must then fail.
  bool corrupt_posterior_variance = false;
};

const std::vector<std::string>& check_names();

/// Runs the selected checks in order. Throws std::invalid_argument if
/// `options.only` names no known check.
std::vector<CheckResult> run_checks(const VerifyOptions& options = {});

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.passed) return false;
  }
  return !results.empty();
}

}  // namespace mrsde::verify
