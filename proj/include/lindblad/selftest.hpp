// Copyright 2026 The lindbladpp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "lindblad/fockspace.hpp"

#include <cstdint>
#include <random>

namespace lindblad::selftest {

/// Deterministic generator with platform-independent doubles (raw mt19937_64
/// bits, not std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  Complex cnormal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

CMatrix random_matrix(Rng& rng, int n, double scale = 1.0);
CMatrix random_hermitian(Rng& rng, int n, double scale = 1.0);
CMatrix random_positive(Rng& rng, int n, double floor = 0.3);
SystemSpec random_thermal_spec(Rng& rng, int n_modes, double n_T);
SystemSpec random_general_spec(Rng& rng, int n_modes);
TwoModeChannel random_channel(Rng& rng);

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  std::vector<std::string> failures;

  void check(bool ok, const std::string& what);
};

SuiteResult matkernel_suite(std::uint64_t seed);
SuiteResult model_suite(std::uint64_t seed);
SuiteResult fockspace_suite(std::uint64_t seed);
SuiteResult spectral_suite(std::uint64_t seed);
SuiteResult lowtemp_suite(std::uint64_t seed);
SuiteResult qubitspeed_suite(std::uint64_t seed);

std::vector<SuiteResult> run_all(std::uint64_t seed);

}  // namespace lindblad::selftest
