// Copyright 2026 The bnfix Authors
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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "bnfix/convert.hpp"
#include "bnfix/rational.hpp"

namespace bnfix {

// Outcome of an exhaustive pointwise check.  Both sides of the identity are
// monotone in N and clipped, so agreement across the transition window plus
// saturated sentinels certifies every integer input.
struct EquivalenceReport {
  struct Mismatch {
    Int n;
    Int lhs;
    Int rhs;
  };

  uint64_t checked_count = 0;
  std::vector<Mismatch> mismatches;
  Int window_lo;
  Int window_hi;
  bool sentinels_checked = false;

  bool ok() const { return mismatches.empty(); }
  // One-line human summary ("certified ..." / "first mismatch at ...").
  std::string summary() const;
};

// clip(floor((N + b)/t), y_min, y_max), exact.
Int eval_float_side(const Int& N, const Rat& t, const Rat& b, QuantRange range);

// clip(floordiv(N*K + B, T), y_min, y_max), pure integer arithmetic with
// floor division toward negative infinity.
Int eval_fixed_side(const Int& N, const FixedAffine& fa);

// Step evaluation of a SignThreshold.
Int eval_sign_side(const Int& N, const SignThreshold& st);

// Checks every N across the hull of both sides' transition windows extended
// by `margin`, plus two far sentinels at 10x the window width.
EquivalenceReport verify_equivalence(const Rat& t, const Rat& b, const FixedAffine& fa,
                                     int64_t margin = 5);
EquivalenceReport verify_sign(const Rat& t, const Rat& b, const SignThreshold& st,
                              int64_t margin = 5);

// Same check restricted to inputs N = alpha*k + beta (strided lattices).
EquivalenceReport verify_equivalence_strided(const Rat& t, const Rat& b, const FixedAffine& fa,
                                             int64_t alpha, int64_t beta, int64_t margin = 5);

// Exhaustive reference for Problem 2: scans every candidate T in the loose
// window (excluding 0) and every B in the padded interval
// [max_i(iT - K S_i) - 1, min_j(jT - K S_j) + K + 1], keeping the pairs that
// pass verify_equivalence.  Ground truth for solve_tb, test use only.
std::vector<std::pair<Int, Int>> brute_force_tb(const Rat& t, const Rat& b, int64_t K,
                                                QuantRange range);

}  // namespace bnfix
