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
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bnfix/seqgen.hpp"

namespace bnfix {

struct TbPair {
  int64_t T;
  int64_t B;
};

struct ScaleSearchConfig {
  int n = 0;
  int64_t k0 = 0;       // 0 selects the default start: ceil((n-1)^2/4) for n >= 15, else 1
  int64_t window = 100000;
  uint64_t max_sequences = SequenceEnumerator::kDefaultBudget;
  int threads = 1;
  // When true (default start only), the result is certified minimal by an
  // explicit failure witness at K_n - 1.  A user-supplied k0 yields the
  // minimal satisfied K >= k0 instead, which need not be K_n.
  bool certify_minimal = true;
  // Diagnostic progress hook: (pass, windows_done, current_k).
  std::function<void(int, uint64_t, int64_t)> progress;
};

struct ScaleResult {
  int n = 0;
  int64_t kn = 0;
  std::map<int64_t, uint64_t> witness_counts;  // K -> sequences that failed at K
  uint64_t sequence_count = 0;
  double elapsed_seconds = 0.0;
  bool minimal_certified = false;
};

// Checks whether K admits integers (T, B) reproducing the sequence:
//   ceil((iT - B)/K) = S_i for i = 1..n.
// T is scanned ascending over the closed window
//   ceil((K S_n - 2K + 1)/(n-1)) .. floor((K S_n - 1)/(n-1)),
// which contains every admissible T; for the first T whose B-interval
//   [max_i(iT - K S_i), min_j(jT - K S_j) + K)
// is nonempty the pair (T, lower end) is returned.
std::optional<TbPair> find_tb_for_k(const CeilSequence& s, int64_t k);

// True iff every realizable sequence of length n admits (T, B) at this K.
bool is_satisfied_k(int n, int64_t k,
                    uint64_t max_sequences = SequenceEnumerator::kDefaultBudget);

// All K > blanket_threshold(n) admit (T, B) for every sequence of length n.
int64_t blanket_threshold(int n);

// Searches the minimal satisfied K >= k0 with the windowed multi-pass
// protocol: each window raises K to the least value satisfying all of its
// sequences, and the full scan repeats until a pass raises nothing.
ScaleResult search_kn(const ScaleSearchConfig& cfg);

// Ascending list of the satisfied K <= k_max.  Membership above the blanket
// threshold is implied and may be short-circuited.
std::vector<int64_t> list_satisfied_k(int n, int64_t k_max,
                                      uint64_t max_sequences = SequenceEnumerator::kDefaultBudget,
                                      bool use_blanket_shortcut = true);

// Smallest satisfied K strictly greater than k (recovery hint for callers
// holding an unsatisfied scale).
int64_t next_satisfied_k(int n, int64_t k,
                         uint64_t max_sequences = SequenceEnumerator::kDefaultBudget);

// (lower, upper) bounds on K_n:
//   upper = (n-1)(n-3)/2 + 1 for n > 4, (n-1)(n-2) + 1 otherwise;
//   lower = floor(n^2/4) + 1 for n >= 27, ceil((n-1)^2/4) for n >= 15, 1 otherwise.
std::pair<int64_t, int64_t> kn_bounds(int n);

}  // namespace bnfix
