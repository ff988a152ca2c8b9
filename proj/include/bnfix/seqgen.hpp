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
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "bnfix/rational.hpp"

namespace bnfix {

// One-affine operator N |-> clip(floor((N + b) / t), ...), slope t != 0.
struct AffineReal {
  Rat t;
  Rat b;

  AffineReal(Rat slope, Rat offset) : t(std::move(slope)), b(std::move(offset)) {
    if (t == 0) throw std::invalid_argument("AffineReal: slope must be nonzero");
  }
};

// Canonical form with t in [0,1) and ceil(t - b) = 1.  The recorded shifts
// invert the reduction exactly:
//   t_orig = sign * (t + int_shift),  b_orig = sign * (b + offset_shift)
// where sign = -1 iff sign_flipped.
struct NormalizedAffine {
  Rat t;
  Rat b;
  Int int_shift;     // floor of the (sign-fixed) slope, removed from t
  Int offset_shift;  // integer removed from b so that ceil(t - b) = 1
  bool sign_flipped = false;
};

// S_i = ceil(i*t - b) for i = 1..n.  s is 0-indexed: s[0] holds S_1.
// Under normalization: S_1 = 1, consecutive steps in {0, 1}, S_i <= i.
struct CeilSequence {
  std::vector<int32_t> s;

  int n() const { return static_cast<int>(s.size()); }
  bool invariants_hold() const;
};

NormalizedAffine normalize_affine(const AffineReal& a);

// Inverse of normalize_affine (round-trip exact).
AffineReal denormalize(const NormalizedAffine& a);

// S_i = ceil(i*t - b) in exact rational arithmetic, i = 1..n.
CeilSequence make_sequence(const NormalizedAffine& a, int n);

// True iff some (t, b) with t in [0,1), ceil(t - b) = 1 generates s.
// Sequences violating the step invariants are never realizable.
bool is_realizable(const CeilSequence& s);

// All realizable one-step extensions (candidates S_{n+1} in {S_n, S_n + 1})
// of the given realizable sequences, in input order.
std::vector<CeilSequence> extend_sequences(const std::vector<CeilSequence>& seqs);

struct BudgetExceededError : std::runtime_error {
  explicit BudgetExceededError(uint64_t limit)
      : std::runtime_error("sequence budget exceeded (limit " + std::to_string(limit) + ")") {}
};

// Streams every realizable sequence of length n in lexicographic order.
// Depth-first over the extension tree; a prefix is cut as soon as its
// feasible b-interval closes, so only realizable prefixes are expanded
// (the prefix property guarantees no realizable leaf is lost).
class SequenceEnumerator {
 public:
  static constexpr uint64_t kDefaultBudget = 100'000'000;

  explicit SequenceEnumerator(int n, uint64_t max_sequences = kDefaultBudget);

  // Fills out with the next sequence; false once exhausted.
  // Throws BudgetExceededError when more than max_sequences are produced.
  bool next(CeilSequence& out);

  // Appends up to `window` sequences; returns the number appended.
  size_t next_window(size_t window, std::vector<CeilSequence>& out);

  uint64_t produced() const { return produced_; }

 private:
  // Exact fraction num/den with den > 0; den == 0 encodes +/- infinity.
  struct Frac {
    int64_t num;
    int64_t den;
  };
  static bool frac_less(const Frac& a, const Frac& b);

  bool descend(int depth, int32_t value);

  int n_;
  uint64_t budget_;
  uint64_t produced_ = 0;
  bool done_ = false;
  bool started_ = false;
  std::vector<int32_t> seq_;       // current prefix, seq_[d-1] = S_d
  std::vector<Frac> lo_, hi_;      // feasible b-interval after each prefix
  std::vector<int8_t> choice_;     // next candidate at each depth: 0 same, 1 step, 2 spent
};

// Count of realizable sequences of length n (informational, not a golden value).
uint64_t count_sequences(int n, uint64_t max_sequences = SequenceEnumerator::kDefaultBudget);

// Newline-delimited dump, each record a comma-separated sequence, lex order.
void dump_sequences(int n, std::ostream& os,
                    uint64_t max_sequences = SequenceEnumerator::kDefaultBudget);

}  // namespace bnfix
