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

#include "bnfix/seqgen.hpp"

#include <ostream>

namespace bnfix {

namespace {

// Folds the pairwise b-constraints contributed by index M (1-based, value v)
// against a prefix S_1..S_{M-1} into [lo, hi).  For every ordered pair the
// feasible offsets satisfy
//   b > (j(S_i - 1) - i S_j) / (i - j)   for i > j,
//   b < (i S_j - j(S_i - 1)) / (j - i)   for i < j,
// so the feasible set stays an open interval and extension is O(M).
struct Bounds {
  int64_t lo_num, lo_den;  // den == 0 encodes infinity (sign in num)
  int64_t hi_num, hi_den;
};

bool frac_lt(int64_t an, int64_t ad, int64_t bn, int64_t bd) {
  if (ad == 0) return an < 0 && !(bd == 0 && bn < 0);
  if (bd == 0) return bn > 0;
  return an * bd < bn * ad;
}

bool fold_index(const int32_t* s, int m, int32_t v, Bounds& bb) {
  for (int j = 1; j < m; ++j) {
    const int64_t num = static_cast<int64_t>(j) * (v - 1) - static_cast<int64_t>(m) * s[j - 1];
    const int64_t den = m - j;
    if (frac_lt(bb.lo_num, bb.lo_den, num, den)) {
      bb.lo_num = num;
      bb.lo_den = den;
    }
  }
  for (int i = 1; i < m; ++i) {
    const int64_t num = static_cast<int64_t>(i) * v - static_cast<int64_t>(m) * (s[i - 1] - 1);
    const int64_t den = m - i;
    if (frac_lt(num, den, bb.hi_num, bb.hi_den)) {
      bb.hi_num = num;
      bb.hi_den = den;
    }
  }
  return frac_lt(bb.lo_num, bb.lo_den, bb.hi_num, bb.hi_den);
}

}  // namespace

bool CeilSequence::invariants_hold() const {
  if (s.empty() || s[0] != 1) return false;
  for (size_t i = 1; i < s.size(); ++i) {
    const int32_t step = s[i] - s[i - 1];
    if (step < 0 || step > 1) return false;
  }
  return true;
}

NormalizedAffine normalize_affine(const AffineReal& a) {
  NormalizedAffine out;
  Rat t = a.t;
  Rat b = a.b;
  if (t < 0) {
    t = -t;
    b = -b;
    out.sign_flipped = true;
  }
  out.int_shift = floor_rat(t);
  out.t = t - Rat(out.int_shift);
  out.offset_shift = floor_rat(b - out.t) + 1;
  out.b = b - Rat(out.offset_shift);
  return out;
}

AffineReal denormalize(const NormalizedAffine& a) {
  Rat t = a.t + Rat(a.int_shift);
  Rat b = a.b + Rat(a.offset_shift);
  if (a.sign_flipped) {
    t = -t;
    b = -b;
  }
  return AffineReal(t, b);
}

CeilSequence make_sequence(const NormalizedAffine& a, int n) {
  if (n < 1) throw std::invalid_argument("make_sequence: n must be positive");
  CeilSequence seq;
  seq.s.reserve(n);
  for (int i = 1; i <= n; ++i) {
    Int v = ceil_rat(Rat(i) * a.t - a.b);
    if (v > INT32_MAX || v < INT32_MIN)
      throw std::overflow_error("make_sequence: value out of range (affine not normalized?)");
    seq.s.push_back(static_cast<int32_t>(v));
  }
  return seq;
}

bool is_realizable(const CeilSequence& seq) {
  if (!seq.invariants_hold()) return false;
  Bounds bb{-1, 0, 1, 0};
  for (int m = 2; m <= seq.n(); ++m)
    if (!fold_index(seq.s.data(), m, seq.s[m - 1], bb)) return false;
  return true;
}

std::vector<CeilSequence> extend_sequences(const std::vector<CeilSequence>& seqs) {
  std::vector<CeilSequence> out;
  out.reserve(seqs.size() * 2);
  for (const CeilSequence& base : seqs) {
    const int32_t last = base.s.empty() ? 1 : base.s.back();
    for (int32_t v : {last, static_cast<int32_t>(last + 1)}) {
      CeilSequence cand = base;
      cand.s.push_back(v);
      if (is_realizable(cand)) out.push_back(std::move(cand));
    }
  }
  return out;
}

bool SequenceEnumerator::frac_less(const Frac& a, const Frac& b) {
  return frac_lt(a.num, a.den, b.num, b.den);
}

SequenceEnumerator::SequenceEnumerator(int n, uint64_t max_sequences)
    : n_(n), budget_(max_sequences) {
  if (n < 1) throw std::invalid_argument("SequenceEnumerator: n must be positive");
  seq_.resize(n_);
  lo_.resize(n_);
  hi_.resize(n_);
  choice_.assign(n_ + 1, 0);
}

bool SequenceEnumerator::descend(int pos, int32_t value) {
  Bounds bb{lo_[pos - 2].num, lo_[pos - 2].den, hi_[pos - 2].num, hi_[pos - 2].den};
  if (!fold_index(seq_.data(), pos, value, bb)) return false;
  seq_[pos - 1] = value;
  lo_[pos - 1] = Frac{bb.lo_num, bb.lo_den};
  hi_[pos - 1] = Frac{bb.hi_num, bb.hi_den};
  return true;
}

bool SequenceEnumerator::next(CeilSequence& out) {
  if (done_) return false;

  int depth;
  if (!started_) {
    started_ = true;
    seq_[0] = 1;
    lo_[0] = Frac{-1, 0};
    hi_[0] = Frac{1, 0};
    if (n_ == 1) {
      if (++produced_ > budget_) throw BudgetExceededError(budget_);
      out.s.assign(seq_.begin(), seq_.end());
      done_ = true;
      return true;
    }
    depth = 1;
  } else {
    depth = n_ - 1;  // resume candidate iteration at the leaf position
  }

  while (true) {
    const int pos = depth + 1;
    if (choice_[pos] >= 2) {
      choice_[pos] = 0;
      if (--depth == 0) {
        done_ = true;
        return false;
      }
      continue;
    }
    const int32_t v = seq_[depth - 1] + choice_[pos];
    ++choice_[pos];
    if (!descend(pos, v)) continue;
    depth = pos;
    if (depth == n_) {
      if (++produced_ > budget_) throw BudgetExceededError(budget_);
      out.s.assign(seq_.begin(), seq_.end());
      return true;
    }
  }
}

size_t SequenceEnumerator::next_window(size_t window, std::vector<CeilSequence>& out) {
  size_t got = 0;
  CeilSequence seq;
  while (got < window && next(seq)) {
    out.push_back(seq);
    ++got;
  }
  return got;
}

uint64_t count_sequences(int n, uint64_t max_sequences) {
  SequenceEnumerator e(n, max_sequences);
  CeilSequence seq;
  uint64_t count = 0;
  while (e.next(seq)) ++count;
  return count;
}

void dump_sequences(int n, std::ostream& os, uint64_t max_sequences) {
  SequenceEnumerator e(n, max_sequences);
  CeilSequence seq;
  while (e.next(seq)) {
    for (int i = 0; i < seq.n(); ++i) {
      if (i) os << ',';
      os << seq.s[i];
    }
    os << '\n';
  }
}

}  // namespace bnfix
