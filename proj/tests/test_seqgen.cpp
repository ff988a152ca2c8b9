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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "test_util.hpp"

using namespace bnfix;
using bnfix::testutil::rand_rat;
using bnfix::testutil::seq_str;

namespace {

std::set<std::vector<int32_t>> enumerate_all(int n) {
  std::set<std::vector<int32_t>> out;
  SequenceEnumerator e(n);
  CeilSequence s;
  while (e.next(s)) out.insert(s.s);
  return out;
}

// Independent realizability oracle: sweep a rational (t, b) grid with
// denominator D over t in [0,1), b in [t-1, t) and collect every generated
// sequence.  At D = 2n the sweep already hits every realizable region for
// the small n exercised here; 4n adds headroom.
std::set<std::vector<int32_t>> grid_sweep(int n, int D) {
  std::set<std::vector<int32_t>> out;
  for (int p = 0; p < D; ++p) {
    const Rat t(p, D);
    for (int v = 1; v <= D; ++v)
      out.insert(make_sequence(NormalizedAffine{t, t - Rat(v, D), 0, 0, false}, n).s);
  }
  return out;
}

}  // namespace

TEST_CASE("normalize: already canonical pair is untouched") {
  auto na = normalize_affine(AffineReal(parse_rational("0.618"), parse_rational("0.198")));
  CHECK(na.t == Rat(618, 1000));
  CHECK(na.b == Rat(198, 1000));
  CHECK(na.int_shift == 0);
  CHECK(na.offset_shift == 0);
  CHECK_FALSE(na.sign_flipped);
}

TEST_CASE("normalize: integral slope moves into int_shift") {
  auto na = normalize_affine(AffineReal(Rat(1), Rat(0)));
  CHECK(na.t == 0);
  CHECK(na.int_shift == 1);
  CHECK(ceil_rat(na.t - na.b) == 1);
  CHECK_FALSE(na.sign_flipped);
}

TEST_CASE("normalize: negative slope flips sign first") {
  auto na = normalize_affine(AffineReal(Rat(-3, 10), Rat(1, 10)));
  CHECK(na.sign_flipped);
  CHECK(na.t == Rat(3, 10));
  CHECK(na.int_shift == 0);
  CHECK(ceil_rat(na.t - na.b) == 1);
  auto back = denormalize(na);
  CHECK(back.t == Rat(-3, 10));
  CHECK(back.b == Rat(1, 10));
}

TEST_CASE("normalize invariants and shift reconstruction on random input") {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 1000; ++iter) {
    Rat t = rand_rat(rng, -5000, 5000, 400);
    if (t == 0) continue;
    Rat b = rand_rat(rng, -5000, 5000, 400);
    AffineReal a(t, b);
    auto na = normalize_affine(a);
    CHECK(na.t >= 0);
    CHECK(na.t < 1);
    CHECK(ceil_rat(na.t - na.b) == 1);
    auto back = denormalize(na);
    CHECK(back.t == t);
    CHECK(back.b == b);

    // Reduction identity: S_i(normalized) = S_i(sign-fixed) - i*int_shift + offset_shift.
    const int n = 1 + static_cast<int>(rng() % 31);
    Rat t1 = na.sign_flipped ? Rat(-t) : t;
    Rat b1 = na.sign_flipped ? Rat(-b) : b;
    auto seq = make_sequence(na, n);
    for (int i = 1; i <= n; ++i) {
      Int raw = ceil_rat(Rat(i) * t1 - b1);
      CHECK(Int(seq.s[i - 1]) == raw - Int(i) * na.int_shift + na.offset_shift);
    }
  }
}

TEST_CASE("make_sequence matches hand-evaluated ceilings") {
  auto na = normalize_affine(AffineReal(parse_rational("0.618"), parse_rational("0.198")));
  CHECK(make_sequence(na, 5).s == std::vector<int32_t>{1, 2, 2, 3, 3});

  // Constant sequence at t = 0.
  NormalizedAffine zero{Rat(0), Rat(-1, 2), 0, 0, false};
  CHECK(make_sequence(zero, 4).s == std::vector<int32_t>{1, 1, 1, 1});

  // t = 1/(n-2), b = 3/(2n-4) - 1 with n = 10.
  const int n = 10;
  NormalizedAffine stair{Rat(1, n - 2), Rat(3, 2 * n - 4) - 1, 0, 0, false};
  CHECK(make_sequence(stair, n).s == std::vector<int32_t>{1, 2, 2, 2, 2, 2, 2, 2, 2, 3});
}

TEST_CASE("make_sequence boundary: integer i*t - b is exact") {
  // 3*(1/3) - 0 = 1 exactly; the ceiling must not round up.
  NormalizedAffine a{Rat(1, 3), Rat(0), 0, 0, false};
  CHECK(make_sequence(a, 6).s == std::vector<int32_t>{1, 1, 1, 2, 2, 2});
}

TEST_CASE("is_realizable on listed sequences") {
  CHECK(is_realizable(CeilSequence{{1, 2, 2, 2, 2, 2, 2, 2, 3, 3}}));  // t = 1/(n-3), n = 10
  CHECK(is_realizable(CeilSequence{{1, 1, 2}}));                       // t = 0.5, b = 0.4
  CHECK_FALSE(is_realizable(CeilSequence{{1, 2, 1}}));                 // not monotone
  CHECK_FALSE(is_realizable(CeilSequence{{2, 2}}));                    // violates S_1 = 1
  CHECK_FALSE(is_realizable(CeilSequence{{1, 3}}));                    // step of 2
  CHECK(is_realizable(CeilSequence{{1}}));
}

TEST_CASE("realizable sequences admit a generating pair") {
  // t = 0.5, b = 0.4 generates [1,1,2].
  auto seq = make_sequence(NormalizedAffine{Rat(1, 2), Rat(2, 5), 0, 0, false}, 3);
  CHECK(seq.s == std::vector<int32_t>{1, 1, 2});
}

TEST_CASE("extend: base case {[1]} -> {[1,1],[1,2]}") {
  auto ext = extend_sequences({CeilSequence{{1}}});
  REQUIRE(ext.size() == 2);
  CHECK(ext[0].s == std::vector<int32_t>{1, 1});
  CHECK(ext[1].s == std::vector<int32_t>{1, 2});
}

TEST_CASE("extend: the full staircase keeps extending") {
  auto ext = extend_sequences({CeilSequence{{1, 2, 3}}});
  bool found = false;
  for (const auto& s : ext) found |= (s.s == std::vector<int32_t>{1, 2, 3, 4});
  CHECK(found);
}

TEST_CASE("grid sweep agrees with the enumeration for small n") {
  for (int n = 2; n <= 6; ++n) {
    auto es = enumerate_all(n);
    auto gs = grid_sweep(n, 4 * n);
    CHECK(es == gs);
  }
}

TEST_CASE("extension count for length 2 matches the grid oracle") {
  auto ext = extend_sequences({CeilSequence{{1, 1}}, CeilSequence{{1, 2}}});
  CHECK(ext.size() == grid_sweep(3, 4 * 3).size());
}

TEST_CASE("prefix closure and extension existence, exhaustive to n = 12") {
  auto prev = enumerate_all(1);
  for (int n = 2; n <= 12; ++n) {
    auto cur = enumerate_all(n);
    for (const auto& s : cur) {
      std::vector<int32_t> prefix(s.begin(), s.end() - 1);
      CHECK(prev.count(prefix) == 1);
    }
    // Every realizable sequence of length n-1 has at least one extension.
    std::set<std::vector<int32_t>> prefixes;
    for (const auto& s : cur) prefixes.insert(std::vector<int32_t>(s.begin(), s.end() - 1));
    CHECK(prefixes == prev);
    prev = std::move(cur);
  }
}

TEST_CASE("enumerated sequences satisfy the step bounds") {
  for (int n : {5, 9, 14}) {
    SequenceEnumerator e(n);
    CeilSequence s;
    while (e.next(s)) {
      REQUIRE(s.n() == n);
      CHECK(s.s[0] == 1);
      for (int i = 1; i < n; ++i) {
        CHECK(s.s[i] - s.s[i - 1] >= 0);
        CHECK(s.s[i] - s.s[i - 1] <= 1);
        CHECK(s.s[i] <= i + 1);
      }
      CHECK(is_realizable(s));
    }
  }
}

TEST_CASE("every sampled (t, b) sequence appears in the enumeration") {
  std::mt19937_64 rng(23);
  std::vector<std::set<std::vector<int32_t>>> cache(16);
  for (int iter = 0; iter < 10000; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 15);
    Rat t = rand_rat(rng, -4000, 4000, 700);
    if (t == 0) t = Rat(1, 3);
    Rat b = rand_rat(rng, -4000, 4000, 700);
    auto seq = make_sequence(normalize_affine(AffineReal(t, b)), n);
    if (cache[n].empty()) cache[n] = enumerate_all(n);
    CHECK(cache[n].count(seq.s) == 1);
  }
}

TEST_CASE("lexicographic order and windowing") {
  SequenceEnumerator e(4);
  std::vector<CeilSequence> seqs;
  CHECK(e.next_window(3, seqs) == 3);
  CHECK(e.next_window(100, seqs) == 5);
  CHECK(seqs.size() == 8);
  for (size_t i = 1; i < seqs.size(); ++i)
    CHECK(std::lexicographical_compare(seqs[i - 1].s.begin(), seqs[i - 1].s.end(),
                                       seqs[i].s.begin(), seqs[i].s.end()));
}

TEST_CASE("sequence budget is an explicit error") {
  SequenceEnumerator e(10, 5);
  CeilSequence s;
  for (int i = 0; i < 5; ++i) CHECK(e.next(s));
  CHECK_THROWS_AS(e.next(s), BudgetExceededError);
}

TEST_CASE("dump format is comma-separated lex order") {
  std::ostringstream os;
  dump_sequences(3, os);
  CHECK(os.str() == "1,1,1\n1,1,2\n1,2,2\n1,2,3\n");
}
