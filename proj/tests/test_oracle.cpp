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

#include "bnfix/oracle.hpp"

#include <random>

#include "doctest.h"
#include "test_util.hpp"

using namespace bnfix;
using bnfix::testutil::rand_rat;
using bnfix::testutil::rand_unit_rat;

TEST_CASE("float side evaluation") {
  const QuantRange r(0, 15);
  CHECK(eval_float_side(Int(0), parse_rational("0.618"), parse_rational("0.198"), r) == 0);
  CHECK(eval_float_side(Int(-100), parse_rational("0.618"), parse_rational("0.198"), r) == 0);
  CHECK(eval_float_side(Int(1), parse_rational("0.05"), parse_rational("-0.1"), r) == 15);
}

TEST_CASE("fixed side evaluation uses mathematical floor division") {
  const QuantRange r(0, 15);
  CHECK(eval_fixed_side(Int(0), FixedAffine{Int(39), Int(6), 64, r}) == 0);
  CHECK(eval_fixed_side(Int(0), FixedAffine{Int(1), Int(0), 1, r}) == 0);
  CHECK(eval_fixed_side(Int(10), FixedAffine{Int(39), Int(6), 64, r}) == 15);  // 646/39 -> 16, clipped
  // Negative numerator must floor toward -infinity, not truncate.
  CHECK(eval_fixed_side(Int(-1), FixedAffine{Int(39), Int(6), 64, QuantRange(-15, 15)}) == -2);
}

TEST_CASE("verify_equivalence on the worked example") {
  const Rat t = parse_rational("0.618"), b = parse_rational("0.198");
  const QuantRange r(0, 15);
  CHECK(verify_equivalence(t, b, FixedAffine{Int(39), Int(6), 64, r}, 5).ok());
  auto bad = verify_equivalence(t, b, FixedAffine{Int(39), Int(12), 64, r}, 5);
  CHECK_FALSE(bad.ok());
  CHECK(bad.mismatches.size() >= 1);
  CHECK(verify_equivalence(Rat(1), Rat(0), FixedAffine{Int(1), Int(0), 1, r}, 5).ok());
}

TEST_CASE("brute force reproduces the worked example") {
  auto pairs = brute_force_tb(parse_rational("0.618"), parse_rational("0.198"), 64,
                              QuantRange(0, 15));
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == std::pair<Int, Int>{39, 6});
  CHECK(pairs[1] == std::pair<Int, Int>{39, 7});
  CHECK(pairs[2] == std::pair<Int, Int>{39, 8});

  auto id = brute_force_tb(Rat(1), Rat(0), 1, QuantRange(0, 15));
  CHECK(std::count(id.begin(), id.end(), std::pair<Int, Int>{1, 0}) == 1);
}

TEST_CASE("both sides are monotone in N") {
  std::mt19937_64 rng(67);
  const QuantRange r(0, 15);
  for (int iter = 0; iter < 50; ++iter) {
    Rat t = rand_unit_rat(rng, 300);
    Rat b = rand_rat(rng, -300, 300, 200);
    Int prev_f, prev_x;
    FixedAffine fa{Int(3 + static_cast<int64_t>(rng() % 50)),
                   Int(static_cast<int64_t>(rng() % 100) - 50),
                   1 + static_cast<int64_t>(rng() % 64), r};
    for (Int n = -40; n <= 40; ++n) {
      Int f = eval_float_side(n, t, b, r);
      Int x = eval_fixed_side(n, fa);
      if (n > -40) {
        CHECK(f >= prev_f);
        CHECK(x >= prev_x);
      }
      prev_f = f;
      prev_x = x;
    }
  }
}

TEST_CASE("clip and floor commute for integer bounds") {
  std::mt19937_64 rng(71);
  for (int iter = 0; iter < 2000; ++iter) {
    Rat x = rand_rat(rng, -5000, 5000, 300);
    const Int lo = Int(static_cast<int64_t>(rng() % 21) - 10);
    const Int hi = lo + Int(static_cast<int64_t>(rng() % 20));
    Rat clipped = x;
    if (clipped < Rat(lo)) clipped = Rat(lo);
    if (clipped > Rat(hi)) clipped = Rat(hi);
    CHECK(clip(floor_rat(x), lo, hi) == floor_rat(clipped));
  }
}

TEST_CASE("widening the margin never changes a certified verdict") {
  std::mt19937_64 rng(73);
  const QuantRange r(0, 15);
  for (int done = 0; done < 100; ++done) {
    Rat t = rand_unit_rat(rng, 150);
    Rat b = rand_rat(rng, -150, 150, 100);
    auto pairs = solve_tb(t, b, 64, r, SolveMode::All);
    REQUIRE(!pairs.empty());
    CHECK(verify_equivalence(t, b, pairs[0], 5).ok());
    CHECK(verify_equivalence(t, b, pairs[0], 500).ok());
    // And a corrupted pair stays rejected at any margin: one past the last
    // admissible B for this T.
    FixedAffine bad = pairs[0];
    for (const auto& fa : pairs)
      if (fa.T == bad.T && fa.B > bad.B) bad.B = fa.B;
    bad.B += 1;
    CHECK_FALSE(verify_equivalence(t, b, bad, 5).ok());
    CHECK_FALSE(verify_equivalence(t, b, bad, 500).ok());
  }
}

TEST_CASE("report fields are populated") {
  auto rep = verify_equivalence(parse_rational("0.618"), parse_rational("0.198"),
                                FixedAffine{Int(39), Int(6), 64, QuantRange(0, 15)}, 5);
  CHECK(rep.sentinels_checked);
  CHECK(rep.checked_count > 20);
  CHECK(rep.window_lo < rep.window_hi);
  CHECK(rep.summary().find("certified") == 0);
}
