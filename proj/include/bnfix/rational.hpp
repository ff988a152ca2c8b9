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
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace bnfix {

// All externally supplied slopes/offsets are kept as exact rationals from the
// point of ingestion; every comparison against an integer boundary must be
// decided exactly, never through a float round-trip.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Floor division toward negative infinity. b must be nonzero.
Int floor_div(const Int& a, const Int& b);
int64_t floor_div_i64(int64_t a, int64_t b);
int64_t ceil_div_i64(int64_t a, int64_t b);

// Exact floor/ceil of a rational.
Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);

// Nearest integer to q, halves rounded up (toward +inf).
Int round_half_up(const Rat& q);

// clip(x, lo, hi) = min(max(x, lo), hi); requires lo <= hi.
Int clip(const Int& x, const Int& lo, const Int& hi);

// Parses "123", "-0.618", "1.5e-3", ".25", or an exact fraction "p/q".
// Decimal text maps to its exact rational value (0.618 -> 618/1000).
// Throws std::invalid_argument on malformed input.
Rat parse_rational(std::string_view text);

// Exact rational value of a finite binary double.
Rat rat_from_double(double x);

// "p/q" when the denominator is not 1, plain integer otherwise.
std::string rat_to_string(const Rat& q);

}  // namespace bnfix
