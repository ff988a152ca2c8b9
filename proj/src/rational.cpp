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

#include "bnfix/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace bnfix {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;  // truncates toward zero
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t floor_div_i64(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b) != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

int64_t ceil_div_i64(int64_t a, int64_t b) {
  return -floor_div_i64(-a, b);
}

Int floor_rat(const Rat& q) {
  // boost keeps the denominator positive in canonical form.
  return floor_div(numerator(q), denominator(q));
}

Int ceil_rat(const Rat& q) {
  return -floor_div(-numerator(q), denominator(q));
}

Int round_half_up(const Rat& q) {
  return floor_rat(q + Rat(1, 2));
}

Int clip(const Int& x, const Int& lo, const Int& hi) {
  if (x < lo) return lo;
  if (x > hi) return hi;
  return x;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Int parse_int(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = (s[0] == '-');
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("bad integer literal");
  // Leading zeros would be read as an octal prefix by the bignum parser.
  while (s.size() > 1 && s[0] == '0') s.remove_prefix(1);
  Int v{std::string(s)};
  return neg ? Int(-v) : v;
}

Int pow10(size_t e) {
  Int v = 1;
  for (size_t i = 0; i < e; ++i) v *= 10;
  return v;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {  // the bignum pair constructor rejects negative denominators
      num = -num;
      den = -den;
    }
    return Rat(num, den);
  }

  std::string_view s = text;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    s.remove_prefix(1);
  }

  int64_t exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Int ev = parse_int(s.substr(e + 1));
    if (ev > 100000 || ev < -100000) throw std::invalid_argument("exponent out of range");
    exp10 = static_cast<int64_t>(ev);
    s = s.substr(0, e);
  }

  std::string digits;
  size_t frac_len = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw std::invalid_argument("bare decimal point");
    if (!ip.empty() && !all_digits(ip)) throw std::invalid_argument("bad mantissa");
    if (!fp.empty() && !all_digits(fp)) throw std::invalid_argument("bad mantissa");
    digits = std::string(ip) + std::string(fp);
    frac_len = fp.size();
  } else {
    if (!all_digits(s)) throw std::invalid_argument("bad mantissa");
    digits = std::string(s);
  }
  if (digits.empty()) throw std::invalid_argument("no digits");
  while (digits.size() > 1 && digits[0] == '0') digits.erase(0, 1);

  Int num(digits);
  Int den = pow10(frac_len);
  if (exp10 > 0)
    num *= pow10(static_cast<size_t>(exp10));
  else if (exp10 < 0)
    den *= pow10(static_cast<size_t>(-exp10));
  Rat q(num, den);
  return neg ? Rat(-q) : q;
}

Rat rat_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  // Every finite double is mantissa * 2^exp with bounded exponent.
  int exp = 0;
  double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
  Int num = 0;
  for (int i = 0; i < 64 && m != 0.0; ++i) {
    m *= 2;
    --exp;
    double bit = std::trunc(m);
    num = num * 2 + Int(static_cast<long>(bit));
    m -= bit;
  }
  Rat q(num);
  if (exp > 0)
    q *= Rat(Int(1) << exp);
  else if (exp < 0)
    q /= Rat(Int(1) << -exp);
  return q;
}

std::string rat_to_string(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace bnfix
