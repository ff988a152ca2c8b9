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

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace bnfix {

namespace {

constexpr int64_t kMaxWindowPoints = 10'000'000;

Int clip_range(const Int& v, const QuantRange& r) {
  return clip(v, Int(r.y_min), Int(r.y_max));
}

void widen(Int& lo, Int& hi, const Rat& x) {
  Int f = floor_rat(x);
  Int c = ceil_rat(x);
  if (f < lo) lo = f;
  if (c > hi) hi = c;
}

EquivalenceReport run_scan(const Rat& t, const Rat& b, const QuantRange& range,
                           const std::function<Int(const Int&)>& rhs_eval,
                           const Rat& rhs_corner1, const Rat& rhs_corner2, int64_t margin,
                           int64_t alpha, int64_t beta) {
  if (margin < 1) throw std::invalid_argument("verify: margin must be positive");

  // Hull of both sides' transition spans.  Outside it each side is saturated
  // (monotone and clipped), so endpoint agreement extends to all of Z.
  Rat f1 = t * Rat(range.y_min) - b;
  Rat f2 = t * Rat(range.y_max) - b;
  Int lo = floor_rat(f1), hi = ceil_rat(f1);
  widen(lo, hi, f2);
  widen(lo, hi, rhs_corner1);
  widen(lo, hi, rhs_corner2);
  lo -= margin;
  hi += margin;

  const Int width = hi - lo;
  if (width > kMaxWindowPoints)
    throw std::invalid_argument("verify: transition window too wide for exhaustive scan");

  EquivalenceReport rep;
  rep.window_lo = lo;
  rep.window_hi = hi;

  auto check = [&](const Int& n) {
    if (alpha > 1 && ((n - beta) % alpha) != 0) return;
    Int lhs = clip_range(floor_rat((Rat(n) + b) / t), range);
    Int rhs = rhs_eval(n);
    ++rep.checked_count;
    if (lhs != rhs) rep.mismatches.push_back({n, lhs, rhs});
  };
  auto align_up = [&](Int n) {
    if (alpha > 1) n += (((beta - n) % alpha) + alpha) % alpha;
    return n;
  };

  for (Int n = lo; n <= hi; ++n) check(n);
  check(align_up(lo - 10 * width));
  check(align_up(hi + 10 * width));
  rep.sentinels_checked = true;
  return rep;
}

}  // namespace

std::string EquivalenceReport::summary() const {
  std::ostringstream os;
  if (ok()) {
    os << "certified: " << checked_count << " inputs over [" << window_lo << ", " << window_hi
       << "] plus sentinels, zero mismatches";
  } else {
    const Mismatch& m = mismatches.front();
    os << mismatches.size() << " mismatch(es); first at N=" << m.n << ": float side " << m.lhs
       << ", fixed side " << m.rhs;
  }
  return os.str();
}

Int eval_float_side(const Int& N, const Rat& t, const Rat& b, QuantRange range) {
  if (t == 0) throw std::invalid_argument("eval_float_side: t must be nonzero");
  return clip_range(floor_rat((Rat(N) + b) / t), range);
}

Int eval_fixed_side(const Int& N, const FixedAffine& fa) {
  if (fa.T == 0) throw std::invalid_argument("eval_fixed_side: T must be nonzero");
  if (fa.K < 1) throw std::invalid_argument("eval_fixed_side: K must be positive");
  return clip_range(floor_div(N * fa.K + fa.B, fa.T), fa.range);
}

Int eval_sign_side(const Int& N, const SignThreshold& st) {
  const bool high = st.descending ? (N < st.n0) : (N > st.n0);
  return Int(high ? st.range.y_max : st.range.y_min);
}

EquivalenceReport verify_equivalence(const Rat& t, const Rat& b, const FixedAffine& fa,
                                     int64_t margin) {
  if (t == 0) throw std::invalid_argument("verify_equivalence: t must be nonzero");
  if (fa.T == 0 || fa.K < 1)
    throw std::invalid_argument("verify_equivalence: need T != 0 and K >= 1");
  const Rat c1 = Rat(fa.T * fa.range.y_min - fa.B, Int(fa.K));
  const Rat c2 = Rat(fa.T * fa.range.y_max - fa.B, Int(fa.K));
  return run_scan(t, b, fa.range, [&](const Int& n) { return eval_fixed_side(n, fa); }, c1, c2,
                  margin, 1, 0);
}

EquivalenceReport verify_sign(const Rat& t, const Rat& b, const SignThreshold& st,
                              int64_t margin) {
  if (t == 0) throw std::invalid_argument("verify_sign: t must be nonzero");
  const Rat c1{st.n0};
  const Rat c2{st.n0 + 1};
  return run_scan(t, b, st.range, [&](const Int& n) { return eval_sign_side(n, st); }, c1, c2,
                  margin, 1, 0);
}

EquivalenceReport verify_equivalence_strided(const Rat& t, const Rat& b, const FixedAffine& fa,
                                             int64_t alpha, int64_t beta, int64_t margin) {
  if (alpha < 1) throw std::invalid_argument("verify_equivalence_strided: alpha must be positive");
  const Rat c1 = Rat(fa.T * fa.range.y_min - fa.B, Int(fa.K));
  const Rat c2 = Rat(fa.T * fa.range.y_max - fa.B, Int(fa.K));
  return run_scan(t, b, fa.range, [&](const Int& n) { return eval_fixed_side(n, fa); }, c1, c2,
                  margin, alpha, beta);
}

std::vector<std::pair<Int, Int>> brute_force_tb(const Rat& t, const Rat& b, int64_t K,
                                                QuantRange range) {
  if (t == 0) throw std::invalid_argument("brute_force_tb: t must be nonzero");
  if (t < 0) {
    auto flipped = brute_force_tb(-t, -b, K, range);
    for (auto& [T, B] : flipped) {
      T = -T;
      B = -B;
    }
    std::sort(flipped.begin(), flipped.end());
    return flipped;
  }

  const int64_t n = range.width();
  const Rat kt = Rat(K) * t;
  const Rat slack = (n >= 2) ? Rat(2 * K, n - 1) : Rat(2 * K);
  const Int t_first = floor_rat(kt - slack) + 1;
  const Int t_last = ceil_rat(kt + slack) - 1;

  // Raw ceiling values over the general index set {y_min+1, ..., y_max}.
  std::vector<Int> s;
  s.reserve(static_cast<size_t>(n));
  for (int64_t i = range.y_min + 1; i <= range.y_max; ++i)
    s.push_back(ceil_rat(Rat(i) * t - b));

  std::vector<std::pair<Int, Int>> out;
  for (Int T = t_first; T <= t_last; ++T) {
    if (T == 0) continue;
    Int bmax = Int(range.y_min + 1) * T - K * s[0];
    Int bmin = bmax;
    for (int64_t idx = 1; idx < n; ++idx) {
      Int v = Int(range.y_min + 1 + idx) * T - K * s[static_cast<size_t>(idx)];
      if (v > bmax) bmax = v;
      if (v < bmin) bmin = v;
    }
    for (Int B = bmax - 1; B <= bmin + K + 1; ++B) {
      FixedAffine fa{T, B, K, range};
      if (verify_equivalence(t, b, fa).ok()) out.emplace_back(T, B);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bnfix
