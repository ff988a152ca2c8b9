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

#include "bnfix/convert.hpp"

#include <algorithm>

namespace bnfix {

namespace {

constexpr int64_t kMaxRangeWidth = 1'000'000;       // resource guard, desk scale
constexpr int64_t kMaxScale = int64_t{1} << 40;     // keeps window products in int64

// Decomposition of the canonical [0, A] problem after sign and slope
// normalization.  Solutions (That, Bhat) of the normalized sequence map back
// by T1 = That + m*K, B1 = Bhat + p*K, then sign, then range unshift.
struct Normalized {
  bool flipped;
  Int m;  // integer part removed from |t|
  Int p;  // offset shift
  CeilSequence seq;
};

Normalized normalize_for_range(const Rat& t, const Rat& b, const QuantRange& range) {
  const int64_t a = range.width();
  if (a > kMaxRangeWidth) throw std::invalid_argument("solve_tb: range too wide");
  Normalized out;
  Rat b0 = b - t * Rat(range.y_min);
  Rat t1 = t;
  out.flipped = (t < 0);
  if (out.flipped) {
    t1 = -t1;
    b0 = -b0;
  }
  out.m = floor_rat(t1);
  const Rat that = t1 - Rat(out.m);
  out.p = floor_rat(b0 - that) + 1;
  const Rat bhat = b0 - Rat(out.p);
  out.seq = make_sequence(NormalizedAffine{that, bhat, 0, 0, false}, static_cast<int>(a));
  return out;
}

// Pairwise T window of the normalized sequence: integers strictly between
//   max_{i>j} floor((S_i - S_j - 1) K / (i - j))  and
//   min_{i>j} ceil((S_i - S_j + 1) K / (i - j)).
std::pair<int64_t, int64_t> t_window(const CeilSequence& seq, int64_t k) {
  const int n = seq.n();
  int64_t wlo = INT64_MIN, whi = INT64_MAX;
  for (int i = 2; i <= n; ++i) {
    for (int j = 1; j < i; ++j) {
      const int64_t d = i - j;
      const int64_t ds = seq.s[i - 1] - seq.s[j - 1];
      wlo = std::max(wlo, floor_div_i64((ds - 1) * k, d));
      whi = std::min(whi, ceil_div_i64((ds + 1) * k, d));
    }
  }
  return {wlo, whi};
}

// B-interval [lo, hi) for a fixed T; empty when lo >= hi.
std::pair<int64_t, int64_t> b_interval(const CeilSequence& seq, int64_t k, int64_t T) {
  int64_t bmax = T - k * seq.s[0];
  int64_t bmin = bmax;
  for (int i = 2; i <= seq.n(); ++i) {
    const int64_t v = i * T - k * seq.s[i - 1];
    bmax = std::max(bmax, v);
    bmin = std::min(bmin, v);
  }
  return {bmax, bmin + k};
}

bool sequence_constant(const CeilSequence& seq) {
  return seq.s.front() == seq.s.back();
}

FixedAffine assemble(int64_t that, int64_t bhat, int64_t k, const Normalized& nz,
                     const QuantRange& range) {
  Int T1 = Int(that) + nz.m * k;
  Int B1 = Int(bhat) + nz.p * k;
  if (nz.flipped) {
    T1 = -T1;
    B1 = -B1;
  }
  B1 += T1 * range.y_min;
  return FixedAffine{T1, B1, k, range};
}

}  // namespace

ShiftedProblem shift_range(const Rat& t, const Rat& b, QuantRange range) {
  return ShiftedProblem{t, b - t * Rat(range.y_min), QuantRange(0, range.width())};
}

std::vector<FixedAffine> solve_tb(const Rat& t, const Rat& b, int64_t K, QuantRange range,
                                  SolveMode mode) {
  if (t == 0) throw std::invalid_argument("solve_tb: t must be nonzero");
  if (K < 1) throw std::invalid_argument("solve_tb: K must be positive");
  if (K > kMaxScale) throw std::invalid_argument("solve_tb: K too large");

  const Normalized nz = normalize_for_range(t, b, range);
  const int64_t a = range.width();

  int64_t wlo, whi;
  if (a == 1) {
    // Single constraint; any T works.  Bound the scan near K*that.
    wlo = -2 * K - 1;
    whi = 2 * K + 1;
  } else {
    std::tie(wlo, whi) = t_window(nz.seq, K);
  }

  // The ceiling identity alone also admits That <= -m*K (canonical T <= 0)
  // for constant sequences, but those do not reproduce the clipped floor for
  // all N: the replacement must keep T on the same side as t.  Clamp the scan
  // to canonical T >= 1, i.e. That >= 1 - m*K.
  {
    const Int min_that = 1 - nz.m * K;
    if (Int(wlo + 1) < min_that) wlo = static_cast<int64_t>(min_that) - 1;
  }

  std::vector<FixedAffine> out;
  if (mode == SolveMode::All) {
    for (int64_t T = wlo + 1; T < whi; ++T) {
      const auto [blo, bhi] = b_interval(nz.seq, K, T);
      for (int64_t B = blo; B < bhi; ++B) out.push_back(assemble(T, B, K, nz, range));
    }
    if (!out.empty()) {
      std::sort(out.begin(), out.end(), [](const FixedAffine& x, const FixedAffine& y) {
        return x.T != y.T ? x.T < y.T : x.B < y.B;
      });
      return out;
    }
  } else {
    // Nearest-to-K*that first; exact ties go to the smaller candidate in the
    // sign-normalized half-space, i.e. the smaller |T| after unflipping.
    const Rat kt = Rat(K) * (nz.flipped ? Rat(-t) : t) - Rat(nz.m * K);
    int64_t left = static_cast<int64_t>(floor_rat(kt));
    int64_t right = left + 1;
    left = std::min(left, whi - 1);
    right = std::max(right, wlo + 1);
    while (left > wlo || right < whi) {
      bool take_left;
      if (left <= wlo)
        take_left = false;
      else if (right >= whi)
        take_left = true;
      else {
        const Rat dl = kt - Rat(left);
        const Rat dr = Rat(right) - kt;
        take_left = (dl != dr) ? dl < dr : true;
      }
      const int64_t T = take_left ? left-- : right++;
      const auto [blo, bhi] = b_interval(nz.seq, K, T);
      if (blo < bhi) {
        out.push_back(assemble(T, blo, K, nz, range));
        return out;
      }
    }
  }

  // Nothing on the positive side.  T = 0 is admissible iff the sequence is
  // constant, in which case the sign-function fallback is mandatory.
  if (nz.m == 0 && sequence_constant(nz.seq)) throw DegenerateSignError();
  throw NoSolutionError(nz.seq, K);
}

CandidateWindows candidate_windows(const Rat& t, const Rat& b, int64_t K, int n) {
  if (n < 2) throw std::invalid_argument("candidate_windows: need n >= 2");
  const Rat kt = Rat(K) * t;
  const Rat kb = Rat(K) * b;
  const Rat t_slack = Rat(2 * K, n - 1);
  const Rat b_slack = Rat(K) * Rat(n + 1, n - 1);
  return CandidateWindows{kt - t_slack, kt + t_slack, kb - b_slack, kb + b_slack};
}

RoundingCandidates intuitive_candidates(const Rat& t, const Rat& b, int64_t K) {
  const Rat kt = Rat(K) * t;
  const Rat kb = Rat(K) * b;
  return RoundingCandidates{floor_rat(kt), ceil_rat(kt), floor_rat(kb), ceil_rat(kb)};
}

std::optional<SignThreshold> detect_degenerate_sign(const Rat& t, const Rat& b,
                                                    QuantRange range) {
  if (t <= 0) throw std::invalid_argument("detect_degenerate_sign: requires t > 0");
  const int64_t a = range.width();
  const Rat b0 = b - t * Rat(range.y_min);
  const Int c1 = ceil_rat(t - b0);
  const Int cn = ceil_rat(Rat(a) * t - b0);
  if (c1 != cn) return std::nullopt;
  // (A-1)t < 1 follows from the equal ceilings; the contract states both.
  if (a > 1 && Rat(a - 1) * t >= 1) return std::nullopt;
  return SignThreshold{c1 - 1, range, false};
}

int64_t reduce_stride(int64_t K, int64_t alpha, int64_t beta, int n, uint64_t max_sequences) {
  (void)beta;  // shifts the offset only; recovered in solve_tb_strided
  if (alpha < 1) throw std::invalid_argument("reduce_stride: alpha must be positive");
  if (alpha == 1) return K;
  const int64_t threshold = blanket_threshold(n);
  for (int64_t kp = ceil_div_i64(K, alpha);; ++kp) {
    const int64_t blown = kp * alpha;
    if (blown > threshold || is_satisfied_k(n, blown, max_sequences)) return kp;
  }
}

FixedAffine solve_tb_strided(const Rat& t, const Rat& b, int64_t k_reduced, int64_t alpha,
                             int64_t beta, QuantRange range) {
  if (alpha < 1) throw std::invalid_argument("solve_tb_strided: alpha must be positive");
  if (k_reduced < 1 || k_reduced > kMaxScale / alpha)
    throw std::invalid_argument("solve_tb_strided: scale out of range");
  // Inputs alpha*N + beta reduce to the plain problem for (t/alpha, (b+beta)/alpha)
  // at scale alpha*k_reduced; B folds the beta term back for the original wire.
  const Rat tr = t / Rat(alpha);
  const Rat br = (b + Rat(beta)) / Rat(alpha);
  std::vector<FixedAffine> sol = solve_tb(tr, br, alpha * k_reduced, range, SolveMode::First);
  FixedAffine fa = sol.front();
  fa.B -= Int(beta) * k_reduced;
  fa.K = k_reduced;
  return fa;
}

}  // namespace bnfix
