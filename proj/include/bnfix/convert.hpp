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
#include <optional>
#include <stdexcept>
#include <vector>

#include "bnfix/scale_search.hpp"
#include "bnfix/seqgen.hpp"

namespace bnfix {

// Integer clip bounds of the quantizer output.  width() is the A of the
// canonical [0, A] problem.
struct QuantRange {
  int64_t y_min;
  int64_t y_max;

  QuantRange(int64_t lo, int64_t hi) : y_min(lo), y_max(hi) {
    if (lo >= hi) throw std::invalid_argument("QuantRange: need y_min < y_max");
  }
  int64_t width() const { return y_max - y_min; }
};

// Fixed-point replacement of the pair (t, b): for every integer N,
//   clip(floor((N + b)/t), y_min, y_max) == clip(floor((N*K + B)/T), y_min, y_max).
struct FixedAffine {
  Int T;  // nonzero
  Int B;
  int64_t K;
  QuantRange range;
};

// Two-valued step operator for the |t| < 1/(A-1) regime where no nonzero T
// exists.  Ascending (t > 0): y_max for N > n0, y_min for N <= n0.
// Descending mirrors a negative slope: y_max for N < n0, y_min for N >= n0.
struct SignThreshold {
  Int n0;
  QuantRange range;
  bool descending = false;
};

struct NoSolutionError : std::runtime_error {
  CeilSequence witness;
  int64_t k;
  NoSolutionError(CeilSequence w, int64_t k_)
      : std::runtime_error("no (T, B) exists at K=" + std::to_string(k_) +
                           "; K is not satisfied for this (t, b)"),
        witness(std::move(w)),
        k(k_) {}
};

struct DegenerateSignError : std::runtime_error {
  DegenerateSignError()
      : std::runtime_error(
            "only T = 0 admits this (t, b); use detect_degenerate_sign") {}
};

enum class SolveMode { First, All };

struct ShiftedProblem {
  Rat t;
  Rat b;          // b - t * y_min
  QuantRange range;  // [0, A]
};

// Rewrites the clip range to the canonical [0, A]; solving there and shifting
// B back by T * y_min reproduces the general-range solution.
ShiftedProblem shift_range(const Rat& t, const Rat& b, QuantRange range);

// Solves Problem 2 for the given scale: T is scanned inside the pairwise
// window, nearest to K*t first (ties toward the smaller magnitude), with B
// covering [max_i(iT - K S_i), min_j(jT - K S_j) + K).  First mode returns one
// pair with B at the interval's lower end; All mode returns every pair sorted
// by (T, B).
// Throws NoSolutionError when no nonzero T admits a B (K not satisfied for
// this pair) and DegenerateSignError when T = 0 is the only admissible value.
std::vector<FixedAffine> solve_tb(const Rat& t, const Rat& b, int64_t K, QuantRange range,
                                  SolveMode mode);

// Loose open windows guaranteed to contain every valid T and B:
//   T in (Kt - 2K/(n-1), Kt + 2K/(n-1)),
//   B in (Kb - K(n+1)/(n-1), Kb + K(n+1)/(n-1)).
struct CandidateWindows {
  Rat t_lo, t_hi;
  Rat b_lo, b_hi;
};
CandidateWindows candidate_windows(const Rat& t, const Rat& b, int64_t K, int n);

// The four rounding candidates floor/ceil of tK and bK.  Per coordinate at
// least one candidate appears among the valid values whenever solutions
// exist; the combined pair may still fail.
struct RoundingCandidates {
  Int t_floor, t_ceil;
  Int b_floor, b_ceil;
};
RoundingCandidates intuitive_candidates(const Rat& t, const Rat& b, int64_t K);

// Detects the two-valued regime: requires t > 0 and, with b' = b - t*y_min,
// ceil(t - b') == ceil(At - b'); the threshold is n0 = ceil(t - b') - 1.
// Returns nothing when the window check fails (which covers t >= 1/(A-1)).
std::optional<SignThreshold> detect_degenerate_sign(const Rat& t, const Rat& b,
                                                    QuantRange range);

// Effective scale for inputs restricted to the lattice alpha*N + beta: the
// smallest K' >= ceil(K/alpha) whose blown-up scale alpha*K' is satisfied for
// n.  beta shifts the offset only and does not influence the scale.
int64_t reduce_stride(int64_t K, int64_t alpha, int64_t beta, int n,
                      uint64_t max_sequences = SequenceEnumerator::kDefaultBudget);

// Solves for inputs of the form alpha*N + beta at the reduced scale k_reduced
// (alpha * k_reduced must be satisfied).  The returned operator is valid for
// every input congruent to beta modulo alpha.
FixedAffine solve_tb_strided(const Rat& t, const Rat& b, int64_t k_reduced, int64_t alpha,
                             int64_t beta, QuantRange range);

}  // namespace bnfix
