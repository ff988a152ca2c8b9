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

#include "bnfix/scale_search.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <stdexcept>

namespace bnfix {

std::optional<TbPair> find_tb_for_k(const CeilSequence& seq, int64_t k) {
  const int n = seq.n();
  if (n < 1 || k < 1) throw std::invalid_argument("find_tb_for_k: need n >= 1, k >= 1");
  if (k > (int64_t{1} << 40)) throw std::invalid_argument("find_tb_for_k: k too large");
  const int32_t* s = seq.s.data();

  if (n == 1) {
    // Single constraint ceil((T - B)/K) = S_1; T = 1 with B at the lower end.
    return TbPair{1, 1 - k * s[0]};
  }

  const int64_t sn = s[n - 1];
  const int64_t t_lo = ceil_div_i64(k * (sn - 2) + 1, n - 1);
  const int64_t t_hi = floor_div_i64(k * sn - 1, n - 1);
  for (int64_t T = t_lo; T <= t_hi; ++T) {
    int64_t bmax = 1 * T - k * s[0];
    int64_t bmin = bmax;
    for (int i = 2; i <= n; ++i) {
      const int64_t v = i * T - k * s[i - 1];
      if (v > bmax) bmax = v;
      if (v < bmin) bmin = v;
    }
    if (bmax < bmin + k) return TbPair{T, bmax};
  }
  return std::nullopt;
}

bool is_satisfied_k(int n, int64_t k, uint64_t max_sequences) {
  SequenceEnumerator e(n, max_sequences);
  CeilSequence seq;
  while (e.next(seq))
    if (!find_tb_for_k(seq, k)) return false;
  return true;
}

int64_t blanket_threshold(int n) {
  if (n <= 2) return 0;
  const int64_t m = n;
  if (n <= 4) return (m - 1) * (m - 2);
  return (m - 1) * (m - 3) / 2;
}

std::pair<int64_t, int64_t> kn_bounds(int n) {
  if (n < 1) throw std::invalid_argument("kn_bounds: n must be positive");
  const int64_t m = n;
  const int64_t upper = (n > 4) ? (m - 1) * (m - 3) / 2 + 1 : (m - 1) * (m - 2) + 1;
  int64_t lower = 1;
  if (n >= 27)
    lower = (m * m) / 4 + 1;
  else if (n >= 15)
    lower = ceil_div_i64((m - 1) * (m - 1), 4);
  return {lower, upper};
}

namespace {

// Minimal K' >= k satisfying this one sequence; counts each failed K.
int64_t raise_k_for(const CeilSequence& seq, int64_t k,
                    std::map<int64_t, uint64_t>& witness_counts) {
  while (!find_tb_for_k(seq, k)) {
    ++witness_counts[k];
    ++k;
  }
  return k;
}

int64_t default_k0(int n) {
  if (n >= 15) {
    const int64_t m = n;
    return ceil_div_i64((m - 1) * (m - 1), 4);
  }
  return 1;
}

}  // namespace

ScaleResult search_kn(const ScaleSearchConfig& cfg) {
  if (cfg.n < 1) throw std::invalid_argument("search_kn: n must be positive");
  if (cfg.window < 1) throw std::invalid_argument("search_kn: window must be positive");
  const auto t0 = std::chrono::steady_clock::now();

  ScaleResult res;
  res.n = cfg.n;
  const bool default_start = (cfg.k0 == 0);
  int64_t k = default_start ? default_k0(cfg.n) : cfg.k0;
  if (k < 1) throw std::invalid_argument("search_kn: k0 must be positive");

  const int threads = std::max(1, cfg.threads);
  int pass = 0;
  bool raised = true;
  while (raised) {
    raised = false;
    ++pass;
    SequenceEnumerator e(cfg.n, cfg.max_sequences);
    std::vector<CeilSequence> window;
    uint64_t windows_done = 0;
    uint64_t total = 0;
    while (true) {
      window.clear();
      if (e.next_window(static_cast<size_t>(cfg.window), window) == 0) break;
      total += window.size();

      int64_t k_window = k;
      if (threads == 1 || window.size() < 256) {
        for (const CeilSequence& seq : window)
          k_window = raise_k_for(seq, k_window, res.witness_counts);
      } else {
        // Each chunk raises independently from the window's entry K; the
        // max-reduction plus the outer re-scan gives the sequential result.
        const size_t chunk = (window.size() + threads - 1) / threads;
        std::vector<std::future<std::pair<int64_t, std::map<int64_t, uint64_t>>>> futs;
        for (int w = 0; w < threads; ++w) {
          const size_t lo = w * chunk;
          if (lo >= window.size()) break;
          const size_t hi = std::min(window.size(), lo + chunk);
          futs.push_back(std::async(std::launch::async, [&window, lo, hi, k]() {
            std::map<int64_t, uint64_t> wit;
            int64_t kk = k;
            for (size_t idx = lo; idx < hi; ++idx) kk = raise_k_for(window[idx], kk, wit);
            return std::make_pair(kk, std::move(wit));
          }));
        }
        for (auto& f : futs) {
          auto [kk, wit] = f.get();
          k_window = std::max(k_window, kk);
          for (const auto& [key, cnt] : wit) res.witness_counts[key] += cnt;
        }
      }

      if (k_window > k) {
        k = k_window;
        raised = true;
      }
      ++windows_done;
      if (cfg.progress) cfg.progress(pass, windows_done, k);
    }
    res.sequence_count = total;
  }

  res.kn = k;

  // The multi-pass protocol alone certifies minimality only down to k0;
  // reproduce the golden table as a certificate, not a convergence artifact.
  if (k > 1) {
    SequenceEnumerator e(cfg.n, cfg.max_sequences);
    CeilSequence seq;
    bool found_witness = false;
    while (e.next(seq)) {
      if (!find_tb_for_k(seq, k - 1)) {
        ++res.witness_counts[k - 1];
        found_witness = true;
        break;
      }
    }
    res.minimal_certified = found_witness;
    if (!found_witness && default_start && cfg.certify_minimal)
      throw std::logic_error("search_kn: K_n - 1 is satisfied; lower-bound start was not sound");
  } else {
    res.minimal_certified = true;
  }

  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::vector<int64_t> list_satisfied_k(int n, int64_t k_max, uint64_t max_sequences,
                                      bool use_blanket_shortcut) {
  if (n < 1 || k_max < 1) throw std::invalid_argument("list_satisfied_k: need n, k_max >= 1");
  std::vector<int64_t> out;
  const int64_t threshold = blanket_threshold(n);
  for (int64_t k = 1; k <= k_max; ++k) {
    if (use_blanket_shortcut && k > threshold) {
      out.push_back(k);
      continue;
    }
    if (is_satisfied_k(n, k, max_sequences)) out.push_back(k);
  }
  return out;
}

int64_t next_satisfied_k(int n, int64_t k, uint64_t max_sequences) {
  const int64_t threshold = blanket_threshold(n);
  for (int64_t kk = k + 1;; ++kk)
    if (kk > threshold || is_satisfied_k(n, kk, max_sequences)) return kk;
}

}  // namespace bnfix
