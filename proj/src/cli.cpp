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

#include "bnfix/cli.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bnfix/bnfold.hpp"
#include "bnfix/convert.hpp"
#include "bnfix/oracle.hpp"
#include "bnfix/scale_search.hpp"
#include "bnfix/seqgen.hpp"

namespace bnfix::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitSchema = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitUsage = 64;

struct Options {
  int n = 0;
  int64_t k0 = 0;
  int64_t window = 100000;
  uint64_t budget = SequenceEnumerator::kDefaultBudget;
  int threads = 1;
  int64_t k_max = 0;
  std::string t_text, b_text, big_t, big_b;
  int64_t k = 0;
  int64_t y_min = 0, y_max = 0;
  bool all = false;
  int64_t margin = 5;
  std::string model_path, folded_path, out_path;
  int samples = 1000;
  bool as_json = false;
  bool verbose = false;
  bool no_shortcut = false;
};

int cmd_search_kn(const Options& o, std::ostream& out, std::ostream& err) {
  ScaleSearchConfig cfg;
  cfg.n = o.n;
  cfg.k0 = o.k0;
  cfg.window = o.window;
  cfg.max_sequences = o.budget;
  cfg.threads = o.threads;
  // Multi-window (long-running) searches report progress on the diagnostic
  // stream; --verbose reports every window of every search.
  const bool verbose = o.verbose;
  cfg.progress = [&err, verbose](int pass, uint64_t windows, int64_t k) {
    if (verbose || windows > 1)
      err << "pass " << pass << " window " << windows << " K=" << k << "\n";
  };
  const ScaleResult r = search_kn(cfg);
  const auto [lower, upper] = kn_bounds(o.n);
  if (o.as_json) {
    json j;
    j["n"] = r.n;
    j["kn"] = r.kn;
    j["lower"] = lower;
    j["upper"] = upper;
    j["sequences"] = r.sequence_count;
    j["elapsed_s"] = r.elapsed_seconds;
    j["minimal_certified"] = r.minimal_certified;
    out << j.dump() << "\n";
  } else {
    out << "   n      K_n    lower    upper    sequences   elapsed_s  minimal\n";
    out << std::setw(4) << r.n << std::setw(9) << r.kn << std::setw(9) << lower << std::setw(9)
        << upper << std::setw(13) << r.sequence_count << std::setw(12) << std::fixed
        << std::setprecision(3) << r.elapsed_seconds << (r.minimal_certified ? "  yes" : "  no")
        << "\n";
  }
  return kExitOk;
}

int cmd_list_k(const Options& o, std::ostream& out) {
  const auto ks = list_satisfied_k(o.n, o.k_max, o.budget, !o.no_shortcut);
  if (o.as_json) {
    json j;
    j["n"] = o.n;
    j["max"] = o.k_max;
    j["satisfied"] = ks;
    out << j.dump() << "\n";
  } else {
    for (size_t i = 0; i < ks.size(); ++i) out << (i ? " " : "") << ks[i];
    out << "\n";
  }
  return kExitOk;
}

int cmd_bounds(const Options& o, std::ostream& out) {
  const auto [lower, upper] = kn_bounds(o.n);
  if (o.as_json) {
    json j;
    j["n"] = o.n;
    j["lower"] = lower;
    j["upper"] = upper;
    out << j.dump() << "\n";
  } else {
    out << lower << " " << upper << "\n";
  }
  return kExitOk;
}

int cmd_convert(const Options& o, std::ostream& out, std::ostream& err) {
  const Rat t = parse_rational(o.t_text);
  const Rat b = parse_rational(o.b_text);
  const QuantRange range(o.y_min, o.y_max);
  try {
    const auto pairs = solve_tb(t, b, o.k, range, o.all ? SolveMode::All : SolveMode::First);
    if (o.as_json) {
      json j;
      j["t"] = rat_to_string(t);
      j["b"] = rat_to_string(b);
      j["k"] = o.k;
      j["y_min"] = o.y_min;
      j["y_max"] = o.y_max;
      json arr = json::array();
      for (const FixedAffine& fa : pairs) arr.push_back({{"T", fa.T.str()}, {"B", fa.B.str()}});
      j["pairs"] = arr;
      out << j.dump() << "\n";
    } else {
      for (const FixedAffine& fa : pairs)
        out << "T=" << fa.T << " B=" << fa.B << " K=" << fa.K << "\n";
    }
    return kExitOk;
  } catch (const DegenerateSignError&) {
    auto st = detect_degenerate_sign(t > 0 ? t : Rat(-t), t > 0 ? b : Rat(-b), range);
    if (st && t < 0) st->n0 = -st->n0;  // mirrored step for a negative slope
    err << "no nonzero T at K=" << o.k << ": |t| < 1/(A-1) regime; sign threshold N0="
        << (st ? st->n0.str() : std::string("?")) << (t > 0 ? "" : " (descending)") << "\n";
    return kExitDomain;
  } catch (const NoSolutionError& e) {
    err << e.what() << "\n";
    err << "witness sequence:";
    for (int32_t v : e.witness.s) err << " " << v;
    err << "\n";
    err << "next satisfied K: " << next_satisfied_k(static_cast<int>(range.width()), o.k, o.budget)
        << "\n";
    return kExitDomain;
  }
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Rat t = parse_rational(o.t_text);
  const Rat b = parse_rational(o.b_text);
  const QuantRange range(o.y_min, o.y_max);
  const FixedAffine fa{Int(o.big_t), Int(o.big_b), o.k, range};
  const EquivalenceReport rep = verify_equivalence(t, b, fa, o.margin);
  if (o.as_json) {
    json j;
    j["ok"] = rep.ok();
    j["checked"] = rep.checked_count;
    j["window"] = {rep.window_lo.str(), rep.window_hi.str()};
    j["sentinels_checked"] = rep.sentinels_checked;
    if (!rep.ok()) {
      json ms = json::array();
      for (const auto& m : rep.mismatches)
        ms.push_back({{"N", m.n.str()}, {"lhs", m.lhs.str()}, {"rhs", m.rhs.str()}});
      j["mismatches"] = ms;
    }
    out << j.dump() << "\n";
  } else {
    out << rep.summary() << "\n";
  }
  return rep.ok() ? kExitOk : kExitDomain;
}

int cmd_fold(const Options& o, std::ostream& out, std::ostream& err) {
  const Model m = load_model_file(o.model_path);
  for (const std::string& note : m.notices) err << "notice: " << note << "\n";
  const FoldReport rep = fold_model(m, o.k);
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    if (!f) {
      err << "cannot write " << o.out_path << "\n";
      return kExitDomain;
    }
    write_folded(rep, f);
  } else {
    write_folded(rep, out);
  }
  size_t certified = 0;
  for (const LayerResult& lr : rep.layers) {
    if (lr.ok()) {
      ++certified;
    } else {
      err << "layer '" << lr.params.name << "': " << lr.error;
      if (lr.suggested_k > 0) err << " (next satisfied K: " << lr.suggested_k << ")";
      err << "\n";
    }
  }
  err << certified << "/" << rep.layers.size() << " layers certified\n";
  return certified == rep.layers.size() ? kExitOk : kExitNoSolution;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const Model m = load_model_file(o.model_path);
  const FoldReport folded = load_folded_file(o.folded_path);
  const CompareReport rep = simulate_compare(m, folded, o.samples);
  if (o.as_json) {
    json arr = json::array();
    for (const LayerAgreement& la : rep.layers)
      arr.push_back({{"name", la.name},
                     {"checked", la.checked},
                     {"float_vs_bt", la.float_vs_bt},
                     {"bt_vs_BT", la.bt_vs_fixed}});
    json j;
    j["layers"] = arr;
    j["all_agree"] = rep.all_agree();
    out << j.dump() << "\n";
  } else {
    for (const LayerAgreement& la : rep.layers)
      out << la.name << ": checked=" << la.checked << " float_vs_bt=" << la.float_vs_bt
          << " bt_vs_BT=" << la.bt_vs_fixed << "\n";
    out << (rep.all_agree() ? "all paths agree" : "MISMATCH detected") << "\n";
  }
  return rep.all_agree() ? kExitOk : kExitDomain;
}

int cmd_dump_seqs(const Options& o, std::ostream& out, std::ostream& err) {
  if (!o.out_path.empty()) {
    std::ofstream f(o.out_path);
    if (!f) {
      err << "cannot write " << o.out_path << "\n";
      return kExitDomain;
    }
    dump_sequences(o.n, f, o.budget);
  } else {
    dump_sequences(o.n, out, o.budget);
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bnfix: exact fixed-point folding of batch-norm affine operators"};
  app.require_subcommand(1);
  Options o;

  auto* search = app.add_subcommand("search-kn", "search the minimal shared scale K_n");
  search->add_option("--n", o.n, "sequence length (activation levels)")->required();
  search->add_option("--start", o.k0, "search start K0 (default: proven lower bound)");
  search->add_option("--window", o.window, "sequence window size");
  search->add_option("--budget", o.budget, "max enumerated sequences");
  search->add_option("--threads", o.threads, "worker threads");
  search->add_flag("--json", o.as_json, "machine-readable output");
  search->add_flag("-v,--verbose", o.verbose, "progress to stderr");

  auto* listk = app.add_subcommand("list-k", "list satisfied scales up to a bound");
  listk->add_option("--n", o.n, "sequence length")->required();
  listk->add_option("--max", o.k_max, "largest K to report")->required();
  listk->add_option("--budget", o.budget, "max enumerated sequences");
  listk->add_flag("--no-shortcut", o.no_shortcut, "test above the blanket threshold too");
  listk->add_flag("--json", o.as_json, "machine-readable output");

  auto* bounds = app.add_subcommand("bounds", "proven lower/upper bounds on K_n");
  bounds->add_option("--n", o.n, "sequence length")->required();
  bounds->add_flag("--json", o.as_json, "machine-readable output");

  auto* convert = app.add_subcommand("convert", "solve (T, B) for a given (t, b) and K");
  convert->add_option("--t", o.t_text, "slope (decimal or p/q)")->required();
  convert->add_option("--b", o.b_text, "offset (decimal or p/q)")->required();
  convert->add_option("--k", o.k, "quantized scale K")->required();
  convert->add_option("--ymin", o.y_min, "clip lower bound")->required();
  convert->add_option("--ymax", o.y_max, "clip upper bound")->required();
  convert->add_flag("--all", o.all, "return every valid pair");
  convert->add_option("--budget", o.budget, "max enumerated sequences (for recovery hints)");
  convert->add_flag("--json", o.as_json, "machine-readable output");

  auto* verify = app.add_subcommand("verify", "exhaustively certify a (T, B, K) replacement");
  verify->add_option("--t", o.t_text)->required();
  verify->add_option("--b", o.b_text)->required();
  verify->add_option("--T", o.big_t, "integer T")->required();
  verify->add_option("--B", o.big_b, "integer B")->required();
  verify->add_option("--k", o.k, "quantized scale K")->required();
  verify->add_option("--ymin", o.y_min)->required();
  verify->add_option("--ymax", o.y_max)->required();
  verify->add_option("--margin", o.margin, "window margin");
  verify->add_flag("--json", o.as_json, "machine-readable output");

  auto* fold = app.add_subcommand("fold", "fold a BN model description to fixed point");
  fold->add_option("--model", o.model_path, "model JSON path")->required();
  fold->add_option("--k", o.k, "scale K (0 = per-layer default)");
  fold->add_option("--out", o.out_path, "output path (default stdout)");

  auto* compare = app.add_subcommand("compare", "evaluate float/bt/BT paths layer by layer");
  compare->add_option("--model", o.model_path, "model JSON path")->required();
  compare->add_option("--folded", o.folded_path, "folded JSON path")->required();
  compare->add_option("--samples", o.samples, "extra random probes per layer");
  compare->add_flag("--json", o.as_json, "machine-readable output");

  auto* dump = app.add_subcommand("dump-seqs", "dump realizable sequences, one per line");
  dump->add_option("--n", o.n, "sequence length")->required();
  dump->add_option("--out", o.out_path, "output path (default stdout)");
  dump->add_option("--budget", o.budget, "max enumerated sequences");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*search) return cmd_search_kn(o, out, err);
    if (*listk) return cmd_list_k(o, out);
    if (*bounds) return cmd_bounds(o, out);
    if (*convert) return cmd_convert(o, out, err);
    if (*verify) return cmd_verify(o, out);
    if (*fold) return cmd_fold(o, out, err);
    if (*compare) return cmd_compare(o, out);
    if (*dump) return cmd_dump_seqs(o, out, err);
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const BudgetExceededError& e) {
    err << e.what() << "\n";
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace bnfix::cli
