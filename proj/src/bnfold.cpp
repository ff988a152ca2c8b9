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

#include "bnfix/bnfold.hpp"

#include <fstream>
#include <random>

#include "json.hpp"

namespace bnfix {

using json = nlohmann::ordered_json;

QuantRange layer_range(const BnLayerParams& p) {
  return QuantRange(p.A * p.y_min, p.A * p.y_max);
}

AffineReal fold_bn(const BnLayerParams& p) {
  if (p.sigma <= 0) throw InvalidParamsError("fold_bn: sigma must be positive");
  if (p.gamma == 0) throw InvalidParamsError("fold_bn: gamma must be nonzero");
  if (p.W < 1 || p.A < 1) throw InvalidParamsError("fold_bn: W and A must be >= 1");
  if (p.y_min >= p.y_max) throw InvalidParamsError("fold_bn: need y_min < y_max");
  const Rat t = Rat(p.W) * p.sigma / p.gamma;
  const Rat b = Rat(p.A * p.W) * (p.beta * p.sigma / p.gamma + p.c - p.mu);
  return AffineReal(t, b);
}

int64_t default_scale(int64_t n) {
  if (n == 15) return 64;
  if (n == 31) return 512;
  if (n == 255) return 65536;
  const int64_t threshold = blanket_threshold(static_cast<int>(n));
  int64_t k = 1;
  while (k <= threshold) k *= 2;
  return k;
}

Int eval_two_affine(const BnLayerParams& p, const Int& N) {
  const Rat x = Rat(N) / Rat(p.A * p.W) + p.c;
  Rat v = p.gamma * (x - p.mu) / p.sigma + p.beta;
  if (v < Rat(p.y_min)) v = Rat(p.y_min);
  if (v > Rat(p.y_max)) v = Rat(p.y_max);
  return floor_rat(Rat(p.A) * v);
}

QuantizedOp quantize_layer(const AffineReal& f, int64_t K, QuantRange range) {
  QuantizedOp op;
  try {
    op.fixed = solve_tb(f.t, f.b, K, range, SolveMode::First).front();
  } catch (const DegenerateSignError&) {
    if (f.t > 0) {
      op.sign = detect_degenerate_sign(f.t, f.b, range);
    } else {
      // Mirror of the ascending case: the step of (-t, -b) evaluated at -N.
      auto asc = detect_degenerate_sign(-f.t, -f.b, range);
      if (asc) op.sign = SignThreshold{-asc->n0, range, true};
    }
    if (!op.sign)
      throw std::logic_error("quantize_layer: degenerate regime without a valid sign window");
  }
  return op;
}

bool FoldReport::all_certified() const {
  for (const LayerResult& lr : layers)
    if (!lr.ok() || !lr.certificate || !lr.certificate->ok()) return false;
  return !layers.empty();
}

namespace {

Rat field_to_rat(const json& j, const std::string& layer, const std::string& key,
                 std::vector<std::string>& notices) {
  const json& v = j.at(key);
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rat(Int(v.get<int64_t>()));
  if (v.is_number_float()) {
    Rat q = rat_from_double(v.get<double>());
    notices.push_back("layer '" + layer + "' field '" + key +
                      "': binary float converted to exact value " + rat_to_string(q));
    return q;
  }
  throw SchemaError("layer '" + layer + "': field '" + key + "' must be a string or number");
}

int64_t field_to_i64(const json& j, const std::string& layer, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number_integer())
    throw SchemaError("layer '" + layer + "': field '" + key + "' must be an integer");
  return v.get<int64_t>();
}

BnLayerParams parse_layer(const json& j, std::vector<std::string>& notices) {
  if (!j.is_object()) throw SchemaError("layer entries must be objects");
  BnLayerParams p;
  p.name = j.value("name", "");
  if (p.name.empty()) throw SchemaError("layer without a name");
  for (const char* key : {"mu", "sigma", "gamma", "beta", "c", "W", "A"})
    if (!j.contains(key))
      throw SchemaError("layer '" + p.name + "': missing field '" + std::string(key) + "'");
  p.mu = field_to_rat(j, p.name, "mu", notices);
  p.sigma = field_to_rat(j, p.name, "sigma", notices);
  p.gamma = field_to_rat(j, p.name, "gamma", notices);
  p.beta = field_to_rat(j, p.name, "beta", notices);
  p.c = field_to_rat(j, p.name, "c", notices);
  p.W = field_to_i64(j, p.name, "W");
  p.A = field_to_i64(j, p.name, "A");
  p.y_min = j.contains("y_min") ? field_to_i64(j, p.name, "y_min") : 0;
  p.y_max = j.contains("y_max") ? field_to_i64(j, p.name, "y_max") : 1;
  if (p.sigma <= 0) throw SchemaError("layer '" + p.name + "': sigma must be positive");
  if (p.gamma == 0) throw SchemaError("layer '" + p.name + "': gamma must be nonzero");
  if (p.W < 1 || p.A < 1) throw SchemaError("layer '" + p.name + "': W and A must be >= 1");
  if (p.y_min >= p.y_max) throw SchemaError("layer '" + p.name + "': need y_min < y_max");
  return p;
}

json layer_params_to_json(const BnLayerParams& p) {
  json j;
  j["name"] = p.name;
  j["mu"] = rat_to_string(p.mu);
  j["sigma"] = rat_to_string(p.sigma);
  j["gamma"] = rat_to_string(p.gamma);
  j["beta"] = rat_to_string(p.beta);
  j["c"] = rat_to_string(p.c);
  j["W"] = p.W;
  j["A"] = p.A;
  j["y_min"] = p.y_min;
  j["y_max"] = p.y_max;
  return j;
}

json certificate_to_json(const EquivalenceReport& rep) {
  json j;
  j["window"] = {rep.window_lo.str(), rep.window_hi.str()};
  j["checked"] = rep.checked_count;
  j["mismatches"] = rep.mismatches.size();
  j["sentinels_checked"] = rep.sentinels_checked;
  if (!rep.mismatches.empty()) {
    json ms = json::array();
    for (const auto& m : rep.mismatches)
      ms.push_back({{"N", m.n.str()}, {"lhs", m.lhs.str()}, {"rhs", m.rhs.str()}});
    j["mismatch_list"] = ms;
  }
  return j;
}

json parse_document(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("model document is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("model document must be a JSON object");
  if (!doc.contains("layers") || !doc["layers"].is_array())
    throw SchemaError("model document needs a 'layers' array");
  return doc;
}

Int field_to_big(const json& v, const std::string& what) {
  if (v.is_number_integer()) return Int(v.get<int64_t>());
  if (v.is_string()) {
    const Rat q = parse_rational(v.get<std::string>());
    if (denominator(q) != 1) throw SchemaError("field '" + what + "' must be an integer");
    return numerator(q);
  }
  throw SchemaError("field '" + what + "' must be an integer or integer string");
}

}  // namespace

Model load_model(std::istream& in) {
  json doc = parse_document(in);
  Model m;
  try {
    m.name = doc.value("name", "");
    for (const json& jl : doc["layers"]) m.layers.push_back(parse_layer(jl, m.notices));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed model document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("malformed model document: ") + e.what());
  }
  return m;
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open model file: " + path);
  return load_model(in);
}

FoldReport fold_model(const Model& m, int64_t k) {
  FoldReport report;
  report.name = m.name;
  report.requested_k = k;
  report.notices = m.notices;
  for (const BnLayerParams& p : m.layers) {
    LayerResult lr;
    lr.params = p;
    const QuantRange range = layer_range(p);
    const int64_t used = (k == 0) ? default_scale(range.width()) : k;
    lr.used_k = used;
    try {
      const AffineReal affine = fold_bn(p);
      lr.t = affine.t;
      lr.b = affine.b;
      lr.op = quantize_layer(affine, used, range);
      if (lr.op.fixed)
        lr.certificate = verify_equivalence(affine.t, affine.b, *lr.op.fixed);
      else
        lr.certificate = verify_sign(affine.t, affine.b, *lr.op.sign);
      if (!lr.certificate->ok()) lr.error = "certificate failed: " + lr.certificate->summary();
    } catch (const NoSolutionError& e) {
      lr.error = e.what();
      lr.suggested_k = next_satisfied_k(static_cast<int>(range.width()), used);
    } catch (const InvalidParamsError& e) {
      lr.error = e.what();
    }
    report.layers.push_back(std::move(lr));
  }
  return report;
}

void write_folded(const FoldReport& r, std::ostream& out) {
  json doc;
  doc["name"] = r.name;
  doc["k"] = r.requested_k;
  if (!r.notices.empty()) doc["notices"] = r.notices;
  json layers = json::array();
  for (const LayerResult& lr : r.layers) {
    json j = layer_params_to_json(lr.params);
    if (lr.error.empty() || lr.op.fixed || lr.op.sign) {
      j["t"] = rat_to_string(lr.t);
      j["b"] = rat_to_string(lr.b);
    }
    j["used_k"] = lr.used_k;
    if (lr.op.fixed) {
      j["fixed"] = {{"T", lr.op.fixed->T.str()},
                    {"B", lr.op.fixed->B.str()},
                    {"K", lr.op.fixed->K}};
    } else if (lr.op.sign) {
      j["sign"] = {{"n0", lr.op.sign->n0.str()}, {"descending", lr.op.sign->descending}};
    }
    if (lr.certificate) j["certificate"] = certificate_to_json(*lr.certificate);
    if (!lr.error.empty()) {
      j["error"] = lr.error;
      if (lr.suggested_k > 0) j["suggested_k"] = lr.suggested_k;
    }
    layers.push_back(std::move(j));
  }
  doc["layers"] = std::move(layers);
  out << doc.dump(2) << '\n';
}

FoldReport load_folded(std::istream& in) {
  json doc = parse_document(in);
  FoldReport r;
  try {
    r.name = doc.value("name", "");
    r.requested_k = doc.value("k", int64_t{0});
    for (const json& jl : doc["layers"]) {
      LayerResult lr;
      lr.params = parse_layer(jl, r.notices);
      lr.used_k = jl.value("used_k", int64_t{0});
      if (jl.contains("t")) lr.t = parse_rational(jl["t"].get<std::string>());
      if (jl.contains("b")) lr.b = parse_rational(jl["b"].get<std::string>());
      const QuantRange range = layer_range(lr.params);
      if (jl.contains("fixed")) {
        const json& jf = jl["fixed"];
        lr.op.fixed = FixedAffine{field_to_big(jf.at("T"), "T"), field_to_big(jf.at("B"), "B"),
                                  jf.at("K").get<int64_t>(), range};
      } else if (jl.contains("sign")) {
        const json& js = jl["sign"];
        lr.op.sign = SignThreshold{field_to_big(js.at("n0"), "n0"), range,
                                   js.value("descending", false)};
      }
      if (jl.contains("error")) lr.error = jl["error"].get<std::string>();
      r.layers.push_back(std::move(lr));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("malformed folded document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("malformed folded document: ") + e.what());
  }
  return r;
}

FoldReport load_folded_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open folded file: " + path);
  return load_folded(in);
}

bool CompareReport::all_agree() const {
  for (const LayerAgreement& la : layers)
    if (la.float_vs_bt != 0 || la.bt_vs_fixed != 0) return false;
  return !layers.empty();
}

CompareReport simulate_compare(const Model& m, const FoldReport& folded, int samples,
                               uint64_t seed) {
  if (m.layers.size() != folded.layers.size())
    throw SchemaError("simulate_compare: layer counts differ");
  CompareReport rep;
  std::mt19937_64 rng(seed);
  for (size_t li = 0; li < m.layers.size(); ++li) {
    const BnLayerParams& p = m.layers[li];
    const LayerResult& lr = folded.layers[li];
    if (p.name != lr.params.name)
      throw SchemaError("simulate_compare: layer name mismatch at index " + std::to_string(li) +
                        ": '" + p.name + "' vs '" + lr.params.name + "'");
    if (!lr.op.fixed && !lr.op.sign)
      throw SchemaError("simulate_compare: layer '" + p.name + "' carries no fixed operator");

    const QuantRange range = layer_range(p);
    const AffineReal affine = fold_bn(p);
    LayerAgreement la;
    la.name = p.name;

    // Transition hull of the one-affine path, widened by a margin; outside it
    // every path is saturated.
    const Rat u1 = affine.t * Rat(range.y_min) - affine.b;
    const Rat u2 = affine.t * Rat(range.y_max) - affine.b;
    Int lo = floor_rat(u1 < u2 ? u1 : u2) - 8;
    Int hi = ceil_rat(u1 < u2 ? u2 : u1) + 8;
    const Int width = hi - lo;
    if (width > 10'000'000)
      throw std::invalid_argument("simulate_compare: layer '" + p.name +
                                  "' has a transition window too wide to scan");

    auto check = [&](const Int& N) {
      const Int two_affine = eval_two_affine(p, N);
      const Int one_affine = eval_float_side(N, affine.t, affine.b, range);
      const Int fixed_point =
          lr.op.fixed ? eval_fixed_side(N, *lr.op.fixed) : eval_sign_side(N, *lr.op.sign);
      ++la.checked;
      if (two_affine != one_affine) ++la.float_vs_bt;
      if (one_affine != fixed_point) ++la.bt_vs_fixed;
    };

    for (Int N = lo; N <= hi; ++N) check(N);
    // Random probes across a band ten windows wide on each side.
    const int64_t w64 = static_cast<int64_t>(width);
    for (int i = 0; i < samples; ++i) {
      const Int N = lo - 10 * width + Int(rng() % static_cast<uint64_t>(21 * w64 + 1));
      check(N);
    }
    rep.layers.push_back(std::move(la));
  }
  return rep;
}

}  // namespace bnfix
