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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bnfix/convert.hpp"
#include "bnfix/oracle.hpp"
#include "bnfix/seqgen.hpp"

namespace bnfix {

// Raw per-layer parameters: BN statistics (mu, sigma), learned scale/shift
// (gamma, beta), bias c, quantizer scales W and A, and the activation clip
// bounds before scaling (e.g. [0, 1] for ReLU).
struct BnLayerParams {
  std::string name;
  Rat mu;
  Rat sigma;   // > 0
  Rat gamma;   // != 0
  Rat beta;
  Rat c;
  int64_t W = 1;  // weight quantizer scale, >= 1
  int64_t A = 1;  // activation quantizer scale, >= 1
  int64_t y_min = 0;
  int64_t y_max = 1;
};

struct InvalidParamsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Integer clip range of the folded operator: [A*y_min, A*y_max].
QuantRange layer_range(const BnLayerParams& p);

// Folds BN plus quantizers into the one-affine pair
//   t = W*sigma/gamma,  b = A*W*(beta*sigma/gamma + c - mu),
// so that the quantized activation of the BN output equals
// clip(floor((N + b)/t), A*y_min, A*y_max) / A for every integer N.
AffineReal fold_bn(const BnLayerParams& p);

// Recommended hardware scale: 64 / 512 / 2^16 for 4/5/8-bit activations,
// otherwise the smallest power of two above the blanket threshold.
int64_t default_scale(int64_t n);

// Level index floor(A * clip(BN(N/(AW) + c), y_min, y_max)) evaluated through
// the original two-affine form, exact.  Reference path for simulate_compare.
Int eval_two_affine(const BnLayerParams& p, const Int& N);

struct QuantizedOp {
  std::optional<FixedAffine> fixed;
  std::optional<SignThreshold> sign;
};

// Solves Problem 2 for the folded pair, falling back to the sign-function
// operator when only T = 0 remains.  Propagates NoSolutionError.
QuantizedOp quantize_layer(const AffineReal& f, int64_t K, QuantRange range);

struct Model {
  std::string name;
  std::vector<BnLayerParams> layers;
  std::vector<std::string> notices;  // e.g. binary-float inputs converted exactly
};

struct LayerResult {
  BnLayerParams params;
  Rat t, b;
  QuantizedOp op;
  std::optional<EquivalenceReport> certificate;
  std::string error;       // empty when folded and certified
  int64_t used_k = 0;
  int64_t suggested_k = 0; // next satisfied scale, set on NoSolution
  bool ok() const { return error.empty(); }
};

struct FoldReport {
  std::string name;
  int64_t requested_k = 0;  // 0 = per-layer default scale
  std::vector<LayerResult> layers;
  std::vector<std::string> notices;
  bool all_certified() const;
};

// Parses the model document (JSON).  Numeric fields are decimal strings or
// "p/q" fractions, parsed exactly; plain JSON numbers are converted through
// their exact binary value and a notice is recorded.
Model load_model(std::istream& in);
Model load_model_file(const std::string& path);

// Folds every layer at scale k (0 selects default_scale per layer), attaching
// an exhaustive certificate.  Failing layers are reported and processing
// continues.
FoldReport fold_model(const Model& m, int64_t k);

// Deterministic folded document: same input and scale, same bytes.
void write_folded(const FoldReport& r, std::ostream& out);
FoldReport load_folded(std::istream& in);
FoldReport load_folded_file(const std::string& path);

struct LayerAgreement {
  std::string name;
  uint64_t checked = 0;
  uint64_t float_vs_bt = 0;  // two-affine vs one-affine mismatches
  uint64_t bt_vs_fixed = 0;  // one-affine vs fixed-point mismatches
};

struct CompareReport {
  std::vector<LayerAgreement> layers;
  bool all_agree() const;
};

// Evaluates the two-affine (float), one-affine (bt) and fixed-point (BT)
// paths over each layer's exhaustive transition window plus `samples` random
// inputs.  The float and bt paths must agree exactly (the fold is lossless
// over the rationals); bt and BT must agree by the certificate.
CompareReport simulate_compare(const Model& m, const FoldReport& folded, int samples,
                               uint64_t seed = 0x5eed);

}  // namespace bnfix
