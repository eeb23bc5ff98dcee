// Copyright 2026 The dg2s Authors.
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

#ifndef DG2S_FEATURES_H_
#define DG2S_FEATURES_H_

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dg2s/rule.h"

namespace dg2s {

enum Feature : int {
  kTmFwd = 0,
  kTmBwd,
  kLexFwd,
  kLexBwd,
  kLm,
  kRulePenalty,
  kWordPenalty,
  kDistJump,
  kDistGap,
  kGapPenalty,
  kGluePenalty,
  kNumFeatures
};

// Feature values h; the model score is sum_k w_k * h_k, maximised.
using FeatureVector = std::array<double, kNumFeatures>;

inline FeatureVector& operator+=(FeatureVector& a, const FeatureVector& b) {
  for (int k = 0; k < kNumFeatures; ++k) a[k] += b[k];
  return a;
}
inline FeatureVector operator+(FeatureVector a, const FeatureVector& b) {
  return a += b;
}

const char* feature_name(Feature f);
std::optional<Feature> feature_by_name(const std::string& name);

// Names reported by each decoder family.
const std::vector<Feature>& seg_features();
const std::vector<Feature>& snrg_features();

struct Weights {
  std::array<double, kNumFeatures> w{};

  static Weights defaults();
  // "name:value"; ConfigError on unknown names or bad numbers.
  void set(const std::string& spec);
  void set(Feature f, double v) { w[f] = v; }
  double operator[](Feature f) const { return w[f]; }
  double dot(const FeatureVector& h) const {
    double s = 0.0;
    for (int k = 0; k < kNumFeatures; ++k) s += w[k] * h[k];
    return s;
  }
};

// tm/lex values are negated costs; one rule; -(target words).
FeatureVector rule_features(const TranslationRule& r);

// "name=value ..." over the given features.
std::string format_features(const FeatureVector& h, const std::vector<Feature>& names);

}  // namespace dg2s

#endif  // DG2S_FEATURES_H_
