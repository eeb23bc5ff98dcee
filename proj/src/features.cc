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

#include "dg2s/features.h"

#include <charconv>

#include "dg2s/error.h"
#include "dg2s/table.h"

namespace dg2s {

namespace {

constexpr const char* kNames[kNumFeatures] = {
    "tmFwd",       "tmBwd",       "lexFwd",   "lexBwd",     "lm",          "rulePenalty",
    "wordPenalty", "distJump",    "distGap",  "gapPenalty", "gluePenalty",
};

}  // namespace

const char* feature_name(Feature f) { return kNames[f]; }

std::optional<Feature> feature_by_name(const std::string& name) {
  for (int k = 0; k < kNumFeatures; ++k)
    if (name == kNames[k]) return Feature(k);
  return std::nullopt;
}

const std::vector<Feature>& seg_features() {
  static const std::vector<Feature> f = {kTmFwd, kTmBwd, kLexFwd, kLexBwd, kLm,
                                         kRulePenalty, kWordPenalty, kDistJump, kDistGap};
  return f;
}

const std::vector<Feature>& snrg_features() {
  static const std::vector<Feature> f = {kTmFwd, kTmBwd, kLexFwd, kLexBwd, kLm,
                                         kRulePenalty, kWordPenalty, kDistJump,
                                         kGapPenalty, kGluePenalty};
  return f;
}

Weights Weights::defaults() {
  Weights w;
  w.w[kTmFwd] = 0.2;
  w.w[kTmBwd] = 0.2;
  w.w[kLexFwd] = 0.2;
  w.w[kLexBwd] = 0.2;
  w.w[kLm] = 0.5;
  w.w[kRulePenalty] = 0.1;
  // h is -(words), so a negative weight rewards output length.
  w.w[kWordPenalty] = -0.3;
  w.w[kDistJump] = 0.1;
  w.w[kDistGap] = 0.1;
  w.w[kGapPenalty] = 0.1;
  w.w[kGluePenalty] = 0.1;
  return w;
}

void Weights::set(const std::string& spec) {
  auto colon = spec.rfind(':');
  if (colon == std::string::npos) throw ConfigError("weight '" + spec + "' is not name:value");
  std::string name = spec.substr(0, colon), val = spec.substr(colon + 1);
  auto f = feature_by_name(name);
  if (!f) throw ConfigError("unknown feature '" + name + "'");
  double v = 0.0;
  auto r = std::from_chars(val.data(), val.data() + val.size(), v);
  if (r.ec != std::errc() || r.ptr != val.data() + val.size())
    throw ConfigError("bad weight value '" + val + "' for " + name);
  w[*f] = v;
}

FeatureVector rule_features(const TranslationRule& r) {
  FeatureVector h{};
  h[kTmFwd] = -r.costs[kCostTmFwd];
  h[kTmBwd] = -r.costs[kCostTmBwd];
  h[kLexFwd] = -r.costs[kCostLexFwd];
  h[kLexBwd] = -r.costs[kCostLexBwd];
  h[kRulePenalty] = -1.0;
  h[kWordPenalty] = -double(r.target_word_count());
  return h;
}

std::string format_features(const FeatureVector& h, const std::vector<Feature>& names) {
  std::string s;
  for (Feature f : names) {
    if (!s.empty()) s += ' ';
    s += kNames[f];
    s += '=';
    s += format_double(h[f] == 0.0 ? 0.0 : h[f]);
  }
  return s;
}

}  // namespace dg2s
