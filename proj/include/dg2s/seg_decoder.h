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

#ifndef DG2S_SEG_DECODER_H_
#define DG2S_SEG_DECODER_H_

#include <utility>
#include <vector>

#include "dg2s/features.h"
#include "dg2s/graph.h"
#include "dg2s/hypergraph.h"
#include "dg2s/lm.h"
#include "dg2s/options.h"
#include "dg2s/subsequence.h"
#include "dg2s/table.h"

namespace dg2s {

struct SegOptions {
  int beam_width = 200;  // <= 0: no histogram pruning
  int d_max = 6;         // < 0: no distortion limit
  int max_phrase = 7;    // largest source subsequence considered
  int max_span = 0;      // 0: unrestricted
  bool oov_passthrough = true;
  double oov_cost = 10.0;  // each of the four rule costs of a copied word
};

struct DistortionValues {
  int jump = 0;
  int gap = 0;
  bool operator==(const DistortionValues&) const = default;
};

// jump = |cur^b - prev_end - 1|, gap = sum of the holes between runs of cur.
DistortionValues distortion(int prev_end, const Subsequence& cur);
inline DistortionValues distortion(const Subsequence& prev, const Subsequence& cur) {
  return distortion(prev.end(), cur);
}

// Rule score plus a context-free (unigram) LM estimate of its target words.
double option_estimate(const TranslationRule& r, const LanguageModel& lm,
                       const Weights& w);

// Best estimated score of covering each continuous span from option
// estimates. A discontinuous option spreads its estimate evenly over its
// positions; continuous options also count for their exact span.
class FutureCostTable {
 public:
  FutureCostTable() = default;
  FutureCostTable(int n, const std::vector<std::pair<Subsequence, double>>& estimates);

  double span(int b, int e) const { return table_[b * (n_ + 2) + e]; }
  // Sum over maximal uncovered runs.
  double operator()(const Coverage& c) const;

 private:
  int n_ = 0;
  std::vector<double> table_;
};

// Copy rule X -> <w, w> for an untranslatable word.
TranslationRule passthrough_rule(const DepGraph& g, int position, double cost);

// Positions in 1..n that no option covers.
std::vector<int> uncovered_positions(int n, const TranslationOptions& options);

struct SearchGraph {
  Hypergraph hg;
  int goal = -1;
};

// Left-to-right beam search over segmentations of the input graph.
class SegDecoder {
 public:
  SegDecoder(const RuleTable& table, const LanguageModel& lm, const Weights& w,
             SegOptions opts = {})
      : table_(table), lm_(lm), w_(w), opts_(opts) {}

  // Throws NoDerivationError when the input cannot be covered.
  SearchGraph search(const DepGraph& g) const;
  Derivation decode(const DepGraph& g) const;
  std::vector<Derivation> decode_kbest(const DepGraph& g, int k) const;

  const SegOptions& options() const { return opts_; }

 private:
  const RuleTable& table_;
  const LanguageModel& lm_;
  Weights w_;
  SegOptions opts_;
};

}  // namespace dg2s

#endif  // DG2S_SEG_DECODER_H_
