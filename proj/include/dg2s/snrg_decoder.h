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

#ifndef DG2S_SNRG_DECODER_H_
#define DG2S_SNRG_DECODER_H_

#include <vector>

#include "dg2s/features.h"
#include "dg2s/graph.h"
#include "dg2s/hypergraph.h"
#include "dg2s/lm.h"
#include "dg2s/seg_decoder.h"
#include "dg2s/subsequence.h"
#include "dg2s/table.h"

namespace dg2s {

struct SnrgOptions {
  int beam_width = 200;  // stack size and cube pop limit; <= 0: unlimited
  int l_max = 20;        // beam decoder: largest X item
  int span_max = 20;     // beam decoder: widest X item
  int g_max = 20;        // chart decoder: widest X span
  bool oov_passthrough = true;
  double oov_cost = 10.0;
};

// Span length of `covered` minus the positions that are rule terminals or
// lie within the [begin, end] range of a non-terminal's subsequence.
int gap_count(const Subsequence& covered, const std::vector<Subsequence>& nonterminals);

// Features of applying a rule before LM and position-dependent terms: glue
// rules count only towards gluePenalty.
FeatureVector application_features(const TranslationRule& r);

// Bottom-up SNRG decoding with an n-gram LM, cube pruning and k-best
// extraction. Rules with more than two non-terminals, or with non-terminals
// but no terminals, are not used.
class SnrgDecoder {
 public:
  SnrgDecoder(const RuleTable& table, const LanguageModel& lm, const Weights& w,
              SnrgOptions opts = {})
      : table_(table), lm_(lm), w_(w), opts_(opts) {}

  // Items over arbitrary connected subsequences, stacked by size.
  SearchGraph search_beam(const DepGraph& g) const;
  // Items over continuous spans only.
  SearchGraph search_chart(const DepGraph& g) const;

  Derivation decode_beam(const DepGraph& g) const;
  Derivation decode_chart(const DepGraph& g) const;
  std::vector<Derivation> kbest_beam(const DepGraph& g, int k) const;
  std::vector<Derivation> kbest_chart(const DepGraph& g, int k) const;

  const SnrgOptions& options() const { return opts_; }

 private:
  const RuleTable& table_;
  const LanguageModel& lm_;
  Weights w_;
  SnrgOptions opts_;
};

}  // namespace dg2s

#endif  // DG2S_SNRG_DECODER_H_
