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

#ifndef DG2S_EXTRACT_H_
#define DG2S_EXTRACT_H_

#include <string>
#include <vector>

#include "dg2s/corpus.h"
#include "dg2s/fragment.h"
#include "dg2s/rule.h"
#include "dg2s/subsequence.h"

namespace dg2s {

struct SubgraphPhrasePair {
  Subsequence source;
  int target_begin;  // 1-based, inclusive
  int target_end;
  GraphFragment fragment;

  int target_length() const { return target_end - target_begin + 1; }
};

// All consistent pairs with |source| <= max_source and |target| <= max_target
// whose source induces a connected subgraph. Sources are the aligned closure
// of the target phrase plus unaligned words chained to it; every maximal run
// of a source contains an aligned word. Sorted by (source, target span).
std::vector<SubgraphPhrasePair> extract_spp(const AlignedPair& pair,
                                            int max_source, int max_target);
inline std::vector<SubgraphPhrasePair> extract_spp(const AlignedPair& pair,
                                                   int max_length = 7) {
  return extract_spp(pair, max_length, max_length);
}

// Terminal-only rule for a pair, count 1.
TranslationRule spp_rule(const AlignedPair& pair, const SubgraphPhrasePair& spp);
// Terminal rules of extract_spp merged by identity with counts.
std::vector<TranslationRule> extract_spp_rules(const AlignedPair& pair,
                                               int max_length = 7);

struct ExtractLimits {
  int initial_length = 10;  // both sides of a base pair
  int max_symbols = 5;      // source nodes of an emitted rule
  int max_nonterminals = 2;
  int min_gap_size = 2;  // MGS
  bool pos_nonterminals = false;
};

// Hierarchical rules: every base pair within the limits, with up to
// max_nonterminals pairwise disjoint nested pairs replaced by non-terminals.
// Emitted rules have <= max_symbols source nodes and at least one aligned
// terminal. Merged by identity; count = number of (base, nested set) choices.
std::vector<TranslationRule> extract_snrg(const AlignedPair& pair,
                                          const ExtractLimits& limits = {});

// POS tags of the words in s whose dependency head lies outside s, joined by
// "_" in position order.
std::string pos_nonterminal(const Subsequence& s, const DepGraph& g);

// Whether a fragment stays connected on dependency-labelled edges alone and on
// sequential-labelled edges alone.
struct Provenance {
  bool dependency = false;
  bool sequential = false;
};
Provenance classify_connectivity(const GraphFragment& frag);

}  // namespace dg2s

#endif  // DG2S_EXTRACT_H_
