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

#ifndef DG2S_RULE_H_
#define DG2S_RULE_H_

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "dg2s/fragment.h"

namespace dg2s {

// Target word, or a non-terminal slot when link > 0.
struct TargetToken {
  std::string word;  // symbol for non-terminals
  int link = 0;

  bool is_nonterminal() const { return link > 0; }
  std::string token() const {
    return link > 0 ? nonterminal_token(word, link) : word;
  }
  bool operator==(const TargetToken&) const = default;
};

// Indices into TranslationRule::costs.
enum RuleCost { kCostTmFwd = 0, kCostTmBwd, kCostLexFwd, kCostLexBwd };

struct TranslationRule {
  std::string lhs = "X";
  GraphFragment source;
  std::vector<TargetToken> target;
  // (source node index, target token index), 0-based, terminals only.
  std::vector<std::pair<int, int>> alignment;
  // -ln of p(t|s), p(s|t), lex(t|s), lex(s|t).
  std::array<double, 4> costs{};
  double count = 0.0;

  int arity() const { return source.nonterminal_count(); }
  int target_word_count() const;
  bool is_glue() const { return lhs == "S"; }
  std::string target_string() const;
  std::string alignment_string() const;
  std::string key(bool use_edge_labels) const {
    return canonical_key(source, use_edge_labels);
  }
  // Everything that identifies a rule apart from costs and counts.
  std::string identity(bool use_edge_labels) const;

  bool operator==(const TranslationRule& o) const {
    return lhs == o.lhs && source == o.source && target == o.target &&
           alignment == o.alignment && costs == o.costs;
  }
};

// S -> <[S,1] [X,2], [S,1] [X,2]>
TranslationRule glue_binary_rule();
// S -> <[X,1], [X,1]>
TranslationRule glue_unary_rule();
std::vector<TranslationRule> glue_rules();

}  // namespace dg2s

#endif  // DG2S_RULE_H_
