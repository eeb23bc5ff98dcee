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

#include "dg2s/rule.h"

namespace dg2s {

int TranslationRule::target_word_count() const {
  int c = 0;
  for (const auto& t : target) c += !t.is_nonterminal();
  return c;
}

std::string TranslationRule::target_string() const {
  std::string s;
  for (const auto& t : target) {
    if (!s.empty()) s += ' ';
    s += t.token();
  }
  return s;
}

std::string TranslationRule::alignment_string() const {
  std::string s;
  for (auto [i, j] : alignment) {
    if (!s.empty()) s += ' ';
    s += std::to_string(i) + "-" + std::to_string(j);
  }
  return s;
}

std::string TranslationRule::identity(bool use_edge_labels) const {
  return lhs + " ||| " + key(use_edge_labels) + " ||| " + target_string() +
         " ||| " + alignment_string();
}

namespace {

FragmentNode nt_node(const std::string& sym, int link) {
  FragmentNode n;
  n.terminal = false;
  n.label = sym;
  n.link = link;
  return n;
}

}  // namespace

TranslationRule glue_binary_rule() {
  TranslationRule r;
  r.lhs = "S";
  r.source = GraphFragment({nt_node("S", 1), nt_node("X", 2)}, {});
  r.target = {{"S", 1}, {"X", 2}};
  return r;
}

TranslationRule glue_unary_rule() {
  TranslationRule r;
  r.lhs = "S";
  r.source = GraphFragment({nt_node("X", 1)}, {});
  r.target = {{"X", 1}};
  return r;
}

std::vector<TranslationRule> glue_rules() {
  return {glue_binary_rule(), glue_unary_rule()};
}

}  // namespace dg2s
