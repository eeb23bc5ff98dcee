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

// Running example: 2010nian FIFA shijiebei zai Nanfei chenggong juxing.

#ifndef DG2S_TESTS_SUPPORT_FIXTURES_H_
#define DG2S_TESTS_SUPPORT_FIXTURES_H_

#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dg2s/corpus.h"
#include "dg2s/fragment.h"
#include "dg2s/graph.h"
#include "dg2s/lm.h"
#include "dg2s/rule.h"
#include "dg2s/table.h"

namespace dg2s::testing {

inline DepGraph example_tree() {
  return DepGraph::from_heads({{"2010nian", "NT"},
                               {"FIFA", "NT"},
                               {"shijiebei", "NR"},
                               {"zai", "P"},
                               {"Nanfei", "NR"},
                               {"chenggong", "AD"},
                               {"juxing", "VV"}},
                              {3, 3, 7, 7, 4, 7, 0});
}

inline const std::string kReference = "2010 FIFA World Cup was held successfully in South Africa";

inline AlignedPair example_pair() {
  return {build_dbg(example_tree()), split_words(kReference),
          {{1, 1}, {2, 2}, {3, 3}, {3, 4}, {4, 8}, {5, 9}, {5, 10}, {6, 7}, {7, 6}}};
}

// Rule over g whose source is g[covered] with each nts[k] collapsed to X
// link k+1. Target tokens "[X,k]" are non-terminal slots.
inline TranslationRule make_rule(const DepGraph& g, const Subsequence& covered,
                                 const std::vector<Subsequence>& nts,
                                 const std::string& target) {
  TranslationRule r;
  GraphFragment f = *induced_subgraph(g, covered);
  for (std::size_t k = 0; k < nts.size(); ++k) f = collapse(f, nts[k], "X", int(k) + 1);
  r.source = f;
  for (const auto& w : split_words(target)) {
    if (w.size() > 4 && w.front() == '[' && w.back() == ']' && w.find(',') != std::string::npos)
      r.target.push_back({w.substr(1, w.find(',') - 1),
                          std::stoi(w.substr(w.find(',') + 1, w.size() - w.find(',') - 2))});
    else
      r.target.push_back({w, 0});
  }
  int first_word = 0;
  while (first_word < int(r.target.size()) && r.target[first_word].is_nonterminal()) ++first_word;
  if (first_word < int(r.target.size()))
    for (std::size_t i = 0; i < r.source.nodes().size(); ++i)
      if (r.source.nodes()[i].terminal) r.alignment.push_back({int(i), first_word});
  r.count = 1;
  return r;
}

// Unigram model giving every listed word the same probability.
inline std::string uniform_arpa(const std::vector<std::string>& words) {
  std::set<std::string> v(words.begin(), words.end());
  v.insert("<s>");
  v.insert("</s>");
  v.insert("<unk>");
  std::ostringstream o;
  o << "\\data\\\nngram 1=" << v.size() << "\n\n\\1-grams:\n";
  for (const auto& w : v) o << (w == "<s>" ? "-99" : "-1") << "\t" << w << "\n";
  o << "\n\\end\\\n";
  return o.str();
}

inline LanguageModel uniform_lm(const std::vector<std::string>& words) {
  std::istringstream in(uniform_arpa(words));
  return LanguageModel::load_arpa(in);
}

// Three segments of the reference, translated left to right.
inline RuleTable fig10_table() {
  DepGraph g = build_dbg(example_tree());
  RuleTable t;
  t.add_scored(make_rule(g, {1, 2}, {}, "2010 FIFA"));
  t.add_scored(make_rule(g, {3, 7}, {}, "World Cup was held"));
  t.add_scored(make_rule(g, {4, 5, 6}, {}, "successfully in South Africa"));
  return t;
}

// Bottom-up: {1,2}, then {1,2,3,7} with shijiebei juxing, then everything.
inline RuleTable fig14_table() {
  DepGraph g = build_dbg(example_tree());
  RuleTable t;
  t.add_scored(make_rule(g, {1, 2}, {}, "2010 FIFA"));
  t.add_scored(make_rule(g, {1, 2, 3, 7}, {{1, 2}}, "[X,1] World Cup was held"));
  t.add_scored(make_rule(g, Subsequence::range(1, 7), {{1, 2, 3, 7}},
                         "[X,1] successfully in South Africa"));
  return t;
}

// Same shape over continuous spans, usable by both SNRG decoders.
inline RuleTable fig14_continuous_table() {
  DepGraph g = build_dbg(example_tree());
  RuleTable t;
  t.add_scored(make_rule(g, {1, 2}, {}, "2010 FIFA"));
  t.add_scored(make_rule(g, {1, 2, 3}, {{1, 2}}, "[X,1] World Cup"));
  t.add_scored(make_rule(g, Subsequence::range(1, 7), {{1, 2, 3}},
                         "[X,1] was held successfully in South Africa"));
  return t;
}

}  // namespace dg2s::testing

#endif  // DG2S_TESTS_SUPPORT_FIXTURES_H_
