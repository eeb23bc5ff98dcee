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

#include "dg2s/extract.h"

#include <set>

#include "doctest.h"
#include "dg2s/options.h"
#include "oracle/brute_extract.h"
#include "support/fixtures.h"
#include "support/random.h"

using namespace dg2s;
using namespace dg2s::testing;

namespace {

std::set<std::pair<Subsequence, std::pair<int, int>>> spans(const std::vector<SubgraphPhrasePair>& v) {
  std::set<std::pair<Subsequence, std::pair<int, int>>> s;
  for (const auto& p : v) s.insert({p.source, {p.target_begin, p.target_end}});
  return s;
}

}  // namespace

TEST_CASE("running example pairs") {
  auto spp = spans(extract_spp(example_pair()));
  CHECK(spp.count({{1, 2, 3}, {1, 4}}));
  CHECK(spp.count({{3, 7}, {3, 6}}));
  CHECK(spp.count({{4, 5, 6}, {7, 10}}));
  CHECK(spp.count({Subsequence::range(1, 7), {1, 10}}) == 0);  // longer than 7
  CHECK(spans(extract_spp(example_pair(), 7, 10)).count({Subsequence::range(1, 7), {1, 10}}));
  CHECK_FALSE(spp.count({{2, 3}, {2, 3}}));
  CHECK_FALSE(spp.count({{4, 6}, {7, 8}}));
}

TEST_CASE("unaligned words join only runs that hold an aligned word") {
  // b is unaligned; a and c are not connected without it.
  AlignedPair p{DepGraph::from_heads({{"a", "N"}, {"b", "V"}, {"c", "N"}}, {2, 0, 2}),
                {"x", "z"}, {{1, 1}, {3, 2}}};
  auto s = spans(extract_spp(p));
  CHECK(s.count({{1}, {1, 1}}));
  CHECK(s.count({{1, 2}, {1, 1}}));
  CHECK(s.count({{1, 2, 3}, {1, 2}}));
  CHECK_FALSE(s.count({{2}, {1, 1}}));
  CHECK(s.size() == 5);
}

TEST_CASE("phrase pairs agree with the exhaustive reference") {
  Rng rng(21);
  for (int it = 0; it < 120; ++it) {
    auto t = random_tree(rng, uniform(rng, 1, 8));
    int kind = uniform(rng, 0, 2);
    int m = uniform(rng, 1, 8);
    AlignedPair p{t.graph(kind), {}, random_links(rng, int(t.words.size()), m, 0.25)};
    for (int j = 0; j < m; ++j) p.target.push_back("t" + std::to_string(uniform(rng, 0, 2)));
    int L = uniform(rng, 1, 8);
    std::vector<oracle::BrutePair> got;
    for (const auto& s : extract_spp(p, L)) got.push_back({s.source.positions(), s.target_begin, s.target_end});
    REQUIRE(got == oracle::brute_spp(t.brute(kind), m, p.alignment, L, L));
  }
}

TEST_CASE("hierarchical rules of the running example") {
  ExtractLimits lim;
  lim.min_gap_size = 1;
  std::set<std::string> got;
  for (const auto& r : extract_snrg(example_pair(), lim)) got.insert(r.key(false) + " => " + r.target_string());
  CHECK(got.count("[X,1] zai Nanfei [X,2] | 0-1 0-3 1-0 1-2 2-1 3-2 => [X,1] [X,2] in South Africa"));

  lim.max_nonterminals = 0;
  for (const auto& r : extract_snrg(example_pair(), lim)) CHECK(r.arity() == 0);
  lim.max_nonterminals = 2;
  lim.max_symbols = 2;
  for (const auto& r : extract_snrg(example_pair(), lim)) CHECK(r.source.size() <= 2);
}

TEST_CASE("minimum gap size filters small non-terminals") {
  ExtractLimits lim;
  lim.min_gap_size = 2;
  for (const auto& r : extract_snrg(example_pair(), lim))
    for (const auto& n : r.source.nodes())
      if (!n.terminal) CHECK(n.covers.size() >= 2);
}

TEST_CASE("POS non-terminals name the heads of the covered words") {
  DepGraph t = example_tree();
  CHECK(pos_nonterminal({4, 5}, t) == "P");
  CHECK(pos_nonterminal({1, 2}, t) == "NT_NT");
  CHECK(pos_nonterminal({3, 4, 7}, t) == "VV");
  ExtractLimits lim;
  lim.pos_nonterminals = true;
  bool seen = false;
  for (const auto& r : extract_snrg(example_pair(), lim))
    for (const auto& n : r.source.nodes()) seen |= !n.terminal && n.label == "P";
  CHECK(seen);
}

TEST_CASE("connectivity classes") {
  DepGraph g = build_dbg(example_tree());
  auto c = [&](const Subsequence& s) { return classify_connectivity(*induced_subgraph(g, s)); };
  CHECK(c({2, 3}).dependency);
  CHECK(c({2, 3}).sequential);
  CHECK_FALSE(c({1, 2}).dependency);
  CHECK(c({1, 2}).sequential);
  CHECK(c({3, 7}).dependency);
  CHECK_FALSE(c({3, 7}).sequential);
  auto mixed = c({1, 2, 3, 7});
  CHECK_FALSE(mixed.sequential);
  CHECK(mixed.dependency);
  GraphFragment chain({{true, "a"}, {true, "b"}, {true, "c"}},
                      {{0, 1, EdgeLabel::kDependency}, {1, 2, EdgeLabel::kSequential}});
  auto m2 = classify_connectivity(chain);
  CHECK_FALSE(m2.dependency);
  CHECK_FALSE(m2.sequential);
}

TEST_CASE("options are the connected subsequences with a matching rule") {
  DepGraph g = build_dbg(example_tree());
  RuleTable t = fig10_table();
  auto opts = match_options(t, g);
  CHECK(opts.size() == 3);
  CHECK(opts.count({1, 2}));
  CHECK(opts.count({3, 7}));
  CHECK(opts.count({4, 5, 6}));
  OptionLimits small;
  small.max_size = 2;
  CHECK(match_options(t, g, small).size() == 2);
  OptionLimits narrow;
  narrow.max_span = 3;
  CHECK(match_options(t, g, narrow).size() == 2);
  // Hierarchical rules are never options.
  CHECK(match_options(fig14_table(), g).size() == 1);
}
