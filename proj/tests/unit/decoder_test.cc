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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "dg2s/error.h"
#include "dg2s/hypergraph.h"
#include "dg2s/seg_decoder.h"
#include "dg2s/snrg_decoder.h"
#include "support/fixtures.h"
#include "support/random.h"
#include "support/random_grammar.h"

using namespace dg2s;
using namespace dg2s::testing;

namespace {

HgEdge axiom(int head, double score, const std::string& word) {
  HgEdge e;
  e.head = head;
  e.score = score;
  e.pattern = {{word, 0}};
  return e;
}

}  // namespace

TEST_CASE("k-best over a small hypergraph") {
  Hypergraph hg;
  int a = hg.add_node("X", {1}), b = hg.add_node("X", {2}), g = hg.add_node("GOAL", {});
  hg.add_edge(axiom(a, -1, "a1"));
  hg.add_edge(axiom(a, -2, "a2"));
  hg.add_edge(axiom(b, -0.5, "b1"));
  hg.add_edge(axiom(b, -3, "b2"));
  HgEdge pair;
  pair.head = g;
  pair.tails = {a, b};
  pair.pattern = {{"X", 1}, {"X", 2}};
  hg.add_edge(pair);
  HgEdge single;
  single.head = g;
  single.tails = {b};
  single.score = -1.2;
  single.pattern = {{"X", 1}, {"z", 0}};
  hg.add_edge(single);
  CHECK(hg.node(g).best == doctest::Approx(-1.5));

  KBest kb(hg);
  auto all = kb.top(g, 10);
  REQUIRE(all.size() == 6);
  std::vector<std::string> got;
  for (const auto& d : all) got.push_back(d.translation());
  CHECK(got == std::vector<std::string>{"a1 b1", "b1 z", "a2 b1", "a1 b2", "b2 z", "a2 b2"});
  std::vector<double> want{-1.5, -1.7, -2.5, -4, -4.2, -5};
  for (std::size_t i = 0; i < want.size(); ++i) CHECK(all[i].score == doctest::Approx(want[i]));
  CHECK(kb.score(g, 6) == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(kb.derivation(g, 6), NoDerivationError);
  CHECK_THROWS_AS(kb.top(g, 0), ArgumentError);
}

TEST_CASE("distortion arithmetic") {
  CHECK(distortion(0, {3, 4, 5}) == DistortionValues{2, 0});
  CHECK(distortion(Subsequence{3, 4, 5}, Subsequence{1, 2, 6}) == DistortionValues{5, 3});
  CHECK(distortion(Subsequence{1, 2, 6}, Subsequence{7}) == DistortionValues{0, 0});
  CHECK(distortion(2, {3, 7}) == DistortionValues{0, 3});
  CHECK(gap_count({1, 2, 3, 5, 8}, {{1, 3}, {2, 5}}) == 2);
  CHECK(gap_count({4, 5, 6}, {}) == 0);
  CHECK(gap_count({3, 7}, {}) == 3);
  CHECK(gap_count({1, 2, 3, 7}, {{1, 2}}) == 3);
}

TEST_CASE("future cost table") {
  // Options: {1} -1, {2} -2, {1,2} -2.5, {3} -4. The pair lends -1.25 to
  // position 2, which beats its own option.
  FutureCostTable fc(3, {{{1}, -1.0}, {{2}, -2.0}, {{1, 2}, -2.5}, {{3}, -4.0}});
  CHECK(fc.span(1, 1) == -1.0);
  CHECK(fc.span(2, 2) == -1.25);
  CHECK(fc.span(1, 2) == -2.25);
  CHECK(fc.span(1, 3) == -6.25);
  CHECK(fc(Coverage(3, Subsequence{2})) == -5.0);
  CHECK(fc(Coverage(3, Subsequence{1, 2, 3})) == 0.0);
}

TEST_CASE("segmentation decoding of the running example") {
  DepGraph g = build_dbg(example_tree());
  LanguageModel lm = uniform_lm(split_words(kReference));
  Weights w = Weights::defaults();
  RuleTable t = fig10_table();
  Derivation d = SegDecoder(t, lm, w).decode(g);
  CHECK(d.translation() == kReference);
  CHECK(d.features[kRulePenalty] == -3);
  CHECK(d.features[kWordPenalty] == -10);
  CHECK(d.features[kDistJump] == -4);
  CHECK(d.features[kDistGap] == -3);
  CHECK(d.features[kLm] == doctest::Approx(-11 * std::log(10.0)));
  CHECK(d.score == doctest::Approx(w.dot(d.features)));
  CHECK(d.steps.size() == 3);


  // Options may start at most d_max past the first uncovered word: 0 allows
  // only the monotone order, 1 also lets {4,5,6} precede {3,7}, 2 also lets
  // {3,7} come first when {1,2} follows it.
  for (auto [d_max, count] : {std::pair{0, 1}, {1, 2}, {2, 3}}) {
    SegOptions o;
    o.d_max = d_max;
    o.oov_passthrough = false;
    CHECK(SegDecoder(t, lm, w, o).decode_kbest(g, 10).size() == std::size_t(count));
  }
}

TEST_CASE("pass-through and missing coverage") {
  DepGraph g = build_dbg(example_tree());
  LanguageModel lm = uniform_lm(split_words(kReference));
  RuleTable t;
  t.add_scored(make_rule(g, {1, 2}, {}, "2010 FIFA"));
  t.add_scored(make_rule(g, {3, 7}, {}, "World Cup was held"));

  Derivation d = SegDecoder(t, lm, Weights::defaults()).decode(g);
  CHECK(d.translation() == "2010 FIFA World Cup was held zai Nanfei chenggong");

  SegOptions strict;
  strict.oov_passthrough = false;
  try {
    SegDecoder(t, lm, Weights::defaults(), strict).decode(g);
    FAIL("expected NoDerivationError");
  } catch (const NoDerivationError& e) {
    CHECK(e.uncovered() == std::vector<int>{4, 5, 6});
  }
  SnrgOptions sstrict;
  sstrict.oov_passthrough = false;
  CHECK_THROWS_AS(SnrgDecoder(t, lm, Weights::defaults(), sstrict).decode_beam(g), NoDerivationError);
  CHECK_THROWS_AS(SnrgDecoder(t, lm, Weights::defaults(), sstrict).decode_chart(g), NoDerivationError);
  CHECK(SnrgDecoder(t, lm, Weights::defaults()).decode_beam(g).words.size() == 9);
}

TEST_CASE("hierarchical decoding of the running example") {
  DepGraph g = build_dbg(example_tree());
  LanguageModel lm = uniform_lm(split_words(kReference));
  Weights w = Weights::defaults();
  RuleTable t = fig14_table();
  Derivation d = SnrgDecoder(t, lm, w).decode_beam(g);
  CHECK(d.translation() == kReference);
  CHECK(d.features[kRulePenalty] == -3);
  CHECK(d.features[kGluePenalty] == -1);
  // {1,2,3,7} around {1,2} leaves 4,5,6 uncovered.
  CHECK(d.features[kGapPenalty] == -3);
  CHECK(d.features[kDistJump] == 0);
  CHECK(d.score == doctest::Approx(w.dot(d.features)));

  // Discontinuous rules are out of reach of the chart decoder.
  SnrgOptions strict;
  strict.oov_passthrough = false;
  CHECK_THROWS_AS(SnrgDecoder(t, lm, w, strict).decode_chart(g), NoDerivationError);
  Derivation c = SnrgDecoder(fig14_continuous_table(), lm, w).decode_chart(g);
  CHECK(c.translation() == kReference);
  CHECK(c.features[kGapPenalty] == 0);
}

TEST_CASE("k-best lists are sorted, distinct and self-consistent") {
  Rng rng(404);
  for (int it = 0; it < 40; ++it) {
    auto in = random_decoder_instance(rng, 5, 10, coin(rng, 0.7), coin(rng, 0.5));
    LanguageModel lm = parse_lm(in.arpa);
    std::vector<std::vector<Derivation>> lists;
    lists.push_back(SegDecoder(in.table, lm, in.weights).decode_kbest(in.graph, 8));
    lists.push_back(SnrgDecoder(in.table, lm, in.weights).kbest_beam(in.graph, 8));
    lists.push_back(SnrgDecoder(in.table, lm, in.weights).kbest_chart(in.graph, 8));
    for (const auto& list : lists) {
      REQUIRE_FALSE(list.empty());
      for (std::size_t k = 0; k < list.size(); ++k) {
        CHECK(list[k].score == doctest::Approx(in.weights.dot(list[k].features)).epsilon(1e-9));
        if (k) CHECK(list[k].score <= list[k - 1].score + 1e-12);
      }
    }
  }
}
