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

#include "dg2s/lm.h"

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dg2s/error.h"
#include "oracle/ref_lm.h"
#include "support/random.h"

using namespace dg2s;

namespace {

const char* kBigram =
    "\\data\\\n"
    "ngram 1=4\n"
    "ngram 2=2\n"
    "\n"
    "\\1-grams:\n"
    "-1.0\ta\t-0.5\n"
    "-1.2\tb\t-0.3\n"
    "-99\t<s>\t-0.2\n"
    "-0.8\t</s>\n"
    "\n"
    "\\2-grams:\n"
    "-0.4\t<s> a\n"
    "-0.6\ta b\n"
    "\n"
    "\\end\\\n";

LanguageModel load(const std::string& text) {
  std::istringstream in(text);
  return LanguageModel::load_arpa(in);
}

}  // namespace

TEST_CASE("hand-computed backoff scores") {
  auto lm = load(kBigram);
  CHECK(lm.order() == 2);
  CHECK(lm.ngram_count(1) == 4);
  CHECK(lm.ngram_count(2) == 2);
  // -0.4 - 0.6 + (-0.3 - 0.8)
  CHECK(lm.score_sequence({"a", "b"}, true) == doctest::Approx(-2.1).epsilon(1e-12));
  // (-0.2 - 1.2) + (-0.3 - 1.0) + (-0.5 - 0.8)
  CHECK(lm.score_sequence({"b", "a"}, true) == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(lm.score_sequence({"a"}, false) == doctest::Approx(-0.4).epsilon(1e-12));
}

TEST_CASE("unknown words") {
  auto lm = load(kBigram);
  CHECK_FALSE(lm.known("zz"));
  CHECK(lm.id("zz") == LanguageModel::kUnknown);
  CHECK(lm.score_word(lm.begin_state(), "zz").first == -7.0);
  lm.set_oov_floor(-5.0);
  CHECK(lm.score_word(lm.begin_state(), "zz").first == -5.0);

  std::string with_unk = kBigram;
  with_unk.replace(with_unk.find("ngram 1=4"), 9, "ngram 1=5");
  with_unk.replace(with_unk.find("-0.8\t</s>"), 9, "-0.8\t</s>\n-2.5\t<unk>");
  auto lm2 = load(with_unk);
  // <unk> is reached through <s>'s backoff.
  CHECK(lm2.score_word(lm2.begin_state(), "zz").first == doctest::Approx(-2.7).epsilon(1e-12));
}

TEST_CASE("state threading matches whole-sequence scoring") {
  auto lm = load(kBigram);
  LmState s = lm.begin_state();
  double total = 0.0;
  for (const char* w : {"a", "b", "b", "a"}) {
    auto [p, n] = lm.score_word(s, w);
    total += p;
    s = n;
  }
  CHECK(total == doctest::Approx(lm.score_sequence({"a", "b", "b", "a"}, false)).epsilon(1e-12));
}

TEST_CASE("random models agree with the reference implementation") {
  testing::Rng rng(3);
  std::vector<std::string> vocab{"a", "b", "c", "d"};
  for (int it = 0; it < 60; ++it) {
    int order = testing::uniform(rng, 1, 4);
    bool unk = testing::coin(rng, 0.5);
    std::string arpa = testing::random_arpa(rng, order, vocab, unk);
    auto lm = load(arpa);
    oracle::RefLm ref(arpa);
    for (int q = 0; q < 20; ++q) {
      std::vector<std::string> words;
      int len = testing::uniform(rng, 0, 6);
      for (int k = 0; k < len; ++k)
        words.push_back(testing::coin(rng, 0.1) ? "oov" : vocab[testing::uniform(rng, 0, 3)]);
      REQUIRE(std::abs(lm.score_sequence(words, true) - ref.sentence(words)) < 1e-10);
    }
  }
}

TEST_CASE("malformed ARPA input") {
  CHECK_THROWS_AS(load("ngram 1=1\n"), FormatError);
  CHECK_THROWS_AS(load("\\data\\\nngram 1=2\n\n\\1-grams:\n-1\ta\n\n\\end\\\n"), FormatError);
  CHECK_THROWS_AS(load("\\data\\\nngram 1=1\n\n\\1-grams:\nx\ta\n\n\\end\\\n"), FormatError);
  CHECK_THROWS_AS(load("\\data\\\nngram 1=1\n\n\\1-grams:\n-1\ta\n"), FormatError);
  CHECK_THROWS_AS(LanguageModel::load_arpa_file("/nonexistent/model.arpa"), ConfigError);
}
