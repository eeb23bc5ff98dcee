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

#include "dg2s/cli.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "dg2s/error.h"
#include "support/fixtures.h"

using namespace dg2s;
using namespace dg2s::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dg2s_unit_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string conll_of(const DepGraph& t) {
  std::ostringstream o;
  write_conll(o, t);
  return o.str();
}

}  // namespace

TEST_CASE("enum parsing") {
  CHECK(parse_graph_kind("dsg") == GraphKind::kDsg);
  CHECK(parse_decoder_kind("snrg-chart") == DecoderKind::kSnrgChart);
  CHECK(parse_extract_mode("spp") == ExtractMode::kSpp);
  CHECK_THROWS_AS(parse_graph_kind("dag"), ConfigError);
  CHECK_THROWS_AS(parse_decoder_kind("cky"), ConfigError);
  CHECK_THROWS_AS(parse_extract_mode("hiero"), ConfigError);
}

TEST_CASE("config validation") {
  RunConfig c;
  CHECK_NOTHROW(c.validate());
  c.snrg.beam_width = 0;  // unlimited
  CHECK_NOTHROW(c.validate());
  c.extract.max_nonterminals = 3;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = RunConfig();
  c.max_length = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("graph subcommand") {
  TempDir d;
  auto in = d.file("in.conll", conll_of(example_tree()));
  auto r = run({"graph", "--input", in, "--kind", "dsg"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# sentence 1\nnode 1 2010nian NT\n") == 0);
  CHECK(r.out.find("edge 6 4 seq\n") != std::string::npos);
  auto dot = run({"graph", "--input", in, "--dot"});
  CHECK(dot.out.find("digraph s1 {") == 0);
  CHECK(dot.out.find("3 -> 2 [label=\"both\"]") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"graph"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  TempDir d;
  auto in = d.file("in.conll", conll_of(example_tree()));
  auto r = run({"graph", "--input", in, "--kind", "dag"});
  CHECK(r.code == 2);
  CHECK(r.err.find("error:") == 0);
  CHECK(run({"graph", "--input", (d.path / "missing").string()}).code == 2);
}

TEST_CASE("extract, translate and score the running example") {
  TempDir d;
  auto conll = d.file("train.conll", conll_of(example_tree()));
  auto tgt = d.file("train.en", kReference + "\n");
  auto al = d.file("train.align", "0-0 1-1 2-2 2-3 3-7 4-8 4-9 5-6 6-5\n");
  auto table = (d.path / "rules").string();
  auto r = run({"extract", "--conll", conll, "--target", tgt, "--align", al, "--out", table,
                "--mode", "spp"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("pairs: 1 (skipped 0)") == 0);
  CHECK(fs::exists(table + ".lex.e2f"));
  CHECK(fs::exists(table + ".lex.f2e"));

  auto lm = d.file("lm.arpa", uniform_arpa(split_words(kReference)));
  for (const char* dec : {"seg", "snrg-beam", "snrg-chart"}) {
    auto t = run({"translate", "--input", conll, "--table", table, "--lm", lm, "--decoder", dec});
    // The uniform LM charges every word, so "was" may be dropped; the output
    // is still one line built from reference words.
    CHECK(t.code == 0);
    REQUIRE(t.out.size() > 1);
    CHECK(t.out.back() == '\n');
    CHECK(t.out.find('\n') == t.out.size() - 1);
    for (const auto& w : split_words(t.out)) CHECK(kReference.find(w) != std::string::npos);
  }
  auto kb = run({"translate", "--input", conll, "--table", table, "--lm", lm, "--kbest", "3",
                 "--weight", "lm:1"});
  CHECK(kb.code == 0);
  CHECK(kb.out.find("0 ||| ") == 0);
  CHECK(kb.out.find(" ||| tmFwd=") != std::string::npos);

  auto hyp = d.file("hyp", kReference + "\n");
  auto b = run({"bleu", "--hyp", hyp, "--ref", tgt});
  CHECK(b.out == "BLEU = 100.00\n");
  CHECK(run({"bleu", "--hyp", hyp, "--ref", d.file("two", "a\nb\n")}).code == 2);
  CHECK(run({"translate", "--input", conll, "--table", table, "--lm", lm, "--weight", "bogus:1"})
            .code == 2);
}

TEST_CASE("untranslatable input fails the sentence, not the run") {
  TempDir d;
  auto conll = d.file("in.conll", conll_of(example_tree()));
  auto table = d.file("rules", "");
  auto lm = d.file("lm.arpa", uniform_arpa({"x"}));
  auto r = run({"translate", "--input", conll, "--table", table, "--lm", lm, "--no-oov"});
  CHECK(r.code == 1);
  CHECK(r.out == "\n");
  CHECK(r.err.find("sentence 1:") == 0);
  auto copy = run({"translate", "--input", conll, "--table", table, "--lm", lm});
  CHECK(copy.code == 0);
  CHECK(copy.out == "2010nian FIFA shijiebei zai Nanfei chenggong juxing\n");
}

TEST_CASE("parallel extraction matches serial") {
  std::vector<AlignedPair> pairs(6, example_pair());
  RunConfig cfg;
  auto one = extract_table(pairs, ExtractMode::kSnrg, cfg, 1);
  auto four = extract_table(pairs, ExtractMode::kSnrg, cfg, 4);
  CHECK(one.table.entries() == four.table.entries());
  CHECK(one.table.size() > 0);
}
