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

#ifndef DG2S_CLI_H_
#define DG2S_CLI_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dg2s/corpus.h"
#include "dg2s/extract.h"
#include "dg2s/features.h"
#include "dg2s/graph.h"
#include "dg2s/hypergraph.h"
#include "dg2s/lm.h"
#include "dg2s/seg_decoder.h"
#include "dg2s/snrg_decoder.h"
#include "dg2s/table.h"

namespace dg2s {

enum class GraphKind { kTree, kDbg, kDsg };
enum class DecoderKind { kSeg, kSnrgBeam, kSnrgChart };
enum class ExtractMode { kSpp, kSnrg };

// ConfigError on unknown names.
GraphKind parse_graph_kind(const std::string& s);
DecoderKind parse_decoder_kind(const std::string& s);
ExtractMode parse_extract_mode(const std::string& s);

DepGraph build_graph(const DepGraph& tree, GraphKind kind);

struct RunConfig {
  GraphKind kind = GraphKind::kDbg;
  DecoderKind decoder = DecoderKind::kSeg;
  int max_length = 7;  // L, for SPP extraction and seg options
  ExtractLimits extract;
  bool edge_labels = false;
  int top_n = 30;  // rules kept per source key; <= 0 keeps all
  SegOptions seg;
  SnrgOptions snrg;
  Weights weights = Weights::defaults();

  // ConfigError when a limit is not positive.
  void validate() const;
};

// "node i word pos" / "edge head dep label" lines, or a Graphviz digraph.
std::string dump_graph(const DepGraph& g, bool dot, const std::string& name = "g");

struct ExtractResult {
  RuleTable table;
  LexicalTable lex;
};

// Extracts, scores and prunes a table from pairs whose sources are already
// built graphs. Extraction runs on `jobs` threads; the merge follows input
// order so the result does not depend on `jobs`.
ExtractResult extract_table(const std::vector<AlignedPair>& pairs, ExtractMode mode,
                            const RunConfig& cfg, int jobs = 1);

struct TranslateResult {
  std::vector<Derivation> kbest;  // empty on failure
  std::string error;
  bool ok() const { return !kbest.empty(); }
};

TranslateResult translate_one(const DepGraph& g, const RuleTable& table,
                              const LanguageModel& lm, const RunConfig& cfg, int kbest = 1);

// Graphs must already be of cfg.kind. Output order matches input order.
std::vector<TranslateResult> translate_all(const std::vector<DepGraph>& graphs,
                                           const RuleTable& table, const LanguageModel& lm,
                                           const RunConfig& cfg, int kbest = 1,
                                           int jobs = 1);

const std::vector<Feature>& decoder_features(DecoderKind d);

// Entry point of the dg2s tool; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace dg2s

#endif  // DG2S_CLI_H_
