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

#ifndef DG2S_HYPERGRAPH_H_
#define DG2S_HYPERGRAPH_H_

#include <deque>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "dg2s/features.h"
#include "dg2s/rule.h"
#include "dg2s/subsequence.h"

namespace dg2s {

// One rule application. Target yield is `pattern` with slot k replaced by the
// yield of tails[k-1].
struct HgEdge {
  int head = -1;
  std::vector<int> tails;
  const TranslationRule* rule = nullptr;  // null for axiom and goal edges
  std::vector<TargetToken> pattern;
  Subsequence covered;
  FeatureVector features{};
  double score = 0.0;
};

struct HgNode {
  std::string symbol;
  Subsequence covered;
  std::vector<int> in;
  double best = -std::numeric_limits<double>::infinity();
};

class Hypergraph {
 public:
  int add_node(std::string symbol, Subsequence covered);
  // Updates the head's best score from the tails' current bests.
  int add_edge(HgEdge e);

  const HgNode& node(int v) const { return nodes_[v]; }
  const HgEdge& edge(int e) const { return edges_[e]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  // Keeps decoder-made rules (pass-through, glue) alive with the graph.
  const TranslationRule* own(TranslationRule r) {
    owned_.push_back(std::move(r));
    return &owned_.back();
  }

 private:
  std::vector<HgNode> nodes_;
  std::vector<HgEdge> edges_;
  std::deque<TranslationRule> owned_;
};

struct DerivationStep {
  TranslationRule rule;
  std::string symbol;
  Subsequence covered;
  FeatureVector features;
  int depth;
};

struct Derivation {
  std::vector<std::string> words;
  FeatureVector features{};
  double score = 0.0;
  std::vector<DerivationStep> steps;  // bottom-up, left to right
  std::string tree;                   // bracketed rule applications

  std::string translation() const;
};

// Lazy k-best extraction over an acyclic hypergraph.
class KBest {
 public:
  explicit KBest(const Hypergraph& hg) : hg_(hg), state_(hg.node_count()) {}

  // Score of the k-th best (0-based) derivation of v, or -inf if none.
  double score(int v, int k);
  Derivation derivation(int v, int k);
  // Up to k derivations, best first. ArgumentError if k <= 0.
  std::vector<Derivation> top(int v, int k);

 private:
  struct Entry {
    int edge;
    std::vector<int> ranks;
    double score;
  };
  struct State {
    bool init = false;
    std::vector<Entry> done;
    std::vector<Entry> heap;
    std::map<std::pair<int, std::vector<int>>, bool> seen;
  };

  const Entry* get(int v, int k);
  bool push(State& st, int edge, std::vector<int> ranks);
  void expand(int v, int k, int depth, Derivation& d, std::vector<std::string>& words);

  const Hypergraph& hg_;
  std::vector<State> state_;
};

}  // namespace dg2s

#endif  // DG2S_HYPERGRAPH_H_
