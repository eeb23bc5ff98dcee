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

#ifndef DG2S_GRAPH_H_
#define DG2S_GRAPH_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dg2s/subsequence.h"

namespace dg2s {

struct Token {
  std::string word;
  std::string pos;
  bool operator==(const Token&) const = default;
};

// Bit flags: a shared dependency/sequential edge carries both bits.
enum class EdgeLabel : uint8_t {
  kNone = 0,
  kDependency = 1,
  kSequential = 2,
  kBoth = 3,
};

inline EdgeLabel operator|(EdgeLabel a, EdgeLabel b) {
  return EdgeLabel(uint8_t(a) | uint8_t(b));
}
inline bool has_dependency(EdgeLabel l) { return uint8_t(l) & 1; }
inline bool has_sequential(EdgeLabel l) { return uint8_t(l) & 2; }

// "dep", "seq", "both"; "none" for kNone.
const char* label_name(EdgeLabel l);
std::optional<EdgeLabel> parse_label(const std::string& s);

// head -> dep, 1-based.
struct Edge {
  int head;
  int dep;
  EdgeLabel label = EdgeLabel::kNone;
  bool operator==(const Edge&) const = default;
};

class DepGraph;
class GraphFragment;

// Directed, node-labeled, weakly connected graph over a sentence. Positions
// are 1-based. Immutable after construction.
class DepGraph {
 public:
  DepGraph() = default;
  // Duplicate (head, dep) pairs are merged by OR-ing their labels. Throws
  // BoundsError for out-of-range endpoints, MalformedTreeError for self-loops
  // or a disconnected graph.
  DepGraph(std::vector<Token> tokens, std::vector<Edge> edges);

  // heads[i-1] is the head of word i, 0 for the root. Exactly one root and no
  // cycles, else MalformedTreeError.
  static DepGraph from_heads(std::vector<Token> tokens,
                             const std::vector<int>& heads);

  int size() const { return int(tokens_.size()); }
  const Token& token(int i) const { return tokens_[i - 1]; }
  const std::vector<Token>& tokens() const { return tokens_; }
  // Sorted by (head, dep).
  const std::vector<Edge>& edges() const { return edges_; }
  // Undirected neighbours, sorted.
  const std::vector<int>& neighbors(int i) const { return adj_[i]; }
  EdgeLabel label(int head, int dep) const;
  bool has_edge(int head, int dep) const;

  // Head over a dependency-labelled edge, 0 if none.
  int dependency_head(int i) const { return dep_head_[i]; }
  // True if the edges are exactly a dependency tree (n-1 dependency edges,
  // every non-root word has one head).
  bool is_tree() const;

  bool operator==(const DepGraph& o) const {
    return tokens_ == o.tokens_ && edges_ == o.edges_;
  }

 private:
  std::vector<Token> tokens_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;  // index 0 unused
  std::vector<int> dep_head_;          // index 0 unused
};

// Tree plus bigram edges (i+1 -> i).
DepGraph build_dbg(const DepGraph& tree);
// Tree plus sibling edges (right sibling -> left sibling).
DepGraph build_dsg(const DepGraph& tree);

bool is_connected(const DepGraph& g, const Subsequence& s);

// Node-induced subgraph; nullopt when it is empty or not weakly connected.
// Throws BoundsError for positions outside 1..n.
std::optional<GraphFragment> induced_subgraph(const DepGraph& g,
                                              const Subsequence& s);

// All s with |s| <= max_size, span(s) <= max_span and G(s) connected, sorted.
// max_span <= 0 means unrestricted.
std::vector<Subsequence> enumerate_connected_subsequences(const DepGraph& g,
                                                          int max_size,
                                                          int max_span = 0);

// Undirected adjacency lists indexed from 0.
using Adjacency = std::vector<std::vector<int>>;

// Visits every connected vertex set that contains `root`, built from vertices
// for which allowed(v) holds, with at most max_nodes vertices. Each set is
// visited once (ESU-style exclusive extension). If visit returns false the set
// is not extended further, so the predicate must be monotone for supersets.
void enumerate_connected_from(
    const Adjacency& adj, int root, int max_nodes,
    const std::function<bool(int)>& allowed,
    const std::function<bool(const std::vector<int>&)>& visit);

}  // namespace dg2s

#endif  // DG2S_GRAPH_H_
