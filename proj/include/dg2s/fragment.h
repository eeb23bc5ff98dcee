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

#ifndef DG2S_FRAGMENT_H_
#define DG2S_FRAGMENT_H_

#include <string>
#include <vector>

#include "dg2s/graph.h"
#include "dg2s/subsequence.h"

namespace dg2s {

struct FragmentNode {
  bool terminal = true;
  std::string label;  // word, or non-terminal symbol
  std::string pos;    // terminals only
  int link = 0;       // non-terminals only, 1-based
  Subsequence covers; // source positions under this node; may be empty for
                      // fragments read back from a rule table

  std::string token() const;  // "word" or "[X,1]"
  bool operator==(const FragmentNode& o) const {
    return terminal == o.terminal && label == o.label && link == o.link;
  }
};

// Edge between local node indices (0-based).
struct FragmentEdge {
  int from;
  int to;
  EdgeLabel label = EdgeLabel::kNone;
  bool operator==(const FragmentEdge&) const = default;
  bool operator<(const FragmentEdge& o) const {
    return from != o.from ? from < o.from : to < o.to;
  }
};

class GraphFragment {
 public:
  GraphFragment() = default;
  GraphFragment(std::vector<FragmentNode> nodes, std::vector<FragmentEdge> edges);

  const std::vector<FragmentNode>& nodes() const { return nodes_; }
  const std::vector<FragmentEdge>& edges() const { return edges_; }
  std::size_t size() const { return nodes_.size(); }

  int terminal_count() const;
  int nonterminal_count() const;
  // Union of node covers.
  Subsequence covered() const;
  bool is_connected() const;
  // Copy with every edge label set to kNone.
  GraphFragment unlabeled() const;

  bool operator==(const GraphFragment&) const = default;

 private:
  std::vector<FragmentNode> nodes_;
  std::vector<FragmentEdge> edges_;  // sorted, unique
};

// Replaces the nodes covering `sub` by one non-terminal placed at
// nt_position(sub). Edges into the collapsed set keep their direction;
// parallel edges are merged with OR-ed labels.
// Throws ContainmentError if sub is not exactly a union of terminal covers,
// ConnectivityError if those nodes do not induce a connected fragment,
// ArgumentError if `link` is already used.
GraphFragment collapse(const GraphFragment& frag, const Subsequence& sub,
                       const std::string& symbol, int link);

// "w1 w2 [X,1] | 1-0 2-0 2-1", edges with ":dep"/":seq"/":both" when
// use_edge_labels is set.
std::string canonical_key(const GraphFragment& frag, bool use_edge_labels);

std::string nonterminal_token(const std::string& symbol, int link);

}  // namespace dg2s

#endif  // DG2S_FRAGMENT_H_
