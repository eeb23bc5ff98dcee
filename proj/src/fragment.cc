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

#include "dg2s/fragment.h"

#include <algorithm>
#include <map>
#include <numeric>

#include "dg2s/error.h"

namespace dg2s {

std::string nonterminal_token(const std::string& symbol, int link) {
  return "[" + symbol + "," + std::to_string(link) + "]";
}

std::string FragmentNode::token() const {
  return terminal ? label : nonterminal_token(label, link);
}

GraphFragment::GraphFragment(std::vector<FragmentNode> nodes,
                             std::vector<FragmentEdge> edges)
    : nodes_(std::move(nodes)) {
  std::map<std::pair<int, int>, EdgeLabel> merged;
  const int n = int(nodes_.size());
  for (const FragmentEdge& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw BoundsError("fragment edge index out of range");
    if (e.from == e.to) throw MalformedTreeError("fragment self-loop");
    auto [it, fresh] = merged.emplace(std::make_pair(e.from, e.to), e.label);
    if (!fresh) it->second = it->second | e.label;
  }
  for (auto& [k, l] : merged) edges_.push_back({k.first, k.second, l});
}

int GraphFragment::terminal_count() const {
  return int(std::count_if(nodes_.begin(), nodes_.end(),
                           [](const FragmentNode& n) { return n.terminal; }));
}

int GraphFragment::nonterminal_count() const {
  return int(nodes_.size()) - terminal_count();
}

Subsequence GraphFragment::covered() const {
  std::vector<int> p;
  for (const auto& n : nodes_)
    p.insert(p.end(), n.covers.begin_it(), n.covers.end_it());
  return Subsequence(std::move(p));
}

bool GraphFragment::is_connected() const {
  const int n = int(nodes_.size());
  if (n == 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : edges_) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
  }
  return reached == n;
}

GraphFragment GraphFragment::unlabeled() const {
  GraphFragment f = *this;
  for (auto& e : f.edges_) e.label = EdgeLabel::kNone;
  return f;
}

GraphFragment collapse(const GraphFragment& frag, const Subsequence& sub,
                       const std::string& symbol, int link) {
  if (sub.empty()) throw EmptySubsequenceError("collapse of empty subsequence");
  const auto& nodes = frag.nodes();
  const int n = int(nodes.size());
  std::vector<char> inside(n, 0);
  std::size_t covered = 0;
  for (int i = 0; i < n; ++i) {
    if (nodes[i].covers.empty()) continue;
    if (nodes[i].covers.is_subset_of(sub)) {
      if (!nodes[i].terminal)
        throw ContainmentError(sub.to_string() + " contains non-terminal " +
                               std::to_string(nodes[i].link));
      inside[i] = 1;
      covered += nodes[i].covers.size();
    } else if (nodes[i].covers.intersects(sub)) {
      throw ContainmentError(sub.to_string() + " splits a fragment node");
    }
  }
  if (covered != sub.size())
    throw ContainmentError(sub.to_string() + " is not contained in the fragment");
  for (const auto& nd : nodes)
    if (!nd.terminal && nd.link == link)
      throw ArgumentError("link " + std::to_string(link) + " already in use");

  // Connectivity of the collapsed part.
  {
    std::vector<FragmentNode> sn;
    std::vector<int> local(n, -1);
    for (int i = 0; i < n; ++i)
      if (inside[i]) {
        local[i] = int(sn.size());
        sn.push_back(nodes[i]);
      }
    std::vector<FragmentEdge> se;
    for (const auto& e : frag.edges())
      if (inside[e.from] && inside[e.to])
        se.push_back({local[e.from], local[e.to], e.label});
    if (!GraphFragment(std::move(sn), std::move(se)).is_connected())
      throw ConnectivityError(sub.to_string() + " does not induce a connected fragment");
  }

  FragmentNode nt;
  nt.terminal = false;
  nt.label = symbol;
  nt.link = link;
  nt.covers = sub;

  // Order survivors plus the new node by the first position each covers.
  std::vector<std::pair<int, int>> order;  // (position, old index or -1)
  for (int i = 0; i < n; ++i)
    if (!inside[i]) order.push_back({nodes[i].covers.empty() ? 0 : nodes[i].covers.begin(), i});
  order.push_back({nt_position(sub), -1});
  std::stable_sort(order.begin(), order.end(),
                   [](auto& a, auto& b) { return a.first < b.first; });

  std::vector<int> remap(n, -1);
  int nt_index = -1;
  std::vector<FragmentNode> out_nodes;
  for (auto& [p, old] : order) {
    if (old < 0) {
      nt_index = int(out_nodes.size());
      out_nodes.push_back(nt);
    } else {
      remap[old] = int(out_nodes.size());
      out_nodes.push_back(nodes[old]);
    }
  }
  for (int i = 0; i < n; ++i)
    if (inside[i]) remap[i] = nt_index;

  std::vector<FragmentEdge> out_edges;
  for (const auto& e : frag.edges()) {
    if (inside[e.from] && inside[e.to]) continue;
    out_edges.push_back({remap[e.from], remap[e.to], e.label});
  }
  return GraphFragment(std::move(out_nodes), std::move(out_edges));
}

std::string canonical_key(const GraphFragment& frag, bool use_edge_labels) {
  std::string key;
  for (const auto& nd : frag.nodes()) {
    if (!key.empty()) key += ' ';
    key += nd.token();
  }
  key += " |";
  for (const auto& e : frag.edges()) {
    key += ' ';
    key += std::to_string(e.from);
    key += '-';
    key += std::to_string(e.to);
    if (use_edge_labels && e.label != EdgeLabel::kNone) {
      key += ':';
      key += label_name(e.label);
    }
  }
  return key;
}

}  // namespace dg2s
