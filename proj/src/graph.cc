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

#include "dg2s/graph.h"

#include <algorithm>
#include <map>

#include "dg2s/error.h"
#include "dg2s/fragment.h"

namespace dg2s {

const char* label_name(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::kDependency: return "dep";
    case EdgeLabel::kSequential: return "seq";
    case EdgeLabel::kBoth: return "both";
    default: return "none";
  }
}

std::optional<EdgeLabel> parse_label(const std::string& s) {
  if (s == "dep") return EdgeLabel::kDependency;
  if (s == "seq") return EdgeLabel::kSequential;
  if (s == "both") return EdgeLabel::kBoth;
  if (s == "none") return EdgeLabel::kNone;
  return std::nullopt;
}

DepGraph::DepGraph(std::vector<Token> tokens, std::vector<Edge> edges)
    : tokens_(std::move(tokens)) {
  const int n = size();
  std::map<std::pair<int, int>, EdgeLabel> merged;
  for (const Edge& e : edges) {
    if (e.head < 1 || e.head > n || e.dep < 1 || e.dep > n)
      throw BoundsError("edge " + std::to_string(e.head) + "->" +
                        std::to_string(e.dep) + " outside 1.." +
                        std::to_string(n));
    if (e.head == e.dep)
      throw MalformedTreeError("self-loop at " + std::to_string(e.head));
    auto [it, fresh] = merged.emplace(std::make_pair(e.head, e.dep), e.label);
    if (!fresh) it->second = it->second | e.label;
  }
  edges_.reserve(merged.size());
  for (auto& [k, l] : merged) edges_.push_back({k.first, k.second, l});

  adj_.assign(n + 1, {});
  dep_head_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    adj_[e.head].push_back(e.dep);
    adj_[e.dep].push_back(e.head);
    if (has_dependency(e.label)) dep_head_[e.dep] = e.head;
  }
  for (auto& a : adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  if (n > 0 && !is_connected(*this, Subsequence::range(1, n)))
    throw MalformedTreeError("graph is not connected");
}

DepGraph DepGraph::from_heads(std::vector<Token> tokens,
                              const std::vector<int>& heads) {
  const int n = int(tokens.size());
  if (int(heads.size()) != n)
    throw MalformedTreeError("head count does not match token count");
  int roots = 0;
  std::vector<Edge> edges;
  for (int i = 1; i <= n; ++i) {
    int h = heads[i - 1];
    if (h < 0 || h > n)
      throw MalformedTreeError("head " + std::to_string(h) + " of word " +
                               std::to_string(i) + " out of range");
    if (h == i) throw MalformedTreeError("word " + std::to_string(i) + " heads itself");
    if (h == 0)
      ++roots;
    else
      edges.push_back({h, i, EdgeLabel::kDependency});
  }
  if (n > 0 && roots != 1)
    throw MalformedTreeError(std::to_string(roots) + " roots");
  // With one root and n-1 edges, connectivity rules out cycles; the
  // constructor reports the disconnected case.
  return DepGraph(std::move(tokens), std::move(edges));
}

EdgeLabel DepGraph::label(int head, int dep) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(head, dep),
                             [](const Edge& e, const std::pair<int, int>& k) {
                               return std::make_pair(e.head, e.dep) < k;
                             });
  if (it != edges_.end() && it->head == head && it->dep == dep) return it->label;
  return EdgeLabel::kNone;
}

bool DepGraph::has_edge(int head, int dep) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(head, dep),
                             [](const Edge& e, const std::pair<int, int>& k) {
                               return std::make_pair(e.head, e.dep) < k;
                             });
  return it != edges_.end() && it->head == head && it->dep == dep;
}

bool DepGraph::is_tree() const {
  const int n = size();
  if (int(edges_.size()) != std::max(n - 1, 0)) return false;
  std::vector<int> indeg(n + 1, 0);
  for (const Edge& e : edges_) {
    if (e.label != EdgeLabel::kDependency) return false;
    if (++indeg[e.dep] > 1) return false;
  }
  return true;
}

namespace {

void require_tree(const DepGraph& tree) {
  if (!tree.is_tree())
    throw MalformedTreeError("input is not a dependency tree");
}

}  // namespace

DepGraph build_dbg(const DepGraph& tree) {
  require_tree(tree);
  std::vector<Edge> edges = tree.edges();
  for (int i = 1; i < tree.size(); ++i)
    edges.push_back({i + 1, i, EdgeLabel::kSequential});
  return DepGraph(tree.tokens(), std::move(edges));
}

DepGraph build_dsg(const DepGraph& tree) {
  require_tree(tree);
  const int n = tree.size();
  std::vector<std::vector<int>> children(n + 1);
  for (const Edge& e : tree.edges()) children[e.head].push_back(e.dep);
  std::vector<Edge> edges = tree.edges();
  for (auto& c : children) {
    std::sort(c.begin(), c.end());
    for (std::size_t k = 1; k < c.size(); ++k)
      edges.push_back({c[k], c[k - 1], EdgeLabel::kSequential});
  }
  return DepGraph(tree.tokens(), std::move(edges));
}

bool is_connected(const DepGraph& g, const Subsequence& s) {
  if (s.empty()) return false;
  std::vector<int> stack{s[0]};
  std::vector<char> seen(g.size() + 1, 0);
  seen[s[0]] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors(v)) {
      if (!seen[u] && s.contains(u)) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == s.size();
}

std::optional<GraphFragment> induced_subgraph(const DepGraph& g,
                                              const Subsequence& s) {
  for (int p : s.positions())
    if (p > g.size())
      throw BoundsError("position " + std::to_string(p) + " outside 1.." +
                        std::to_string(g.size()));
  if (s.empty() || !is_connected(g, s)) return std::nullopt;
  std::vector<FragmentNode> nodes;
  nodes.reserve(s.size());
  for (int p : s.positions()) {
    FragmentNode nd;
    nd.label = g.token(p).word;
    nd.pos = g.token(p).pos;
    nd.covers = Subsequence{p};
    nodes.push_back(std::move(nd));
  }
  std::vector<FragmentEdge> edges;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (int u : g.neighbors(s[i])) {
      auto it = std::lower_bound(s.begin_it(), s.end_it(), u);
      if (it == s.end_it() || *it != u) continue;
      int j = int(it - s.begin_it());
      EdgeLabel l = g.label(s[i], u);
      if (g.has_edge(s[i], u)) edges.push_back({int(i), j, l});
    }
  }
  return GraphFragment(std::move(nodes), std::move(edges));
}

void enumerate_connected_from(
    const Adjacency& adj, int root, int max_nodes,
    const std::function<bool(int)>& allowed,
    const std::function<bool(const std::vector<int>&)>& visit) {
  if (max_nodes < 1) return;
  const int n = int(adj.size());
  // in_sub[v]: v in the current set; near[v]: number of current set members
  // adjacent to v (v counts as "near" once it is in the neighbourhood).
  std::vector<char> in_sub(n, 0);
  std::vector<int> near(n, 0);
  std::vector<int> sub{root};
  in_sub[root] = 1;

  auto mark = [&](int v, int d) {
    for (int u : adj[v]) near[u] += d;
  };

  // ext holds candidate vertices; each recursion level takes them in order.
  std::function<void(std::vector<int>)> extend = [&](std::vector<int> ext) {
    if (!visit(sub)) return;
    if (int(sub.size()) == max_nodes) return;
    while (!ext.empty()) {
      int w = ext.back();
      ext.pop_back();
      // Exclusive neighbours of w: not in the set, not adjacent to the set,
      // not already a candidate.
      std::vector<int> next = ext;
      for (int u : adj[w]) {
        if (in_sub[u] || near[u] > 0 || !allowed(u)) continue;
        if (std::find(next.begin(), next.end(), u) != next.end()) continue;
        next.push_back(u);
      }
      sub.push_back(w);
      in_sub[w] = 1;
      mark(w, +1);
      extend(std::move(next));
      mark(w, -1);
      in_sub[w] = 0;
      sub.pop_back();
    }
  };

  mark(root, +1);
  std::vector<int> ext;
  for (int u : adj[root])
    if (u != root && allowed(u)) ext.push_back(u);
  std::sort(ext.begin(), ext.end());
  ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
  extend(std::move(ext));
  mark(root, -1);
}

std::vector<Subsequence> enumerate_connected_subsequences(const DepGraph& g,
                                                          int max_size,
                                                          int max_span) {
  std::vector<Subsequence> out;
  const int n = g.size();
  if (max_size < 1 || n == 0) return out;
  Adjacency adj(n + 1);
  for (int v = 1; v <= n; ++v) adj[v] = g.neighbors(v);
  for (int v = 1; v <= n; ++v) {
    enumerate_connected_from(
        adj, v, max_size, [v](int u) { return u > v; },
        [&](const std::vector<int>& nodes) {
          auto [lo, hi] = std::minmax_element(nodes.begin(), nodes.end());
          if (max_span > 0 && *hi - *lo + 1 > max_span) return false;
          out.emplace_back(nodes);
          return true;
        });
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dg2s
