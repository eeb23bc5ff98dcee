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

#include "dg2s/hypergraph.h"

#include <algorithm>

#include "dg2s/error.h"

namespace dg2s {

int Hypergraph::add_node(std::string symbol, Subsequence covered) {
  nodes_.push_back({std::move(symbol), std::move(covered), {}, -std::numeric_limits<double>::infinity()});
  return int(nodes_.size()) - 1;
}

int Hypergraph::add_edge(HgEdge e) {
  double s = e.score;
  for (int t : e.tails) s += nodes_[t].best;
  HgNode& h = nodes_[e.head];
  h.best = std::max(h.best, s);
  h.in.push_back(int(edges_.size()));
  edges_.push_back(std::move(e));
  return int(edges_.size()) - 1;
}

std::string Derivation::translation() const {
  std::string s;
  for (const auto& w : words) {
    if (!s.empty()) s += ' ';
    s += w;
  }
  return s;
}

namespace {

bool heap_less(const auto& a, const auto& b) {
  if (a.score != b.score) return a.score < b.score;
  // Deterministic order among ties: lower edge id, then lower ranks first.
  if (a.edge != b.edge) return a.edge > b.edge;
  return a.ranks > b.ranks;
}

}  // namespace

bool KBest::push(State& st, int edge, std::vector<int> ranks) {
  auto key = std::make_pair(edge, ranks);
  if (st.seen.count(key)) return false;
  st.seen[key] = true;
  const HgEdge& e = hg_.edge(edge);
  double s = e.score;
  for (std::size_t i = 0; i < e.tails.size(); ++i) {
    const Entry* t = get(e.tails[i], ranks[i]);
    if (!t) return false;
    s += t->score;
  }
  st.heap.push_back({edge, std::move(ranks), s});
  std::push_heap(st.heap.begin(), st.heap.end(),
                 [](const Entry& a, const Entry& b) { return heap_less(a, b); });
  return true;
}

const KBest::Entry* KBest::get(int v, int k) {
  State& st0 = state_[v];
  if (!st0.init) {
    st0.init = true;
    for (int e : hg_.node(v).in)
      push(state_[v], e, std::vector<int>(hg_.edge(e).tails.size(), 0));
  }
  while (int(state_[v].done.size()) <= k) {
    State& st = state_[v];
    if (!st.done.empty()) {
      Entry last = st.done.back();
      for (std::size_t i = 0; i < last.ranks.size(); ++i) {
        auto r = last.ranks;
        ++r[i];
        push(state_[v], last.edge, std::move(r));
      }
    }
    State& s2 = state_[v];
    if (s2.heap.empty()) break;
    std::pop_heap(s2.heap.begin(), s2.heap.end(),
                  [](const Entry& a, const Entry& b) { return heap_less(a, b); });
    s2.done.push_back(std::move(s2.heap.back()));
    s2.heap.pop_back();
  }
  const State& st = state_[v];
  return k < int(st.done.size()) ? &st.done[k] : nullptr;
}

double KBest::score(int v, int k) {
  const Entry* e = get(v, k);
  return e ? e->score : -std::numeric_limits<double>::infinity();
}

void KBest::expand(int v, int k, int depth, Derivation& d,
                   std::vector<std::string>& words) {
  const Entry entry = *get(v, k);
  const HgEdge& e = hg_.edge(entry.edge);
  d.features += e.features;
  const bool shown = e.rule != nullptr;
  if (shown) {
    d.tree += "(" + hg_.node(v).symbol + " " + e.covered.to_string() + " <" +
              e.rule->target_string() + ">";
  }
  for (const auto& tok : e.pattern) {
    if (tok.is_nonterminal()) {
      int i = tok.link - 1;
      if (shown) d.tree += " ";
      expand(e.tails[i], entry.ranks[i], depth + shown, d, words);
    } else {
      words.push_back(tok.word);
    }
  }
  if (shown) {
    d.tree += ")";
    d.steps.push_back({*e.rule, hg_.node(v).symbol, e.covered, e.features, depth});
  }
}

Derivation KBest::derivation(int v, int k) {
  const Entry* e = get(v, k);
  if (!e) throw NoDerivationError("no derivation of rank " + std::to_string(k), {});
  Derivation d;
  d.score = e->score;
  expand(v, k, 0, d, d.words);
  return d;
}

std::vector<Derivation> KBest::top(int v, int k) {
  if (k <= 0) throw ArgumentError("k must be positive");
  std::vector<Derivation> out;
  for (int i = 0; i < k && get(v, i); ++i) out.push_back(derivation(v, i));
  return out;
}

}  // namespace dg2s
