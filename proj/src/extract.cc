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

#include "dg2s/extract.h"

#include <algorithm>
#include <map>
#include <optional>

#include "dg2s/error.h"

namespace dg2s {

namespace {

struct AlignmentIndex {
  std::vector<std::vector<int>> by_source;  // 1-based
  std::vector<std::vector<int>> by_target;
  explicit AlignmentIndex(const AlignedPair& p)
      : by_source(p.source.size() + 1), by_target(p.target.size() + 1) {
    for (auto [i, j] : p.alignment) {
      by_source[i].push_back(j);
      by_target[j].push_back(i);
    }
  }
};

// Choices of unaligned extension for one region around the aligned closure.
// Each choice is a list of positions to add.
using Choices = std::vector<std::vector<int>>;

Choices stretch_choices(const std::vector<int>& stretch) {
  // stretch ordered outward from the aligned word: add a prefix of it.
  Choices c{{}};
  for (std::size_t k = 1; k <= stretch.size(); ++k)
    c.emplace_back(stretch.begin(), stretch.begin() + k);
  return c;
}

}  // namespace

std::vector<SubgraphPhrasePair> extract_spp(const AlignedPair& pair,
                                            int max_source, int max_target) {
  const int n = pair.source.size(), m = int(pair.target.size());
  AlignmentIndex ax(pair);
  auto unaligned = [&](int i) { return ax.by_source[i].empty(); };
  std::vector<SubgraphPhrasePair> out;

  for (int tb = 1; tb <= m; ++tb) {
    for (int te = tb; te <= m && te - tb + 1 <= max_target; ++te) {
      std::vector<int> closure;
      for (int j = tb; j <= te; ++j)
        closure.insert(closure.end(), ax.by_target[j].begin(), ax.by_target[j].end());
      std::sort(closure.begin(), closure.end());
      closure.erase(std::unique(closure.begin(), closure.end()), closure.end());
      if (closure.empty() || int(closure.size()) > max_source) continue;
      bool consistent = true;
      for (int i : closure)
        for (int j : ax.by_source[i])
          if (j < tb || j > te) consistent = false;
      if (!consistent) continue;

      // Regions of unaligned words next to the closure.
      std::vector<Choices> regions;
      {
        std::vector<int> left;
        for (int p = closure.front() - 1; p >= 1 && unaligned(p); --p) left.push_back(p);
        regions.push_back(stretch_choices(left));
        std::vector<int> right;
        for (int p = closure.back() + 1; p <= n && unaligned(p); ++p) right.push_back(p);
        regions.push_back(stretch_choices(right));
      }
      for (std::size_t k = 0; k + 1 < closure.size(); ++k) {
        int a = closure[k], b = closure[k + 1];
        if (b == a + 1) continue;
        bool all_unaligned = true;
        for (int p = a + 1; p < b; ++p) all_unaligned &= unaligned(p);
        if (all_unaligned) {
          // Prefix from a plus suffix from b, not overlapping.
          Choices c;
          int len = b - a - 1;
          for (int x = 0; x <= len; ++x)
            for (int y = 0; x + y <= len; ++y) {
              if (y > 0 && x + y == len) break;  // same set as x = len

              std::vector<int> add;
              for (int p = a + 1; p <= a + x; ++p) add.push_back(p);
              for (int p = b - y; p < b; ++p) add.push_back(p);
              c.push_back(std::move(add));
            }
          regions.push_back(std::move(c));
        } else {
          std::vector<int> l, r;
          for (int p = a + 1; p < b && unaligned(p); ++p) l.push_back(p);
          for (int p = b - 1; p > a && unaligned(p); --p) r.push_back(p);
          regions.push_back(stretch_choices(l));
          regions.push_back(stretch_choices(r));
        }
      }

      std::vector<int> current = closure;
      auto rec = [&](auto&& self, std::size_t r) -> void {
        if (int(current.size()) > max_source) return;
        if (r == regions.size()) {
          Subsequence s(current);
          if (auto frag = induced_subgraph(pair.source, s))
            out.push_back({std::move(s), tb, te, std::move(*frag)});
          return;
        }
        for (const auto& add : regions[r]) {
          if (int(current.size() + add.size()) > max_source) continue;
          current.insert(current.end(), add.begin(), add.end());
          self(self, r + 1);
          current.resize(current.size() - add.size());
        }
      };
      rec(rec, 0);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.target_begin != b.target_begin) return a.target_begin < b.target_begin;
    return a.target_end < b.target_end;
  });
  return out;
}

TranslationRule spp_rule(const AlignedPair& pair, const SubgraphPhrasePair& spp) {
  TranslationRule r;
  r.source = spp.fragment;
  for (int j = spp.target_begin; j <= spp.target_end; ++j)
    r.target.push_back({pair.target[j - 1], 0});
  for (auto [i, j] : pair.alignment) {
    if (j < spp.target_begin || j > spp.target_end) continue;
    auto it = std::lower_bound(spp.source.begin_it(), spp.source.end_it(), i);
    if (it == spp.source.end_it() || *it != i) continue;
    r.alignment.emplace_back(int(it - spp.source.begin_it()), j - spp.target_begin);
  }
  std::sort(r.alignment.begin(), r.alignment.end());
  r.count = 1.0;
  return r;
}

namespace {

void merge_into(std::map<std::string, TranslationRule>& acc, TranslationRule r) {
  auto id = r.identity(true);
  auto it = acc.find(id);
  if (it == acc.end())
    acc.emplace(std::move(id), std::move(r));
  else
    it->second.count += r.count;
}

std::vector<TranslationRule> flatten(std::map<std::string, TranslationRule>& acc) {
  std::vector<TranslationRule> out;
  out.reserve(acc.size());
  for (auto& [id, r] : acc) out.push_back(std::move(r));
  return out;
}

}  // namespace

std::vector<TranslationRule> extract_spp_rules(const AlignedPair& pair,
                                               int max_length) {
  std::map<std::string, TranslationRule> acc;
  for (const auto& spp : extract_spp(pair, max_length))
    merge_into(acc, spp_rule(pair, spp));
  return flatten(acc);
}

std::string pos_nonterminal(const Subsequence& s, const DepGraph& g) {
  if (s.empty()) throw EmptySubsequenceError("pos_nonterminal of empty subsequence");
  std::string sym;
  for (int p : s.positions()) {
    int h = g.dependency_head(p);
    if (h != 0 && s.contains(h)) continue;
    if (!sym.empty()) sym += '_';
    sym += g.token(p).pos;
  }
  return sym;
}

namespace {

// Builds the rule for base with the given nested pairs (sorted by source
// begin) replaced by non-terminals; nullopt if the rule breaks the limits.
std::optional<TranslationRule> make_rule(const AlignedPair& pair,
                                         const SubgraphPhrasePair& base,
                                         const std::vector<const SubgraphPhrasePair*>& inner,
                                         const ExtractLimits& lim) {
  GraphFragment frag = base.fragment;
  int link = 0;
  for (const auto* q : inner) {
    std::string sym = lim.pos_nonterminals ? pos_nonterminal(q->source, pair.source) : "X";
    frag = collapse(frag, q->source, sym, ++link);
  }
  if (int(frag.size()) > lim.max_symbols) return std::nullopt;

  TranslationRule r;
  r.lhs = lim.pos_nonterminals ? pos_nonterminal(base.source, pair.source) : "X";
  // Target: base span with each nested span replaced by its slot.
  std::vector<int> target_index(pair.target.size() + 1, -1);
  for (int j = base.target_begin; j <= base.target_end;) {
    int slot = 0;
    for (std::size_t k = 0; k < inner.size(); ++k)
      if (inner[k]->target_begin == j) slot = int(k) + 1;
    if (slot) {
      r.target.push_back({"X", slot});
      j = inner[slot - 1]->target_end + 1;
    } else {
      target_index[j] = int(r.target.size());
      r.target.push_back({pair.target[j - 1], 0});
      ++j;
    }
  }
  // Terminal nodes by position.
  std::map<int, int> node_of;
  for (std::size_t k = 0; k < frag.nodes().size(); ++k)
    if (frag.nodes()[k].terminal) node_of[frag.nodes()[k].covers[0]] = int(k);
  for (auto [i, j] : pair.alignment) {
    auto it = node_of.find(i);
    if (it == node_of.end() || target_index[j] < 0) continue;
    r.alignment.emplace_back(it->second, target_index[j]);
  }
  if (r.alignment.empty()) return std::nullopt;
  std::sort(r.alignment.begin(), r.alignment.end());
  r.source = std::move(frag);
  r.count = 1.0;
  return r;
}

bool disjoint(const SubgraphPhrasePair& a, const SubgraphPhrasePair& b) {
  return !a.source.intersects(b.source) &&
         (a.target_end < b.target_begin || b.target_end < a.target_begin);
}

}  // namespace

std::vector<TranslationRule> extract_snrg(const AlignedPair& pair,
                                          const ExtractLimits& lim) {
  std::map<std::string, TranslationRule> acc;
  auto pairs = extract_spp(pair, lim.initial_length, lim.initial_length);
  for (const auto& base : pairs) {
    if (auto r = make_rule(pair, base, {}, lim)) merge_into(acc, std::move(*r));
    if (lim.max_nonterminals < 1) continue;

    std::vector<const SubgraphPhrasePair*> nested;
    for (const auto& q : pairs) {
      if (&q == &base) continue;
      if (int(q.source.size()) < lim.min_gap_size) continue;
      if (q.target_begin < base.target_begin || q.target_end > base.target_end) continue;
      if (!q.source.is_subset_of(base.source)) continue;
      nested.push_back(&q);
    }
    for (std::size_t a = 0; a < nested.size(); ++a) {
      if (auto r = make_rule(pair, base, {nested[a]}, lim)) merge_into(acc, std::move(*r));
      if (lim.max_nonterminals < 2) continue;
      for (std::size_t b = a + 1; b < nested.size(); ++b) {
        if (!disjoint(*nested[a], *nested[b])) continue;
        auto x = nested[a], y = nested[b];
        if (y->source.begin() < x->source.begin()) std::swap(x, y);
        if (auto r = make_rule(pair, base, {x, y}, lim)) merge_into(acc, std::move(*r));
      }
    }
  }
  return flatten(acc);
}

Provenance classify_connectivity(const GraphFragment& frag) {
  auto connected_on = [&](bool (*keep)(EdgeLabel)) {
    const int n = int(frag.size());
    if (n == 0) return false;
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : frag.edges())
      if (keep(e.label)) {
        adj[e.from].push_back(e.to);
        adj[e.to].push_back(e.from);
      }
    std::vector<char> seen(n, 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int reached = 1;
    while (!st.empty()) {
      int v = st.back();
      st.pop_back();
      for (int u : adj[v])
        if (!seen[u]) {
          seen[u] = 1;
          ++reached;
          st.push_back(u);
        }
    }
    return reached == n;
  };
  return {connected_on(has_dependency), connected_on(has_sequential)};
}

}  // namespace dg2s
