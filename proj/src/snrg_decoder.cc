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

#include "dg2s/snrg_decoder.h"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "dg2s/error.h"
#include "dg2s/options.h"

namespace dg2s {

int gap_count(const Subsequence& covered, const std::vector<Subsequence>& nts) {
  if (covered.empty()) return 0;
  std::set<int> seen(covered.begin_it(), covered.end_it());
  for (const auto& s : nts)
    for (int p = s.begin(); p <= s.end(); ++p) seen.insert(p);
  return covered.span() - int(seen.size());
}

FeatureVector application_features(const TranslationRule& r) {
  if (r.is_glue()) {
    FeatureVector h{};
    h[kGluePenalty] = -1.0;
    return h;
  }
  return rule_features(r);
}

namespace {

const double kLn10 = std::log(10.0);

inline void mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

struct ItemKey {
  std::string symbol;
  Subsequence covered;
  std::vector<WordId> left;
  std::vector<WordId> right;
  bool operator==(const ItemKey&) const = default;
};

struct ItemKeyHash {
  std::size_t operator()(const ItemKey& k) const {
    std::size_t h = std::hash<std::string>()(k.symbol);
    mix(h, SubsequenceHash()(k.covered));
    for (WordId w : k.left) mix(h, std::size_t(w));
    mix(h, 0x5bd1e995);
    for (WordId w : k.right) mix(h, std::size_t(w));
    return h;
  }
};

struct Item {
  ItemKey key;
  int length = 0;      // target words
  double inside = 0.0;  // exact part of the score
  double heuristic = 0.0;
  double future = 0.0;
  int node = -1;
  double rank() const { return inside + heuristic + future; }
};

struct Cell {
  std::string symbol;
  Subsequence covered;
  std::vector<Item> items;  // best rank first
};

// Rules sharing the same antecedent cells and covered positions.
struct Group {
  std::vector<const TranslationRule*> rules;
  std::vector<const Cell*> children;  // in link order
  Subsequence covered;
  FeatureVector extra{};
  double future = 0.0;
};

struct Candidate {
  Item item;
  HgEdge edge;
};

class Search {
 public:
  Search(const RuleTable& table, const LanguageModel& lm, const Weights& w,
         const SnrgOptions& o, const DepGraph& g, SearchGraph& sg)
      : table_(table), lm_(lm), w_(w), o_(o), g_(g), n_(g.size()), sg_(sg), hg_(sg.hg) {
    glue_unary_ = hg_.own(glue_unary_rule());
    glue_binary_ = hg_.own(glue_binary_rule());
  }

  void run_beam();
  void run_chart();

 private:
  void load_options(int max_size, int max_span);
  double future(const Subsequence& s) const;
  std::vector<const TranslationRule*> rules_for(const GraphFragment& frag, int arity) const;
  std::vector<const TranslationRule*> sorted(std::vector<const TranslationRule*> rules) const;
  double heuristic(const std::vector<WordId>& left) const;
  double goal_lm(const Item& it) const;
  Candidate make(const Group& gr, const std::array<int, 3>& idx) const;
  std::vector<Candidate> cube(const std::vector<Group>& groups) const;
  std::vector<Item> recombine(std::vector<Candidate> cands);
  std::vector<const Cell*> publish(std::vector<Item> items, std::deque<Cell>& store);
  Adjacency contracted(const Subsequence& a, const Subsequence* b) const;
  void add_nt_groups(const Cell* a, const std::vector<const Cell*>& earlier,
                     std::vector<std::vector<Group>>& pending);
  Group glue_group(const Cell* s, const Cell* x) const;
  void finish(const std::vector<const Cell*>& goal_cells);

  const RuleTable& table_;
  const LanguageModel& lm_;
  const Weights& w_;
  const SnrgOptions& o_;
  const DepGraph& g_;
  const int n_;
  SearchGraph& sg_;
  Hypergraph& hg_;
  const TranslationRule* glue_unary_;
  const TranslationRule* glue_binary_;
  TranslationOptions opts_;
  FutureCostTable fc_;
};

void Search::load_options(int max_size, int max_span) {
  opts_ = match_options(table_, g_, {max_size, max_span});
  if (o_.oov_passthrough)
    for (int p = 1; p <= n_; ++p) {
      auto& single = opts_[Subsequence{p}];
      if (single.empty()) single.push_back(hg_.own(passthrough_rule(g_, p, o_.oov_cost)));
    }
  for (auto it = opts_.begin(); it != opts_.end();) {
    if (it->second.empty())
      it = opts_.erase(it);
    else
      ++it;
  }
  std::vector<std::pair<Subsequence, double>> est;
  for (auto& [s, rules] : opts_) {
    rules = sorted(std::move(rules));
    double best = -std::numeric_limits<double>::infinity();
    for (const auto* r : rules) best = std::max(best, option_estimate(*r, lm_, w_));
    est.emplace_back(s, best);
  }
  fc_ = FutureCostTable(n_, est);
}

double Search::future(const Subsequence& s) const {
  return fc_(Coverage(n_, s));
}

std::vector<const TranslationRule*> Search::sorted(std::vector<const TranslationRule*> rules) const {
  std::stable_sort(rules.begin(), rules.end(), [&](const auto* a, const auto* b) {
    return w_.dot(application_features(*a)) > w_.dot(application_features(*b));
  });
  return rules;
}

std::vector<const TranslationRule*> Search::rules_for(const GraphFragment& frag, int arity) const {
  std::vector<const TranslationRule*> out;
  if (const auto* list = table_.find(canonical_key(frag, table_.edge_labels())))
    for (const auto& r : *list)
      if (r.arity() == arity && !r.is_glue()) out.push_back(&r);
  return sorted(std::move(out));
}

double Search::heuristic(const std::vector<WordId>& left) const {
  double lp = 0.0;
  std::vector<WordId> ctx;
  for (WordId w : left) {
    lp += lm_.prob(ctx, w);
    ctx.push_back(w);
  }
  return w_[kLm] * kLn10 * lp;
}

double Search::goal_lm(const Item& it) const {
  const int need = lm_.order() - 1;
  std::vector<WordId> ctx{lm_.bos()};
  double lp = 0.0;
  for (WordId w : it.key.left) {
    lp += lm_.prob(ctx, w);
    ctx.push_back(w);
  }
  if (it.length >= need && need > 0) ctx = it.key.right;
  lp += lm_.prob(ctx, lm_.eos());
  return lp;
}

Candidate Search::make(const Group& gr, const std::array<int, 3>& idx) const {
  const TranslationRule& r = *gr.rules[idx[0]];
  std::vector<const Item*> kids;
  for (std::size_t c = 0; c < gr.children.size(); ++c)
    kids.push_back(&gr.children[c]->items[idx[c + 1]]);

  Candidate cand;
  Item& it = cand.item;
  it.key.symbol = r.lhs;
  it.key.covered = gr.covered;

  // Score every word whose full (order-1) history lies inside this item;
  // the first order-1 words wait for left context.
  const int need = lm_.order() - 1;
  std::vector<WordId> ctx;
  double lp = 0.0;
  auto feed = [&](WordId w) {
    if (it.length >= need)
      lp += lm_.prob(ctx, w);
    else
      it.key.left.push_back(w);
    ctx.push_back(w);
    if (int(ctx.size()) > need) ctx.erase(ctx.begin());
    ++it.length;
  };
  for (const auto& t : r.target) {
    if (!t.is_nonterminal()) {
      feed(lm_.id(t.word));
      continue;
    }
    const Item& k = *kids[t.link - 1];
    for (WordId w : k.key.left) feed(w);
    if (k.length > need) {
      ctx = k.key.right;
      it.length += k.length - int(k.key.left.size());
    }
  }
  it.key.right = ctx;

  FeatureVector f = application_features(r) + gr.extra;
  f[kLm] = lp * kLn10;
  const double delta = w_.dot(f);
  it.inside = delta;
  for (const Item* k : kids) it.inside += k->inside;
  it.heuristic = heuristic(it.key.left);
  it.future = gr.future;

  cand.edge.rule = &r;
  cand.edge.pattern = r.target;
  cand.edge.covered = gr.covered;
  cand.edge.features = f;
  cand.edge.score = delta;
  for (const Item* k : kids) cand.edge.tails.push_back(k->node);
  return cand;
}

std::vector<Candidate> Search::cube(const std::vector<Group>& groups) const {
  struct Entry {
    double rank;
    int group;
    std::array<int, 3> idx;
    std::size_t cand;
  };
  auto less = [](const Entry& a, const Entry& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.group != b.group) return a.group > b.group;
    return a.idx > b.idx;
  };
  std::vector<Candidate> pool;
  std::vector<Entry> heap;
  std::vector<std::set<std::array<int, 3>>> seen(groups.size());

  auto push = [&](int gi, std::array<int, 3> idx) {
    const Group& gr = groups[gi];
    if (idx[0] >= int(gr.rules.size())) return;
    for (std::size_t c = 0; c < gr.children.size(); ++c)
      if (idx[c + 1] >= int(gr.children[c]->items.size())) return;
    if (!seen[gi].insert(idx).second) return;
    pool.push_back(make(gr, idx));
    heap.push_back({pool.back().item.rank(), gi, idx, pool.size() - 1});
    std::push_heap(heap.begin(), heap.end(), less);
  };

  for (int gi = 0; gi < int(groups.size()); ++gi) push(gi, {0, 0, 0});

  const int limit = o_.beam_width > 0 ? o_.beam_width : INT_MAX;
  std::vector<Candidate> out;
  while (!heap.empty() && int(out.size()) < limit) {
    std::pop_heap(heap.begin(), heap.end(), less);
    Entry e = heap.back();
    heap.pop_back();
    out.push_back(std::move(pool[e.cand]));
    const int dims = 1 + int(groups[e.group].children.size());
    for (int d = 0; d < dims; ++d) {
      auto next = e.idx;
      ++next[d];
      push(e.group, next);
    }
  }
  return out;
}

std::vector<Item> Search::recombine(std::vector<Candidate> cands) {
  std::unordered_map<ItemKey, int, ItemKeyHash> index;
  std::vector<Item> items;
  for (auto& c : cands) {
    auto it = index.find(c.item.key);
    if (it != index.end()) {
      Item& old = items[it->second];
      c.edge.head = old.node;
      hg_.add_edge(std::move(c.edge));
      old.inside = std::max(old.inside, c.item.inside);
      continue;
    }
    c.item.node = hg_.add_node(c.item.key.symbol, c.item.key.covered);
    c.edge.head = c.item.node;
    hg_.add_edge(std::move(c.edge));
    index.emplace(c.item.key, int(items.size()));
    items.push_back(std::move(c.item));
  }
  std::stable_sort(items.begin(), items.end(),
                   [](const Item& a, const Item& b) { return a.rank() > b.rank(); });
  if (o_.beam_width > 0 && int(items.size()) > o_.beam_width) items.resize(o_.beam_width);
  return items;
}

std::vector<const Cell*> Search::publish(std::vector<Item> items, std::deque<Cell>& store) {
  std::map<std::pair<std::string, Subsequence>, Cell*> cells;
  std::vector<const Cell*> fresh;
  for (auto& it : items) {
    auto key = std::make_pair(it.key.symbol, it.key.covered);
    auto f = cells.find(key);
    if (f == cells.end()) {
      store.push_back({it.key.symbol, it.key.covered, {}});
      f = cells.emplace(key, &store.back()).first;
      fresh.push_back(&store.back());
    }
    f->second->items.push_back(std::move(it));
  }
  return fresh;
}

Adjacency Search::contracted(const Subsequence& a, const Subsequence* b) const {
  const int sa = n_ + 1, sb = n_ + 2;
  auto map = [&](int v) {
    if (a.contains(v)) return sa;
    if (b && b->contains(v)) return sb;
    return v;
  };
  Adjacency adj(n_ + 3);
  for (int v = 1; v <= n_; ++v) {
    int mv = map(v);
    for (int u : g_.neighbors(v)) {
      int mu = map(u);
      if (mu != mv) adj[mv].push_back(mu);
    }
  }
  for (auto& l : adj) {
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
  }
  return adj;
}

// Groups whose antecedents include `a`: one-NT rules over a plus terminals,
// and two-NT rules over a and an earlier cell plus terminals.
void Search::add_nt_groups(const Cell* a, const std::vector<const Cell*>& earlier,
                           std::vector<std::vector<Group>>& pending) {
  const int sa = n_ + 1, sb = n_ + 2;
  const int span_max = o_.span_max > 0 ? o_.span_max : INT_MAX;

  auto enumerate = [&](const Cell* b, int max_terms, auto&& emit) {
    Adjacency adj = contracted(a->covered, b ? &b->covered : nullptr);
    auto allowed = [&](int v) {
      if (v == sb) return b != nullptr;
      return v >= 1 && v <= n_ && !a->covered.contains(v) && !(b && b->covered.contains(v));
    };
    enumerate_connected_from(adj, sa, max_terms + (b ? 2 : 1), allowed,
                             [&](const std::vector<int>& set) {
                               std::vector<int> terms;
                               bool has_b = false;
                               for (int v : set) {
                                 if (v == sb) has_b = true;
                                 else if (v <= n_) terms.push_back(v);
                               }
                               if (int(terms.size()) > max_terms) return false;
                               int lo = a->covered.begin(), hi = a->covered.end();
                               int size = int(a->covered.size() + terms.size());
                               if (has_b) {
                                 lo = std::min(lo, b->covered.begin());
                                 hi = std::max(hi, b->covered.end());
                                 size += int(b->covered.size());
                               }
                               for (int t : terms) {
                                 lo = std::min(lo, t);
                                 hi = std::max(hi, t);
                               }
                               if (hi - lo + 1 > span_max || size > o_.l_max) return false;
                               if (!terms.empty() && (!b || has_b)) emit(Subsequence(terms));
                               return true;
                             });
  };

  const int max_t1 = table_.max_terminals(1);
  if (max_t1 > 0)
    enumerate(nullptr, max_t1, [&](const Subsequence& t) {
      Subsequence u = join(a->covered, t);
      GraphFragment frag = collapse(*induced_subgraph(g_, u), a->covered, a->symbol, 1);
      auto rules = rules_for(frag, 1);
      if (rules.empty()) return;
      Group gr{std::move(rules), {a}, u, {}, future(u)};
      gr.extra[kGapPenalty] = -gap_count(u, {a->covered});
      pending[u.size()].push_back(std::move(gr));
    });

  const int max_t2 = table_.max_terminals(2);
  if (max_t2 <= 0) return;
  // Graph distance from a, to skip cells too far away to share a rule.
  std::vector<int> dist(n_ + 1, INT_MAX);
  std::vector<int> queue;
  for (int p : a->covered.positions()) {
    dist[p] = 0;
    queue.push_back(p);
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    int v = queue[q];
    if (dist[v] > max_t2) continue;
    for (int u : g_.neighbors(v))
      if (dist[u] == INT_MAX) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
  }
  for (const Cell* b : earlier) {
    if (b->covered.intersects(a->covered)) continue;
    if (int(a->covered.size() + b->covered.size()) + 1 > o_.l_max) continue;
    int d = INT_MAX;
    for (int p : b->covered.positions()) d = std::min(d, dist[p]);
    if (d > max_t2 + 1) continue;
    const Cell* first = a->covered.begin() < b->covered.begin() ? a : b;
    const Cell* second = first == a ? b : a;
    enumerate(b, max_t2, [&](const Subsequence& t) {
      Subsequence u = join(join(a->covered, b->covered), t);
      GraphFragment frag = collapse(*induced_subgraph(g_, u), first->covered, first->symbol, 1);
      frag = collapse(frag, second->covered, second->symbol, 2);
      auto rules = rules_for(frag, 2);
      if (rules.empty()) return;
      Group gr{std::move(rules), {first, second}, u, {}, future(u)};
      gr.extra[kGapPenalty] = -gap_count(u, {first->covered, second->covered});
      pending[u.size()].push_back(std::move(gr));
    });
  }
}

Group Search::glue_group(const Cell* s, const Cell* x) const {
  Group gr;
  if (!s) {
    gr.rules = {glue_unary_};
    gr.children = {x};
    gr.covered = x->covered;
  } else {
    gr.rules = {glue_binary_};
    gr.children = {s, x};
    gr.covered = join(s->covered, x->covered);
    DistortionValues d = distortion(s->covered.end(), x->covered);
    gr.extra[kDistJump] = -(d.jump + d.gap);
  }
  gr.future = future(gr.covered);
  return gr;
}

void Search::finish(const std::vector<const Cell*>& goal_cells) {
  sg_.goal = hg_.add_node("GOAL", n_ > 0 ? Subsequence::range(1, n_) : Subsequence());
  bool any = false;
  for (const Cell* c : goal_cells)
    for (const Item& it : c->items) {
      HgEdge e;
      e.head = sg_.goal;
      e.tails = {it.node};
      e.pattern = {{"S", 1}};
      e.features[kLm] = goal_lm(it) * kLn10;
      e.score = w_.dot(e.features);
      hg_.add_edge(std::move(e));
      any = true;
    }
  if (!any) {
    if (n_ == 0) {
      HgEdge e;
      e.head = sg_.goal;
      e.features[kLm] = lm_.prob({lm_.bos()}, lm_.eos()) * kLn10;
      e.score = w_.dot(e.features);
      hg_.add_edge(std::move(e));
      return;
    }
    throw NoDerivationError("no derivation covers the whole input",
                            uncovered_positions(n_, opts_));
  }
}

void Search::run_beam() {
  load_options(std::min(o_.l_max, n_), o_.span_max);
  std::vector<std::vector<Group>> pending(n_ + 1);
  for (const auto& [s, rules] : opts_) {
    if (int(s.size()) > o_.l_max) continue;
    Group gr{rules, {}, s, {}, future(s)};
    gr.extra[kGapPenalty] = -gap_count(s, {});
    pending[s.size()].push_back(std::move(gr));
  }

  std::deque<Cell> x_store, s_store;
  std::vector<const Cell*> x_published;
  std::vector<std::vector<const Cell*>> x_by_size(n_ + 1), s_by_size(n_ + 1);

  for (int l = 1; l <= n_; ++l) {
    if (l <= o_.l_max) {
      std::vector<Group> groups = std::move(pending[l]);
      for (const Cell* c : publish(recombine(cube(groups)), x_store)) {
        add_nt_groups(c, x_published, pending);
        x_published.push_back(c);
        x_by_size[l].push_back(c);
      }
    }
    std::vector<Group> glue;
    for (const Cell* x : x_by_size[l])
      if (x->covered.contains(1)) glue.push_back(glue_group(nullptr, x));
    for (int a = 1; a < l; ++a)
      for (const Cell* s : s_by_size[a])
        for (const Cell* x : x_by_size[l - a])
          if (!x->covered.intersects(s->covered)) glue.push_back(glue_group(s, x));
    for (const Cell* c : publish(recombine(cube(glue)), s_store)) s_by_size[l].push_back(c);
  }
  finish(n_ > 0 ? s_by_size[n_] : std::vector<const Cell*>{});
}

void Search::run_chart() {
  load_options(std::min(o_.g_max, n_), o_.g_max);
  const int g_max = o_.g_max > 0 ? o_.g_max : n_;
  std::deque<Cell> x_store, s_store;
  std::map<std::pair<int, int>, std::vector<const Cell*>> x_at;
  std::vector<std::vector<const Cell*>> s_at(n_ + 1);
  const int max_t1 = table_.max_terminals(1), max_t2 = table_.max_terminals(2);

  for (int len = 1; len <= n_; ++len) {
    for (int i = 1; i + len - 1 <= n_; ++i) {
      const int j = i + len - 1;
      const Subsequence span = Subsequence::range(i, j);
      std::optional<GraphFragment> frag;
      if (len <= g_max && (frag = induced_subgraph(g_, span))) {
        std::vector<Group> groups;
        if (auto it = opts_.find(span); it != opts_.end())
          groups.push_back({it->second, {}, span, {}, 0.0});
        if (max_t1 > 0)
          for (int a = i; a <= std::min(j, i + max_t1); ++a)
            for (int b = std::max(a, j - max_t1); b <= j; ++b) {
              int t = len - (b - a + 1);
              if (t < 1 || t > max_t1) continue;
              auto cells = x_at.find({a, b});
              if (cells == x_at.end()) continue;
              for (const Cell* c : cells->second) {
                auto rules = rules_for(collapse(*frag, c->covered, c->symbol, 1), 1);
                if (!rules.empty()) groups.push_back({std::move(rules), {c}, span, {}, 0.0});
              }
            }
        if (max_t2 > 0)
          for (int a = i; a <= std::min(j, i + max_t2); ++a)
            for (int b = a; b < j; ++b)
              for (int c = b + 1; c <= std::min(j, b + 1 + max_t2); ++c)
                for (int d = std::max(c, j - max_t2); d <= j; ++d) {
                  int t = len - (b - a + 1) - (d - c + 1);
                  if (t < 1 || t > max_t2) continue;
                  auto l1 = x_at.find({a, b}), l2 = x_at.find({c, d});
                  if (l1 == x_at.end() || l2 == x_at.end()) continue;
                  for (const Cell* c1 : l1->second)
                    for (const Cell* c2 : l2->second) {
                      GraphFragment f = collapse(*frag, c1->covered, c1->symbol, 1);
                      f = collapse(f, c2->covered, c2->symbol, 2);
                      auto rules = rules_for(f, 2);
                      if (!rules.empty())
                        groups.push_back({std::move(rules), {c1, c2}, span, {}, 0.0});
                    }
                }
        for (auto& gr : groups)
          gr.extra[kGapPenalty] = 0.0;  // spans are continuous
        auto cells = publish(recombine(cube(groups)), x_store);
        if (!cells.empty()) x_at[{i, j}] = std::move(cells);
      }
      if (i == 1) {
        std::vector<Group> glue;
        if (auto it = x_at.find({1, j}); it != x_at.end())
          for (const Cell* x : it->second) {
            Group gr = glue_group(nullptr, x);
            gr.future = 0.0;
            glue.push_back(std::move(gr));
          }
        for (int k = 1; k < j; ++k) {
          auto xs = x_at.find({k + 1, j});
          if (xs == x_at.end()) continue;
          for (const Cell* s : s_at[k])
            for (const Cell* x : xs->second) {
              Group gr = glue_group(s, x);
              gr.future = 0.0;
              glue.push_back(std::move(gr));
            }
        }
        s_at[j] = publish(recombine(cube(glue)), s_store);
      }
    }
  }
  finish(n_ > 0 ? s_at[n_] : std::vector<const Cell*>{});
}

}  // namespace

SearchGraph SnrgDecoder::search_beam(const DepGraph& g) const {
  SearchGraph sg;
  Search(table_, lm_, w_, opts_, g, sg).run_beam();
  return sg;
}

SearchGraph SnrgDecoder::search_chart(const DepGraph& g) const {
  SearchGraph sg;
  Search(table_, lm_, w_, opts_, g, sg).run_chart();
  return sg;
}

std::vector<Derivation> SnrgDecoder::kbest_beam(const DepGraph& g, int k) const {
  if (k <= 0) throw ArgumentError("k must be positive");
  SearchGraph sg = search_beam(g);
  KBest kb(sg.hg);
  return kb.top(sg.goal, k);
}

std::vector<Derivation> SnrgDecoder::kbest_chart(const DepGraph& g, int k) const {
  if (k <= 0) throw ArgumentError("k must be positive");
  SearchGraph sg = search_chart(g);
  KBest kb(sg.hg);
  return kb.top(sg.goal, k);
}

Derivation SnrgDecoder::decode_beam(const DepGraph& g) const {
  return kbest_beam(g, 1).front();
}

Derivation SnrgDecoder::decode_chart(const DepGraph& g) const {
  return kbest_chart(g, 1).front();
}

}  // namespace dg2s
