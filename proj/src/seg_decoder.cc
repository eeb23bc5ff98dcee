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

#include "dg2s/seg_decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "dg2s/error.h"

namespace dg2s {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
const double kLn10 = std::log(10.0);

}  // namespace

DistortionValues distortion(int prev_end, const Subsequence& cur) {
  DistortionValues d;
  d.jump = std::abs(cur.begin() - prev_end - 1);
  auto runs = cur.runs();
  for (std::size_t k = 1; k < runs.size(); ++k)
    d.gap += std::abs(runs[k].begin - runs[k - 1].end - 1);
  return d;
}

double option_estimate(const TranslationRule& r, const LanguageModel& lm,
                       const Weights& w) {
  FeatureVector h = rule_features(r);
  double lp = 0.0;
  for (const auto& t : r.target)
    if (!t.is_nonterminal()) lp += lm.score_word(lm.null_state(), t.word).first;
  h[kLm] = lp * kLn10;
  return w.dot(h);
}

FutureCostTable::FutureCostTable(int n,
                                 const std::vector<std::pair<Subsequence, double>>& est)
    : n_(n), table_((n + 2) * (n + 2), kNegInf) {
  std::vector<double> unit(n + 2, kNegInf);
  for (const auto& [s, v] : est) {
    double share = v / double(s.size());
    for (int p : s.positions()) unit[p] = std::max(unit[p], share);
    if (s.is_continuous()) {
      double& cell = table_[s.begin() * (n_ + 2) + s.end()];
      cell = std::max(cell, v);
    }
  }
  for (int p = 1; p <= n; ++p) {
    double& cell = table_[p * (n_ + 2) + p];
    cell = std::max(cell, unit[p]);
  }
  for (int len = 2; len <= n; ++len)
    for (int b = 1; b + len - 1 <= n; ++b) {
      int e = b + len - 1;
      double& cell = table_[b * (n_ + 2) + e];
      for (int k = b; k < e; ++k)
        cell = std::max(cell, table_[b * (n_ + 2) + k] + table_[(k + 1) * (n_ + 2) + e]);
    }
}

double FutureCostTable::operator()(const Coverage& c) const {
  double total = 0.0;
  int p = 1;
  while (p <= n_) {
    if (c.test(p)) {
      ++p;
      continue;
    }
    int e = p;
    while (e + 1 <= n_ && !c.test(e + 1)) ++e;
    total += span(p, e);
    p = e + 1;
  }
  return total;
}

TranslationRule passthrough_rule(const DepGraph& g, int position, double cost) {
  TranslationRule r;
  r.source = *induced_subgraph(g, Subsequence{position});
  r.target = {{g.token(position).word, 0}};
  r.alignment = {{0, 0}};
  r.costs = {cost, cost, cost, cost};
  r.count = 1.0;
  return r;
}

std::vector<int> uncovered_positions(int n, const TranslationOptions& options) {
  std::vector<char> seen(n + 1, 0);
  for (const auto& [s, rules] : options)
    for (int p : s.positions()) seen[p] = 1;
  std::vector<int> out;
  for (int p = 1; p <= n; ++p)
    if (!seen[p]) out.push_back(p);
  return out;
}

namespace {

struct Option {
  Subsequence span;
  Coverage cov;
  const TranslationRule* rule;
  FeatureVector base;
  std::vector<WordId> words;
};

struct HypKey {
  Coverage cov;
  LmState lm;
  int last_end;
  bool operator==(const HypKey&) const = default;
};

struct HypKeyHash {
  std::size_t operator()(const HypKey& k) const {
    std::size_t h = k.cov.hash();
    h ^= k.lm.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::size_t(k.last_end) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

struct Hyp {
  HypKey key;
  double score;
  double future;
  int node;
};

struct Stack {
  std::vector<Hyp> hyps;
  std::unordered_map<HypKey, int, HypKeyHash> index;
};

void prune(Stack& st, int beam) {
  if (beam <= 0 || int(st.hyps.size()) <= beam) return;
  std::vector<int> order(st.hyps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return st.hyps[a].score + st.hyps[a].future > st.hyps[b].score + st.hyps[b].future;
  });
  order.resize(beam);
  std::sort(order.begin(), order.end());
  std::vector<Hyp> kept;
  kept.reserve(beam);
  for (int i : order) kept.push_back(std::move(st.hyps[i]));
  st.hyps = std::move(kept);
  st.index.clear();
}

}  // namespace

SearchGraph SegDecoder::search(const DepGraph& g) const {
  const int n = g.size();
  SearchGraph sg;
  Hypergraph& hg = sg.hg;

  TranslationOptions opts = match_options(table_, g, {opts_.max_phrase, opts_.max_span});
  if (opts_.oov_passthrough)
    for (int p = 1; p <= n; ++p) {
      auto& single = opts[Subsequence{p}];
      if (single.empty()) single.push_back(hg.own(passthrough_rule(g, p, opts_.oov_cost)));
    }
  if (auto missing = uncovered_positions(n, opts); !missing.empty())
    throw NoDerivationError("no translation option covers some source words", missing);

  std::vector<std::vector<Option>> by_begin(n + 2);
  std::vector<std::pair<Subsequence, double>> estimates;
  for (const auto& [s, rules] : opts) {
    double best = kNegInf;
    for (const auto* r : rules) {
      Option o{s, Coverage(n, s), r, rule_features(*r), {}};
      for (const auto& t : r->target) o.words.push_back(lm_.id(t.word));
      by_begin[s.begin()].push_back(std::move(o));
      best = std::max(best, option_estimate(*r, lm_, w_));
    }
    estimates.emplace_back(s, best);
  }
  FutureCostTable future(n, estimates);

  std::vector<Stack> stacks(n + 1);
  {
    int node = hg.add_node("", Subsequence());
    hg.add_edge({node, {}, nullptr, {}, Subsequence(), {}, 0.0});
    Coverage empty(n);
    stacks[0].hyps.push_back({{empty, lm_.begin_state(), 0}, 0.0, future(empty), node});
  }

  for (int i = 0; i <= n; ++i) {
    prune(stacks[i], opts_.beam_width);
    const std::vector<Hyp> current = stacks[i].hyps;
    for (const Hyp& h : current) {
      const int f = h.key.cov.first_unset();
      const int last = opts_.d_max < 0 ? n : std::min(n, f + opts_.d_max);
      for (int b = f; b <= last; ++b) {
        for (const Option& o : by_begin[b]) {
          if (h.key.cov.intersects(o.cov)) continue;
          FeatureVector feats = o.base;
          LmState state = h.key.lm;
          double lp = 0.0;
          for (WordId wd : o.words) {
            auto [p, next] = lm_.score_word(state, wd);
            lp += p;
            state = std::move(next);
          }
          feats[kLm] = lp * kLn10;
          DistortionValues d = distortion(h.key.last_end, o.span);
          feats[kDistJump] = -d.jump;
          feats[kDistGap] = -d.gap;
          const double delta = w_.dot(feats);

          Coverage cov = h.key.cov;
          cov |= o.cov;
          const int j = i + int(o.span.size());
          HypKey key{std::move(cov), std::move(state), o.span.end()};
          Stack& dst = stacks[j];
          int node;
          auto it = dst.index.find(key);
          if (it != dst.index.end()) {
            Hyp& old = dst.hyps[it->second];
            old.score = std::max(old.score, h.score + delta);
            node = old.node;
          } else {
            node = hg.add_node("", key.cov.to_subsequence());
            double fut = future(key.cov);
            dst.index.emplace(key, int(dst.hyps.size()));
            dst.hyps.push_back({std::move(key), h.score + delta, fut, node});
          }
          HgEdge e;
          e.head = node;
          e.tails = {h.node};
          e.rule = o.rule;
          e.pattern.push_back({"X", 1});
          e.pattern.insert(e.pattern.end(), o.rule->target.begin(), o.rule->target.end());
          e.covered = o.span;
          e.features = feats;
          e.score = delta;
          hg.add_edge(std::move(e));
        }
      }
    }
  }

  if (stacks[n].hyps.empty())
    throw NoDerivationError("search found no complete hypothesis", {});
  sg.goal = hg.add_node("S", n > 0 ? Subsequence::range(1, n) : Subsequence());
  for (const Hyp& h : stacks[n].hyps) {
    HgEdge e;
    e.head = sg.goal;
    e.tails = {h.node};
    e.pattern = {{"X", 1}};
    e.features[kLm] = lm_.score_word(h.key.lm, lm_.eos()).first * kLn10;
    e.score = w_.dot(e.features);
    hg.add_edge(std::move(e));
  }
  return sg;
}

std::vector<Derivation> SegDecoder::decode_kbest(const DepGraph& g, int k) const {
  if (k <= 0) throw ArgumentError("k must be positive");
  SearchGraph sg = search(g);
  KBest kb(sg.hg);
  return kb.top(sg.goal, k);
}

Derivation SegDecoder::decode(const DepGraph& g) const {
  return decode_kbest(g, 1).front();
}

}  // namespace dg2s
