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

#ifndef DG2S_TESTS_SUPPORT_RANDOM_H_
#define DG2S_TESTS_SUPPORT_RANDOM_H_

#include <algorithm>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dg2s/graph.h"
#include "oracle/brute_graph.h"

namespace dg2s::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}
inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}
inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

struct RandomTree {
  std::vector<std::string> words, tags;
  std::vector<int> heads;

  DepGraph tree() const {
    std::vector<Token> t;
    for (std::size_t i = 0; i < words.size(); ++i) t.push_back({words[i], tags[i]});
    return DepGraph::from_heads(t, heads);
  }
  // kind: 0 tree, 1 DBG, 2 DSG.
  DepGraph graph(int kind) const {
    DepGraph t = tree();
    return kind == 1 ? build_dbg(t) : kind == 2 ? build_dsg(t) : t;
  }
  oracle::BruteGraph brute(int kind) const {
    auto g = oracle::brute_tree(words, tags, heads);
    return kind == 1 ? oracle::brute_dbg(g) : kind == 2 ? oracle::brute_dsg(g) : g;
  }
};

// Random head assignment: nodes attach to an earlier node of a random order.
inline RandomTree random_tree(Rng& rng, int n, int vocab = 4) {
  static const char* kTags[] = {"NN", "VV", "P", "AD"};
  RandomTree t;
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i + 1;
  std::shuffle(order.begin(), order.end(), rng);
  t.heads.assign(n, 0);
  for (int k = 1; k < n; ++k) t.heads[order[k] - 1] = order[uniform(rng, 0, k - 1)];
  for (int i = 0; i < n; ++i) {
    t.words.push_back("w" + std::to_string(uniform(rng, 0, vocab - 1)));
    t.tags.push_back(kTags[uniform(rng, 0, 3)]);
  }
  return t;
}

inline std::vector<std::pair<int, int>> random_links(Rng& rng, int n, int m, double p) {
  std::vector<std::pair<int, int>> links;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j)
      if (coin(rng, p)) links.push_back({i, j});
  return links;
}

inline std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(17) << v;
  return o.str();
}

// Backoff model over `vocab`; every kept n-gram's prefix is kept too.
inline std::string random_arpa(Rng& rng, int order, const std::vector<std::string>& vocab,
                               bool with_unk) {
  std::vector<std::string> words = vocab;
  words.push_back("<s>");
  words.push_back("</s>");
  if (with_unk) words.push_back("<unk>");
  std::vector<std::map<std::vector<std::string>, std::pair<double, double>>> grams(order + 1);
  for (const auto& w : words) {
    double p = w == "<s>" ? -99.0 : uniform_real(rng, -3.0, -0.2);
    double bo = coin(rng, 0.8) ? uniform_real(rng, -1.5, 0.0) : 0.0;
    grams[1][{w}] = {p, bo};
  }
  for (int n = 2; n <= order; ++n)
    for (const auto& [prefix, pb] : grams[n - 1]) {
      if (prefix.back() == "</s>") continue;
      for (const auto& w : words) {
        if (w == "<s>" || !coin(rng, 0.35)) continue;
        auto g = prefix;
        g.push_back(w);
        double bo = n < order && coin(rng, 0.8) ? uniform_real(rng, -1.5, 0.0) : 0.0;
        grams[n][g] = {uniform_real(rng, -2.5, -0.05), bo};
      }
    }
  std::ostringstream o;
  o << "\\data\\\n";
  for (int n = 1; n <= order; ++n) o << "ngram " << n << "=" << grams[n].size() << "\n";
  for (int n = 1; n <= order; ++n) {
    o << "\n\\" << n << "-grams:\n";
    for (const auto& [g, pb] : grams[n]) {
      o << fmt(pb.first) << "\t";
      for (std::size_t k = 0; k < g.size(); ++k) o << (k ? " " : "") << g[k];
      if (n < order && pb.second != 0.0) o << "\t" << fmt(pb.second);
      o << "\n";
    }
  }
  o << "\n\\end\\\n";
  return o.str();
}

}  // namespace dg2s::testing

#endif  // DG2S_TESTS_SUPPORT_RANDOM_H_
