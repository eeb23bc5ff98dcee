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

#include "dg2s/lm.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "dg2s/corpus.h"
#include "dg2s/error.h"

namespace dg2s {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

bool parse_double(const std::string& s, double& v) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

std::size_t LmState::hash() const {
  std::size_t h = context.size();
  for (WordId w : context) h = mix(h, std::size_t(w));
  return h;
}

std::size_t LanguageModel::KeyHash::operator()(const std::vector<WordId>& k) const {
  std::size_t h = k.size();
  for (WordId w : k) h = mix(h, std::size_t(w));
  return h;
}

LanguageModel LanguageModel::load_arpa(std::istream& in) {
  LanguageModel lm;
  std::string line;
  int ln = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++ln;
      while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
        line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  bool found = false;
  while (next_line())
    if (line == "\\data\\") {
      found = true;
      break;
    }
  if (!found) throw FormatError("missing \\data\\ header", ln);

  std::vector<std::size_t> counts;
  while (next_line()) {
    if (line.rfind("ngram ", 0) != 0) break;
    auto eq = line.find('=');
    int n = 0;
    long long c = 0;
    if (eq == std::string::npos) throw FormatError("bad count line", ln);
    std::string ns = line.substr(6, eq - 6), cs = line.substr(eq + 1);
    while (!ns.empty() && ns.back() == ' ') ns.pop_back();
    while (!cs.empty() && cs.front() == ' ') cs.erase(cs.begin());
    if (std::from_chars(ns.data(), ns.data() + ns.size(), n).ec != std::errc() ||
        std::from_chars(cs.data(), cs.data() + cs.size(), c).ec != std::errc() ||
        n != int(counts.size()) + 1 || c < 0)
      throw FormatError("bad count line '" + line + "'", ln);
    counts.push_back(std::size_t(c));
  }
  if (counts.empty()) throw FormatError("no n-gram counts", ln);
  lm.order_ = int(counts.size());
  lm.tables_.resize(counts.size());

  auto intern = [&](const std::string& w) {
    auto [it, fresh] = lm.vocab_.emplace(w, WordId(lm.vocab_.size()));
    return it->second;
  };

  for (int n = 1; n <= lm.order_; ++n) {
    std::string header = "\\" + std::to_string(n) + "-grams:";
    if (line != header)
      throw FormatError("expected '" + header + "', got '" + line + "'", ln);
    std::size_t seen = 0;
    bool more = false;
    while ((more = next_line())) {
      if (line[0] == '\\') break;
      auto cols = split_words(line);
      if (int(cols.size()) != n + 1 && int(cols.size()) != n + 2)
        throw FormatError("wrong field count in " + std::to_string(n) + "-gram entry", ln);
      Entry e;
      if (!parse_double(cols[0], e.prob)) throw FormatError("bad probability", ln);
      if (int(cols.size()) == n + 2 && !parse_double(cols[n + 1], e.backoff))
        throw FormatError("bad backoff weight", ln);
      std::vector<WordId> key;
      for (int k = 1; k <= n; ++k) key.push_back(intern(cols[k]));
      lm.tables_[n - 1][std::move(key)] = e;
      ++seen;
    }
    if (seen != counts[n - 1])
      throw FormatError("header declares " + std::to_string(counts[n - 1]) + " " +
                            std::to_string(n) + "-grams, found " + std::to_string(seen),
                        ln);
    if (!more) throw FormatError("missing \\end\\", ln);
  }
  if (line != "\\end\\") throw FormatError("expected \\end\\, got '" + line + "'", ln);

  auto lookup = [&](const char* w) {
    auto it = lm.vocab_.find(w);
    return it == lm.vocab_.end() ? kUnknown : it->second;
  };
  lm.bos_ = lookup("<s>");
  lm.eos_ = lookup("</s>");
  lm.unk_ = lookup("<unk>");
  return lm;
}

LanguageModel LanguageModel::load_arpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open language model '" + path + "'");
  return load_arpa(in);
}

WordId LanguageModel::id(const std::string& word) const {
  auto it = vocab_.find(word);
  return it == vocab_.end() ? unk_ : it->second;
}

const LanguageModel::Entry* LanguageModel::find(const std::vector<WordId>& ngram) const {
  if (ngram.empty() || int(ngram.size()) > order_) return nullptr;
  const Table& t = tables_[ngram.size() - 1];
  auto it = t.find(ngram);
  return it == t.end() ? nullptr : &it->second;
}

double LanguageModel::prob(const std::vector<WordId>& history, WordId word) const {
  // Iterative form of the backoff recursion: find the longest matching
  // n-gram, adding backoff weights of the contexts skipped on the way down.
  if (word == kUnknown) return oov_floor_;
  const std::size_t keep = std::min<std::size_t>(history.size(), order_ - 1);
  std::vector<WordId> ngram(history.end() - keep, history.end());
  ngram.push_back(word);
  double backoff = 0.0;
  for (std::size_t start = 0; start < ngram.size(); ++start) {
    std::vector<WordId> suffix(ngram.begin() + start, ngram.end());
    if (const Entry* e = find(suffix)) return backoff + e->prob;
    if (suffix.size() > 1) {
      std::vector<WordId> ctx(suffix.begin(), suffix.end() - 1);
      if (const Entry* c = find(ctx)) backoff += c->backoff;
    }
  }
  return backoff + oov_floor_;
}

std::pair<double, LmState> LanguageModel::score_word(const LmState& state,
                                                     WordId word) const {
  double p = prob(state.context, word);
  LmState next;
  if (order_ > 1) {
    next.context = state.context;
    next.context.push_back(word);
    if (int(next.context.size()) > order_ - 1)
      next.context.erase(next.context.begin(),
                         next.context.end() - (order_ - 1));
  }
  return {p, std::move(next)};
}

double LanguageModel::score_sequence(const std::vector<std::string>& words,
                                     bool add_end) const {
  LmState s = begin_state();
  double total = 0.0;
  for (const auto& w : words) {
    auto [p, n] = score_word(s, w);
    total += p;
    s = std::move(n);
  }
  if (add_end) total += score_word(s, eos_).first;
  return total;
}

}  // namespace dg2s
