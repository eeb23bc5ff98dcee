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

#include "dg2s/corpus.h"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "dg2s/error.h"

namespace dg2s {

namespace {

bool parse_int(const std::string& s, int& v) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t t = line.find('\t', start);
    cols.push_back(line.substr(start, t == std::string::npos ? t : t - start));
    if (t == std::string::npos) break;
    start = t + 1;
  }
  if (cols.size() == 1) cols = split_words(line);
  return cols;
}

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t'))
    s.pop_back();
  return s;
}

}  // namespace

void AlignedPair::validate() const {
  const int n = source.size(), m = int(target.size());
  for (std::size_t k = 0; k < alignment.size(); ++k) {
    auto [i, j] = alignment[k];
    if (i < 1 || i > n || j < 1 || j > m)
      throw BoundsError("alignment link " + std::to_string(i - 1) + "-" +
                        std::to_string(j - 1) + " out of bounds (" +
                        std::to_string(n) + " source, " + std::to_string(m) +
                        " target words)");
    if (k > 0 && alignment[k - 1] >= alignment[k])
      throw DisjointnessError("alignment not sorted or has duplicate links");
  }
}

bool ConllReader::next(std::optional<DepGraph>& out) {
  std::string line;
  std::vector<std::pair<int, std::string>> block;
  while (std::getline(in_, line)) {
    ++line_;
    line = rstrip(line);
    if (line.empty()) {
      if (block.empty()) continue;
      break;
    }
    block.emplace_back(line_, line);
  }
  if (block.empty()) return false;

  const std::size_t sent = sentence_++;
  try {
    std::vector<Token> tokens;
    std::vector<int> heads;
    for (auto& [ln, text] : block) {
      auto cols = split_tabs(text);
      if (cols.size() < 7) throw ParseError("expected at least 7 columns", ln);
      int id = 0, head = 0;
      if (!parse_int(cols[0], id) || id != int(tokens.size()) + 1)
        throw ParseError("bad token id '" + cols[0] + "'", ln);
      if (!parse_int(cols[6], head))
        throw ParseError("non-integer head '" + cols[6] + "'", ln);
      tokens.push_back({cols[1], cols[4]});
      heads.push_back(head);
    }
    for (std::size_t i = 0; i < heads.size(); ++i)
      if (heads[i] < 0 || heads[i] > int(heads.size()))
        throw ParseError("head " + std::to_string(heads[i]) + " out of range",
                         block[i].first);
    try {
      out = DepGraph::from_heads(std::move(tokens), heads);
    } catch (const MalformedTreeError& e) {
      throw ParseError(e.what(), block.front().first);
    }
  } catch (const ParseError& e) {
    issues_.push_back({sent, e.line(), e.what()});
    out.reset();
  }
  return true;
}

ConllCorpus read_conll(std::istream& in) {
  ConllReader reader(in);
  ConllCorpus c;
  std::optional<DepGraph> g;
  while (reader.next(g)) c.sentences.push_back(std::move(g));
  c.issues = reader.issues();
  return c;
}

void write_conll(std::ostream& out, const DepGraph& tree) {
  for (int i = 1; i <= tree.size(); ++i) {
    const Token& t = tree.token(i);
    out << i << '\t' << t.word << "\t_\t_\t" << (t.pos.empty() ? "_" : t.pos)
        << "\t_\t" << tree.dependency_head(i) << "\t_\t_\t_\n";
  }
  out << '\n';
}

void write_conll(std::ostream& out, const std::vector<DepGraph>& trees) {
  for (const auto& t : trees) write_conll(out, t);
}

Alignment parse_alignment_line(const std::string& line, int line_no) {
  Alignment a;
  std::istringstream ss(line);
  std::string tok;
  int index = 0;
  while (ss >> tok) {
    ++index;
    auto dash = tok.find('-');
    int i = 0, j = 0;
    if (dash == std::string::npos || !parse_int(tok.substr(0, dash), i) ||
        !parse_int(tok.substr(dash + 1), j) || i < 0 || j < 0)
      throw ParseError("malformed alignment token '" + tok + "' at position " +
                           std::to_string(index),
                       line_no);
    a.emplace_back(i + 1, j + 1);
  }
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<Alignment> read_alignments(std::istream& in) {
  std::vector<Alignment> out;
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) out.push_back(parse_alignment_line(line, ++ln));
  return out;
}

std::string format_alignment(const Alignment& a) {
  std::string s;
  for (auto [i, j] : a) {
    if (!s.empty()) s += ' ';
    s += std::to_string(i - 1) + "-" + std::to_string(j - 1);
  }
  return s;
}

void write_alignments(std::ostream& out, const std::vector<Alignment>& as) {
  for (const auto& a : as) out << format_alignment(a) << '\n';
}

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> w;
  std::istringstream ss(line);
  std::string t;
  while (ss >> t) w.push_back(t);
  return w;
}

std::vector<std::vector<std::string>> read_targets(std::istream& in) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(split_words(line));
  return out;
}

ZippedCorpus zip_corpus(const std::vector<std::optional<DepGraph>>& trees,
                        const std::vector<std::vector<std::string>>& targets,
                        const std::vector<Alignment>& alignments) {
  const std::size_t n = trees.size();
  if (targets.size() != n || alignments.size() != n) {
    std::size_t m = std::min({n, targets.size(), alignments.size()});
    std::string shorter = trees.size() == m     ? "trees"
                          : targets.size() == m ? "targets"
                                                : "alignments";
    throw CorpusError("corpus streams differ in length: " + shorter +
                      " has only " + std::to_string(m) + " entries");
  }
  ZippedCorpus z;
  for (std::size_t k = 0; k < n; ++k) {
    if (!trees[k]) {
      ++z.skipped;
      z.issues.push_back("pair " + std::to_string(k) + ": unparsed tree");
      continue;
    }
    AlignedPair p{*trees[k], targets[k], alignments[k]};
    try {
      p.validate();
    } catch (const Error& e) {
      ++z.skipped;
      z.issues.push_back("pair " + std::to_string(k) + ": " + e.what());
      continue;
    }
    z.pairs.push_back(std::move(p));
    z.indices.push_back(k);
  }
  return z;
}

bool AlignedCorpusReader::next(AlignedPair& out) {
  while (true) {
    std::optional<DepGraph> g;
    bool have_tree = conll_.next(g);
    std::string tline, aline;
    bool have_target = bool(std::getline(target_, tline));
    bool have_align = bool(std::getline(align_, aline));
    if (have_align) ++align_line_;
    if (!have_tree && !have_target && !have_align) return false;
    if (!have_tree || !have_target || !have_align) {
      std::string shorter = !have_tree ? "trees" : !have_target ? "targets" : "alignments";
      throw CorpusError("corpus streams differ in length: " + shorter +
                        " ended after " + std::to_string(read_) + " entries");
    }
    const std::size_t k = read_++;
    if (!g) {
      ++skipped_;
      issues_.push_back("pair " + std::to_string(k) + ": " +
                        conll_.issues().back().message);
      continue;
    }
    try {
      AlignedPair p{std::move(*g), split_words(tline),
                    parse_alignment_line(aline, align_line_)};
      p.validate();
      out = std::move(p);
      return true;
    } catch (const Error& e) {
      ++skipped_;
      issues_.push_back("pair " + std::to_string(k) + ": " + e.what());
    }
  }
}

}  // namespace dg2s
