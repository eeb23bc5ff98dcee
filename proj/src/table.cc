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

#include "dg2s/table.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include "dg2s/error.h"

namespace dg2s {

void LexicalTable::add_count(const std::string& s, const std::string& t, double c) {
  joint_[{s, t}] += c;
  source_total_[s] += c;
  target_total_[t] += c;
}

void LexicalTable::add(const AlignedPair& pair) {
  std::vector<char> src_aligned(pair.source.size() + 1, 0);
  std::vector<char> tgt_aligned(pair.target.size() + 1, 0);
  for (auto [i, j] : pair.alignment) {
    add_count(pair.source.token(i).word, pair.target[j - 1], 1.0);
    src_aligned[i] = tgt_aligned[j] = 1;
  }
  for (int i = 1; i <= pair.source.size(); ++i)
    if (!src_aligned[i]) add_count(pair.source.token(i).word, kNull, 1.0);
  for (std::size_t j = 1; j <= pair.target.size(); ++j)
    if (!tgt_aligned[j]) add_count(kNull, pair.target[j - 1], 1.0);
}

double LexicalTable::target_given_source(const std::string& t, const std::string& s) const {
  auto it = joint_.find({s, t});
  if (it == joint_.end()) return 0.0;
  return it->second / source_total_.at(s);
}

double LexicalTable::source_given_target(const std::string& s, const std::string& t) const {
  auto it = joint_.find({s, t});
  if (it == joint_.end()) return 0.0;
  return it->second / target_total_.at(t);
}

void LexicalTable::write_target_given_source(std::ostream& out) const {
  for (auto& [k, c] : joint_)
    out << k.first << ' ' << k.second << ' '
        << format_double(c / source_total_.at(k.first)) << '\n';
}

void LexicalTable::write_source_given_target(std::ostream& out) const {
  for (auto& [k, c] : joint_)
    out << k.first << ' ' << k.second << ' '
        << format_double(c / target_total_.at(k.second)) << '\n';
}

namespace {

constexpr double kMinLexProb = 1e-10;

double neg_log(double p) {
  double c = -std::log(std::max(p, kMinLexProb * kMinLexProb));
  return c == 0.0 ? 0.0 : c;  // no -0
}

}  // namespace

std::pair<double, double> lexical_costs(const TranslationRule& r,
                                        const LexicalTable& lex) {
  const auto& nodes = r.source.nodes();
  std::vector<std::vector<int>> src_of(r.target.size()), tgt_of(nodes.size());
  for (auto [i, j] : r.alignment) {
    src_of[j].push_back(i);
    tgt_of[i].push_back(j);
  }
  double fwd = 1.0, bwd = 1.0;
  for (std::size_t j = 0; j < r.target.size(); ++j) {
    if (r.target[j].is_nonterminal()) continue;
    const auto& t = r.target[j].word;
    double p = 0.0;
    if (src_of[j].empty()) {
      p = lex.target_given_source(t, LexicalTable::kNull);
    } else {
      for (int i : src_of[j]) p += lex.target_given_source(t, nodes[i].label);
      p /= double(src_of[j].size());
    }
    fwd *= std::max(p, kMinLexProb);
  }
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].terminal) continue;
    const auto& s = nodes[i].label;
    double p = 0.0;
    if (tgt_of[i].empty()) {
      p = lex.source_given_target(s, LexicalTable::kNull);
    } else {
      for (int j : tgt_of[i]) p += lex.source_given_target(s, r.target[j].word);
      p /= double(tgt_of[i].size());
    }
    bwd *= std::max(p, kMinLexProb);
  }
  return {neg_log(fwd), neg_log(bwd)};
}

void estimate_features(std::vector<TranslationRule*>& rules, bool edge_labels,
                       const LexicalTable& lex) {
  std::unordered_map<std::string, double> by_source, by_target;
  for (auto* r : rules) {
    by_source[r->key(edge_labels)] += r->count;
    by_target[r->target_string()] += r->count;
  }
  for (auto* r : rules) {
    r->costs[kCostTmFwd] = neg_log(r->count / by_source[r->key(edge_labels)]);
    r->costs[kCostTmBwd] = neg_log(r->count / by_target[r->target_string()]);
    auto [f, b] = lexical_costs(*r, lex);
    r->costs[kCostLexFwd] = f;
    r->costs[kCostLexBwd] = b;
  }
}

void RuleTable::note(const TranslationRule& r, bool provenance) {
  int a = r.arity();
  if (a <= 2) max_terminals_[a] = std::max(max_terminals_[a], r.source.terminal_count());
  if (!provenance) return;
  auto p = classify_connectivity(r.source);
  ++stats_.rules;
  stats_.dependency += p.dependency;
  stats_.sequential += p.sequential;
  stats_.overlap += p.dependency && p.sequential;
  stats_.mixed += !p.dependency && !p.sequential;
}

void RuleTable::add(TranslationRule r) {
  std::string id = r.identity(edge_labels_);
  auto it = where_.find(id);
  if (it != where_.end()) {
    entries_[it->second.first][it->second.second].count += r.count;
    return;
  }
  note(r, true);
  if (!edge_labels_) r.source = r.source.unlabeled();
  std::string key = r.key(edge_labels_);
  auto& list = entries_[key];
  where_.emplace(std::move(id), std::make_pair(key, list.size()));
  list.push_back(std::move(r));
}

void RuleTable::add_scored(TranslationRule r) {
  note(r, false);
  if (!edge_labels_) r.source = r.source.unlabeled();
  entries_[r.key(edge_labels_)].push_back(std::move(r));
}

void RuleTable::estimate(const LexicalTable& lex) {
  std::vector<TranslationRule*> all;
  for (auto& [k, list] : entries_)
    for (auto& r : list) all.push_back(&r);
  estimate_features(all, edge_labels_, lex);
}

void RuleTable::prune(int top_n) {
  for (auto& [k, list] : entries_) {
    std::stable_sort(list.begin(), list.end(), [](const auto& a, const auto& b) {
      if (a.costs[kCostTmFwd] != b.costs[kCostTmFwd])
        return a.costs[kCostTmFwd] < b.costs[kCostTmFwd];
      if (a.target_string() != b.target_string())
        return a.target_string() < b.target_string();
      if (a.lhs != b.lhs) return a.lhs < b.lhs;
      return a.alignment < b.alignment;
    });
    if (top_n > 0 && int(list.size()) > top_n) list.resize(top_n);
  }
  where_.clear();
  for (auto& [k, list] : entries_)
    for (std::size_t i = 0; i < list.size(); ++i)
      where_.emplace(list[i].identity(edge_labels_), std::make_pair(k, i));
}

const std::vector<TranslationRule>* RuleTable::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t RuleTable::size() const {
  std::size_t n = 0;
  for (auto& [k, list] : entries_) n += list.size();
  return n;
}

int RuleTable::max_terminals(int arity) const {
  return arity >= 0 && arity <= 2 ? max_terminals_[arity] : 0;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

std::string format_rule(const TranslationRule& r, bool edge_labels) {
  std::string nodes, edges, feats;
  for (const auto& n : r.source.nodes()) {
    if (!nodes.empty()) nodes += ' ';
    nodes += n.token();
  }
  for (const auto& e : r.source.edges()) {
    if (!edges.empty()) edges += ' ';
    edges += std::to_string(e.from) + "-" + std::to_string(e.to);
    if (edge_labels && e.label != EdgeLabel::kNone) {
      edges += ':';
      edges += label_name(e.label);
    }
  }
  for (double c : r.costs) {
    if (!feats.empty()) feats += ' ';
    feats += format_double(c);
  }
  std::string line = r.lhs;
  for (const std::string& f : {nodes, edges, r.target_string(), r.alignment_string(), feats}) {
    line += " |||";
    if (!f.empty()) line += ' ' + f;
  }
  return line;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_index_pair(const std::string& tok, int& a, int& b, std::string* label) {
  std::string body = tok;
  if (label) {
    auto colon = tok.find(':');
    if (colon != std::string::npos) {
      *label = tok.substr(colon + 1);
      body = tok.substr(0, colon);
    } else {
      label->clear();
    }
  }
  auto dash = body.find('-');
  if (dash == std::string::npos) return false;
  auto pa = std::from_chars(body.data(), body.data() + dash, a);
  auto pb = std::from_chars(body.data() + dash + 1, body.data() + body.size(), b);
  return pa.ec == std::errc() && pa.ptr == body.data() + dash &&
         pb.ec == std::errc() && pb.ptr == body.data() + body.size() && a >= 0 && b >= 0;
}

// "[sym,k]" -> (sym, k); false for a plain word.
bool parse_nonterminal(const std::string& tok, std::string& sym, int& link) {
  if (tok.size() < 5 || tok.front() != '[' || tok.back() != ']') return false;
  auto comma = tok.rfind(',');
  if (comma == std::string::npos || comma < 2) return false;
  sym = tok.substr(1, comma - 1);
  auto r = std::from_chars(tok.data() + comma + 1, tok.data() + tok.size() - 1, link);
  return r.ec == std::errc() && r.ptr == tok.data() + tok.size() - 1 && link > 0;
}

}  // namespace

TranslationRule parse_rule(const std::string& line, bool edge_labels, int ln) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    auto bar = line.find("|||", start);
    fields.push_back(trim(line.substr(start, bar == std::string::npos ? bar : bar - start)));
    if (bar == std::string::npos) break;
    start = bar + 3;
  }
  if (fields.size() != 6)
    throw TableError("expected 6 fields, found " + std::to_string(fields.size()), ln);

  TranslationRule r;
  r.lhs = fields[0];
  if (r.lhs.empty() || r.lhs.find(' ') != std::string::npos)
    throw TableError("bad left-hand side '" + r.lhs + "'", ln);

  std::vector<FragmentNode> nodes;
  std::set<int> src_links;
  for (const auto& tok : split_words(fields[1])) {
    FragmentNode n;
    std::string sym;
    int link = 0;
    if (parse_nonterminal(tok, sym, link)) {
      n.terminal = false;
      n.label = sym;
      n.link = link;
      if (!src_links.insert(link).second)
        throw TableError("duplicate source link " + std::to_string(link), ln);
    } else {
      n.label = tok;
    }
    nodes.push_back(std::move(n));
  }
  if (nodes.empty()) throw TableError("empty source side", ln);

  std::vector<FragmentEdge> edges;
  for (const auto& tok : split_words(fields[2])) {
    int a = 0, b = 0;
    std::string lbl;
    if (!parse_index_pair(tok, a, b, &lbl) || a >= int(nodes.size()) || b >= int(nodes.size()) || a == b)
      throw TableError("bad edge '" + tok + "'", ln);
    EdgeLabel l = EdgeLabel::kNone;
    if (!lbl.empty()) {
      if (!edge_labels) throw TableError("edge label on '" + tok + "' but labels are off", ln);
      auto pl = parse_label(lbl);
      if (!pl) throw TableError("unknown edge label '" + lbl + "'", ln);
      l = *pl;
    }
    edges.push_back({a, b, l});
  }
  r.source = GraphFragment(std::move(nodes), std::move(edges));

  std::set<int> tgt_links;
  for (const auto& tok : split_words(fields[3])) {
    std::string sym;
    int link = 0;
    if (parse_nonterminal(tok, sym, link)) {
      if (!tgt_links.insert(link).second)
        throw TableError("duplicate target link " + std::to_string(link), ln);
      r.target.push_back({sym, link});
    } else {
      r.target.push_back({tok, 0});
    }
  }
  if (src_links != tgt_links) throw TableError("source and target links differ", ln);

  for (const auto& tok : split_words(fields[4])) {
    int a = 0, b = 0;
    if (!parse_index_pair(tok, a, b, nullptr) || a >= int(r.source.size()) ||
        b >= int(r.target.size()) || !r.source.nodes()[a].terminal ||
        r.target[b].is_nonterminal())
      throw TableError("bad alignment link '" + tok + "'", ln);
    r.alignment.emplace_back(a, b);
  }

  auto feats = split_words(fields[5]);
  if (feats.size() != 4) throw TableError("expected 4 feature values", ln);
  for (int k = 0; k < 4; ++k) {
    const auto& f = feats[k];
    auto res = std::from_chars(f.data(), f.data() + f.size(), r.costs[k]);
    if (res.ec != std::errc() || res.ptr != f.data() + f.size())
      throw TableError("bad feature value '" + f + "'", ln);
  }
  return r;
}

void write_table(const RuleTable& table, std::ostream& out) {
  for (const auto& [key, list] : table.entries())
    for (const auto& r : list) out << format_rule(r, table.edge_labels()) << '\n';
}

RuleTable read_table(std::istream& in, bool edge_labels) {
  RuleTable t(edge_labels);
  std::string line;
  int ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (trim(line).empty()) continue;
    t.add_scored(parse_rule(line, edge_labels, ln));
  }
  return t;
}

RuleTable read_table_file(const std::string& path, bool edge_labels) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open rule table '" + path + "'");
  return read_table(in, edge_labels);
}

}  // namespace dg2s
