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

#ifndef DG2S_TABLE_H_
#define DG2S_TABLE_H_

#include <array>
#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dg2s/corpus.h"
#include "dg2s/extract.h"
#include "dg2s/rule.h"

namespace dg2s {

// Word translation probabilities w(t|s) and w(s|t) from aligned corpus
// counts. Unaligned words pair with NULL.
class LexicalTable {
 public:
  static inline const std::string kNull = "NULL";

  void add(const AlignedPair& pair);
  void add_count(const std::string& s, const std::string& t, double c);
  // w(t|s); 0 if unseen.
  double target_given_source(const std::string& t, const std::string& s) const;
  // w(s|t); 0 if unseen.
  double source_given_target(const std::string& s, const std::string& t) const;

  // "s t prob" lines, sorted.
  void write_target_given_source(std::ostream& out) const;
  void write_source_given_target(std::ostream& out) const;

 private:
  std::map<std::pair<std::string, std::string>, double> joint_;
  std::unordered_map<std::string, double> source_total_;
  std::unordered_map<std::string, double> target_total_;
};

// -ln lex(t|s) and -ln lex(s|t) of a rule's terminals.
std::pair<double, double> lexical_costs(const TranslationRule& r,
                                        const LexicalTable& lex);

struct ProvenanceStats {
  std::size_t rules = 0;
  std::size_t dependency = 0;  // connected on dependency edges alone
  std::size_t sequential = 0;  // connected on sequential edges alone
  std::size_t overlap = 0;     // both of the above
  std::size_t mixed = 0;       // needs both kinds of edge
};

// Rules grouped by canonical source key.
class RuleTable {
 public:
  explicit RuleTable(bool edge_labels = false) : edge_labels_(edge_labels) {}

  bool edge_labels() const { return edge_labels_; }

  // Merges with an existing rule of the same identity by summing counts.
  // Edge labels are dropped when the table does not use them.
  void add(TranslationRule r);
  void add_all(std::vector<TranslationRule> rules) {
    for (auto& r : rules) add(std::move(r));
  }
  // Appends a rule with its costs as given (no merging).
  void add_scored(TranslationRule r);

  // Relative-frequency and lexical costs from the accumulated counts.
  void estimate(const LexicalTable& lex);
  // Keeps the top_n cheapest rules (by p(t|s)) per key; sorts every list.
  void prune(int top_n);

  const std::vector<TranslationRule>* find(const std::string& key) const;
  const std::map<std::string, std::vector<TranslationRule>>& entries() const {
    return entries_;
  }
  std::size_t size() const;
  bool empty() const { return entries_.empty(); }
  // Largest terminal count among rules with the given number of NTs.
  int max_terminals(int arity) const;
  const ProvenanceStats& provenance() const { return stats_; }

 private:
  void note(const TranslationRule& r, bool provenance);

  bool edge_labels_;
  std::map<std::string, std::vector<TranslationRule>> entries_;
  std::unordered_map<std::string, std::pair<std::string, std::size_t>> where_;
  std::array<int, 3> max_terminals_{{0, 0, 0}};
  ProvenanceStats stats_;
};

// Sets costs on rules with counts: p(t|s) = c(r)/c(source key),
// p(s|t) = c(r)/c(target string), lexical weights from `lex`.
void estimate_features(std::vector<TranslationRule*>& rules, bool edge_labels,
                       const LexicalTable& lex);

// LHS ||| SRC_NODES ||| SRC_EDGES ||| TGT ||| ALIGN ||| FEATURES
std::string format_rule(const TranslationRule& r, bool edge_labels);
TranslationRule parse_rule(const std::string& line, bool edge_labels, int line_no = 0);
void write_table(const RuleTable& table, std::ostream& out);
RuleTable read_table(std::istream& in, bool edge_labels = false);
RuleTable read_table_file(const std::string& path, bool edge_labels = false);

// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace dg2s

#endif  // DG2S_TABLE_H_
