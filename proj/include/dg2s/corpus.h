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

#ifndef DG2S_CORPUS_H_
#define DG2S_CORPUS_H_

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dg2s/graph.h"

namespace dg2s {

// (source position, target position), both 1-based.
using AlignmentLink = std::pair<int, int>;
using Alignment = std::vector<AlignmentLink>;

struct AlignedPair {
  DepGraph source;
  std::vector<std::string> target;
  Alignment alignment;  // sorted, unique

  // Throws BoundsError / DisjointnessError when the invariants fail.
  void validate() const;
};

struct ParseIssue {
  std::size_t sentence;  // 0-based sentence index
  int line;
  std::string message;
};

// Streams CoNLL-X blocks. Malformed sentences yield nullopt and an issue;
// reading continues with the next block.
class ConllReader {
 public:
  explicit ConllReader(std::istream& in) : in_(in) {}
  // False at end of input.
  bool next(std::optional<DepGraph>& out);
  const std::vector<ParseIssue>& issues() const { return issues_; }
  std::size_t sentences() const { return sentence_; }

 private:
  std::istream& in_;
  int line_ = 0;
  std::size_t sentence_ = 0;
  std::vector<ParseIssue> issues_;
};

struct ConllCorpus {
  std::vector<std::optional<DepGraph>> sentences;
  std::vector<ParseIssue> issues;
  std::size_t skipped() const { return issues.size(); }
};

ConllCorpus read_conll(std::istream& in);
// Writes ID FORM _ _ POS _ HEAD _ _ _ using dependency heads; sentences end
// with a blank line.
void write_conll(std::ostream& out, const DepGraph& tree);
void write_conll(std::ostream& out, const std::vector<DepGraph>& trees);

// Pharaoh "i-j" (0-based) per line, returned 1-based, sorted and deduplicated.
// Malformed tokens throw ParseError naming line and token.
Alignment parse_alignment_line(const std::string& line, int line_no = 0);
std::vector<Alignment> read_alignments(std::istream& in);
std::string format_alignment(const Alignment& a);  // back to 0-based
void write_alignments(std::ostream& out, const std::vector<Alignment>& as);

std::vector<std::string> split_words(const std::string& line);
std::vector<std::vector<std::string>> read_targets(std::istream& in);

struct ZippedCorpus {
  std::vector<AlignedPair> pairs;
  std::vector<std::size_t> indices;  // input index of each pair
  std::size_t skipped = 0;
  std::vector<std::string> issues;
};

// Throws CorpusError on a length mismatch; pairs with a missing tree or an
// out-of-bounds link are skipped and counted.
ZippedCorpus zip_corpus(const std::vector<std::optional<DepGraph>>& trees,
                        const std::vector<std::vector<std::string>>& targets,
                        const std::vector<Alignment>& alignments);

// Streaming variant over three files.
class AlignedCorpusReader {
 public:
  AlignedCorpusReader(std::istream& conll, std::istream& target,
                      std::istream& align)
      : conll_(conll), target_(target), align_(align) {}
  // Next valid pair; false at end. Throws CorpusError when the streams end
  // at different lengths.
  bool next(AlignedPair& out);
  std::size_t read() const { return read_; }
  std::size_t skipped() const { return skipped_; }
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  ConllReader conll_;
  std::istream& target_;
  std::istream& align_;
  int align_line_ = 0;
  std::size_t read_ = 0;
  std::size_t skipped_ = 0;
  std::vector<std::string> issues_;
};

}  // namespace dg2s

#endif  // DG2S_CORPUS_H_
