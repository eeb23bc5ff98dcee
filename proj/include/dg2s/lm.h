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

#ifndef DG2S_LM_H_
#define DG2S_LM_H_

#include <cstddef>
#include <istream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dg2s {

using WordId = int;

// Up to order-1 most recent word ids.
struct LmState {
  std::vector<WordId> context;
  bool operator==(const LmState&) const = default;
  std::size_t hash() const;
};

// Backoff n-gram model loaded from ARPA text. Scores are log10.
class LanguageModel {
 public:
  static constexpr WordId kUnknown = -1;
  static constexpr double kDefaultOovFloor = -7.0;

  // Throws FormatError on malformed input or count mismatches.
  static LanguageModel load_arpa(std::istream& in);
  static LanguageModel load_arpa_file(const std::string& path);

  int order() const { return order_; }
  std::size_t ngram_count(int n) const { return tables_[n - 1].size(); }

  // Id of a word; OOV words map to <unk> when present, else kUnknown.
  WordId id(const std::string& word) const;
  bool known(const std::string& word) const { return vocab_.count(word) > 0; }
  WordId bos() const { return bos_; }
  WordId eos() const { return eos_; }

  void set_oov_floor(double f) { oov_floor_ = f; }
  double oov_floor() const { return oov_floor_; }

  LmState begin_state() const { return LmState{{bos_}}; }
  LmState null_state() const { return LmState{}; }

  // log10 p(word | state) and the next state.
  std::pair<double, LmState> score_word(const LmState& state, WordId word) const;
  std::pair<double, LmState> score_word(const LmState& state,
                                        const std::string& word) const {
    return score_word(state, id(word));
  }
  // Probability given an explicit history (oldest first); history longer
  // than order-1 is truncated.
  double prob(const std::vector<WordId>& history, WordId word) const;

  // Fold of score_word starting from <s>, optionally adding </s>.
  double score_sequence(const std::vector<std::string>& words, bool add_end) const;

 private:
  struct Entry {
    double prob = 0.0;
    double backoff = 0.0;
  };
  struct KeyHash {
    std::size_t operator()(const std::vector<WordId>& k) const;
  };
  using Table = std::unordered_map<std::vector<WordId>, Entry, KeyHash>;

  const Entry* find(const std::vector<WordId>& ngram) const;

  int order_ = 0;
  std::vector<Table> tables_;
  std::unordered_map<std::string, WordId> vocab_;
  WordId bos_ = kUnknown, eos_ = kUnknown, unk_ = kUnknown;
  double oov_floor_ = kDefaultOovFloor;
};

}  // namespace dg2s

template <>
struct std::hash<dg2s::LmState> {
  std::size_t operator()(const dg2s::LmState& s) const { return s.hash(); }
};

#endif  // DG2S_LM_H_
