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

#ifndef DG2S_SUBSEQUENCE_H_
#define DG2S_SUBSEQUENCE_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

namespace dg2s {

// Maximal continuous interval [begin, end] of source positions.
struct Run {
  int begin;
  int end;
  int length() const { return end - begin + 1; }
  bool operator==(const Run&) const = default;
};

// Ordered set of 1-based source positions.
class Subsequence {
 public:
  Subsequence() = default;
  // Positions may come in any order; duplicates and non-positive values are
  // rejected.
  explicit Subsequence(std::vector<int> positions);
  Subsequence(std::initializer_list<int> positions)
      : Subsequence(std::vector<int>(positions)) {}

  static Subsequence range(int begin, int end);

  const std::vector<int>& positions() const { return pos_; }
  std::size_t size() const { return pos_.size(); }
  bool empty() const { return pos_.empty(); }
  int operator[](std::size_t i) const { return pos_[i]; }
  std::vector<int>::const_iterator begin_it() const { return pos_.begin(); }
  std::vector<int>::const_iterator end_it() const { return pos_.end(); }

  // s^b and s^e. Throw EmptySubsequenceError on an empty subsequence.
  int begin() const;
  int end() const;
  int span() const { return empty() ? 0 : end() - begin() + 1; }

  std::vector<Run> runs() const;
  bool is_continuous() const { return empty() || span() == int(size()); }

  bool contains(int p) const;
  bool intersects(const Subsequence& o) const;
  bool is_subset_of(const Subsequence& o) const;

  std::string to_string() const;  // "{1,2,5}"

  auto operator<=>(const Subsequence&) const = default;
  bool operator==(const Subsequence&) const = default;

 private:
  std::vector<int> pos_;
};

// Order-preserving union of disjoint subsequences; throws DisjointnessError.
Subsequence join(const Subsequence& a, const Subsequence& b);
Subsequence difference(const Subsequence& a, const Subsequence& b);
// Position at which a collapsed non-terminal is ordered.
int nt_position(const Subsequence& s);

struct SubsequenceHash {
  std::size_t operator()(const Subsequence& s) const;
};

// Fixed-capacity bit set over positions 1..n used for coverage tests in the
// decoders.
class Coverage {
 public:
  Coverage() = default;
  explicit Coverage(int n) : n_(n), words_((n + 64) / 64, 0) {}
  Coverage(int n, const Subsequence& s);

  int capacity() const { return n_; }
  void set(int p) { words_[p >> 6] |= (uint64_t{1} << (p & 63)); }
  void reset(int p) { words_[p >> 6] &= ~(uint64_t{1} << (p & 63)); }
  bool test(int p) const { return (words_[p >> 6] >> (p & 63)) & 1; }
  void set_all(const Subsequence& s) {
    for (int p : s.positions()) set(p);
  }
  bool intersects(const Coverage& o) const;
  bool intersects(const Subsequence& s) const;
  Coverage& operator|=(const Coverage& o);
  int count() const;
  // Lowest position in 1..n not set, or n + 1.
  int first_unset() const;
  Subsequence to_subsequence() const;

  bool operator==(const Coverage&) const = default;
  std::size_t hash() const;

 private:
  int n_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace dg2s

template <>
struct std::hash<dg2s::Subsequence> {
  std::size_t operator()(const dg2s::Subsequence& s) const {
    return dg2s::SubsequenceHash()(s);
  }
};

template <>
struct std::hash<dg2s::Coverage> {
  std::size_t operator()(const dg2s::Coverage& c) const { return c.hash(); }
};

#endif  // DG2S_SUBSEQUENCE_H_
