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

#include "dg2s/subsequence.h"

#include <algorithm>
#include <bit>

#include "dg2s/error.h"

namespace dg2s {

namespace {

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace

Subsequence::Subsequence(std::vector<int> positions) : pos_(std::move(positions)) {
  std::sort(pos_.begin(), pos_.end());
  for (std::size_t i = 0; i < pos_.size(); ++i) {
    if (pos_[i] < 1) throw BoundsError("subsequence position must be >= 1");
    if (i > 0 && pos_[i] == pos_[i - 1])
      throw DisjointnessError("duplicate position " + std::to_string(pos_[i]));
  }
}

Subsequence Subsequence::range(int begin, int end) {
  std::vector<int> p;
  for (int i = begin; i <= end; ++i) p.push_back(i);
  return Subsequence(std::move(p));
}

int Subsequence::begin() const {
  if (pos_.empty()) throw EmptySubsequenceError("empty subsequence has no begin");
  return pos_.front();
}

int Subsequence::end() const {
  if (pos_.empty()) throw EmptySubsequenceError("empty subsequence has no end");
  return pos_.back();
}

std::vector<Run> Subsequence::runs() const {
  std::vector<Run> out;
  for (int p : pos_) {
    if (!out.empty() && out.back().end + 1 == p)
      out.back().end = p;
    else
      out.push_back({p, p});
  }
  return out;
}

bool Subsequence::contains(int p) const {
  return std::binary_search(pos_.begin(), pos_.end(), p);
}

bool Subsequence::intersects(const Subsequence& o) const {
  auto a = pos_.begin(), b = o.pos_.begin();
  while (a != pos_.end() && b != o.pos_.end()) {
    if (*a == *b) return true;
    if (*a < *b)
      ++a;
    else
      ++b;
  }
  return false;
}

bool Subsequence::is_subset_of(const Subsequence& o) const {
  return std::includes(o.pos_.begin(), o.pos_.end(), pos_.begin(), pos_.end());
}

std::string Subsequence::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < pos_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(pos_[i]);
  }
  return s + "}";
}

Subsequence join(const Subsequence& a, const Subsequence& b) {
  if (a.intersects(b))
    throw DisjointnessError("join of overlapping subsequences " + a.to_string() +
                            " and " + b.to_string());
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin_it(), a.end_it(), b.begin_it(), b.end_it(),
             std::back_inserter(out));
  return Subsequence(std::move(out));
}

Subsequence difference(const Subsequence& a, const Subsequence& b) {
  std::vector<int> out;
  std::set_difference(a.begin_it(), a.end_it(), b.begin_it(), b.end_it(),
                      std::back_inserter(out));
  return Subsequence(std::move(out));
}

int nt_position(const Subsequence& s) {
  if (s.empty()) throw EmptySubsequenceError("nt_position of empty subsequence");
  return s.begin();
}

std::size_t SubsequenceHash::operator()(const Subsequence& s) const {
  std::size_t h = s.size();
  for (int p : s.positions()) hash_combine(h, std::size_t(p));
  return h;
}

Coverage::Coverage(int n, const Subsequence& s) : Coverage(n) { set_all(s); }

bool Coverage::intersects(const Coverage& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & o.words_[i]) return true;
  return false;
}

bool Coverage::intersects(const Subsequence& s) const {
  for (int p : s.positions())
    if (test(p)) return true;
  return false;
}

Coverage& Coverage::operator|=(const Coverage& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
  return *this;
}

int Coverage::count() const {
  int c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

int Coverage::first_unset() const {
  for (int p = 1; p <= n_; ++p)
    if (!test(p)) return p;
  return n_ + 1;
}

Subsequence Coverage::to_subsequence() const {
  std::vector<int> p;
  for (int i = 1; i <= n_; ++i)
    if (test(i)) p.push_back(i);
  return Subsequence(std::move(p));
}

std::size_t Coverage::hash() const {
  std::size_t h = std::size_t(n_);
  for (uint64_t w : words_) hash_combine(h, std::size_t(w));
  return h;
}

}  // namespace dg2s
