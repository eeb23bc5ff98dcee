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

// Second BLEU-4 implementation: n-grams as joined strings, corpus totals
// accumulated per order, then the closed-form score.

#ifndef DG2S_TESTS_ORACLE_REF_BLEU_H_
#define DG2S_TESTS_ORACLE_REF_BLEU_H_

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace dg2s::oracle {

inline std::vector<std::string> ref_tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

inline std::unordered_map<std::string, int> ref_ngrams(const std::vector<std::string>& w, int n) {
  std::unordered_map<std::string, int> c;
  for (int i = 0; i + n <= int(w.size()); ++i) {
    std::string k;
    for (int j = i; j < i + n; ++j) k += w[j] + '\x01';
    ++c[k];
  }
  return c;
}

// refs[r][i]: reference r of sentence i.
inline double ref_bleu(const std::vector<std::string>& hyps,
                       const std::vector<std::vector<std::string>>& refs, bool smooth) {
  double match[5] = {0}, total[5] = {0};
  double c = 0, r = 0;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    auto h = ref_tokens(hyps[i]);
    c += double(h.size());
    int best_len = -1, best_diff = 1 << 30;
    for (const auto& set : refs) {
      int len = int(ref_tokens(set[i]).size());
      int diff = std::abs(len - int(h.size()));
      if (diff < best_diff || (diff == best_diff && len < best_len)) {
        best_diff = diff;
        best_len = len;
      }
    }
    r += best_len;
    for (int n = 1; n <= 4; ++n) {
      auto hc = ref_ngrams(h, n);
      for (const auto& [g, k] : hc) {
        int mx = 0;
        for (const auto& set : refs) {
          auto rc = ref_ngrams(ref_tokens(set[i]), n);
          auto it = rc.find(g);
          if (it != rc.end() && it->second > mx) mx = it->second;
        }
        match[n] += std::min(k, mx);
        total[n] += k;
      }
    }
  }
  if (c == 0) return 0.0;
  double sum = 0;
  for (int n = 1; n <= 4; ++n) {
    double m = match[n] + (smooth && n > 1 ? 1 : 0);
    double t = total[n] + (smooth && n > 1 ? 1 : 0);
    if (m == 0 || t == 0) return 0.0;
    sum += std::log(m) - std::log(t);
  }
  double bp = c > r ? 1.0 : std::exp(1 - r / c);
  return 100 * bp * std::exp(sum / 4);
}

}  // namespace dg2s::oracle

#endif  // DG2S_TESTS_ORACLE_REF_BLEU_H_
