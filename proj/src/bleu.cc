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

#include "dg2s/bleu.h"

#include <cmath>
#include <cstdlib>
#include <map>

#include "dg2s/corpus.h"
#include "dg2s/error.h"

namespace dg2s {

namespace {

using Counts = std::map<std::vector<std::string>, long>;

Counts ngrams(const std::vector<std::string>& w, int n) {
  Counts c;
  for (std::size_t i = 0; i + n <= w.size(); ++i)
    ++c[std::vector<std::string>(w.begin() + i, w.begin() + i + n)];
  return c;
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& o) {
  for (int i = 0; i < 4; ++i) {
    matches[i] += o.matches[i];
    totals[i] += o.totals[i];
  }
  hyp_length += o.hyp_length;
  ref_length += o.ref_length;
  return *this;
}

BleuStats sentence_stats(const std::vector<std::string>& hyp,
                         const std::vector<std::vector<std::string>>& refs) {
  if (refs.empty()) throw ArgumentError("at least one reference is required");
  BleuStats s;
  s.hyp_length = long(hyp.size());
  long best = -1;
  for (const auto& r : refs) {
    long len = long(r.size());
    long d = std::labs(len - s.hyp_length);
    if (best < 0 || d < std::labs(best - s.hyp_length) ||
        (d == std::labs(best - s.hyp_length) && len < best))
      best = len;
  }
  s.ref_length = best;
  for (int n = 1; n <= 4; ++n) {
    Counts h = ngrams(hyp, n);
    Counts maxref;
    for (const auto& r : refs)
      for (const auto& [g, c] : ngrams(r, n)) maxref[g] = std::max(maxref[g], c);
    for (const auto& [g, c] : h) {
      auto it = maxref.find(g);
      if (it != maxref.end()) s.matches[n - 1] += std::min(c, it->second);
    }
    s.totals[n - 1] = std::max(0L, s.hyp_length - n + 1);
  }
  return s;
}

double bleu(const BleuStats& s, bool smooth) {
  if (s.hyp_length == 0) return 0.0;
  double log_p = 0.0;
  for (int n = 0; n < 4; ++n) {
    double m = double(s.matches[n]), t = double(s.totals[n]);
    if (smooth && n > 0) {
      m += 1;
      t += 1;
    }
    if (m <= 0 || t <= 0) return 0.0;
    log_p += std::log(m / t) / 4.0;
  }
  double bp = s.hyp_length <= s.ref_length
                  ? std::exp(1.0 - double(s.ref_length) / double(s.hyp_length))
                  : 1.0;
  return 100.0 * bp * std::exp(log_p);
}

double corpus_bleu(const std::vector<std::string>& hyps,
                   const std::vector<std::vector<std::string>>& refs, bool smooth) {
  if (refs.empty()) throw ArgumentError("at least one reference set is required");
  for (const auto& r : refs)
    if (r.size() != hyps.size())
      throw ArgumentError("reference set has " + std::to_string(r.size()) +
                          " sentences, hypotheses have " + std::to_string(hyps.size()));
  BleuStats total;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    std::vector<std::vector<std::string>> rs;
    for (const auto& r : refs) rs.push_back(split_words(r[i]));
    total += sentence_stats(split_words(hyps[i]), rs);
  }
  return bleu(total, smooth);
}

}  // namespace dg2s
