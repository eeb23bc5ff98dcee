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

#ifndef DG2S_BLEU_H_
#define DG2S_BLEU_H_

#include <array>
#include <string>
#include <vector>

namespace dg2s {

struct BleuStats {
  std::array<long, 4> matches{};
  std::array<long, 4> totals{};
  long hyp_length = 0;
  long ref_length = 0;  // closest reference length, summed
  BleuStats& operator+=(const BleuStats& o);
};

// Clipped n-gram counts (n = 1..4) of one hypothesis against its references.
// The reference length is the one closest to the hypothesis, shorter on ties.
BleuStats sentence_stats(const std::vector<std::string>& hyp,
                         const std::vector<std::vector<std::string>>& refs);

// Corpus BLEU-4 in [0, 100]. With `smooth`, orders 2..4 add one to both
// match and total counts.
double bleu(const BleuStats& s, bool smooth = false);

// refs[r][i] is reference r of sentence i. ArgumentError on size mismatch.
double corpus_bleu(const std::vector<std::string>& hyps,
                   const std::vector<std::vector<std::string>>& refs, bool smooth = false);

}  // namespace dg2s

#endif  // DG2S_BLEU_H_
