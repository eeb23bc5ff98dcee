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

#include "dg2s/options.h"

#include <algorithm>

#include "dg2s/fragment.h"

namespace dg2s {

TranslationOptions match_options(const RuleTable& table, const DepGraph& g,
                                 const OptionLimits& limits) {
  TranslationOptions out;
  int max_size = std::min(limits.max_size, table.max_terminals(0));
  if (max_size < 1) return out;
  for (const auto& s : enumerate_connected_subsequences(g, max_size, limits.max_span)) {
    auto frag = induced_subgraph(g, s);
    const auto* rules = table.find(canonical_key(*frag, table.edge_labels()));
    if (!rules) continue;
    std::vector<const TranslationRule*> hits;
    for (const auto& r : *rules)
      if (r.arity() == 0) hits.push_back(&r);
    if (!hits.empty()) out.emplace(s, std::move(hits));
  }
  return out;
}

}  // namespace dg2s
