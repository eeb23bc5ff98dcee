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

#ifndef DG2S_OPTIONS_H_
#define DG2S_OPTIONS_H_

#include <map>
#include <vector>

#include "dg2s/graph.h"
#include "dg2s/subsequence.h"
#include "dg2s/table.h"

namespace dg2s {

struct OptionLimits {
  int max_size = 7;
  int max_span = 0;  // 0: unrestricted
};

using TranslationOptions = std::map<Subsequence, std::vector<const TranslationRule*>>;

// Terminal-only rules whose source key equals the key of a connected induced
// subgraph of g. Rules with non-terminals are matched by the decoders.
TranslationOptions match_options(const RuleTable& table, const DepGraph& g,
                                 const OptionLimits& limits = {});

}  // namespace dg2s

#endif  // DG2S_OPTIONS_H_
