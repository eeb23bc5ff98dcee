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

// String-keyed ARPA reader and the textbook recursive backoff definition.

#ifndef DG2S_TESTS_ORACLE_REF_LM_H_
#define DG2S_TESTS_ORACLE_REF_LM_H_

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace dg2s::oracle {

class RefLm {
 public:
  explicit RefLm(const std::string& arpa, double floor = -7.0) : floor_(floor) {
    std::istringstream in(arpa);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line[0] == '\\') {
        if (line.find("-grams:") != std::string::npos) n = line[1] - '0';
        continue;
      }
      if (n == 0) continue;
      std::istringstream f(line);
      double p, bo = 0.0;
      f >> p;
      std::vector<std::string> g(n);
      for (auto& w : g) f >> w;
      f >> bo;
      table_[g] = {p, bo};
      if (n > order_) order_ = n;
      if (n == 1) vocab_.insert(g[0]);
    }
  }

  int order() const { return order_; }

  double prob(std::vector<std::string> history, std::string w) const {
    if (!vocab_.count(w)) {
      if (!vocab_.count("<unk>")) return floor_;
      w = "<unk>";
    }
    for (auto& h : history)
      if (!vocab_.count(h) && vocab_.count("<unk>")) h = "<unk>";
    if (int(history.size()) > order_ - 1)
      history.erase(history.begin(), history.end() - (order_ - 1));
    return rec(history, w);
  }

  // log10 of <s> words </s>.
  double sentence(const std::vector<std::string>& words) const {
    std::vector<std::string> h{"<s>"};
    double s = 0.0;
    for (const auto& w : words) {
      s += prob(h, w);
      h.push_back(w);
    }
    return s + prob(h, "</s>");
  }

 private:
  double rec(const std::vector<std::string>& h, const std::string& w) const {
    std::vector<std::string> g = h;
    g.push_back(w);
    if (auto it = table_.find(g); it != table_.end()) return it->second.first;
    if (h.empty()) return floor_;
    double bo = 0.0;
    if (auto it = table_.find(h); it != table_.end()) bo = it->second.second;
    return bo + rec(std::vector<std::string>(h.begin() + 1, h.end()), w);
  }

  std::map<std::vector<std::string>, std::pair<double, double>> table_;
  std::set<std::string> vocab_;
  int order_ = 0;
  double floor_;
};

}  // namespace dg2s::oracle

#endif  // DG2S_TESTS_ORACLE_REF_LM_H_
