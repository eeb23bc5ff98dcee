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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "dg2s/bleu.h"
#include "dg2s/cli.h"
#include "dg2s/error.h"

namespace py = pybind11;
using namespace dg2s;

namespace {

DepGraph from_heads(const std::vector<std::string>& words, const std::vector<std::string>& pos,
                    const std::vector<int>& heads) {
  if (words.size() != pos.size() || words.size() != heads.size())
    throw ArgumentError("words, pos and heads must have the same length");
  std::vector<Token> tokens;
  for (std::size_t i = 0; i < words.size(); ++i) tokens.push_back({words[i], pos[i]});
  return DepGraph::from_heads(std::move(tokens), heads);
}

std::vector<std::optional<DepGraph>> read_conll_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return read_conll(in).sentences;
}

RunConfig make_config(const std::string& kind, const std::string& decoder, int beam,
                      const std::map<std::string, double>& weights, bool edge_labels) {
  RunConfig cfg;
  cfg.kind = parse_graph_kind(kind);
  cfg.decoder = parse_decoder_kind(decoder);
  cfg.edge_labels = edge_labels;
  cfg.seg.beam_width = cfg.snrg.beam_width = beam;
  for (const auto& [name, v] : weights) {
    auto f = feature_by_name(name);
    if (!f) throw ConfigError("unknown feature '" + name + "'");
    cfg.weights.set(*f, v);
  }
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_dg2s, m) {
  m.doc() = "Graph-based statistical translation toolkit";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<MalformedTreeError>(m, "MalformedTreeError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NoDerivationError>(m, "NoDerivationError", base.ptr());

  py::class_<DepGraph>(m, "DepGraph")
      .def_static("from_heads", &from_heads, py::arg("words"), py::arg("pos"), py::arg("heads"))
      .def("__len__", &DepGraph::size)
      .def("words",
           [](const DepGraph& g) {
             std::vector<std::string> w;
             for (const auto& t : g.tokens()) w.push_back(t.word);
             return w;
           })
      .def("edges",
           [](const DepGraph& g) {
             std::vector<std::tuple<int, int, std::string>> out;
             for (const auto& e : g.edges()) out.emplace_back(e.head, e.dep, label_name(e.label));
             return out;
           })
      .def("dump", [](const DepGraph& g, bool dot) { return dump_graph(g, dot); },
           py::arg("dot") = false)
      .def("__eq__", [](const DepGraph& a, const DepGraph& b) { return a == b; });

  m.def("build_graph",
        [](const DepGraph& tree, const std::string& kind) {
          return build_graph(tree, parse_graph_kind(kind));
        },
        py::arg("tree"), py::arg("kind") = "dbg");
  m.def("read_conll", &read_conll_file, py::arg("path"));

  m.def("extract_rules",
        [](const DepGraph& graph, const std::vector<std::string>& target,
           const std::vector<std::pair<int, int>>& alignment, const std::string& mode,
           int max_length, int min_gap_size, bool edge_labels) {
          AlignedPair p{graph, target, {}};
          for (auto [s, t] : alignment) p.alignment.push_back({s + 1, t + 1});
          std::sort(p.alignment.begin(), p.alignment.end());
          p.alignment.erase(std::unique(p.alignment.begin(), p.alignment.end()),
                            p.alignment.end());
          p.validate();
          ExtractLimits lim;
          lim.min_gap_size = min_gap_size;
          auto rules = parse_extract_mode(mode) == ExtractMode::kSpp
                           ? extract_spp_rules(p, max_length)
                           : extract_snrg(p, lim);
          std::vector<std::string> out;
          for (const auto& r : rules) out.push_back(format_rule(r, edge_labels));
          return out;
        },
        py::arg("graph"), py::arg("target"), py::arg("alignment"), py::arg("mode") = "spp",
        py::arg("max_length") = 7, py::arg("min_gap_size") = 2, py::arg("edge_labels") = false,
        "Rules of one pair; alignment links are 0-based (source, target).");

  py::class_<RuleTable>(m, "RuleTable")
      .def_static("load", &read_table_file, py::arg("path"), py::arg("edge_labels") = false)
      .def_static("parse",
                  [](const std::string& text, bool edge_labels) {
                    std::istringstream in(text);
                    return read_table(in, edge_labels);
                  },
                  py::arg("text"), py::arg("edge_labels") = false)
      .def("__len__", &RuleTable::size)
      .def("dump", [](const RuleTable& t) {
        std::ostringstream out;
        write_table(t, out);
        return out.str();
      });

  py::class_<LanguageModel>(m, "LanguageModel")
      .def_static("load", &LanguageModel::load_arpa_file, py::arg("path"))
      .def_static("parse",
                  [](const std::string& text) {
                    std::istringstream in(text);
                    return LanguageModel::load_arpa(in);
                  },
                  py::arg("text"))
      .def_property_readonly("order", &LanguageModel::order)
      .def("score", &LanguageModel::score_sequence, py::arg("words"), py::arg("add_end") = true);

  m.def("translate",
        [](const DepGraph& graph, const RuleTable& table, const LanguageModel& lm,
           const std::string& decoder, int beam, const std::map<std::string, double>& weights,
           int kbest) {
          RunConfig cfg = make_config("tree", decoder, beam, weights, table.edge_labels());
          TranslateResult r;
          {
            py::gil_scoped_release release;
            r = translate_one(graph, table, lm, cfg, kbest);
          }
          if (!r.ok()) throw NoDerivationError(r.error, {});
          std::vector<std::pair<std::string, double>> out;
          for (const auto& d : r.kbest) out.emplace_back(d.translation(), d.score);
          return out;
        },
        py::arg("graph"), py::arg("table"), py::arg("lm"), py::arg("decoder") = "seg",
        py::arg("beam") = 200, py::arg("weights") = std::map<std::string, double>{},
        py::arg("kbest") = 1, "k-best (translation, score) pairs for an already built graph.");

  m.def("corpus_bleu", &corpus_bleu, py::arg("hypotheses"), py::arg("references"),
        py::arg("smooth") = false);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          int code;
          {
            py::gil_scoped_release release;
            code = run_cli(args, out, err);
          }
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs a dg2s subcommand; returns (exit code, stdout, stderr).");
}
