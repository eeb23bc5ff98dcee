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

#include "dg2s/cli.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "dg2s/bleu.h"
#include "dg2s/error.h"

namespace dg2s {

GraphKind parse_graph_kind(const std::string& s) {
  if (s == "tree") return GraphKind::kTree;
  if (s == "dbg") return GraphKind::kDbg;
  if (s == "dsg") return GraphKind::kDsg;
  throw ConfigError("unknown graph kind '" + s + "' (tree, dbg, dsg)");
}

DecoderKind parse_decoder_kind(const std::string& s) {
  if (s == "seg") return DecoderKind::kSeg;
  if (s == "snrg-beam") return DecoderKind::kSnrgBeam;
  if (s == "snrg-chart") return DecoderKind::kSnrgChart;
  throw ConfigError("unknown decoder '" + s + "' (seg, snrg-beam, snrg-chart)");
}

ExtractMode parse_extract_mode(const std::string& s) {
  if (s == "spp") return ExtractMode::kSpp;
  if (s == "snrg") return ExtractMode::kSnrg;
  throw ConfigError("unknown extraction mode '" + s + "' (spp, snrg)");
}

DepGraph build_graph(const DepGraph& tree, GraphKind kind) {
  switch (kind) {
    case GraphKind::kDbg:
      return build_dbg(tree);
    case GraphKind::kDsg:
      return build_dsg(tree);
    default:
      return tree;
  }
}

void RunConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(max_length, "max-length");
  positive(extract.initial_length, "initial-length");
  positive(extract.max_symbols, "max-symbols");
  positive(extract.min_gap_size, "mgs");
  if (extract.max_nonterminals < 0 || extract.max_nonterminals > 2)
    throw ConfigError("max-nts must be 0, 1 or 2");
  positive(snrg.l_max, "l-max");
  positive(snrg.span_max, "span-max");
  positive(snrg.g_max, "g-max");
}

std::string dump_graph(const DepGraph& g, bool dot, const std::string& name) {
  std::ostringstream out;
  if (dot) {
    out << "digraph " << name << " {\n";
    for (int i = 1; i <= g.size(); ++i)
      out << "  " << i << " [label=\"" << g.token(i).word << "/" << g.token(i).pos
          << "\"];\n";
    for (const auto& e : g.edges()) {
      out << "  " << e.head << " -> " << e.dep;
      if (e.label != EdgeLabel::kNone) out << " [label=\"" << label_name(e.label) << "\"]";
      out << ";\n";
    }
    out << "}\n";
    return out.str();
  }
  for (int i = 1; i <= g.size(); ++i)
    out << "node " << i << " " << g.token(i).word << " " << g.token(i).pos << "\n";
  for (const auto& e : g.edges())
    out << "edge " << e.head << " " << e.dep << " " << label_name(e.label) << "\n";
  return out.str();
}

namespace {

// Runs f(i) for i in [0, n) on up to `jobs` threads.
template <typename F>
void parallel_for(std::size_t n, int jobs, F&& f) {
  jobs = std::max(1, std::min<int>(jobs, int(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

ExtractResult extract_table(const std::vector<AlignedPair>& pairs, ExtractMode mode,
                            const RunConfig& cfg, int jobs) {
  std::vector<std::vector<TranslationRule>> per(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t i) {
    per[i] = mode == ExtractMode::kSpp ? extract_spp_rules(pairs[i], cfg.max_length)
                                       : extract_snrg(pairs[i], cfg.extract);
  });
  ExtractResult res{RuleTable(cfg.edge_labels), {}};
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    res.lex.add(pairs[i]);
    res.table.add_all(std::move(per[i]));
  }
  res.table.estimate(res.lex);
  if (cfg.top_n > 0) res.table.prune(cfg.top_n);
  return res;
}

const std::vector<Feature>& decoder_features(DecoderKind d) {
  return d == DecoderKind::kSeg ? seg_features() : snrg_features();
}

TranslateResult translate_one(const DepGraph& g, const RuleTable& table,
                              const LanguageModel& lm, const RunConfig& cfg, int kbest) {
  TranslateResult res;
  try {
    switch (cfg.decoder) {
      case DecoderKind::kSeg:
        res.kbest = SegDecoder(table, lm, cfg.weights, cfg.seg).decode_kbest(g, kbest);
        break;
      case DecoderKind::kSnrgBeam:
        res.kbest = SnrgDecoder(table, lm, cfg.weights, cfg.snrg).kbest_beam(g, kbest);
        break;
      case DecoderKind::kSnrgChart:
        res.kbest = SnrgDecoder(table, lm, cfg.weights, cfg.snrg).kbest_chart(g, kbest);
        break;
    }
    if (res.kbest.empty()) res.error = "no derivation";
  } catch (const NoDerivationError& e) {
    res.error = e.what();
    if (!e.uncovered().empty()) {
      res.error += "; uncovered positions:";
      for (int p : e.uncovered()) res.error += " " + std::to_string(p);
    }
  }
  return res;
}

std::vector<TranslateResult> translate_all(const std::vector<DepGraph>& graphs,
                                           const RuleTable& table, const LanguageModel& lm,
                                           const RunConfig& cfg, int kbest, int jobs) {
  std::vector<TranslateResult> out(graphs.size());
  parallel_for(graphs.size(), jobs,
               [&](std::size_t i) { out[i] = translate_one(graphs[i], table, lm, cfg, kbest); });
  return out;
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return in;
}

// Reads trees, reporting skipped sentences as path:line warnings.
std::vector<std::optional<DepGraph>> load_trees(const std::string& path, std::ostream& err) {
  auto in = open_in(path);
  ConllCorpus c = read_conll(in);
  for (const auto& issue : c.issues)
    err << path << ":" << issue.line << ": sentence " << issue.sentence + 1
        << " skipped: " << issue.message << "\n";
  return c.sentences;
}

struct Flags {
  std::string kind = "dbg";
  std::string decoder = "seg";
  std::string mode = "spp";
  std::vector<std::string> weights;
  bool no_oov = false;
  int jobs = 1;
};

void add_graph_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--kind", f.kind, "tree, dbg or dsg")->capture_default_str();
}

int cmd_graph(const std::string& input, const Flags& f, bool dot, std::ostream& out,
              std::ostream& err) {
  GraphKind kind = parse_graph_kind(f.kind);
  auto trees = load_trees(input, err);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    if (!trees[i]) continue;
    DepGraph g = build_graph(*trees[i], kind);
    if (dot)
      out << dump_graph(g, true, "s" + std::to_string(i + 1));
    else
      out << "# sentence " << i + 1 << "\n" << dump_graph(g, false);
  }
  return 0;
}

std::string percent(std::size_t part, std::size_t whole) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(1) << (whole ? 100.0 * part / whole : 0.0) << "%";
  return s.str();
}

int cmd_extract(const std::string& conll, const std::string& target,
                const std::string& align, const std::string& out_path, const Flags& f,
                const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  GraphKind kind = parse_graph_kind(f.kind);
  ExtractMode mode = parse_extract_mode(f.mode);
  auto trees = load_trees(conll, err);
  auto tin = open_in(target);
  auto targets = read_targets(tin);
  auto ain = open_in(align);
  std::vector<Alignment> aligns;
  try {
    aligns = read_alignments(ain);
  } catch (const ParseError& e) {
    throw ConfigError(align + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  ZippedCorpus z = zip_corpus(trees, targets, aligns);
  for (const auto& issue : z.issues) err << "warning: " << issue << "\n";
  for (auto& p : z.pairs) p.source = build_graph(p.source, kind);

  ExtractResult res = extract_table(z.pairs, mode, cfg, f.jobs);
  {
    std::ofstream o(out_path);
    if (!o) throw ConfigError("cannot write " + out_path);
    write_table(res.table, o);
  }
  {
    std::ofstream o(out_path + ".lex.e2f");
    res.lex.write_target_given_source(o);
  }
  {
    std::ofstream o(out_path + ".lex.f2e");
    res.lex.write_source_given_target(o);
  }

  const ProvenanceStats& s = res.table.provenance();
  out << "pairs: " << z.pairs.size() << " (skipped " << z.skipped << ")\n";
  out << "rules: " << res.table.size() << " after pruning, " << s.rules << " distinct extracted\n";
  out << "dependency-connected: " << s.dependency << " (" << percent(s.dependency, s.rules)
      << ")\n";
  out << "sequence-connected: " << s.sequential << " (" << percent(s.sequential, s.rules)
      << ")\n";
  out << "both: " << s.overlap << " (" << percent(s.overlap, s.rules) << ")\n";
  out << "mixed only: " << s.mixed << " (" << percent(s.mixed, s.rules) << ")\n";
  return 0;
}

int cmd_translate(const std::string& input, const std::string& table_path,
                  const std::string& lm_path, int kbest, const std::string& deriv_path,
                  const Flags& f, RunConfig cfg, std::ostream& out, std::ostream& err) {
  if (table_path.empty()) throw ConfigError("--table is required");
  if (lm_path.empty()) throw ConfigError("--lm is required");
  if (kbest <= 0) throw ConfigError("--kbest must be positive");
  cfg.kind = parse_graph_kind(f.kind);
  cfg.decoder = parse_decoder_kind(f.decoder);
  for (const auto& w : f.weights) cfg.weights.set(w);
  cfg.seg.oov_passthrough = cfg.snrg.oov_passthrough = !f.no_oov;
  cfg.validate();

  RuleTable table;
  try {
    table = read_table_file(table_path, cfg.edge_labels);
  } catch (const ParseError& e) {
    throw ConfigError(table_path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  LanguageModel lm;
  try {
    lm = LanguageModel::load_arpa_file(lm_path);
  } catch (const ParseError& e) {
    throw ConfigError(lm_path + ":" + std::to_string(e.line()) + ": " + e.what());
  }

  auto trees = load_trees(input, err);
  std::vector<DepGraph> graphs;
  std::vector<std::size_t> where;  // tree index of each graph
  for (std::size_t i = 0; i < trees.size(); ++i)
    if (trees[i]) {
      graphs.push_back(build_graph(*trees[i], cfg.kind));
      where.push_back(i);
    }
  auto results = translate_all(graphs, table, lm, cfg, kbest, f.jobs);

  std::vector<const TranslateResult*> by_sentence(trees.size(), nullptr);
  for (std::size_t k = 0; k < where.size(); ++k) by_sentence[where[k]] = &results[k];

  std::ofstream deriv;
  if (!deriv_path.empty()) {
    deriv.open(deriv_path);
    if (!deriv) throw ConfigError("cannot write " + deriv_path);
  }
  const auto& names = decoder_features(cfg.decoder);
  bool failed = false;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const TranslateResult* r = by_sentence[i];
    if (!r || !r->ok()) {
      failed = true;
      err << "sentence " << i + 1 << ": " << (r ? r->error : "unreadable input") << "\n";
      if (kbest == 1) out << "\n";
      continue;
    }
    if (kbest == 1) {
      out << r->kbest.front().translation() << "\n";
    } else {
      for (const auto& d : r->kbest)
        out << i << " ||| " << d.translation() << " ||| " << format_features(d.features, names)
            << " ||| " << format_double(d.score) << "\n";
    }
    if (deriv.is_open())
      for (std::size_t k = 0; k < r->kbest.size(); ++k)
        deriv << i << " ||| " << k << " ||| " << r->kbest[k].tree << "\n";
  }
  return failed ? 1 : 0;
}

int cmd_bleu(const std::string& hyp, const std::vector<std::string>& refs, bool smooth,
             std::ostream& out) {
  auto read_lines = [](const std::string& path) {
    auto in = open_in(path);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    return lines;
  };
  auto hyps = read_lines(hyp);
  std::vector<std::vector<std::string>> ref_sets;
  for (const auto& r : refs) {
    ref_sets.push_back(read_lines(r));
    if (ref_sets.back().size() != hyps.size())
      throw ArgumentError(r + " has " + std::to_string(ref_sets.back().size()) +
                          " lines, " + hyp + " has " + std::to_string(hyps.size()));
  }
  out << "BLEU = " << std::fixed << std::setprecision(2) << corpus_bleu(hyps, ref_sets, smooth)
      << "\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-based translation toolkit", "dg2s"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key = value configuration file");
  app.allow_config_extras(false);

  Flags f;
  RunConfig cfg;

  std::string input;
  bool dot = false;
  auto* graph = app.add_subcommand("graph", "Dump dependency graphs");
  graph->add_option("--input,-i", input, "CoNLL file")->required();
  add_graph_flags(graph, f);
  graph->add_flag("--dot", dot, "Graphviz output");

  std::string conll, target, align, out_path;
  auto* extract = app.add_subcommand("extract", "Extract and score a rule table");
  extract->add_option("--conll", conll, "source CoNLL file")->required();
  extract->add_option("--target", target, "tokenised target file")->required();
  extract->add_option("--align", align, "Pharaoh alignment file")->required();
  extract->add_option("--out,-o", out_path, "rule table path")->required();
  add_graph_flags(extract, f);
  extract->add_option("--mode", f.mode, "spp or snrg")->capture_default_str();
  extract->add_option("--max-length", cfg.max_length, "SPP size limit L")->capture_default_str();
  extract->add_option("--initial-length", cfg.extract.initial_length)->capture_default_str();
  extract->add_option("--max-symbols", cfg.extract.max_symbols)->capture_default_str();
  extract->add_option("--max-nts", cfg.extract.max_nonterminals)->capture_default_str();
  extract->add_option("--mgs", cfg.extract.min_gap_size, "minimum nested pair size")
      ->capture_default_str();
  extract->add_flag("--pos-nt", cfg.extract.pos_nonterminals, "POS-labelled non-terminals");
  extract->add_flag("--edge-labels", cfg.edge_labels, "keep edge labels in rule keys");
  extract->add_option("--top-n", cfg.top_n, "rules kept per source, 0 keeps all")
      ->capture_default_str();
  extract->add_option("--jobs,-j", f.jobs)->capture_default_str();

  std::string table_path, lm_path, deriv_path;
  int kbest = 1;
  int beam = 200;
  auto* translate = app.add_subcommand("translate", "Decode CoNLL input");
  translate->add_option("--input,-i", input, "CoNLL file")->required();
  translate->add_option("--table,-t", table_path, "rule table");
  translate->add_option("--lm", lm_path, "ARPA language model");
  add_graph_flags(translate, f);
  translate->add_option("--decoder", f.decoder, "seg, snrg-beam or snrg-chart")
      ->capture_default_str();
  translate->add_option("--beam", beam, "stack size")->capture_default_str();
  translate->add_option("--d-max", cfg.seg.d_max, "distortion limit, < 0 for none")
      ->capture_default_str();
  translate->add_option("--max-length", cfg.max_length, "largest seg option")
      ->capture_default_str();
  translate->add_option("--l-max", cfg.snrg.l_max)->capture_default_str();
  translate->add_option("--span-max", cfg.snrg.span_max)->capture_default_str();
  translate->add_option("--g-max", cfg.snrg.g_max)->capture_default_str();
  translate->add_option("--weight,-w", f.weights, "name:value, repeatable");
  translate->add_option("--kbest,-k", kbest)->capture_default_str();
  translate->add_option("--derivations", deriv_path, "write derivation trees here");
  translate->add_flag("--edge-labels", cfg.edge_labels, "table keys carry edge labels");
  translate->add_flag("--no-oov", f.no_oov, "do not copy untranslatable words");
  translate->add_option("--jobs,-j", f.jobs)->capture_default_str();

  std::string hyp;
  std::vector<std::string> refs;
  bool smooth = false;
  auto* bleu_cmd = app.add_subcommand("bleu", "Corpus BLEU-4");
  bleu_cmd->add_option("--hyp", hyp)->required();
  bleu_cmd->add_option("--ref", refs, "repeatable")->required();
  bleu_cmd->add_flag("--smooth", smooth, "add-one smoothing for n > 1");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*graph) return cmd_graph(input, f, dot, out, err);
    if (*extract) {
      cfg.validate();
      return cmd_extract(conll, target, align, out_path, f, cfg, out, err);
    }
    if (*translate) {
      cfg.seg.beam_width = cfg.snrg.beam_width = beam;
      cfg.seg.max_phrase = cfg.max_length;
      return cmd_translate(input, table_path, lm_path, kbest, deriv_path, f, cfg, out, err);
    }
    if (*bleu_cmd) return cmd_bleu(hyp, refs, smooth, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace dg2s
