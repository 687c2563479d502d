// Copyright 2026 The dpgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. run() is the whole program; the executable only
// forwards argv to it.

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpgm/baseline.hpp"
#include "dpgm/harness.hpp"
#include "dpgm/io.hpp"
#include "dpgm/parallel.hpp"
#include "dpgm/privacy.hpp"
#include "dpgm/sampler.hpp"

namespace dpgm::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kUsage = 1, kRuntime = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex_hash(const json& j) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << fnv1a(j.dump());
  return out.str();
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

inline std::vector<Label> read_label_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open label file '" + path + "'");
  std::vector<Label> out;
  std::string tok;
  while (in >> tok) out.push_back(Label::of(tok));
  if (out.empty()) throw std::runtime_error("label file '" + path + "' is empty");
  return sorted_by_name(std::move(out));
}

inline json labels_to_json(const std::vector<Label>& ls) {
  json a = json::array();
  for (Label l : sorted_by_name(ls)) a.push_back(std::string(l.name()));
  return a;
}

inline std::vector<Label> labels_from_json(const json& a) {
  std::vector<Label> out;
  for (const auto& s : a) out.push_back(Label::of(s.get<std::string>()));
  return sorted_by_name(std::move(out));
}

// Options shared by the commands that need a rule set.
struct RuleFlags {
  std::size_t v_min = 2;
  std::size_t v_max = 6;
  std::size_t e_max = 12;
  std::string labels_file;

  void add(CLI::App* app) {
    app->add_option("--v-min", v_min, "smallest reported pattern, in vertices")->capture_default_str();
    app->add_option("--v-max", v_max, "largest pattern, in vertices")->capture_default_str();
    app->add_option("--e-max", e_max, "largest pattern, in edges")->capture_default_str();
    app->add_option("--labels", labels_file, "file of label tokens forming the alphabet");
  }

  RuleSet resolve(const GraphDataset& d, std::ostream& err) const {
    RuleSet r;
    r.v_min = v_min;
    r.v_max = v_max;
    r.e_max = e_max;
    if (!labels_file.empty()) {
      r.labels = read_label_file(labels_file);
    } else {
      r.labels = d.labels();
      err << "warning: label alphabet taken from the input data; pass --labels for a data-independent one\n";
    }
    try {
      r.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return r;
  }
};

struct MineFlags {
  std::string input;
  std::string out;
  std::string out_dir = "runs";
  std::string from_config;
  std::string trace;
  std::size_t k = 15;
  double eps1 = 0.5;
  double eps2 = 0.0;
  std::optional<std::size_t> f;
  std::string f_source;  // set when f comes from an embedded config
  double eta = 0.9;
  double rho = 0.5;
  std::string score = "linear";
  std::string method = "een";
  std::uint64_t seed = 0;
  ConvergencePolicy conv;
  bool emit_true = false;
  std::size_t cache = 4096;
  RuleFlags rules;
};

inline json config_json(const MineFlags& m, const RuleSet& rules, std::size_t f, const std::string& f_source) {
  return json{{"input", m.input},
              {"k", m.k},
              {"eps1", m.eps1},
              {"eps2", m.eps2},
              {"f", f},
              {"f_source", f_source},
              {"eta", m.eta},
              {"rho", m.rho},
              {"score", m.score},
              {"method", m.method},
              {"seed", m.seed},
              {"rules", {{"v_min", rules.v_min}, {"v_max", rules.v_max}, {"e_max", rules.e_max},
                         {"labels", labels_to_json(rules.labels)}}},
              {"convergence", {{"first_frac", m.conv.first_frac},
                               {"last_frac", m.conv.last_frac},
                               {"window", m.conv.window},
                               {"z_bound", m.conv.z_bound},
                               {"min_iterations", m.conv.min_iterations},
                               {"max_iterations", m.conv.iteration_cap()}}},
              {"emit_true_supports", m.emit_true}};
}

// Fills flags from an embedded config; returns the rule set it names.
inline RuleSet apply_config(MineFlags& m, const json& c) {
  try {
    m.input = c.at("input").get<std::string>();
    m.k = c.at("k").get<std::size_t>();
    m.eps1 = c.at("eps1").get<double>();
    m.eps2 = c.at("eps2").get<double>();
    m.f = c.at("f").get<std::size_t>();
    m.f_source = c.at("f_source").get<std::string>();
    m.eta = c.at("eta").get<double>();
    m.rho = c.at("rho").get<double>();
    m.score = c.at("score").get<std::string>();
    m.method = c.at("method").get<std::string>();
    m.seed = c.at("seed").get<std::uint64_t>();
    const json& cv = c.at("convergence");
    m.conv.first_frac = cv.at("first_frac").get<double>();
    m.conv.last_frac = cv.at("last_frac").get<double>();
    m.conv.window = cv.at("window").get<std::size_t>();
    m.conv.z_bound = cv.at("z_bound").get<double>();
    m.conv.min_iterations = cv.at("min_iterations").get<std::size_t>();
    m.conv.max_iterations = cv.at("max_iterations").get<std::size_t>();
    m.emit_true = c.at("emit_true_supports").get<bool>();
    const json& r = c.at("rules");
    RuleSet rules;
    rules.v_min = r.at("v_min").get<std::size_t>();
    rules.v_max = r.at("v_max").get<std::size_t>();
    rules.e_max = r.at("e_max").get<std::size_t>();
    rules.labels = labels_from_json(r.at("labels"));
    return rules;
  } catch (const json::exception& e) {
    throw UsageError(std::string("embedded config is incomplete: ") + e.what());
  }
}

inline int cmd_mine(MineFlags m, std::size_t workers, std::ostream& out, std::ostream& err) {
  std::optional<RuleSet> rules;
  if (!m.from_config.empty()) {
    const json run = read_json(m.from_config);
    if (!run.contains("config")) throw UsageError("'" + m.from_config + "' has no embedded config");
    rules = apply_config(m, run.at("config"));
    if (m.out.empty()) m.out = m.from_config;
  }
  if (m.input.empty()) throw UsageError("mine needs --input");
  if (!(m.eps1 > 0)) throw UsageError("--eps1 must be positive");
  if (!(m.eps2 >= 0)) throw UsageError("--eps2 must be non-negative");
  if (!(m.eta > 0 && m.eta <= 1)) throw UsageError("--eta must lie in (0, 1]");
  if (!(m.rho >= 0 && m.rho <= 1)) throw UsageError("--rho must lie in [0, 1]");
  ScoreKind kind;
  ExploreMethod method;
  try {
    kind = parse_score_kind(m.score);
    method = parse_explore_method(m.method);
    m.conv.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const GraphDataset d = load_dataset(m.input);
  if (!rules) rules = m.rules.resolve(d, err);
  std::string f_source = "given";
  std::size_t f = 0;
  if (m.f) {
    f = *m.f;
    if (!m.f_source.empty()) f_source = m.f_source;
    if (f < 1) throw UsageError("--f must be at least 1");
  } else if (m.k == 0) {
    f = 1;
  } else {
    // Derived from the data without privacy protection.
    f = mine_exact_topk(d, m.k, *rules, workers).threshold_f;
    f_source = "exact top-k (not private)";
  }

  SamplerConfig cfg;
  cfg.f = f;
  cfg.budget = PrivacyBudget{m.eps1, m.eps2, m.k};
  cfg.score = kind;
  cfg.proposal = ProposalParams{m.eta, m.rho};
  cfg.convergence = m.conv;
  cfg.rules = *rules;
  cfg.method = method;
  cfg.explorer.cache_capacity = m.cache;
  cfg.explorer.workers = workers;
  cfg.seed = m.seed;
  Sampler sampler(d, cfg);

  std::ofstream trace;
  if (!m.trace.empty()) {
    trace.open(m.trace);
    if (!trace) throw std::runtime_error("cannot write trace '" + m.trace + "'");
    trace << "round,iteration,metric,value,z\n";
    sampler.set_trace(&trace);
  }
  const std::vector<SampledPattern> result = sampler.mine_topk();

  const json config = config_json(m, *rules, f, f_source);
  json patterns = json::array();
  bool all_certified = true;
  for (const SampledPattern& s : result) {
    json p{{"pattern", pattern_to_json(s.pattern)},
           {"true_support", m.emit_true ? json(s.true_support) : json(nullptr)},
           {"iterations", s.iterations},
           {"converged", s.converged}};
    if (m.eps2 > 0) p["noisy_support"] = *s.noisy_support;
    patterns.push_back(std::move(p));
    all_certified = all_certified && s.converged;
  }
  const double gamma = 0.05;
  const double m_upper = crude_space_bound(*rules);
  json bounds{{"gamma", gamma}, {"m_upper", m_upper}};
  if (m.k > 0) {
    bounds["beta_sampling"] = beta_sampling_bound(m.k, m.eps1, gamma, m_upper);
    bounds["beta_noise"] = m.eps2 > 0 ? json(beta_noise_bound(m.k, m.eps2, gamma)) : json(nullptr);
  }
  const json run{{"config", config},
                 {"metadata", {{"f_non_private", f_source != "given"},
                               {"convergence_certified", all_certified},
                               {"utility_bounds", bounds}}},
                 {"patterns", patterns}};
  std::string path = m.out;
  if (path.empty()) path = (std::filesystem::path(m.out_dir) / hex_hash(config) / "run.json").string();
  write_text(path, run.dump(2) + "\n");
  out << "wrote " << result.size() << " patterns to " << path << "\n";
  if (!all_certified) err << "warning: some rounds hit the iteration cap before convergence\n";
  return kOk;
}

inline MiningResult truth_from_json(const json& t) {
  MiningResult r;
  try {
    r.threshold_f = t.at("f").get<std::size_t>();
    for (const auto& p : t.at("patterns")) {
      r.patterns.push_back({pattern_from_json(p.at("pattern")), p.at("support").get<std::size_t>()});
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed truth file: ") + e.what());
  }
  return r;
}

inline json truth_to_json(const MiningResult& r, std::size_t k) {
  json patterns = json::array();
  for (const auto& p : r.patterns) patterns.push_back({{"pattern", pattern_to_json(p.pattern)}, {"support", p.support}});
  return json{{"k", k}, {"f", r.threshold_f}, {"patterns", patterns}};
}

inline int cmd_baseline(const std::string& input, std::size_t k, const RuleFlags& rf, const std::string& out_path,
                        std::size_t workers, std::ostream& out, std::ostream& err) {
  const GraphDataset d = load_dataset(input);
  const RuleSet rules = rf.resolve(d, err);
  const MiningResult r = mine_exact_topk(d, k, rules, workers);
  const std::string text = truth_to_json(r, k).dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    write_text(out_path, text);
    out << "wrote top-" << k << " with f=" << r.threshold_f << " to " << out_path << "\n";
  }
  return kOk;
}

inline int cmd_eval(const std::string& result_path, const std::string& truth_path, const std::string& input,
                    const std::string& out_path, std::ostream& out) {
  const json run = read_json(result_path);
  const MiningResult truth = truth_from_json(read_json(truth_path));
  const std::size_t k = truth.patterns.size();
  std::optional<GraphDataset> d;
  if (!input.empty()) d = load_dataset(input);
  std::vector<PatternSupport> output;
  try {
    for (const auto& p : run.at("patterns")) {
      Pattern pat = pattern_from_json(p.at("pattern"));
      std::size_t s = 0;
      if (d) {
        s = support(pat, *d).count;
      } else if (p.contains("true_support") && !p.at("true_support").is_null()) {
        s = p.at("true_support").get<std::size_t>();
      } else {
        throw UsageError("result carries no true supports; pass --input with the dataset");
      }
      output.push_back({std::move(pat), s});
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed result file: ") + e.what());
  }
  const EvalReport rep = evaluate(output, truth, truth.threshold_f, k);
  std::ostringstream csv;
  csv << "precision,rse,support_accuracy,k,f\n";
  csv << rep.precision << ',' << rep.rse << ',' << rep.support_accuracy << ',' << k << ',' << truth.threshold_f
      << "\n\ncode,true_support,in_truth\n";
  for (const auto& p : rep.per_pattern) csv << '"' << p.code << "\"," << p.true_support << ',' << p.in_truth << '\n';
  if (out_path.empty()) {
    out << csv.str();
  } else {
    write_text(out_path, csv.str());
    out << "precision " << rep.precision << ", support accuracy " << rep.support_accuracy << "\n";
  }
  return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Differentially private frequent subgraph pattern mining"};
  app.require_subcommand(1);
  std::size_t workers = default_workers();
  app.add_option("--workers", workers, "threads for support counting (default from DPGM_WORKERS)");

  MineFlags mine;
  auto* mine_cmd = app.add_subcommand("mine", "sample k frequent patterns under differential privacy");
  mine_cmd->add_option("--input", mine.input, "dataset file");
  mine_cmd->add_option("--out", mine.out, "result JSON path (default <out-dir>/<config hash>/run.json)");
  mine_cmd->add_option("--out-dir", mine.out_dir)->capture_default_str();
  mine_cmd->add_option("--from-config", mine.from_config, "re-run the config embedded in a result file");
  mine_cmd->add_option("--trace", mine.trace, "write per-iteration diagnostics CSV");
  mine_cmd->add_option("--k", mine.k)->capture_default_str();
  mine_cmd->add_option("--eps1", mine.eps1, "budget for sampling")->capture_default_str();
  mine_cmd->add_option("--eps2", mine.eps2, "budget for noisy supports, 0 to skip")->capture_default_str();
  mine_cmd->add_option("--f", mine.f, "support threshold (default: support of the exact k-th pattern)");
  mine_cmd->add_option("--eta", mine.eta)->capture_default_str();
  mine_cmd->add_option("--rho", mine.rho)->capture_default_str();
  mine_cmd->add_option("--score", mine.score, "linear or plateau")->capture_default_str();
  mine_cmd->add_option("--method", mine.method, "naive, basic or een")->capture_default_str();
  mine_cmd->add_option("--seed", mine.seed)->capture_default_str();
  mine_cmd->add_option("--window", mine.conv.window)->capture_default_str();
  mine_cmd->add_option("--z-bound", mine.conv.z_bound)->capture_default_str();
  mine_cmd->add_option("--first-frac", mine.conv.first_frac)->capture_default_str();
  mine_cmd->add_option("--last-frac", mine.conv.last_frac)->capture_default_str();
  mine_cmd->add_option("--min-iterations", mine.conv.min_iterations)->capture_default_str();
  mine_cmd->add_option("--max-iterations", mine.conv.max_iterations, "per-round cap (default 50 * window)");
  mine_cmd->add_option("--cache", mine.cache, "cached patterns, 0 disables")->capture_default_str();
  mine_cmd->add_flag("--emit-true-supports", mine.emit_true, "debug: include exact supports (not private)");
  mine.rules.add(mine_cmd);

  std::string b_input, b_out;
  std::size_t b_k = 15;
  RuleFlags b_rules;
  auto* base_cmd = app.add_subcommand("baseline", "exact top-k patterns");
  base_cmd->add_option("--input", b_input)->required();
  base_cmd->add_option("--k", b_k)->capture_default_str();
  base_cmd->add_option("--out", b_out);
  b_rules.add(base_cmd);

  auto* gen_cmd = app.add_subcommand("gen", "generate a synthetic dataset");
  gen_cmd->require_subcommand(1);
  ClickParams click;
  DenseParams dense;
  std::string g_out;
  auto* click_cmd = gen_cmd->add_subcommand("click", "trees cut from one master tree");
  click_cmd->add_option("--n", click.n_graphs)->capture_default_str();
  click_cmd->add_option("--seed", click.seed)->capture_default_str();
  click_cmd->add_option("--master-nodes", click.master_nodes)->capture_default_str();
  click_cmd->add_option("--depth", click.depth)->capture_default_str();
  click_cmd->add_option("--fanout", click.fanout)->capture_default_str();
  click_cmd->add_option("--avg-vertices", click.avg_vertices)->capture_default_str();
  click_cmd->add_option("--alphabet", click.alphabet)->capture_default_str();
  click_cmd->add_option("--stop-prob", click.stop_prob)->capture_default_str();
  click_cmd->add_option("--out", g_out)->required();
  auto* dense_cmd = gen_cmd->add_subcommand("dense", "dense random graphs");
  dense_cmd->add_option("--n", dense.n_graphs)->capture_default_str();
  dense_cmd->add_option("--seed", dense.seed)->capture_default_str();
  dense_cmd->add_option("--avg-vertices", dense.avg_vertices)->capture_default_str();
  dense_cmd->add_option("--avg-edges", dense.avg_edges)->capture_default_str();
  dense_cmd->add_option("--alphabet", dense.alphabet)->capture_default_str();
  dense_cmd->add_option("--out", g_out)->required();

  std::string e_result, e_truth, e_input, e_out;
  auto* eval_cmd = app.add_subcommand("eval", "score a result against the exact top-k");
  eval_cmd->add_option("--result", e_result)->required();
  eval_cmd->add_option("--truth", e_truth)->required();
  eval_cmd->add_option("--input", e_input, "dataset, to compute true supports");
  eval_cmd->add_option("--out", e_out, "CSV path (default stdout)");

  std::string n_input, n_out, n_methods = "naive,basic,een";
  BenchParams bench;
  std::optional<std::size_t> n_f;
  std::size_t n_k = 15;
  RuleFlags n_rules;
  auto* bench_cmd = app.add_subcommand("bench-neighbors", "time neighbor exploration per method");
  bench_cmd->add_option("--input", n_input)->required();
  bench_cmd->add_option("--f", n_f, "support threshold (default: exact k-th support)");
  bench_cmd->add_option("--k", n_k)->capture_default_str();
  bench_cmd->add_option("--steps", bench.n_steps)->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
  bench_cmd->add_option("--methods", n_methods)->capture_default_str();
  bench_cmd->add_option("--eps1", bench.budget.eps1)->capture_default_str();
  bench_cmd->add_option("--out", n_out, "CSV path (default stdout)");
  n_rules.add(bench_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (workers < 1) {
    err << "error: --workers must be at least 1\n";
    return kUsage;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(mine, workers, out, err);
    if (base_cmd->parsed()) return cmd_baseline(b_input, b_k, b_rules, b_out, workers, out, err);
    if (gen_cmd->parsed()) {
      const GraphDataset d = click_cmd->parsed() ? gen_click(click) : gen_dense(dense);
      write_text(g_out, dataset_to_text(d));
      out << "wrote " << d.size() << " graphs to " << g_out << "\n";
      return kOk;
    }
    if (eval_cmd->parsed()) return cmd_eval(e_result, e_truth, e_input, e_out, out);
    if (bench_cmd->parsed()) {
      const GraphDataset d = load_dataset(n_input);
      bench.rules = n_rules.resolve(d, err);
      bench.methods.clear();
      std::stringstream ss(n_methods);
      for (std::string tok; std::getline(ss, tok, ',');) {
        try {
          bench.methods.push_back(parse_explore_method(tok));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      bench.budget.k = n_k;
      bench.f = n_f ? *n_f : mine_exact_topk(d, n_k, bench.rules, workers).threshold_f;
      std::ostringstream csv;
      write_bench_csv(csv, bench_neighbors(d, bench));
      if (n_out.empty()) {
        out << csv.str();
      } else {
        write_text(n_out, csv.str());
        out << "wrote benchmark to " << n_out << "\n";
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}

}  // namespace dpgm::cli
