//===-- warncas.cpp - Command-line front end --------------------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Subcommands: `cascade` matches warnings between two source versions and
// writes JSON reports, `bench` scores the engines over ground-truth pairs,
// `dump` exposes each engine's intermediate structures, and `report
// --compare` prints the three-engine overlap counts.
//
// Exit codes: 0 success, 2 configuration or graph errors (including bad
// command lines), 3 parse errors, 4 warning-format errors.
//
//===----------------------------------------------------------------------===//

#include "warncas/ast.hpp"
#include "warncas/engine.hpp"
#include "warncas/error.hpp"
#include "warncas/harness.hpp"
#include "warncas/line_diff.hpp"
#include "warncas/mvicfg.hpp"
#include "warncas/parser.hpp"
#include "warncas/report_io.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace warncas;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void append_env_excludes(std::vector<std::string>& exclude) {
  const char* env = std::getenv("CASCADE_EXCLUDE");
  if (!env)
    return;
  const std::string value(env);
  size_t start = 0;
  while (start <= value.size()) {
    const size_t comma = value.find(',', start);
    const size_t end = comma == std::string::npos ? value.size() : comma;
    const std::string part = trim(value.substr(start, end - start));
    if (!part.empty())
      exclude.push_back(part);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
}

std::string summary_line(const CascadeReport& report) {
  size_t recovered = 0;
  for (const MatchedPair& m : report.matched)
    recovered += m.recovered ? 1 : 0;
  std::ostringstream os;
  os << "engine=" << to_string(report.engine) << " matched="
     << report.matched.size() << " bugfix=" << report.unmatched_v1.size()
     << " new=" << report.unmatched_v2.size() << " recovered=" << recovered;
  return os.str();
}

std::string out_path_for(const std::string& out, EngineKind kind) {
  std::string base = out;
  const std::string ext = ".json";
  if (base.size() >= ext.size() &&
      base.compare(base.size() - ext.size(), ext.size(), ext) == 0)
    base.resize(base.size() - ext.size());
  return base + "." + to_string(kind) + ext;
}

struct CascadeConfig {
  std::string old_root, new_root, warnings_old, warnings_new;
  std::string engine = "all";
  std::vector<std::string> exclude;
  std::string out;
  int jobs = 1;
  MatchParams params;
};

int cmd_cascade(const CascadeConfig& config) {
  EngineInput input;
  input.v1 = load_source_tree(config.old_root);
  input.v2 = load_source_tree(config.new_root);
  input.ws1 =
      filter_warnings(load_warnings(config.warnings_old, Version::V1),
                      config.exclude);
  input.ws2 =
      filter_warnings(load_warnings(config.warnings_new, Version::V2),
                      config.exclude);
  input.params = config.params;

  if (config.engine != "all") {
    const EngineKind kind = config.engine == "text"  ? EngineKind::Text
                            : config.engine == "ast" ? EngineKind::Ast
                                                     : EngineKind::Cfg;
    const CascadeReport report = run_engine(kind, input);
    write_report(config.out, report, config.params);
    std::cout << summary_line(report) << "\n";
    return 0;
  }

  const EngineKind kinds[] = {EngineKind::Text, EngineKind::Ast,
                              EngineKind::Cfg};
  std::vector<CascadeReport> reports(3);
  if (config.jobs > 1) {
    std::vector<std::future<CascadeReport>> futures;
    for (EngineKind kind : kinds)
      futures.push_back(std::async(std::launch::async, [&input, kind] {
        return run_engine(kind, input);
      }));
    for (size_t i = 0; i < futures.size(); ++i)
      reports[i] = futures[i].get();
  } else {
    for (size_t i = 0; i < 3; ++i)
      reports[i] = run_engine(kinds[i], input);
  }
  for (size_t i = 0; i < 3; ++i) {
    write_report(out_path_for(config.out, kinds[i]), reports[i],
                 config.params);
    std::cout << summary_line(reports[i]) << "\n";
  }
  return 0;
}

struct BenchCliConfig {
  std::string suite;
  int generate = 0;
  uint64_t seed = 0;
  std::string emit;
  int jobs = 1;
};

int cmd_bench(const BenchCliConfig& config) {
  if (!config.suite.empty() && config.generate > 0)
    throw ConfigError("pass either a suite directory or --generate, not both");
  if (config.suite.empty() && config.generate <= 0)
    throw ConfigError("bench needs a suite directory or --generate N");
  BenchOptions options;
  options.suite_dir = config.suite;
  options.generate = config.generate;
  options.seed = config.seed;
  options.emit_dir = config.emit;
  options.jobs = config.jobs;
  const BenchResult result = run_bench(options);
  std::cout << result.summary;
  return 0;
}

std::string venn_line(const OverlapCounts& counts) {
  std::ostringstream os;
  os << "text=" << counts.text << " ast=" << counts.ast << " cfg="
     << counts.cfg << " text&ast=" << counts.text_ast << " text&cfg="
     << counts.text_cfg << " ast&cfg=" << counts.ast_cfg << " all="
     << counts.all;
  return os.str();
}

int cmd_report_compare(const std::vector<std::string>& paths) {
  std::optional<CascadeReport> text, ast, cfg;
  for (const std::string& path : paths) {
    CascadeReport report = read_report(path);
    std::optional<CascadeReport>* slot = nullptr;
    switch (report.engine) {
    case EngineKind::Text: slot = &text; break;
    case EngineKind::Ast: slot = &ast; break;
    case EngineKind::Cfg: slot = &cfg; break;
    }
    if (slot->has_value())
      throw ConfigError("two of the compared reports come from the " +
                        std::string(to_string(report.engine)) + " engine");
    *slot = std::move(report);
  }
  const OverlapReport overlap = overlap_report(*text, *ast, *cfg);
  std::cout << "same-bug: " << venn_line(overlap.same_bug) << "\n";
  std::cout << "bug-fix: " << venn_line(overlap.bug_fix) << "\n";
  return 0;
}

template <typename Fn> int run_guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const WarningFormatError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 4;
  } catch (const ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 3;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}

void add_param_options(CLI::App* cmd, MatchParams& params) {
  cmd->add_option("--min-height", params.min_height,
                  "minimum subtree height for top-down tree matching");
  cmd->add_option("--min-dice", params.min_dice,
                  "dice threshold for bottom-up tree matching");
  cmd->add_option("--max-size", params.max_size,
                  "subtree size cap for leaf recovery");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"cascade static-analysis warnings across program versions"};
  app.require_subcommand(1);

  CascadeConfig cascade_config;
  CLI::App* cascade =
      app.add_subcommand("cascade", "match warnings between two versions");
  cascade->add_option("--old", cascade_config.old_root,
                      "old-version source root")->required();
  cascade->add_option("--new", cascade_config.new_root,
                      "new-version source root")->required();
  cascade->add_option("--warnings-old", cascade_config.warnings_old,
                      "old-version warning records")->required();
  cascade->add_option("--warnings-new", cascade_config.warnings_new,
                      "new-version warning records")->required();
  cascade->add_option("--engine", cascade_config.engine,
                      "text, ast, cfg, or all")
      ->check(CLI::IsMember({"text", "ast", "cfg", "all"}));
  cascade->add_option("--exclude", cascade_config.exclude,
                      "glob of files to drop (repeatable; CASCADE_EXCLUDE "
                      "adds comma-separated patterns)");
  cascade->add_option("--out", cascade_config.out,
                      "report path; --engine all derives "
                      "<base>.{text,ast,cfg}.json")->required();
  cascade->add_option("--jobs", cascade_config.jobs,
                      "run the engines of --engine all concurrently");
  add_param_options(cascade, cascade_config.params);

  BenchCliConfig bench_config;
  CLI::App* bench =
      app.add_subcommand("bench", "score the engines over ground-truth pairs");
  bench->add_option("suite", bench_config.suite,
                    "directory of pair directories");
  bench->add_option("--generate", bench_config.generate,
                    "number of pairs to generate instead");
  bench->add_option("--seed", bench_config.seed, "generation seed");
  bench->add_option("--emit", bench_config.emit,
                    "write generated pairs to this directory");
  bench->add_option("--jobs", bench_config.jobs,
                    "pairs evaluated concurrently");

  CLI::App* dump = app.add_subcommand("dump", "print engine internals");
  dump->require_subcommand(1);
  std::string dump_ast_file, dump_cfg_file;
  std::string diff_old, diff_new, map_old, map_new;
  MatchParams map_params;
  CLI::App* dump_ast_cmd = dump->add_subcommand("ast", "indented syntax tree");
  dump_ast_cmd->add_option("file", dump_ast_file, "source file")->required();
  CLI::App* dump_cfg_cmd =
      dump->add_subcommand("cfg", "control-flow graph in DOT format");
  dump_cfg_cmd->add_option("file", dump_cfg_file, "source file")->required();
  CLI::App* dump_diff_cmd =
      dump->add_subcommand("diff", "hunks and the line mapping");
  dump_diff_cmd->add_option("old", diff_old, "old file")->required();
  dump_diff_cmd->add_option("new", diff_new, "new file")->required();
  CLI::App* dump_map_cmd =
      dump->add_subcommand("mapping", "matched tree-node pairs");
  dump_map_cmd->add_option("old", map_old, "old file")->required();
  dump_map_cmd->add_option("new", map_new, "new file")->required();
  add_param_options(dump_map_cmd, map_params);

  CLI::App* report =
      app.add_subcommand("report", "operations on written reports");
  std::vector<std::string> compare_paths;
  report->add_option("--compare", compare_paths,
                     "three report files, one per engine, any order")
      ->expected(3)
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  return run_guarded([&]() -> int {
    if (cascade->parsed()) {
      append_env_excludes(cascade_config.exclude);
      return cmd_cascade(cascade_config);
    }
    if (bench->parsed())
      return cmd_bench(bench_config);
    if (dump_ast_cmd->parsed()) {
      std::cout << dump_ast(parse_source(read_file(dump_ast_file),
                                         dump_ast_file));
      return 0;
    }
    if (dump_cfg_cmd->parsed()) {
      const Ast ast = parse_source(read_file(dump_cfg_file), dump_cfg_file);
      std::cout << to_dot(build_cfg(ast, Version::V1, dump_cfg_file));
      return 0;
    }
    if (dump_diff_cmd->parsed()) {
      const auto old_lines = split_lines(read_file(diff_old));
      const auto new_lines = split_lines(read_file(diff_new));
      const LineMapping mapping = diff_lines(old_lines, new_lines);
      std::cout << dump_diff(old_lines, new_lines, mapping);
      return 0;
    }
    if (dump_map_cmd->parsed()) {
      const Ast t1 = parse_source(read_file(map_old), map_old);
      const Ast t2 = parse_source(read_file(map_new), map_new);
      std::cout << dump_mapping(t1, t2, match_asts(t1, t2, map_params));
      return 0;
    }
    if (report->parsed())
      return cmd_report_compare(compare_paths);
    return 2; // unreachable: require_subcommand(1)
  });
}
