//===-- acceptance_main.cpp - Release acceptance checks -------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// One check per release criterion, each printing a single PASS or FAIL
// line; the exit code is the number of failures. argv[1] is the path to
// the warncas binary (used by the end-to-end checks); the fixture corpus
// location is compiled in as WARNCAS_FIXTURE_DIR.
//
//===----------------------------------------------------------------------===//

#include "warncas/engine.hpp"
#include "warncas/error.hpp"
#include "warncas/harness.hpp"
#include "warncas/line_diff.hpp"
#include "warncas/mvicfg.hpp"
#include "warncas/parser.hpp"
#include "warncas/report_io.hpp"
#include "warncas/source_tree.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;
using namespace warncas;

namespace {

std::string g_cli_path;

struct CheckResult {
  bool ok = false;
  std::string detail;
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

long ms_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

EngineInput fixture_input(const std::string& name) {
  const fs::path root = fs::path(WARNCAS_FIXTURE_DIR) / name;
  EngineInput input;
  input.v1 = load_source_tree(root / "v1");
  input.v2 = load_source_tree(root / "v2");
  input.ws1 = load_warnings(root / "warnings_v1.tsv", Version::V1);
  input.ws2 = load_warnings(root / "warnings_v2.tsv", Version::V2);
  return input;
}

std::string fixture_golden(const std::string& name, EngineKind kind) {
  return slurp(fs::path(WARNCAS_FIXTURE_DIR) / name /
               ("expected." + std::string(to_string(kind)) + ".json"));
}

const MatchedPair* find_match(const CascadeReport& report, int line,
                              const std::string& condition) {
  for (const MatchedPair& m : report.matched)
    if (m.v1.line == line && m.v1.condition == condition)
      return &m;
  return nullptr;
}

bool in_unmatched_v1(const CascadeReport& report, int line,
                     const std::string& condition) {
  for (const Warning& w : report.unmatched_v1)
    if (w.line == line && w.condition == condition)
      return true;
  return false;
}

// 1. Identity pairs: every engine cascades every warning, quickly.
CheckResult check_identity_suite() {
  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < 50; ++i) {
    const BaseProgram base = generate_program(mix_seed(9100, i));
    const GroundTruthPair pair =
        generate_pair(mix_seed(9200, i), base, PairKind::BuggyBuggy, {});
    const size_t want = pair.ws1.warnings.size();
    if (want < 1 || want > 10)
      return {false, "program " + std::to_string(i) + " carries " +
                         std::to_string(want) + " warnings"};
    const EngineRunResult runs = run_all_engines(pair);
    if (!runs.errors.empty())
      return {false, runs.errors.front()};
    for (const CascadeReport* report : {&*runs.text, &*runs.ast, &*runs.cfg}) {
      if (report->matched.size() != want || !report->unmatched_v1.empty() ||
          !report->unmatched_v2.empty())
        return {false, std::string(to_string(report->engine)) +
                           " engine missed warnings on program " +
                           std::to_string(i)};
      for (const MatchedPair& m : report->matched)
        if (m.recovered)
          return {false, "identity pair produced a recovered match"};
    }
  }
  const long elapsed = ms_since(start);
  if (elapsed >= 5000)
    return {false, "took " + std::to_string(elapsed) + " ms"};
  return {true, "50 programs, 3 engines, " + std::to_string(elapsed) + " ms"};
}

// 2. Callee rename: the tree engine follows the warning, the line and
//    graph engines lose it. Reports must match the goldens byte for byte.
CheckResult check_rename_fixture() {
  const EngineInput input = fixture_input("rename_callee");
  for (EngineKind kind : {EngineKind::Text, EngineKind::Ast, EngineKind::Cfg}) {
    const CascadeReport report = run_engine(kind, input);
    if (report_to_json(report, input.params) !=
        fixture_golden("rename_callee", kind))
      return {false, std::string(to_string(kind)) +
                         " report diverges from its golden"};
  }
  const CascadeReport text = run_engine(EngineKind::Text, input);
  const CascadeReport ast = run_engine(EngineKind::Ast, input);
  const CascadeReport cfg = run_engine(EngineKind::Cfg, input);
  if (!in_unmatched_v1(text, 9, "CWE-119"))
    return {false, "text engine unexpectedly cascaded the renamed line"};
  const MatchedPair* match = find_match(ast, 9, "CWE-119");
  if (match == nullptr || match->v2.line != 9)
    return {false, "ast engine failed to cascade the renamed line"};
  if (!in_unmatched_v1(cfg, 9, "CWE-119"))
    return {false, "cfg engine unexpectedly cascaded the renamed line"};
  return {true, "text misses, ast cascades, cfg misses; goldens byte-exact"};
}

// 3. Inserted comment: tree and graph engines cascade; reports stable.
CheckResult check_comment_fixture() {
  const EngineInput input = fixture_input("comment_insert");
  std::string first[3];
  const EngineKind kinds[] = {EngineKind::Text, EngineKind::Ast,
                              EngineKind::Cfg};
  for (int round = 0; round < 2; ++round)
    for (int k = 0; k < 3; ++k) {
      const std::string json =
          report_to_json(run_engine(kinds[k], input), input.params);
      if (round == 0)
        first[k] = json;
      else if (json != first[k])
        return {false, std::string(to_string(kinds[k])) +
                           " report changed between runs"};
    }
  const CascadeReport ast = run_engine(EngineKind::Ast, input);
  const MatchedPair* tree_match = find_match(ast, 9, "CWE-476");
  if (tree_match == nullptr || tree_match->v2.line != 10)
    return {false, "ast engine did not cascade across the comment"};
  const CascadeReport cfg = run_engine(EngineKind::Cfg, input);
  const MatchedPair* graph_match = find_match(cfg, 9, "CWE-476");
  if (graph_match == nullptr || graph_match->v2.line != 10)
    return {false, "cfg engine did not cascade across the comment"};
  const CascadeReport text = run_engine(EngineKind::Text, input);
  const bool text_matched = find_match(text, 9, "CWE-476") != nullptr;
  return {true, std::string("ast cascades, cfg cascades ") +
                    (graph_match->recovered ? "by recovery"
                                            : "on a shared node") +
                    ", text " + (text_matched ? "cascades" : "misses") +
                    "; stable across runs"};
}

// 4. Inserted statement block: the shifted warning cascades in the tree
//    and graph engines; the line engine's outcome is pinned as documented.
CheckResult check_block_fixture() {
  const EngineInput input = fixture_input("block_insert");
  const CascadeReport ast = run_engine(EngineKind::Ast, input);
  const MatchedPair* tree_match = find_match(ast, 8, "CWE-119");
  if (tree_match == nullptr || tree_match->v2.line != 11)
    return {false, "ast engine did not track the shifted warning"};
  const CascadeReport cfg = run_engine(EngineKind::Cfg, input);
  const MatchedPair* graph_match = find_match(cfg, 8, "CWE-119");
  if (graph_match == nullptr || graph_match->v2.line != 11)
    return {false, "cfg engine did not track the shifted warning"};
  // Documented behavior: a pure insertion leaves surrounding lines intact,
  // so the line mapping carries the warning to its shifted position.
  const CascadeReport text = run_engine(EngineKind::Text, input);
  const MatchedPair* line_match = find_match(text, 8, "CWE-119");
  if (line_match == nullptr || line_match->v2.line != 11)
    return {false, "text outcome diverged from its documented behavior"};
  return {true, "ast and cfg cascade; text cascades too (documented: "
                "pure insertions keep surrounding lines pairable)"};
}

// 5. Duplicated line: deterministic choice; the tree engine keeps exactly
//    one of the two identical V2 occurrences.
CheckResult check_duplicate_fixture() {
  const EngineInput input = fixture_input("duplicate_line");
  const EngineKind kinds[] = {EngineKind::Text, EngineKind::Ast,
                              EngineKind::Cfg};
  std::string first[3];
  for (int round = 0; round < 10; ++round)
    for (int k = 0; k < 3; ++k) {
      const std::string json =
          report_to_json(run_engine(kinds[k], input), input.params);
      if (round == 0)
        first[k] = json;
      else if (json != first[k])
        return {false, std::string(to_string(kinds[k])) +
                           " report changed on run " + std::to_string(round)};
    }
  const CascadeReport ast = run_engine(EngineKind::Ast, input);
  int bug_matches = 0;
  int chosen_line = 0;
  for (const MatchedPair& m : ast.matched)
    if (m.v1.id == "v1:1") {
      ++bug_matches;
      chosen_line = m.v2.line;
    }
  if (bug_matches != 1)
    return {false, "ast engine matched the warning " +
                       std::to_string(bug_matches) + " times"};
  if (ast.unmatched_v2.size() != 1)
    return {false, "the unchosen duplicate is not reported as new"};
  const int other_line = ast.unmatched_v2.front().line;
  if (!((chosen_line == 3 && other_line == 4) ||
        (chosen_line == 4 && other_line == 3)))
    return {false, "duplicate occurrences resolved to unexpected lines"};
  return {true, "10 runs stable; ast keeps the line-" +
                    std::to_string(chosen_line) + " copy, line-" +
                    std::to_string(other_line) + " stays new"};
}

// 6. Reindented warning line: the graph engine recovers the match after
//    trimming whitespace; the line engine reports a fix. Byte-exact.
CheckResult check_reindent_fixture() {
  const EngineInput input = fixture_input("reindent");
  for (EngineKind kind : {EngineKind::Text, EngineKind::Ast, EngineKind::Cfg}) {
    const CascadeReport report = run_engine(kind, input);
    if (report_to_json(report, input.params) !=
        fixture_golden("reindent", kind))
      return {false, std::string(to_string(kind)) +
                         " report diverges from its golden"};
  }
  const CascadeReport cfg = run_engine(EngineKind::Cfg, input);
  const MatchedPair* match = find_match(cfg, 5, "CWE-476");
  if (match == nullptr || !match->recovered)
    return {false, "cfg engine did not recover the reindented warning"};
  const CascadeReport text = run_engine(EngineKind::Text, input);
  if (!in_unmatched_v1(text, 5, "CWE-476"))
    return {false, "text engine did not report the reindented line as a fix"};
  return {true, "cfg recovers (recovered=true), text reports a fix; "
                "goldens byte-exact"};
}

// 7. Deleted bug lines: tree and graph engines must go 30/30; any line
//    engine mismatch must come with a diagnostic on the report.
CheckResult check_buggy_fixed_suite() {
  int text_ok = 0;
  int text_logged = 0;
  for (int i = 0; i < 30; ++i) {
    const BaseProgram base = generate_program(mix_seed(7700, i));
    const GroundTruthPair pair =
        generate_pair(mix_seed(7800, i), base, PairKind::BuggyFixed,
                      {MutationKind::DeleteBugLine});
    const EngineRunResult runs = run_all_engines(pair);
    if (!runs.errors.empty())
      return {false, runs.errors.front()};
    if (!score_pair(pair, *runs.ast).success)
      return {false, "ast engine misjudged deleted pair " +
                         std::to_string(i)};
    if (!score_pair(pair, *runs.cfg).success)
      return {false, "cfg engine misjudged deleted pair " +
                         std::to_string(i)};
    if (score_pair(pair, *runs.text).success) {
      ++text_ok;
    } else if (runs.text->diagnostics.empty()) {
      return {false, "text engine mismatch without a diagnostic on pair " +
                         std::to_string(i)};
    } else {
      ++text_logged;
    }
  }
  std::string detail = "ast 30/30, cfg 30/30, text " +
                       std::to_string(text_ok) + "/30";
  if (text_logged > 0)
    detail += " (" + std::to_string(text_logged) + " mismatches logged)";
  return {true, detail};
}

// 8. Oracle equivalence for the two matching cores.
CheckResult check_oracles() {
  std::mt19937_64 line_rng(515151);
  const std::vector<std::string> alphabet = {"a", "b", "c", ""};
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::string> a(line_rng() % 13), b(line_rng() % 13);
    for (std::string& s : a)
      s = alphabet[line_rng() % alphabet.size()];
    for (std::string& s : b)
      s = alphabet[line_rng() % alphabet.size()];
    if (diff_lines(a, b).size() != test::lcs_length(a, b))
      return {false, "diff size diverged from the LCS oracle on case " +
                         std::to_string(iter)};
  }
  std::mt19937_64 tree_rng(616161);
  for (int iter = 0; iter < 100; ++iter) {
    const Ast t1{test::random_tree(tree_rng, 10), {}};
    const Ast t2{test::random_tree(tree_rng, 10), {}};
    if (match_asts(t1, t2).size() > test::max_class_mapping(t1.root, t2.root))
      return {false, "tree mapping exceeded the oracle bound on case " +
                         std::to_string(iter)};
    const Ast copy{t1.root, {}};
    if (match_asts(t1, copy).size() != node_count(t1.root))
      return {false, "isomorphic pair did not map completely on case " +
                         std::to_string(iter)};
  }
  return {true, "200 line cases equal LCS; 100 tree cases within bound, "
                "isomorphic pairs complete"};
}

// 9. Merged-graph projection equals the directly built per-version graphs;
//    the node count is subadditive with equality iff nothing is shared.
CheckResult check_mvicfg_projection() {
  const std::string file = "src/app.c";
  static const MutationKind kMuts[] = {
      MutationKind::InsertCommentLine, MutationKind::InsertStatementBlock,
      MutationKind::DuplicateAdjacentLine, MutationKind::RenameCallee,
      MutationKind::WhitespaceReflow};
  for (int i = 0; i < 100; ++i) {
    std::string text1, text2;
    if (i % 10 == 0) {
      // Fully disjoint programs: salted names, every line tagged, so the
      // two versions share neither a line nor a function name.
      ProgramOptions salted;
      salted.name_salt = "q";
      salted.main_name = "main_q";
      salted.line_tag = "q";
      text1 = generate_program(mix_seed(3300, i)).tree.at(file);
      text2 = generate_program(mix_seed(3400, i), salted).tree.at(file);
    } else {
      const BaseProgram base = generate_program(mix_seed(3300, i));
      const GroundTruthPair pair =
          generate_pair(mix_seed(3400, i), base, PairKind::BuggyBuggy,
                        {kMuts[i % 5]});
      text1 = pair.v1_root.at(file);
      text2 = pair.v2_root.at(file);
    }
    const Ast ast1 = parse_source(text1, file);
    const Ast ast2 = parse_source(text2, file);
    const Mvicfg g1 = build_cfg(ast1, Version::V1, file);
    const Mvicfg g2 = build_cfg(ast2, Version::V2, file);
    const LineMapping mapping =
        diff_lines(split_lines(text1), split_lines(text2));
    const Mvicfg merged = build_mvicfg({g1}, {g2}, {{file, mapping}});

    if (test::version_skeleton(merged, Version::V1, file) !=
        test::version_skeleton(g1, Version::V1, file))
      return {false, "V1 projection diverged on pair " + std::to_string(i)};
    if (test::version_skeleton(merged, Version::V2, file) !=
        test::version_skeleton(g2, Version::V2, file))
      return {false, "V2 projection diverged on pair " + std::to_string(i)};

    const size_t total = g1.nodes.size() + g2.nodes.size();
    if (merged.nodes.size() > total)
      return {false, "node bound violated on pair " + std::to_string(i)};
    if (mapping.empty() != (merged.nodes.size() == total))
      return {false, "node-count equality disagrees with the mapping on "
                     "pair " +
                         std::to_string(i)};
  }
  return {true, "100 pairs: projections equal, bound tight iff the "
                "mapping is empty"};
}

// 10. Venn counts over random report triples obey set algebra.
CheckResult check_overlap_algebra() {
  std::mt19937_64 rng(717171);
  for (int iter = 0; iter < 100; ++iter) {
    const size_t n = rng() % 9;
    std::vector<Warning> universe;
    for (size_t i = 0; i < n; ++i) {
      Warning w;
      w.id = "v1:" + std::to_string(i + 1);
      w.version = Version::V1;
      w.file = "f.c";
      w.line = static_cast<int>(i + 1);
      w.condition = "CWE-0";
      universe.push_back(w);
    }
    std::set<std::string> matched_ids[3];
    CascadeReport reports[3];
    reports[0].engine = EngineKind::Text;
    reports[1].engine = EngineKind::Ast;
    reports[2].engine = EngineKind::Cfg;
    for (int k = 0; k < 3; ++k)
      for (const Warning& w : universe) {
        if (rng() % 2 == 0) {
          Warning v2 = w;
          v2.version = Version::V2;
          reports[k].matched.push_back({w, v2, false});
          matched_ids[k].insert(w.id);
        } else {
          reports[k].unmatched_v1.push_back(w);
        }
      }
    const OverlapReport overlap =
        overlap_report(reports[0], reports[1], reports[2]);

    std::set<std::string> union_matched;
    for (const auto& ids : matched_ids)
      union_matched.insert(ids.begin(), ids.end());
    const size_t by_inclusion_exclusion =
        overlap.same_bug.text + overlap.same_bug.ast + overlap.same_bug.cfg -
        overlap.same_bug.text_ast - overlap.same_bug.text_cfg -
        overlap.same_bug.ast_cfg + overlap.same_bug.all;
    if (by_inclusion_exclusion != union_matched.size())
      return {false, "inclusion-exclusion failed on triple " +
                         std::to_string(iter)};

    for (const OverlapCounts& c : {overlap.same_bug, overlap.bug_fix}) {
      const bool monotone =
          c.all <= c.text_ast && c.all <= c.text_cfg && c.all <= c.ast_cfg &&
          c.text_ast <= c.text && c.text_ast <= c.ast &&
          c.text_cfg <= c.text && c.text_cfg <= c.cfg &&
          c.ast_cfg <= c.ast && c.ast_cfg <= c.cfg;
      if (!monotone)
        return {false, "region ordering failed on triple " +
                           std::to_string(iter)};
    }
    if (overlap.same_bug.text + overlap.bug_fix.text != n ||
        overlap.same_bug.ast + overlap.bug_fix.ast != n ||
        overlap.same_bug.cfg + overlap.bug_fix.cfg != n)
      return {false, "matched/unmatched do not partition the universe on "
                     "triple " +
                         std::to_string(iter)};
  }
  return {true, "100 random triples satisfy inclusion-exclusion and "
                "region ordering"};
}

// 11. The bench subcommand is reproducible end to end.
CheckResult check_bench_determinism() {
  const auto start = std::chrono::steady_clock::now();
  const fs::path scratch =
      fs::temp_directory_path() / "warncas_acceptance_bench";
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  std::string outputs[2];
  for (int round = 0; round < 2; ++round) {
    const fs::path out = scratch / ("run" + std::to_string(round) + ".txt");
    const std::string cmd = g_cli_path + " bench --generate 12 --seed 7 > " +
                            out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      fs::remove_all(scratch);
      return {false, "bench run " + std::to_string(round) + " failed"};
    }
    outputs[round] = slurp(out);
  }
  fs::remove_all(scratch);
  if (outputs[0].empty() ||
      outputs[0].find("== totals ==\n") == std::string::npos)
    return {false, "bench summary looks wrong"};
  if (outputs[0] != outputs[1])
    return {false, "bench reruns differ"};
  const long elapsed = ms_since(start);
  if (elapsed >= 30000)
    return {false, "took " + std::to_string(elapsed) + " ms"};
  return {true, "two 12-pair runs byte-identical, " +
                    std::to_string(elapsed) + " ms"};
}

} // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: warncas_acceptance <warncas-binary>\n";
    return 64;
  }
  g_cli_path = argv[1];

  struct Check {
    int number;
    const char* title;
    CheckResult (*fn)();
  };
  const Check checks[] = {
      {1, "identity suite cascades every warning in every engine",
       check_identity_suite},
      {2, "callee rename: ast cascades, text and cfg miss",
       check_rename_fixture},
      {3, "inserted comment: ast and cfg cascade, reports stable",
       check_comment_fixture},
      {4, "inserted block: shifted warning cascades as documented",
       check_block_fixture},
      {5, "duplicated line: deterministic, one occurrence kept",
       check_duplicate_fixture},
      {6, "reindented line: cfg recovers, text reports a fix",
       check_reindent_fixture},
      {7, "deleted bug lines score as fixes across 30 pairs",
       check_buggy_fixed_suite},
      {8, "matching cores agree with their oracles", check_oracles},
      {9, "merged graph projects back to each version's graph",
       check_mvicfg_projection},
      {10, "overlap counts obey set algebra", check_overlap_algebra},
      {11, "bench reruns are byte-identical", check_bench_determinism},
  };

  int failures = 0;
  for (const Check& check : checks) {
    CheckResult result;
    try {
      result = check.fn();
    } catch (const std::exception& ex) {
      result = {false, ex.what()};
    }
    std::cout << (result.ok ? "PASS" : "FAIL") << " " << check.number << ": "
              << check.title;
    if (!result.detail.empty())
      std::cout << " (" << result.detail << ")";
    std::cout << "\n";
    failures += result.ok ? 0 : 1;
  }
  return failures;
}
