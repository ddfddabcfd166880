//===-- harness.cpp - Ground-truth mutation and scoring --------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/harness.hpp"

#include "warncas/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace fs = std::filesystem;

namespace warncas {

std::string to_string(MutationKind kind) {
  switch (kind) {
  case MutationKind::RenameCallee: return "RenameCallee";
  case MutationKind::InsertCommentLine: return "InsertCommentLine";
  case MutationKind::InsertStatementBlock: return "InsertStatementBlock";
  case MutationKind::DuplicateAdjacentLine: return "DuplicateAdjacentLine";
  case MutationKind::WhitespaceReflow: return "WhitespaceReflow";
  case MutationKind::DeleteBugLine: return "DeleteBugLine";
  }
  return "?";
}

std::string to_string(PairKind kind) {
  return kind == PairKind::BuggyBuggy ? "BuggyBuggy" : "BuggyFixed";
}

namespace {

const char* const kNoiseConditions[] = {"CWE-119", "CWE-190", "CWE-401",
                                        "CWE-457", "CWE-590"};
constexpr size_t kNoiseConditionCount =
    sizeof(kNoiseConditions) / sizeof(kNoiseConditions[0]);

Warning make_warning(Version version, const std::string& file, int line,
                     const std::string& condition, const std::string& message) {
  Warning w;
  w.version = version;
  w.file = file;
  w.line = line;
  w.condition = condition;
  w.message = message;
  w.tools.insert("synth");
  return w;
}

// Sort by line (conditions only break impossible ties) and assign the same
// ordinal ids parse_warnings would assign, so a pair written to disk and
// read back produces identical reports.
WarningSet finish_warning_set(Version version, std::vector<Warning> warnings) {
  std::sort(warnings.begin(), warnings.end(),
            [](const Warning& a, const Warning& b) {
              return std::tie(a.line, a.condition) <
                     std::tie(b.line, b.condition);
            });
  WarningSet ws;
  ws.version = version;
  for (size_t i = 0; i < warnings.size(); ++i) {
    warnings[i].id =
        std::string(to_string(version)) + ":" + std::to_string(i + 1);
    ws.warnings.push_back(std::move(warnings[i]));
  }
  return ws;
}

} // namespace

GroundTruthPair generate_pair(uint64_t seed, const BaseProgram& base,
                              PairKind kind,
                              const std::vector<MutationKind>& mutations) {
  const size_t deletes =
      static_cast<size_t>(std::count(mutations.begin(), mutations.end(),
                                     MutationKind::DeleteBugLine));
  if (kind == PairKind::BuggyBuggy && deletes > 0)
    throw ConfigError("DeleteBugLine is only valid in a buggy-fixed pair");
  if (kind == PairKind::BuggyFixed && deletes == 0)
    throw ConfigError("a buggy-fixed pair requires a DeleteBugLine mutation");
  if (deletes > 1 ||
      (deletes == 1 && mutations.back() != MutationKind::DeleteBugLine))
    throw ConfigError("DeleteBugLine must be the final mutation");

  auto file_it = base.tree.find(base.file);
  if (file_it == base.tree.end())
    throw ConfigError("base program tree lacks its bug file: " + base.file);
  std::vector<std::string> lines = split_lines(file_it->second);
  if (base.bug_line < 1 || base.bug_line > static_cast<int>(lines.size()))
    throw ConfigError("bug line " + std::to_string(base.bug_line) +
                      " is outside " + base.file);

  std::mt19937_64 rng(seed);
  auto draw = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };

  // Noise warnings on 1..3 distinct plain-statement lines, conditions cycled
  // from a pool disjoint with the bug condition so recovery searches cannot
  // cross-match noise to the tracked bug.
  size_t noise_count = static_cast<size_t>(draw(1, 3));
  noise_count = std::min(noise_count, base.stmt_lines.size());
  std::set<size_t> noise_indices;
  while (noise_indices.size() < noise_count && !base.stmt_lines.empty())
    noise_indices.insert(rng() % base.stmt_lines.size());
  std::vector<int> noise_v1;
  for (size_t idx : noise_indices)
    noise_v1.push_back(base.stmt_lines[idx]);
  std::sort(noise_v1.begin(), noise_v1.end());

  // Mutable line markers tracked through every insertion/deletion below.
  std::optional<int> bug2 = base.bug_line;
  std::vector<int> noise_v2 = noise_v1;
  std::optional<int> dup_copy;

  auto shift_insert = [&](int at, int count) {
    auto adjust = [&](int& line) {
      if (line >= at)
        line += count;
    };
    if (bug2)
      adjust(*bug2);
    for (int& line : noise_v2)
      adjust(line);
    if (dup_copy)
      adjust(*dup_copy);
  };
  auto shift_delete = [&](int at) {
    auto adjust = [&](int& line) {
      if (line > at)
        line -= 1;
    };
    for (int& line : noise_v2)
      adjust(line);
    if (dup_copy)
      adjust(*dup_copy);
  };

  GroundTruthPair pair;
  pair.kind = kind;
  pair.v1_root = base.tree;
  pair.bug_file = base.file;
  pair.bug_line_v1 = base.bug_line;
  pair.bug_condition = base.bug_condition;

  for (MutationKind mk : mutations) {
    // The delete-last validation above keeps the bug marker alive here.
    const int at = *bug2;
    pair.mutation_trace.push_back(to_string(mk) + "@" + std::to_string(at));
    switch (mk) {
    case MutationKind::RenameCallee: {
      std::string& line = lines[static_cast<size_t>(at - 1)];
      size_t pos = line.find(base.bug_callee);
      if (pos == std::string::npos)
        throw ConfigError("RenameCallee: no call to '" + base.bug_callee +
                          "' at " + base.file + ":" + std::to_string(at));
      line.insert(pos, "checked_");
      break;
    }
    case MutationKind::InsertCommentLine: {
      lines.insert(lines.begin() + (at - 1),
                   "    /* note " + std::to_string(draw(1, 99)) + " */");
      shift_insert(at, 1);
      break;
    }
    case MutationKind::InsertStatementBlock: {
      const int count = draw(2, 4);
      std::string suffix;
      for (int i = 0; i < 4; ++i)
        suffix += static_cast<char>('a' + draw(0, 25));
      std::vector<std::string> block;
      for (int i = 0; i < count; ++i)
        block.push_back("    int pad_" + suffix + "_" + std::to_string(i) +
                        " = " + std::to_string(draw(1, 99)) + ";");
      lines.insert(lines.begin() + (at - 1), block.begin(), block.end());
      shift_insert(at, count);
      break;
    }
    case MutationKind::DuplicateAdjacentLine: {
      lines.insert(lines.begin() + (at - 1), lines[static_cast<size_t>(at - 1)]);
      shift_insert(at, 1);
      dup_copy = at;
      break;
    }
    case MutationKind::WhitespaceReflow: {
      lines[static_cast<size_t>(at - 1)].insert(0, "    ");
      break;
    }
    case MutationKind::DeleteBugLine: {
      lines.erase(lines.begin() + (at - 1));
      bug2.reset();
      shift_delete(at);
      break;
    }
    }
  }

  std::string v2_text;
  for (const std::string& line : lines) {
    v2_text += line;
    v2_text += '\n';
  }
  pair.v2_root = base.tree;
  pair.v2_root[base.file] = v2_text;
  pair.bug_line_v2 = bug2;

  std::vector<Warning> w1;
  w1.push_back(make_warning(Version::V1, base.file, base.bug_line,
                            base.bug_condition,
                            "possible null pointer dereference"));
  std::vector<Warning> w2;
  if (bug2)
    w2.push_back(make_warning(Version::V2, base.file, *bug2,
                              base.bug_condition,
                              "possible null pointer dereference"));
  if (dup_copy)
    w2.push_back(make_warning(Version::V2, base.file, *dup_copy,
                              base.bug_condition,
                              "possible null pointer dereference"));
  for (size_t i = 0; i < noise_v1.size(); ++i) {
    const std::string condition = kNoiseConditions[i % kNoiseConditionCount];
    w1.push_back(make_warning(Version::V1, base.file, noise_v1[i], condition,
                              "synthetic finding"));
    w2.push_back(make_warning(Version::V2, base.file, noise_v2[i], condition,
                              "synthetic finding"));
  }
  pair.ws1 = finish_warning_set(Version::V1, std::move(w1));
  pair.ws2 = finish_warning_set(Version::V2, std::move(w2));
  return pair;
}

ScoreResult score_pair(const GroundTruthPair& pair,
                       const CascadeReport& report) {
  if ((pair.kind == PairKind::BuggyBuggy) != pair.bug_line_v2.has_value())
    throw ConfigError("ground-truth pair violates its bug_line_v2 invariant");

  auto is_bug = [&](const Warning& w) {
    return w.file == pair.bug_file && w.line == pair.bug_line_v1 &&
           w.condition == pair.bug_condition;
  };
  const MatchedPair* matched = nullptr;
  for (const MatchedPair& m : report.matched)
    if (is_bug(m.v1)) {
      matched = &m;
      break;
    }
  bool in_unmatched = false;
  for (const Warning& w : report.unmatched_v1)
    if (is_bug(w)) {
      in_unmatched = true;
      break;
    }
  if (!matched && !in_unmatched)
    throw ConfigError("cascade report does not contain the tracked bug "
                      "warning at " +
                      pair.bug_file + ":" + std::to_string(pair.bug_line_v1));

  ScoreResult result;
  std::ostringstream reason;
  if (pair.kind == PairKind::BuggyBuggy) {
    if (!matched) {
      reason << "bug warning was not cascaded";
    } else if (matched->v2.file == pair.bug_file &&
               matched->v2.line == *pair.bug_line_v2) {
      result.success = true;
      reason << "cascaded to the tracked bug line " << matched->v2.line;
    } else {
      reason << "matched to " << matched->v2.file << ":" << matched->v2.line
             << ", expected line " << *pair.bug_line_v2;
    }
  } else {
    if (matched) {
      reason << "matched to " << matched->v2.file << ":" << matched->v2.line
             << " despite the fix";
    } else {
      result.success = true;
      reason << "bug warning correctly reported as a fix";
    }
  }
  result.reason = reason.str();
  return result;
}

EngineRunResult run_all_engines(const GroundTruthPair& pair,
                                const MatchParams& params) {
  EngineInput input;
  input.v1 = pair.v1_root;
  input.v2 = pair.v2_root;
  input.ws1 = pair.ws1;
  input.ws2 = pair.ws2;
  input.params = params;
  return run_all_engines(input);
}

namespace {

std::set<std::string> matched_v1_ids(const CascadeReport& report) {
  std::set<std::string> ids;
  for (const MatchedPair& m : report.matched)
    ids.insert(m.v1.id);
  return ids;
}

std::set<std::string> unmatched_v1_ids(const CascadeReport& report) {
  std::set<std::string> ids;
  for (const Warning& w : report.unmatched_v1)
    ids.insert(w.id);
  return ids;
}

std::set<std::string> set_union(const std::set<std::string>& a,
                                const std::set<std::string>& b) {
  std::set<std::string> out = a;
  out.insert(b.begin(), b.end());
  return out;
}

size_t isect2(const std::set<std::string>& a, const std::set<std::string>& b) {
  size_t n = 0;
  for (const std::string& s : a)
    n += b.count(s);
  return n;
}

size_t isect3(const std::set<std::string>& a, const std::set<std::string>& b,
              const std::set<std::string>& c) {
  size_t n = 0;
  for (const std::string& s : a)
    if (b.count(s) && c.count(s))
      ++n;
  return n;
}

OverlapCounts venn(const std::set<std::string>& text,
                   const std::set<std::string>& ast,
                   const std::set<std::string>& cfg) {
  OverlapCounts counts;
  counts.text = text.size();
  counts.ast = ast.size();
  counts.cfg = cfg.size();
  counts.text_ast = isect2(text, ast);
  counts.text_cfg = isect2(text, cfg);
  counts.ast_cfg = isect2(ast, cfg);
  counts.all = isect3(text, ast, cfg);
  return counts;
}

} // namespace

OverlapReport overlap_report(const CascadeReport& r_text,
                             const CascadeReport& r_ast,
                             const CascadeReport& r_cfg) {
  const auto m_text = matched_v1_ids(r_text), m_ast = matched_v1_ids(r_ast),
             m_cfg = matched_v1_ids(r_cfg);
  const auto u_text = unmatched_v1_ids(r_text), u_ast = unmatched_v1_ids(r_ast),
             u_cfg = unmatched_v1_ids(r_cfg);
  const auto all_text = set_union(m_text, u_text);
  if (all_text != set_union(m_ast, u_ast) ||
      all_text != set_union(m_cfg, u_cfg))
    throw ConfigError(
        "overlap report needs all three reports over the same V1 warnings");

  OverlapReport report;
  report.same_bug = venn(m_text, m_ast, m_cfg);
  report.bug_fix = venn(u_text, u_ast, u_cfg);
  return report;
}

namespace {

struct PairJob {
  std::string name;
  std::string label;
  bool skipped = false;
  std::string skip_reason;
  GroundTruthPair pair;
};

std::string label_from_trace(const std::vector<std::string>& trace) {
  if (trace.empty())
    return "none";
  const std::string& first = trace.front();
  return first.substr(0, first.find('@'));
}

PairOutcome evaluate_pair(const PairJob& job, const MatchParams& params) {
  PairOutcome outcome;
  outcome.name = job.name;
  outcome.label = job.label;
  if (job.skipped) {
    outcome.skipped = true;
    outcome.skip_reason = job.skip_reason;
    return outcome;
  }
  const EngineRunResult runs = run_all_engines(job.pair, params);
  auto score_one = [&](const std::optional<CascadeReport>& report,
                       const std::string& engine, std::optional<bool>& success,
                       std::string& reason) {
    if (!report) {
      for (const std::string& error : runs.errors)
        if (error.rfind(engine + ":", 0) == 0)
          reason = error;
      if (reason.empty())
        reason = engine + ": engine produced no report";
      return;
    }
    try {
      const ScoreResult scored = score_pair(job.pair, *report);
      success = scored.success;
      reason = scored.reason;
    } catch (const std::exception& ex) {
      success = false;
      reason = ex.what();
    }
  };
  score_one(runs.text, "text", outcome.text_success, outcome.text_reason);
  score_one(runs.ast, "ast", outcome.ast_success, outcome.ast_reason);
  score_one(runs.cfg, "cfg", outcome.cfg_success, outcome.cfg_reason);
  return outcome;
}

char outcome_letter(const std::optional<bool>& success) {
  if (!success)
    return 'E';
  return *success ? 'S' : 'F';
}

std::string render_summary(const std::vector<PairOutcome>& outcomes) {
  struct Tally {
    int text_ok = 0, ast_ok = 0, cfg_ok = 0, total = 0;
  };
  std::map<std::string, Tally> by_label;
  Tally totals;

  std::ostringstream os;
  os << "== pairs ==\n";
  for (const PairOutcome& o : outcomes) {
    if (o.skipped) {
      os << o.name << " skipped: " << o.skip_reason << "\n";
      continue;
    }
    os << o.name << " " << o.label << " text=" << outcome_letter(o.text_success)
       << " ast=" << outcome_letter(o.ast_success)
       << " cfg=" << outcome_letter(o.cfg_success) << "\n";
    for (Tally* t : {&by_label[o.label], &totals}) {
      t->total += 1;
      t->text_ok += o.text_success.value_or(false) ? 1 : 0;
      t->ast_ok += o.ast_success.value_or(false) ? 1 : 0;
      t->cfg_ok += o.cfg_success.value_or(false) ? 1 : 0;
    }
  }
  os << "== by mutation ==\n";
  for (const auto& [label, t] : by_label)
    os << label << " text " << t.text_ok << "/" << t.total << " ast "
       << t.ast_ok << "/" << t.total << " cfg " << t.cfg_ok << "/" << t.total
       << "\n";
  os << "== totals ==\n";
  os << "text " << totals.text_ok << "/" << totals.total << "\n";
  os << "ast " << totals.ast_ok << "/" << totals.total << "\n";
  os << "cfg " << totals.cfg_ok << "/" << totals.total << "\n";
  return os.str();
}

} // namespace

BenchResult run_bench(const BenchOptions& options) {
  std::vector<PairJob> jobs;

  if (!options.suite_dir.empty()) {
    const fs::path root(options.suite_dir);
    if (!fs::is_directory(root))
      throw ConfigError("bench suite directory not found: " +
                        options.suite_dir);
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(root))
      if (entry.is_directory())
        names.push_back(entry.path().filename().string());
    std::sort(names.begin(), names.end());
    for (const std::string& name : names) {
      PairJob job;
      job.name = name;
      try {
        job.pair = read_pair_dir((root / name).string());
        job.label = label_from_trace(job.pair.mutation_trace);
      } catch (const std::exception& ex) {
        job.skipped = true;
        job.skip_reason = ex.what();
      }
      jobs.push_back(std::move(job));
    }
  } else {
    if (options.generate <= 0)
      throw ConfigError("bench needs a suite directory or a generate count");
    static const MutationKind kCycle[] = {
        MutationKind::InsertCommentLine,   MutationKind::InsertStatementBlock,
        MutationKind::DuplicateAdjacentLine, MutationKind::RenameCallee,
        MutationKind::WhitespaceReflow,    MutationKind::DeleteBugLine,
    };
    for (int i = 0; i < options.generate; ++i) {
      const uint64_t pair_seed =
          mix_seed(options.seed, static_cast<uint64_t>(i));
      const MutationKind mk = kCycle[i % 6];
      const PairKind pk = mk == MutationKind::DeleteBugLine
                              ? PairKind::BuggyFixed
                              : PairKind::BuggyBuggy;
      PairJob job;
      job.label = to_string(mk);
      std::ostringstream name;
      name << "gen-" << std::setw(2) << std::setfill('0') << (i + 1) << "-"
           << job.label;
      job.name = name.str();
      try {
        const BaseProgram base = generate_program(pair_seed);
        job.pair = generate_pair(mix_seed(pair_seed, 1), base, pk, {mk});
        if (!options.emit_dir.empty())
          write_pair_dir((fs::path(options.emit_dir) / job.name).string(),
                         job.pair);
      } catch (const std::exception& ex) {
        job.skipped = true;
        job.skip_reason = ex.what();
      }
      jobs.push_back(std::move(job));
    }
  }

  BenchResult result;
  result.outcomes.resize(jobs.size());
  const size_t concurrency =
      static_cast<size_t>(std::max(1, options.jobs));
  if (concurrency <= 1) {
    for (size_t i = 0; i < jobs.size(); ++i)
      result.outcomes[i] = evaluate_pair(jobs[i], options.params);
  } else {
    // Pairs are independent; batches keep the thread count bounded while
    // index-ordered collection keeps the summary deterministic.
    for (size_t start = 0; start < jobs.size(); start += concurrency) {
      const size_t end = std::min(jobs.size(), start + concurrency);
      std::vector<std::future<PairOutcome>> batch;
      for (size_t i = start; i < end; ++i)
        batch.push_back(std::async(std::launch::async, [&jobs, &options, i] {
          return evaluate_pair(jobs[i], options.params);
        }));
      for (size_t i = start; i < end; ++i)
        result.outcomes[i] = batch[i - start].get();
    }
  }
  result.summary = render_summary(result.outcomes);
  return result;
}

namespace {

void write_text_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ConfigError("cannot write " + path.string());
  out << content;
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

void write_pair_dir(const std::string& dir, const GroundTruthPair& pair) {
  const fs::path root(dir);
  write_source_tree(pair.v1_root, root / "v1");
  write_source_tree(pair.v2_root, root / "v2");
  write_text_file(root / "warnings_v1.tsv", format_warnings(pair.ws1));
  write_text_file(root / "warnings_v2.tsv", format_warnings(pair.ws2));

  nlohmann::json meta;
  meta["bug_condition"] = pair.bug_condition;
  meta["bug_file"] = pair.bug_file;
  meta["bug_line_v1"] = pair.bug_line_v1;
  if (pair.bug_line_v2)
    meta["bug_line_v2"] = *pair.bug_line_v2;
  else
    meta["bug_line_v2"] = nullptr;
  meta["kind"] = to_string(pair.kind);
  meta["mutation_trace"] = pair.mutation_trace;
  write_text_file(root / "meta.json", meta.dump(2) + "\n");
}

GroundTruthPair read_pair_dir(const std::string& dir) {
  const fs::path root(dir);
  GroundTruthPair pair;
  pair.v1_root = load_source_tree(root / "v1");
  pair.v2_root = load_source_tree(root / "v2");
  pair.ws1 = load_warnings(root / "warnings_v1.tsv", Version::V1);
  pair.ws2 = load_warnings(root / "warnings_v2.tsv", Version::V2);

  const std::string meta_text = read_text_file(root / "meta.json");
  try {
    const nlohmann::json meta = nlohmann::json::parse(meta_text);
    const std::string kind = meta.at("kind").get<std::string>();
    if (kind == "BuggyBuggy")
      pair.kind = PairKind::BuggyBuggy;
    else if (kind == "BuggyFixed")
      pair.kind = PairKind::BuggyFixed;
    else
      throw ConfigError("meta.json in " + dir + " has unknown kind: " + kind);
    pair.bug_file = meta.at("bug_file").get<std::string>();
    pair.bug_line_v1 = meta.at("bug_line_v1").get<int>();
    if (!meta.at("bug_line_v2").is_null())
      pair.bug_line_v2 = meta.at("bug_line_v2").get<int>();
    pair.bug_condition = meta.at("bug_condition").get<std::string>();
    pair.mutation_trace =
        meta.at("mutation_trace").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError("malformed meta.json in " + dir + ": " + ex.what());
  }
  if ((pair.kind == PairKind::BuggyBuggy) != pair.bug_line_v2.has_value())
    throw ConfigError("meta.json in " + dir +
                      " breaks the bug_line_v2/kind invariant");
  return pair;
}

} // namespace warncas
