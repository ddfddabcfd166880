//===-- progen.hpp - Deterministic mini-C program generation --------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Seeded generator for small, well-formed mini-C programs used as ground
// truth: every program carries one designated bug statement (a nested call
// whose warning the harness tracks) plus a set of plain statement lines
// where synthetic noise warnings can be placed.
//
//===----------------------------------------------------------------------===//

#ifndef WARNCAS_PROGEN_HPP
#define WARNCAS_PROGEN_HPP

#include "warncas/source_tree.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace warncas {

struct ProgramOptions {
  std::string file = "src/app.c";
  /// Appended to every generated identifier suffix; lets callers force two
  /// programs to have disjoint name sets regardless of seed.
  std::string name_salt;
  /// Name of the entry-point function.
  std::string main_name = "main";
  /// When non-empty, every non-blank line gets a trailing `// <tag>`
  /// comment and blank lines become `// <tag>`; used to force two programs
  /// to share no line at all (comments never change the syntax tree).
  std::string line_tag;
  /// Extra straight-line statements ahead of the bug statement; -1 draws
  /// 0..3 from the seed.
  int extra_statements = -1;
};

struct BaseProgram {
  SourceTree tree;
  std::string file;
  /// Line of the designated bug statement.
  int bug_line = 0;
  /// Checker condition the tracked bug warning carries.
  std::string bug_condition;
  /// Callee name of the bug statement's outer call (rename target).
  std::string bug_callee;
  /// Plain single-statement lines (bug line excluded) eligible for noise
  /// warnings; one CFG node each, so embedding stays unambiguous.
  std::vector<int> stmt_lines;
};

/// Deterministic: equal seed and options give a byte-identical program.
BaseProgram generate_program(uint64_t seed, const ProgramOptions& options = {});

/// splitmix64 step; the harness derives per-pair seeds with it.
uint64_t mix_seed(uint64_t base, uint64_t salt);

} // namespace warncas

#endif // WARNCAS_PROGEN_HPP
