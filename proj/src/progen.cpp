//===-- progen.cpp - Seeded program synthesis ------------------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/progen.hpp"

#include <random>
#include <sstream>

namespace warncas {

uint64_t mix_seed(uint64_t base, uint64_t salt) {
  uint64_t z = base + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

class ProgramWriter {
public:
  explicit ProgramWriter(const std::string& line_tag) : tag_(line_tag) {}

  void blank() { lines_.push_back(tag_.empty() ? "" : "// " + tag_); }

  int push(const std::string& text) {
    std::string line = text;
    if (!tag_.empty())
      line += " // " + tag_;
    lines_.push_back(std::move(line));
    return static_cast<int>(lines_.size()); // 1-based line just written
  }

  int stmt(const std::string& text, std::vector<int>& warnable) {
    int line = push(text);
    warnable.push_back(line);
    return line;
  }

  std::string str() const {
    std::string out;
    for (const std::string& l : lines_) {
      out += l;
      out += '\n';
    }
    return out;
  }

private:
  std::string tag_;
  std::vector<std::string> lines_;
};

} // namespace

BaseProgram generate_program(uint64_t seed, const ProgramOptions& options) {
  std::mt19937_64 rng(seed);
  // Modulo draws keep generation identical across standard libraries;
  // distribution objects would not guarantee that.
  auto draw = [&rng](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1));
  };
  auto name_suffix = [&]() {
    std::string s;
    for (int i = 0; i < 4; ++i)
      s += static_cast<char>('a' + draw(0, 25));
    return s + options.name_salt;
  };

  const std::string a = name_suffix(), b = name_suffix(), c = name_suffix();
  const int k_add = draw(1, 99), k_cmp = draw(100, 199), k_sub = draw(1, 9);
  const int k_init = draw(1, 49), k_bound = draw(3, 12), k_slot = draw(1, 99);
  const int k_arg = draw(1, 99);
  const int extra = options.extra_statements >= 0 ? options.extra_statements
                                                  : draw(0, 3);

  BaseProgram prog;
  prog.file = options.file;
  prog.bug_condition = "CWE-476";
  prog.bug_callee = "store_result_" + b;

  ProgramWriter w(options.line_tag);
  std::vector<int>& warnable = prog.stmt_lines;

  w.push("#include <stdio.h>");
  w.blank();
  w.push("int helper_" + a + "(int arg_" + a + ") {");
  w.stmt("    int local_" + a + " = arg_" + a + " + " +
             std::to_string(k_add) + ";",
         warnable);
  w.push("    if (local_" + a + " > " + std::to_string(k_cmp) + ") {");
  w.stmt("        local_" + a + " = local_" + a + " - " +
             std::to_string(k_sub) + ";",
         warnable);
  w.push("    }");
  w.push("    return local_" + a + ";");
  w.push("}");
  w.blank();
  w.push("int compute_" + b + "(int seed_" + b + ") {");
  w.stmt("    int acc_" + b + " = seed_" + b + " + " +
             std::to_string(k_init) + ";",
         warnable);
  for (int i = 0; i < extra; ++i)
    w.stmt("    int spare_" + b + "_" + std::to_string(i) + " = " +
               std::to_string(draw(1, 99)) + ";",
           warnable);
  w.stmt("    int i_" + b + " = 0;", warnable);
  w.push("    while (i_" + b + " < " + std::to_string(k_bound) + ") {");
  w.stmt("        acc_" + b + " = acc_" + b + " + i_" + b + ";", warnable);
  w.stmt("        i_" + b + " = i_" + b + " + 1;", warnable);
  w.push("    }");
  prog.bug_line = w.push("    " + prog.bug_callee + "(make_slot_" + b + "(acc_" +
                         b + ", " + std::to_string(k_slot) + "), acc_" + b +
                         ");");
  w.push("    return acc_" + b + ";");
  w.push("}");
  w.blank();
  w.push("int " + options.main_name + "() {");
  w.stmt("    int value_" + c + " = compute_" + b + "(" +
             std::to_string(k_arg) + ");",
         warnable);
  w.stmt("    int final_" + c + " = helper_" + a + "(value_" + c + ");",
         warnable);
  w.stmt("    report_" + c + "(final_" + c + ");", warnable);
  w.push("    return 0;");
  w.push("}");

  prog.tree[prog.file] = w.str();
  return prog;
}

} // namespace warncas
