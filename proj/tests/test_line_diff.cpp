//===-- test_line_diff.cpp - Line diff, hunks, and text cascade -------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/line_diff.hpp"
#include "warncas/warning.hpp"

#include "oracles.hpp"

#include "doctest.h"

#include <random>
#include <string>
#include <vector>

using namespace warncas;

namespace {

std::vector<std::string> lines(std::initializer_list<const char*> xs) {
  return std::vector<std::string>(xs.begin(), xs.end());
}

} // namespace

TEST_CASE("diff_lines pairs identical lines around an insertion") {
  const LineMapping m = diff_lines(lines({"a", "b", "c"}),
                                   lines({"a", "x", "b", "c"}));
  const std::vector<std::pair<int, int>> want{{1, 1}, {2, 3}, {3, 4}};
  CHECK(m.pairs() == want);
  CHECK(m.dst(2) == 3);
  CHECK(m.src(3) == 2);
  CHECK_FALSE(m.dst(4).has_value());
  CHECK_FALSE(m.src(2).has_value());
}

TEST_CASE("diff_lines trivial inputs") {
  CHECK(diff_lines({}, {}).empty());
  CHECK(diff_lines(lines({"a"}), {}).empty());
  CHECK(diff_lines({}, lines({"a"})).empty());

  const LineMapping same = diff_lines(lines({"a", "b"}), lines({"a", "b"}));
  const std::vector<std::pair<int, int>> want{{1, 1}, {2, 2}};
  CHECK(same.pairs() == want);
  CHECK(hunks(same, 2, 2).empty());
}

TEST_CASE("diff_lines resolves ties to the topmost match") {
  const LineMapping dup = diff_lines(lines({"s"}), lines({"s", "s"}));
  const std::vector<std::pair<int, int>> want1{{1, 1}};
  CHECK(dup.pairs() == want1);

  const LineMapping dup2 = diff_lines(lines({"s", "s"}), lines({"s"}));
  CHECK(dup2.pairs() == want1);

  const LineMapping shifted = diff_lines(lines({"x", "a", "a"}), lines({"a"}));
  const std::vector<std::pair<int, int>> want2{{2, 1}};
  CHECK(shifted.pairs() == want2);
}

TEST_CASE("hunks reports the changed regions between matches") {
  // Middle line replaced by two lines.
  const std::vector<Hunk> hs = hunks(LineMapping({{1, 1}, {3, 4}}), 3, 4);
  REQUIRE(hs.size() == 1);
  CHECK(hs[0].old_start == 2);
  CHECK(hs[0].old_count == 1);
  CHECK(hs[0].new_start == 2);
  CHECK(hs[0].new_count == 2);

  // Everything differs: one hunk covering both files.
  const std::vector<Hunk> all = hunks(LineMapping(), 2, 3);
  REQUIRE(all.size() == 1);
  CHECK(all[0].old_start == 1);
  CHECK(all[0].old_count == 2);
  CHECK(all[0].new_start == 1);
  CHECK(all[0].new_count == 3);

  // Pure deletion at the tail.
  const std::vector<Hunk> tail = hunks(LineMapping({{1, 1}}), 2, 1);
  REQUIRE(tail.size() == 1);
  CHECK(tail[0].old_start == 2);
  CHECK(tail[0].old_count == 1);
  CHECK(tail[0].new_count == 0);
}

TEST_CASE("dump_diff lists hunks then the full mapping") {
  const std::vector<std::string> a = lines({"keep", "drop"});
  const std::vector<std::string> b = lines({"keep", "add"});
  const std::string out = dump_diff(a, b, diff_lines(a, b));
  CHECK(out == "@@ -2,1 +2,1 @@\n-drop\n+add\nMAP 1 -> 1\n");
}

TEST_CASE("diff_lines is a topmost maximal matching on random inputs") {
  std::mt19937_64 rng(20260819);
  const std::vector<std::string> alphabet{"a", "b", "c", ""};
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::string> a(rng() % 13), b(rng() % 13);
    for (std::string& s : a)
      s = alphabet[rng() % alphabet.size()];
    for (std::string& s : b)
      s = alphabet[rng() % alphabet.size()];

    const LineMapping m = diff_lines(a, b);
    // Maximality: a diff keeps exactly an LCS worth of lines.
    CHECK(m.size() == test::lcs_length(a, b));
    // Validity: strictly increasing coordinates over equal lines.
    int pi = 0, pj = 0;
    for (const auto& [i, j] : m.pairs()) {
      CHECK(i > pi);
      CHECK(j > pj);
      REQUIRE(i >= 1);
      REQUIRE(j >= 1);
      REQUIRE(i <= static_cast<int>(a.size()));
      REQUIRE(j <= static_cast<int>(b.size()));
      CHECK(a[i - 1] == b[j - 1]);
      pi = i, pj = j;
    }
    CHECK(test::is_topmost(a, b, m));
  }
}

TEST_CASE("cascade_text matches through the file's line mapping") {
  const std::string w1 = "t\tf.c\t2\tC1\told hit\n"  // maps 2 -> 3, matched
                         "t\tf.c\t2\tC2\tcond diff\n" // same line, no C2 in V2
                         "t\tf.c\t5\tC1\tunmapped\n"  // line 5 not in mapping
                         "t\tg.c\t1\tC1\tno map\n";   // file absent from V2
  const std::string w2 = "t\tf.c\t3\tC1\tnew hit\n"
                         "t\tf.c\t9\tC9\tfresh\n"
                         "t\tg.c\t1\tC1\tleftover\n";
  const WarningSet ws1 = parse_warnings(w1, Version::V1);
  const WarningSet ws2 = parse_warnings(w2, Version::V2);

  std::map<std::string, LineMapping> mappings;
  mappings.emplace("f.c", LineMapping({{1, 1}, {2, 3}}));

  const CascadeReport r = cascade_text(ws1, ws2, mappings);
  CHECK(r.engine == EngineKind::Text);
  REQUIRE(r.matched.size() == 1);
  CHECK(r.matched[0].v1.id == "v1:1");
  CHECK(r.matched[0].v2.id == "v2:1");
  CHECK_FALSE(r.matched[0].recovered);

  REQUIRE(r.unmatched_v1.size() == 3);
  CHECK(r.unmatched_v1[0].id == "v1:2");
  CHECK(r.unmatched_v1[1].id == "v1:3");
  CHECK(r.unmatched_v1[2].id == "v1:4");
  REQUIRE(r.unmatched_v2.size() == 2);
  CHECK(r.unmatched_v2[0].id == "v2:2");
  CHECK(r.unmatched_v2[1].id == "v2:3");

  REQUIRE(r.diagnostics.size() == 1);
  CHECK(r.diagnostics[0] ==
        "no line mapping for g.c (file missing from a version); "
        "warning v1:4 treated as unmatched");
}
