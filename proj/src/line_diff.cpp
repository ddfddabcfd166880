//===-- line_diff.cpp - Myers line diff with topmost normalization --------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// Classic O(ND) middle-snake divide and conquer over interned lines, followed
// by a normalization pass that slides every matched pair upward to the
// earliest equal position. The slide makes tie-breaking deterministic and
// topmost without paying the O(nm) cost of a full DP table.
//
//===----------------------------------------------------------------------===//

#include "warncas/line_diff.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace warncas {

std::optional<int> LineMapping::dst(int old_line) const {
  auto it = std::lower_bound(
      pairs_.begin(), pairs_.end(), old_line,
      [](const std::pair<int, int>& p, int v) { return p.first < v; });
  if (it != pairs_.end() && it->first == old_line)
    return it->second;
  return std::nullopt;
}

std::optional<int> LineMapping::src(int new_line) const {
  // Second coordinates are also strictly increasing.
  auto it = std::lower_bound(
      pairs_.begin(), pairs_.end(), new_line,
      [](const std::pair<int, int>& p, int v) { return p.second < v; });
  if (it != pairs_.end() && it->second == new_line)
    return it->first;
  return std::nullopt;
}

namespace {

std::vector<int> intern(const std::vector<std::string>& a,
                        const std::vector<std::string>& b,
                        std::vector<int>& out_b) {
  std::map<std::string, int> ids;
  auto id_of = [&ids](const std::string& s) {
    auto [it, _] = ids.emplace(s, static_cast<int>(ids.size()));
    return it->second;
  };
  std::vector<int> out_a;
  out_a.reserve(a.size());
  for (const auto& s : a)
    out_a.push_back(id_of(s));
  out_b.reserve(b.size());
  for (const auto& s : b)
    out_b.push_back(id_of(s));
  return out_a;
}

// Myers middle-snake divide and conquer. Appends matched (i, j) index pairs
// (0-based into a/b) in increasing order.
class MyersDiff {
public:
  MyersDiff(const std::vector<int>& a, const std::vector<int>& b)
      : a_(a), b_(b) {
    size_t cap = 2 * (a.size() + b.size()) + 3;
    vf_.resize(cap, 0);
    vb_.resize(cap, 0);
  }

  void run(std::vector<std::pair<int, int>>& out) {
    solve(0, static_cast<int>(a_.size()), 0, static_cast<int>(b_.size()), out);
  }

private:
  const std::vector<int>& a_;
  const std::vector<int>& b_;
  std::vector<int> vf_, vb_;

  void solve(int a0, int a1, int b0, int b1,
             std::vector<std::pair<int, int>>& out) {
    // Strip the common prefix and suffix first; they are always part of
    // some maximal alignment and keep the recursion small.
    while (a0 < a1 && b0 < b1 && a_[a0] == b_[b0]) {
      out.emplace_back(a0, b0);
      ++a0;
      ++b0;
    }
    int suffix = 0;
    while (a0 < a1 - suffix && b0 < b1 - suffix &&
           a_[a1 - 1 - suffix] == b_[b1 - 1 - suffix])
      ++suffix;
    int sa1 = a1 - suffix, sb1 = b1 - suffix;

    if (a0 < sa1 && b0 < sb1) {
      int mx, my;
      find_middle(a0, sa1, b0, sb1, mx, my);
      solve(a0, mx, b0, my, out);
      solve(mx, sa1, my, sb1, out);
    }

    for (int k = suffix; k > 0; --k)
      out.emplace_back(a1 - k, b1 - k);
  }

  // Standard forward/backward O(ND) search meeting in the middle; yields a
  // point (mx, my) splitting the problem on a shortest edit script.
  void find_middle(int a0, int a1, int b0, int b1, int& mx, int& my) {
    int n = a1 - a0, m = b1 - b0;
    int delta = n - m;
    bool odd = (delta & 1) != 0;
    int offset = n + m + 1;
    int max_d = (n + m + 1) / 2 + 1;

    vf_[offset + 1] = 0;
    vb_[offset + 1] = 0;
    for (int d = 0; d <= max_d; ++d) {
      for (int k = -d; k <= d; k += 2) {
        int x;
        if (k == -d || (k != d && vf_[offset + k - 1] < vf_[offset + k + 1]))
          x = vf_[offset + k + 1];
        else
          x = vf_[offset + k - 1] + 1;
        int y = x - k;
        while (x < n && y < m && a_[a0 + x] == b_[b0 + y]) {
          ++x;
          ++y;
        }
        vf_[offset + k] = x;
        if (odd && delta - k >= -(d - 1) && delta - k <= d - 1 &&
            x + vb_[offset + delta - k] >= n) {
          mx = a0 + x;
          my = b0 + y;
          return;
        }
      }
      for (int k = -d; k <= d; k += 2) {
        int x;
        if (k == -d || (k != d && vb_[offset + k - 1] < vb_[offset + k + 1]))
          x = vb_[offset + k + 1];
        else
          x = vb_[offset + k - 1] + 1;
        int y = x - k;
        while (x < n && y < m && a_[a1 - 1 - x] == b_[b1 - 1 - y]) {
          ++x;
          ++y;
        }
        vb_[offset + k] = x;
        if (!odd && delta - k >= -d && delta - k <= d &&
            x + vf_[offset + delta - k] >= n) {
          mx = a1 - x;
          my = b1 - y;
          return;
        }
      }
    }
    // Unreachable for well-formed inputs: a meeting point always exists.
    assert(false && "middle snake not found");
    mx = a0;
    my = b0;
  }
};

// Slide every matched pair upward to the earliest equal line not claimed by
// the previous pair. Repeats until stable so cascaded slides settle; each
// pass only decreases coordinates, so termination is immediate in practice.
void normalize_topmost(const std::vector<int>& a, const std::vector<int>& b,
                       std::vector<std::pair<int, int>>& pairs) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t idx = 0; idx < pairs.size(); ++idx) {
      int lo_a = idx == 0 ? 0 : pairs[idx - 1].first + 1;
      int lo_b = idx == 0 ? 0 : pairs[idx - 1].second + 1;
      auto& [pa, pb] = pairs[idx];
      int id = a[pa];
      while (pa > lo_a && a[pa - 1] == id) {
        --pa;
        changed = true;
      }
      while (pb > lo_b && b[pb - 1] == id) {
        --pb;
        changed = true;
      }
    }
  }
}

} // namespace

LineMapping diff_lines(const std::vector<std::string>& old_lines,
                       const std::vector<std::string>& new_lines) {
  std::vector<int> ib;
  std::vector<int> ia = intern(old_lines, new_lines, ib);

  std::vector<std::pair<int, int>> pairs;
  MyersDiff(ia, ib).run(pairs);
  normalize_topmost(ia, ib, pairs);

  for (auto& [i, j] : pairs) { // to 1-based line numbers
    ++i;
    ++j;
  }
  return LineMapping(std::move(pairs));
}

std::vector<Hunk> hunks(const LineMapping& mapping, int old_count,
                        int new_count) {
  std::vector<Hunk> result;
  // Sentinels: a virtual match at line 0 and one past the end.
  int prev_old = 0, prev_new = 0;
  auto flush_gap = [&result](int old_lo, int old_hi, int new_lo, int new_hi) {
    // Gap is the open interval between consecutive matches.
    int oc = old_hi - old_lo - 1;
    int nc = new_hi - new_lo - 1;
    if (oc <= 0 && nc <= 0)
      return;
    Hunk h;
    h.old_count = std::max(oc, 0);
    h.new_count = std::max(nc, 0);
    h.old_start = h.old_count > 0 ? old_lo + 1 : old_lo;
    h.new_start = h.new_count > 0 ? new_lo + 1 : new_lo;
    result.push_back(h);
  };
  for (const auto& [i, j] : mapping.pairs()) {
    flush_gap(prev_old, i, prev_new, j);
    prev_old = i;
    prev_new = j;
  }
  flush_gap(prev_old, old_count + 1, prev_new, new_count + 1);
  return result;
}

CascadeReport cascade_text(const WarningSet& ws1, const WarningSet& ws2,
                           const std::map<std::string, LineMapping>& mappings) {
  CascadeReport report;
  report.engine = EngineKind::Text;

  std::map<std::tuple<std::string, int, std::string>, const Warning*> index2;
  for (const Warning& w : ws2.warnings)
    index2[{w.file, w.line, w.condition}] = &w;

  std::set<std::string> matched_v2;
  for (const Warning& w : ws1.warnings) {
    auto mit = mappings.find(w.file);
    if (mit == mappings.end()) {
      report.diagnostics.push_back("no line mapping for " + w.file +
                                   " (file missing from a version); warning " +
                                   w.id + " treated as unmatched");
      report.unmatched_v1.push_back(w);
      continue;
    }
    std::optional<int> j = mit->second.dst(w.line);
    const Warning* hit = nullptr;
    if (j) {
      auto wit = index2.find({w.file, *j, w.condition});
      if (wit != index2.end())
        hit = wit->second;
    }
    if (hit) {
      report.matched.push_back({w, *hit, false});
      matched_v2.insert(hit->id);
    } else {
      report.unmatched_v1.push_back(w);
    }
  }
  for (const Warning& w : ws2.warnings)
    if (!matched_v2.count(w.id))
      report.unmatched_v2.push_back(w);
  return report;
}

std::string dump_diff(const std::vector<std::string>& old_lines,
                      const std::vector<std::string>& new_lines,
                      const LineMapping& mapping) {
  std::ostringstream os;
  for (const Hunk& h : hunks(mapping, static_cast<int>(old_lines.size()),
                             static_cast<int>(new_lines.size()))) {
    os << "@@ -" << h.old_start << "," << h.old_count << " +" << h.new_start
       << "," << h.new_count << " @@\n";
    for (int i = 0; i < h.old_count; ++i)
      os << "-" << old_lines[h.old_start - 1 + i] << "\n";
    for (int j = 0; j < h.new_count; ++j)
      os << "+" << new_lines[h.new_start - 1 + j] << "\n";
  }
  for (const auto& [i, j] : mapping.pairs())
    os << "MAP " << i << " -> " << j << "\n";
  return os.str();
}

} // namespace warncas
