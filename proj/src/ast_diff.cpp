//===-- ast_diff.cpp - Greedy top-down / dice bottom-up tree matching -----===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/ast_diff.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>

namespace warncas {

void NodeMapping::add(const AstNode* a, const AstNode* b) {
  if (fwd_.count(a) || rev_.count(b))
    return; // both sides stay injective; first claim wins
  pairs_.emplace_back(a, b);
  fwd_[a] = b;
  rev_[b] = a;
}

const AstNode* NodeMapping::dst(const AstNode* a) const {
  auto it = fwd_.find(a);
  return it == fwd_.end() ? nullptr : it->second;
}

const AstNode* NodeMapping::src(const AstNode* b) const {
  auto it = rev_.find(b);
  return it == rev_.end() ? nullptr : it->second;
}

namespace {

// Preorder-flattened view of one tree with per-node structural data. A
// subtree occupies the contiguous id range [id, id + size).
struct TreeInfo {
  std::vector<const AstNode*> nodes; // preorder
  std::vector<int> parent;           // preorder id of parent, -1 for root
  std::vector<int> size;             // subtree node count, incl. self
  std::vector<int> height;           // leaves have height 1
  std::vector<uint64_t> fp;          // structural fingerprint
  std::unordered_map<const AstNode*, int> id_of;

  explicit TreeInfo(const AstNode& root) {
    build(root, -1);
  }

  int build(const AstNode& n, int parent_id) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back(&n);
    parent.push_back(parent_id);
    size.push_back(1);
    height.push_back(1);
    fp.push_back(0);
    id_of[&n] = id;

    uint64_t h = 1469598103934665603ull; // FNV offset basis
    auto mix = [&h](uint64_t v) {
      h ^= v;
      h *= 1099511628211ull; // FNV prime
    };
    mix(static_cast<uint64_t>(n.kind) + 0x9e3779b97f4a7c15ull);
    for (char c : n.label)
      mix(static_cast<uint64_t>(static_cast<unsigned char>(c)));
    mix(0xfeedULL); // separates label end from child list

    for (const AstNode& c : n.children) {
      int cid = build(c, id);
      size[id] += size[cid];
      height[id] = std::max(height[id], height[cid] + 1);
      mix(fp[cid]);
    }
    fp[id] = h;
    return id;
  }
};

// Height-indexed worklist of unmatched subtree roots for the top-down phase.
class HeightList {
public:
  void push(int id, int h) { buckets_[h].push_back(id); }
  bool empty() const { return buckets_.empty(); }
  int peek_height() const { return buckets_.rbegin()->first; }
  std::vector<int> pop_tallest() {
    auto it = std::prev(buckets_.end());
    std::vector<int> out = std::move(it->second);
    buckets_.erase(it);
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::map<int, std::vector<int>> buckets_;
};

class Matcher {
public:
  Matcher(const Ast& t1, const Ast& t2, const MatchParams& params)
      : i1_(t1.root), i2_(t2.root), params_(params) {}

  NodeMapping run() {
    top_down();
    bottom_up();
    root_link();
    return std::move(mapping_);
  }

private:
  TreeInfo i1_, i2_;
  MatchParams params_;
  NodeMapping mapping_;

  bool mapped1(int id) const { return mapping_.mapped_src(i1_.nodes[id]); }
  bool mapped2(int id) const { return mapping_.mapped_dst(i2_.nodes[id]); }

  void map_ids(int id1, int id2) {
    mapping_.add(i1_.nodes[id1], i2_.nodes[id2]);
  }

  // Maps two isomorphic subtrees wholesale. Isomorphic subtrees have equal
  // preorder shape, so descendants pair up by id offset.
  void map_subtrees(int id1, int id2) {
    for (int off = 0; off < i1_.size[id1]; ++off)
      map_ids(id1 + off, id2 + off);
  }

  void open(const TreeInfo& info, int id, HeightList& list) {
    int child = id + 1;
    while (child < id + info.size[id]) {
      if (info.height[child] >= params_.min_height)
        list.push(child, info.height[child]);
      child += info.size[child];
    }
  }

  void top_down() {
    HeightList l1, l2;
    if (i1_.height[0] >= params_.min_height)
      l1.push(0, i1_.height[0]);
    if (i2_.height[0] >= params_.min_height)
      l2.push(0, i2_.height[0]);

    while (!l1.empty() && !l2.empty()) {
      int h1 = l1.peek_height(), h2 = l2.peek_height();
      if (h1 > h2) {
        for (int id : l1.pop_tallest())
          open(i1_, id, l1);
        continue;
      }
      if (h2 > h1) {
        for (int id : l2.pop_tallest())
          open(i2_, id, l2);
        continue;
      }
      match_level(l1.pop_tallest(), l2.pop_tallest(), l1, l2);
    }
  }

  // Matches two same-height candidate sets by fingerprint group.
  void match_level(const std::vector<int>& set1, const std::vector<int>& set2,
                   HeightList& l1, HeightList& l2) {
    std::map<uint64_t, std::vector<int>> by_fp2;
    for (int id : set2)
      by_fp2[i2_.fp[id]].push_back(id);

    std::vector<char> consumed2_flag(set2.size(), 0);
    std::unordered_map<int, size_t> pos2;
    for (size_t i = 0; i < set2.size(); ++i)
      pos2[set2[i]] = i;

    for (int id1 : set1) {
      auto git = by_fp2.find(i1_.fp[id1]);
      int best = -1;
      if (git != by_fp2.end()) {
        for (int id2 : git->second) {
          if (consumed2_flag[pos2[id2]])
            continue;
          if (!isomorphic(*i1_.nodes[id1], *i2_.nodes[id2]))
            continue; // fingerprint collision
          if (best == -1 || better_candidate(id1, id2, best))
            best = id2;
        }
      }
      if (best >= 0) {
        consumed2_flag[pos2[best]] = 1;
        map_subtrees(id1, best);
      } else {
        open(i1_, id1, l1);
      }
    }
    for (size_t i = 0; i < set2.size(); ++i)
      if (!consumed2_flag[i])
        open(i2_, set2[i], l2);
  }

  // True when cand beats best for id1: parent-already-mapped first, then
  // smaller |start line delta|, then smaller preorder id.
  bool better_candidate(int id1, int cand, int best) const {
    auto parent_linked = [this, id1](int id2) {
      int p1 = i1_.parent[id1], p2 = i2_.parent[id2];
      if (p1 < 0 || p2 < 0)
        return false;
      return mapping_.dst(i1_.nodes[p1]) == i2_.nodes[p2];
    };
    bool pc = parent_linked(cand), pb = parent_linked(best);
    if (pc != pb)
      return pc;
    int base = i1_.nodes[id1]->span.start;
    int dc = std::abs(i2_.nodes[cand]->span.start - base);
    int db = std::abs(i2_.nodes[best]->span.start - base);
    if (dc != db)
      return dc < db;
    return cand < best;
  }

  void bottom_up() {
    // Postorder over t1: visit children before parents. In a preorder
    // array, iterating ids descending visits parents after children only
    // for ancestors; true postorder needs the ordering below.
    std::vector<int> post;
    post.reserve(i1_.nodes.size());
    build_postorder(0, post);

    for (int id1 : post) {
      const AstNode* n1 = i1_.nodes[id1];
      if (n1->is_leaf() || mapped1(id1))
        continue;
      if (!has_mapped_child(id1))
        continue;
      int best = -1;
      double best_dice = params_.min_dice;
      for (size_t id2 = 0; id2 < i2_.nodes.size(); ++id2) {
        const AstNode* n2 = i2_.nodes[id2];
        if (n2->kind != n1->kind || n2->is_leaf() ||
            mapped2(static_cast<int>(id2)))
          continue;
        double d = dice(id1, static_cast<int>(id2));
        if (d > best_dice ||
            (best >= 0 && d == best_dice &&
             dice_tie_better(id1, static_cast<int>(id2), best))) {
          best = static_cast<int>(id2);
          best_dice = d;
        }
      }
      if (best >= 0) {
        map_ids(id1, best);
        recover_leaves(id1, best);
      }
    }
  }

  void build_postorder(int id, std::vector<int>& out) const {
    int child = id + 1;
    while (child < id + i1_.size[id]) {
      build_postorder(child, out);
      child += i1_.size[child];
    }
    out.push_back(id);
  }

  bool has_mapped_child(int id1) const {
    int child = id1 + 1;
    while (child < id1 + i1_.size[id1]) {
      if (mapped1(child))
        return true;
      child += i1_.size[child];
    }
    return false;
  }

  // 2 * |pairs across the two subtrees| / (|desc1| + |desc2|), descendants
  // excluding the roots themselves.
  double dice(int id1, int id2) const {
    int d1 = i1_.size[id1] - 1;
    int d2 = i2_.size[id2] - 1;
    if (d1 + d2 == 0)
      return 0.0;
    int lo2 = id2 + 1, hi2 = id2 + i2_.size[id2];
    int common = 0;
    for (int off = id1 + 1; off < id1 + i1_.size[id1]; ++off) {
      const AstNode* partner = mapping_.dst(i1_.nodes[off]);
      if (!partner)
        continue;
      auto it = i2_.id_of.find(partner);
      if (it != i2_.id_of.end() && it->second >= lo2 && it->second < hi2)
        ++common;
    }
    return 2.0 * common / (d1 + d2);
  }

  bool dice_tie_better(int id1, int cand, int best) const {
    int base = i1_.nodes[id1]->span.start;
    int dc = std::abs(i2_.nodes[cand]->span.start - base);
    int db = std::abs(i2_.nodes[best]->span.start - base);
    if (dc != db)
      return dc < db;
    return cand < best;
  }

  // Exact-label leaf pairing, in document order, inside a freshly accepted
  // container pair. Skipped for containers above the size cap.
  void recover_leaves(int id1, int id2) {
    if (i1_.size[id1] > params_.max_size || i2_.size[id2] > params_.max_size)
      return;
    std::map<std::pair<int, std::string>, std::vector<int>> free2;
    for (int off = id2 + 1; off < id2 + i2_.size[id2]; ++off) {
      const AstNode* n = i2_.nodes[off];
      if (n->is_leaf() && !mapped2(off))
        free2[{static_cast<int>(n->kind), n->label}].push_back(off);
    }
    std::map<std::pair<int, std::string>, size_t> cursor;
    for (int off = id1 + 1; off < id1 + i1_.size[id1]; ++off) {
      const AstNode* n = i1_.nodes[off];
      if (!n->is_leaf() || mapped1(off))
        continue;
      auto key = std::make_pair(static_cast<int>(n->kind), n->label);
      auto it = free2.find(key);
      if (it == free2.end())
        continue;
      size_t& cur = cursor[key];
      while (cur < it->second.size() && mapped2(it->second[cur]))
        ++cur;
      if (cur < it->second.size())
        map_ids(off, it->second[cur++]);
    }
  }

  // Roots describe the same artifact even when nothing else matched; pair
  // them so the bottom-up phase's container context always exists.
  void root_link() {
    if (!mapped1(0) && !mapped2(0)) {
      map_ids(0, 0);
      recover_leaves(0, 0);
    }
  }
};

} // namespace

NodeMapping match_asts(const Ast& t1, const Ast& t2,
                       const MatchParams& params) {
  return Matcher(t1, t2, params).run();
}

CascadeReport cascade_ast(const WarningSet& ws1, const WarningSet& ws2,
                          const Ast& t1, const Ast& /*t2: reached via mapping*/,
                          const NodeMapping& mapping) {
  CascadeReport report;
  report.engine = EngineKind::Ast;

  std::map<int, std::vector<const Warning*>> ws2_by_line;
  for (const Warning& w : ws2.warnings)
    ws2_by_line[w.line].push_back(&w);

  std::set<std::string> matched_v2;
  for (const Warning& w1 : ws1.warnings) {
    std::vector<const AstNode*> lvs = nodes_at_line(t1, w1.line);
    if (lvs.empty()) {
      report.diagnostics.push_back(
          "warning " + w1.id + " at " + w1.file + ":" +
          std::to_string(w1.line) +
          " sits on a line with no syntax leaves; unmatched");
      report.unmatched_v1.push_back(w1);
      continue;
    }
    // Candidate V2 warnings reached through any mapped leaf of the line.
    std::vector<const Warning*> cands;
    for (const AstNode* leaf : lvs) {
      const AstNode* partner = mapping.dst(leaf);
      if (!partner)
        continue;
      auto it = ws2_by_line.find(partner->span.start);
      if (it == ws2_by_line.end())
        continue;
      for (const Warning* w2 : it->second) {
        if (w2->condition != w1.condition)
          continue;
        bool dup = false;
        for (const Warning* seen : cands)
          dup = dup || seen->id == w2->id;
        if (!dup)
          cands.push_back(w2);
      }
    }
    if (cands.empty()) {
      report.unmatched_v1.push_back(w1);
      continue;
    }
    const Warning* best = cands.front();
    for (const Warning* cand : cands) {
      int dc = std::abs(cand->line - w1.line);
      int db = std::abs(best->line - w1.line);
      if (dc < db || (dc == db && cand->line < best->line))
        best = cand;
    }
    for (const Warning* cand : cands)
      if (cand != best)
        report.diagnostics.push_back("warning " + w1.id +
                                     " also reached V2 warning " + cand->id +
                                     "; kept nearest " + best->id);
    report.matched.push_back({w1, *best, false});
    matched_v2.insert(best->id);
  }
  for (const Warning& w : ws2.warnings)
    if (!matched_v2.count(w.id))
      report.unmatched_v2.push_back(w);
  return report;
}

std::string dump_mapping(const Ast& t1, const Ast& t2,
                         const NodeMapping& mapping) {
  (void)t2;
  std::ostringstream os;
  visit(t1.root, [&os, &mapping](const AstNode& n, int) {
    const AstNode* partner = mapping.dst(&n);
    if (partner)
      os << to_string(n.kind) << "@" << n.span.start << " <-> "
         << to_string(partner->kind) << "@" << partner->span.start << "\n";
  });
  return os.str();
}

} // namespace warncas
