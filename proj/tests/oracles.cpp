//===-- oracles.cpp - Independent test-side oracles --------------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "oracles.hpp"

#include <algorithm>
#include <map>

namespace warncas::test {

size_t lcs_length(const std::vector<std::string>& a,
                  const std::vector<std::string>& b) {
  const size_t n = a.size(), m = b.size();
  std::vector<std::vector<size_t>> dp(n + 1, std::vector<size_t>(m + 1, 0));
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= m; ++j)
      dp[i][j] = a[i - 1] == b[j - 1]
                     ? dp[i - 1][j - 1] + 1
                     : std::max(dp[i - 1][j], dp[i][j - 1]);
  return dp[n][m];
}

bool is_topmost(const std::vector<std::string>& a,
                const std::vector<std::string>& b,
                const LineMapping& mapping) {
  int prev_i = 0, prev_j = 0;
  for (const auto& [i, j] : mapping.pairs()) {
    // Sliding (i, j) to (i-1, j) keeps a valid mapping iff line i-1 equals
    // line i in the old version and does not collide with the previous
    // pair; symmetrically for the new version.
    if (i - 1 > prev_i && a[static_cast<size_t>(i) - 2] ==
                              a[static_cast<size_t>(i) - 1])
      return false;
    if (j - 1 > prev_j && b[static_cast<size_t>(j) - 2] ==
                              b[static_cast<size_t>(j) - 1])
      return false;
    prev_i = i;
    prev_j = j;
  }
  return true;
}

namespace {

void count_classes(const AstNode& n, std::map<std::string, size_t>& counts) {
  const std::string key =
      n.is_leaf() ? "L:" + std::string(to_string(n.kind)) + ":" + n.label
                  : "I:" + std::string(to_string(n.kind));
  ++counts[key];
  for (const AstNode& child : n.children)
    count_classes(child, counts);
}

} // namespace

size_t max_class_mapping(const AstNode& a, const AstNode& b) {
  std::map<std::string, size_t> c1, c2;
  count_classes(a, c1);
  count_classes(b, c2);
  size_t total = 0;
  for (const auto& [key, count] : c1) {
    auto it = c2.find(key);
    if (it != c2.end())
      total += std::min(count, it->second);
  }
  return total;
}

namespace {

int height_of(const AstNode& n) {
  int h = 0;
  for (const AstNode& child : n.children)
    h = std::max(h, height_of(child));
  return h + 1;
}

} // namespace

size_t greedy_topdown_size(const Ast& a, const Ast& b) {
  std::vector<const AstNode*> open1{&a.root}, open2{&b.root};
  auto tallest = [](const std::vector<const AstNode*>& open) {
    int h = 0;
    for (const AstNode* n : open)
      h = std::max(h, height_of(*n));
    return h;
  };
  auto open_level = [](std::vector<const AstNode*>& open, int h,
                       const std::vector<const AstNode*>& paired) {
    std::vector<const AstNode*> next;
    for (const AstNode* n : open) {
      if (height_of(*n) != h) {
        next.push_back(n);
        continue;
      }
      if (std::find(paired.begin(), paired.end(), n) != paired.end())
        continue; // whole subtree consumed
      for (const AstNode& child : n->children)
        next.push_back(&child);
    }
    open = std::move(next);
  };

  size_t total = 0;
  while (!open1.empty() && !open2.empty()) {
    const int h1 = tallest(open1), h2 = tallest(open2);
    if (std::max(h1, h2) < 1)
      break;
    if (h1 > h2) {
      open_level(open1, h1, {});
      continue;
    }
    if (h2 > h1) {
      open_level(open2, h2, {});
      continue;
    }
    // Equal heights: pair isomorphic subtrees greedily in document order.
    std::vector<const AstNode*> paired1, paired2;
    for (const AstNode* n1 : open1) {
      if (height_of(*n1) != h1)
        continue;
      for (const AstNode* n2 : open2) {
        if (height_of(*n2) != h1)
          continue;
        if (std::find(paired2.begin(), paired2.end(), n2) != paired2.end())
          continue;
        if (isomorphic(*n1, *n2)) {
          paired1.push_back(n1);
          paired2.push_back(n2);
          total += node_count(*n1);
          break;
        }
      }
    }
    open_level(open1, h1, paired1);
    open_level(open2, h1, paired2);
  }
  return total;
}

namespace {

AstNode random_leaf(std::mt19937_64& rng) {
  static const char* const kIdents[] = {"a", "b", "c", "d"};
  AstNode n;
  if (rng() % 2 == 0) {
    n.kind = NodeKind::Ident;
    n.label = kIdents[rng() % 4];
  } else {
    n.kind = NodeKind::Literal;
    n.label = std::to_string(rng() % 4);
  }
  return n;
}

AstNode random_internal(std::mt19937_64& rng) {
  AstNode n;
  switch (rng() % 5) {
  case 0: n.kind = NodeKind::Block; break;
  case 1: n.kind = NodeKind::If; break;
  case 2: n.kind = NodeKind::While; break;
  case 3:
    n.kind = NodeKind::Call;
    n.label = rng() % 2 == 0 ? "f" : "g";
    break;
  default:
    n.kind = NodeKind::BinOp;
    n.label = rng() % 2 == 0 ? "+" : "-";
    break;
  }
  return n;
}

void grow(AstNode& parent, int& budget, std::mt19937_64& rng, int depth) {
  const int children = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < children && budget > 0; ++i) {
    --budget;
    const bool internal = depth < 4 && budget > 0 && rng() % 100 < 45;
    if (!internal) {
      parent.children.push_back(random_leaf(rng));
      continue;
    }
    AstNode n = random_internal(rng);
    grow(n, budget, rng, depth + 1);
    if (n.children.empty()) {
      // Budget ran dry: a childless internal kind would silently change
      // class (it reads as a leaf), so emit a real leaf instead.
      parent.children.push_back(random_leaf(rng));
      continue;
    }
    parent.children.push_back(std::move(n));
  }
}

} // namespace

AstNode random_tree(std::mt19937_64& rng, int max_nodes) {
  AstNode root;
  root.kind = NodeKind::TranslationUnit;
  int budget = std::max(1, max_nodes - 1);
  grow(root, budget, rng, 0);
  if (root.children.empty())
    root.children.push_back(random_leaf(rng));
  return root;
}

CfgSkeleton version_skeleton(const Mvicfg& g, Version v,
                             const std::string& file) {
  std::vector<const CfgNode*> live;
  for (const CfgNode& n : g.nodes)
    if (n.in_version(v) && n.file == file)
      live.push_back(&n);
  std::sort(live.begin(), live.end(),
            [v](const CfgNode* x, const CfgNode* y) {
              const int ox = v == Version::V1 ? x->ord_v1 : x->ord_v2;
              const int oy = v == Version::V1 ? y->ord_v1 : y->ord_v2;
              return ox < oy;
            });

  CfgSkeleton skeleton;
  std::map<int, int> position;
  for (const CfgNode* n : live) {
    position[n->id] = static_cast<int>(skeleton.nodes.size());
    const auto& line = v == Version::V1 ? n->line_v1 : n->line_v2;
    skeleton.nodes.emplace_back(line.value_or(-1), n->trimmed_text,
                                n->is_entry, n->is_exit);
  }
  for (const CfgEdge& e : g.edges) {
    if (!e.in_version(v))
      continue;
    auto from = position.find(e.from), to = position.find(e.to);
    if (from != position.end() && to != position.end())
      skeleton.edges.insert({from->second, to->second});
  }
  return skeleton;
}

} // namespace warncas::test
