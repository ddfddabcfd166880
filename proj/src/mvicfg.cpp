//===-- mvicfg.cpp - Version merge, warning embedding, CFG cascade --------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/mvicfg.hpp"

#include "warncas/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace warncas {

int Mvicfg::add_node(CfgNode n) {
  n.id = static_cast<int>(nodes.size());
  nodes.push_back(std::move(n));
  return nodes.back().id;
}

int Mvicfg::add_edge(int from, int to, unsigned versions) {
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from == from && edges[i].to == to) {
      edges[i].versions |= versions;
      return static_cast<int>(i);
    }
  }
  edges.push_back({from, to, versions});
  return static_cast<int>(edges.size() - 1);
}

void Mvicfg::finalize() {
  succ.assign(nodes.size(), {});
  pred.assign(nodes.size(), {});
  for (size_t i = 0; i < edges.size(); ++i) {
    succ[edges[i].from].push_back(static_cast<int>(i));
    pred[edges[i].to].push_back(static_cast<int>(i));
  }
}

const CfgFunction* Mvicfg::find_function(const std::string& file,
                                         const std::string& function) const {
  for (const CfgFunction& f : functions)
    if (f.file == file && f.function == function)
      return &f;
  return nullptr;
}

namespace {

// Node ids of one function in one single-version graph, in construction
// order (which equals id order).
std::vector<int> function_nodes(const Mvicfg& g, const std::string& file,
                                const std::string& function) {
  std::vector<int> out;
  for (const CfgNode& n : g.nodes)
    if (n.file == file && n.function == function)
      out.push_back(n.id);
  return out;
}

struct FunctionRef {
  const Mvicfg* graph = nullptr;
  std::string file;
  std::string function;
};

void collect_functions(const std::vector<Mvicfg>& graphs, const char* version,
                       std::vector<FunctionRef>& order,
                       std::map<std::pair<std::string, std::string>,
                                const Mvicfg*>& index) {
  for (const Mvicfg& g : graphs) {
    for (const CfgFunction& f : g.functions) {
      auto key = std::make_pair(f.file, f.function);
      if (!index.emplace(key, &g).second)
        throw GraphError("duplicate function '" + f.function + "' in " +
                         f.file + " (" + version + ")");
      order.push_back({&g, f.file, f.function});
    }
  }
}

} // namespace

Mvicfg build_mvicfg(const std::vector<Mvicfg>& cfgs_v1,
                    const std::vector<Mvicfg>& cfgs_v2,
                    const std::map<std::string, LineMapping>& mappings) {
  std::vector<FunctionRef> order1, order2;
  std::map<std::pair<std::string, std::string>, const Mvicfg*> index1, index2;
  collect_functions(cfgs_v1, "v1", order1, index1);
  collect_functions(cfgs_v2, "v2", order2, index2);

  Mvicfg out;
  // (source graph, source node id) -> merged id, per version.
  std::map<std::pair<const Mvicfg*, int>, int> remap1, remap2;
  static const LineMapping empty_mapping;

  auto mapping_for = [&mappings](const std::string& file) -> const LineMapping& {
    auto it = mappings.find(file);
    return it == mappings.end() ? empty_mapping : it->second;
  };

  auto merge_function = [&out, &remap1, &remap2](
                            const Mvicfg* g1, const std::vector<int>& ids1,
                            const Mvicfg* g2, const std::vector<int>& ids2,
                            const LineMapping& lm) {
    // V2 statement nodes grouped by line, in construction order, so V1
    // nodes pair with the first text-identical unclaimed node of their
    // mapped line.
    std::map<int, std::vector<int>> v2_by_line;
    std::set<int> claimed2;
    for (int id : ids2) {
      const CfgNode& n = g2->nodes[id];
      if (n.line_v2)
        v2_by_line[*n.line_v2].push_back(id);
    }
    int entry2 = -1, exit2 = -1;
    for (int id : ids2) {
      if (g2->nodes[id].is_entry)
        entry2 = id;
      if (g2->nodes[id].is_exit)
        exit2 = id;
    }

    int merged_entry = -1, merged_exit = -1;
    for (int id1 : ids1) {
      const CfgNode& n1 = g1->nodes[id1];
      int partner = -1;
      if (n1.is_entry)
        partner = entry2;
      else if (n1.is_exit)
        partner = exit2;
      else if (n1.line_v1) {
        if (auto l2 = lm.dst(*n1.line_v1)) {
          auto it = v2_by_line.find(*l2);
          if (it != v2_by_line.end()) {
            for (int cand : it->second) {
              if (claimed2.count(cand))
                continue;
              if (g2->nodes[cand].trimmed_text == n1.trimmed_text) {
                partner = cand;
                break;
              }
            }
          }
        }
      }

      CfgNode merged = n1;
      merged.id = -1;
      if (partner >= 0) {
        const CfgNode& n2 = g2->nodes[partner];
        claimed2.insert(partner);
        merged.versions = kV1 | kV2;
        merged.line_v2 = n2.line_v2;
        merged.ord_v2 = n2.ord_v2;
      }
      int mid = out.add_node(std::move(merged));
      remap1[{g1, id1}] = mid;
      if (partner >= 0)
        remap2[{g2, partner}] = mid;
      if (n1.is_entry)
        merged_entry = mid;
      if (n1.is_exit)
        merged_exit = mid;
    }
    for (int id2 : ids2) {
      if (claimed2.count(id2))
        continue;
      const CfgNode& n2 = g2->nodes[id2];
      CfgNode merged = n2;
      merged.id = -1;
      int mid = out.add_node(std::move(merged));
      remap2[{g2, id2}] = mid;
    }
    return std::make_pair(merged_entry, merged_exit);
  };

  std::set<std::pair<std::string, std::string>> done;
  for (const FunctionRef& f : order1) {
    auto key = std::make_pair(f.file, f.function);
    done.insert(key);
    std::vector<int> ids1 = function_nodes(*f.graph, f.file, f.function);
    auto it2 = index2.find(key);
    std::pair<int, int> ee;
    if (it2 != index2.end()) {
      std::vector<int> ids2 =
          function_nodes(*it2->second, f.file, f.function);
      ee = merge_function(f.graph, ids1, it2->second, ids2,
                          mapping_for(f.file));
    } else {
      ee = merge_function(f.graph, ids1, nullptr, {}, empty_mapping);
    }
    out.functions.push_back({f.file, f.function, ee.first, ee.second});
  }
  for (const FunctionRef& f : order2) {
    auto key = std::make_pair(f.file, f.function);
    if (done.count(key))
      continue;
    // V2-only function: copy nodes verbatim.
    int entry = -1, exit = -1;
    for (int id : function_nodes(*f.graph, f.file, f.function)) {
      CfgNode merged = f.graph->nodes[id];
      merged.id = -1;
      bool is_entry = merged.is_entry, is_exit = merged.is_exit;
      int mid = out.add_node(std::move(merged));
      remap2[{f.graph, id}] = mid;
      if (is_entry)
        entry = mid;
      if (is_exit)
        exit = mid;
    }
    out.functions.push_back({f.file, f.function, entry, exit});
  }

  // V1 edges first, then V2 edges; shared edges take both bits.
  for (const Mvicfg& g : cfgs_v1)
    for (const CfgEdge& e : g.edges)
      out.add_edge(remap1.at({&g, e.from}), remap1.at({&g, e.to}), kV1);
  for (const Mvicfg& g : cfgs_v2)
    for (const CfgEdge& e : g.edges)
      out.add_edge(remap2.at({&g, e.from}), remap2.at({&g, e.to}), kV2);

  out.finalize();
  return out;
}

namespace {

std::string warning_place(const Warning& w) {
  std::ostringstream os;
  os << w.id << " at " << w.file << ":" << w.line;
  return os.str();
}

void embed_one(Mvicfg& g, const Warning& w, EmbedResult& result) {
  Version v = w.version;
  int found = -1;
  for (const CfgNode& n : g.nodes) {
    if (!n.in_version(v) || n.file != w.file)
      continue;
    const std::optional<int>& line = v == Version::V1 ? n.line_v1 : n.line_v2;
    if (!line || *line != w.line)
      continue;
    if (!w.function.empty() && n.function != w.function)
      continue;
    if (found >= 0)
      throw GraphError("warning " + warning_place(w) +
                       " is claimed by more than one node");
    found = n.id;
  }
  if (found < 0) {
    result.diagnostics.push_back("unplaceable warning " + warning_place(w) +
                                 ": no statement node at that line");
    return;
  }
  if (v == Version::V1)
    g.nodes[found].warnings_v1.push_back(w);
  else
    g.nodes[found].warnings_v2.push_back(w);
  result.node_of[w.id] = found;
}

} // namespace

EmbedResult embed_warnings(Mvicfg& g, const WarningSet& ws1,
                           const WarningSet& ws2) {
  EmbedResult result;
  for (const Warning& w : ws1.warnings)
    embed_one(g, w, result);
  for (const Warning& w : ws2.warnings)
    embed_one(g, w, result);
  return result;
}

namespace {

// BFS over version-v edges; dir +1 follows successors, -1 predecessors.
// Returns the first shared node encountered, skipping the start.
std::optional<int> bfs_to_shared(const Mvicfg& g, int start, Version v,
                                 int dir) {
  std::vector<char> seen(g.nodes.size(), 0);
  std::deque<int> queue = {start};
  seen[start] = 1;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    const auto& adj = dir > 0 ? g.succ[cur] : g.pred[cur];
    for (int ei : adj) {
      const CfgEdge& e = g.edges[ei];
      if (!e.in_version(v))
        continue;
      int next = dir > 0 ? e.to : e.from;
      if (seen[next])
        continue;
      seen[next] = 1;
      if (g.nodes[next].shared())
        return next;
      queue.push_back(next);
    }
  }
  return std::nullopt;
}

// All nodes reachable from start over version-v edges, in BFS discovery
// order (start excluded).
std::vector<int> bfs_reach(const Mvicfg& g, int start, Version v, int dir) {
  std::vector<int> order;
  std::vector<char> seen(g.nodes.size(), 0);
  std::deque<int> queue = {start};
  seen[start] = 1;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    const auto& adj = dir > 0 ? g.succ[cur] : g.pred[cur];
    for (int ei : adj) {
      const CfgEdge& e = g.edges[ei];
      if (!e.in_version(v))
        continue;
      int next = dir > 0 ? e.to : e.from;
      if (seen[next])
        continue;
      seen[next] = 1;
      order.push_back(next);
      queue.push_back(next);
    }
  }
  return order;
}

} // namespace

std::optional<int> first_divergent_node(const Mvicfg& g, int node, Version v) {
  return bfs_to_shared(g, node, v, -1);
}

std::optional<int> first_convergent_node(const Mvicfg& g, int node,
                                         Version v) {
  return bfs_to_shared(g, node, v, +1);
}

std::optional<DivConv> div_conv_region(const Mvicfg& g, int node, Version v) {
  std::optional<int> div = first_divergent_node(g, node, v);
  std::optional<int> conv = first_convergent_node(g, node, v);
  if (!div || !conv)
    return std::nullopt;

  DivConv region;
  region.div = *div;
  region.conv = *conv;
  std::vector<int> fwd = bfs_reach(g, *div, Version::V2, +1);
  std::vector<int> back = bfs_reach(g, *conv, Version::V2, -1);
  std::set<int> back_set(back.begin(), back.end());
  for (int n : fwd)
    if (back_set.count(n) && g.nodes[n].versions == kV2)
      region.between_v2.push_back(n);
  return region;
}

CheckBetweenResult check_between(const Mvicfg& g, const Warning& w, int node) {
  CheckBetweenResult result;
  std::optional<DivConv> region = div_conv_region(g, node, Version::V1);
  if (!region) {
    result.diagnostics.push_back(
        "no divergence region for warning " + warning_place(w) +
        ": function missing from the other version");
    return result;
  }

  const std::string& want = g.nodes[node].trimmed_text;
  std::vector<int> textual;
  for (int cand : region->between_v2)
    if (g.nodes[cand].trimmed_text == want)
      textual.push_back(cand);

  if (textual.empty())
    return result;
  if (textual.size() > 1) {
    std::ostringstream os;
    os << "ambiguous recovery for warning " << warning_place(w) << ": "
       << textual.size() << " textual candidates, keeping nearest";
    result.diagnostics.push_back(os.str());
  }
  // between_v2 is in BFS order from the divergent node, so the first
  // textual candidate is the nearest one.
  int chosen = textual.front();
  for (const Warning& w2 : g.nodes[chosen].warnings_v2) {
    if (w2.condition == w.condition) {
      result.matched = w2;
      result.matched_node = chosen;
      break;
    }
  }
  return result;
}

CascadeReport cascade_cfg(const WarningSet& ws1, const WarningSet& ws2,
                          const Mvicfg& g) {
  CascadeReport report;
  report.engine = EngineKind::Cfg;

  std::set<std::string> matched_v2;
  for (const Warning& w : ws1.warnings) {
    int home = -1;
    for (const CfgNode& n : g.nodes) {
      for (const Warning& attached : n.warnings_v1)
        if (attached.id == w.id)
          home = n.id;
      if (home >= 0)
        break;
    }
    if (home < 0) {
      report.diagnostics.push_back("warning " + warning_place(w) +
                                   " not embedded; treated as unmatched");
      report.unmatched_v1.push_back(w);
      continue;
    }
    const CfgNode& n = g.nodes[home];
    if (n.shared()) {
      const Warning* hit = nullptr;
      for (const Warning& w2 : n.warnings_v2)
        if (w2.condition == w.condition)
          hit = &w2;
      if (hit) {
        report.matched.push_back({w, *hit, false});
        matched_v2.insert(hit->id);
      } else {
        report.unmatched_v1.push_back(w);
      }
    } else {
      CheckBetweenResult r = check_between(g, w, home);
      for (std::string& d : r.diagnostics)
        report.diagnostics.push_back(std::move(d));
      if (r.matched) {
        report.matched.push_back({w, *r.matched, true});
        matched_v2.insert(r.matched->id);
      } else {
        report.unmatched_v1.push_back(w);
      }
    }
  }
  for (const Warning& w : ws2.warnings)
    if (!matched_v2.count(w.id))
      report.unmatched_v2.push_back(w);
  return report;
}

std::string to_dot(const Mvicfg& g) {
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\')
        out += '\\';
      out += c;
    }
    return out;
  };
  auto versions_str = [](unsigned bits) {
    if (bits == (kV1 | kV2))
      return std::string("1,2");
    return std::string(bits == kV1 ? "1" : "2");
  };
  auto line_str = [](const std::optional<int>& l) {
    return l ? std::to_string(*l) : std::string("-");
  };

  std::ostringstream os;
  os << "digraph mvicfg {\n";
  for (const CfgNode& n : g.nodes) {
    os << "  n" << n.id << " [label=\"" << escape(n.trimmed_text) << "\\n[v1:"
       << line_str(n.line_v1) << "|v2:" << line_str(n.line_v2)
       << "|" << versions_str(n.versions) << "]\"];\n";
  }
  for (const CfgEdge& e : g.edges)
    os << "  n" << e.from << " -> n" << e.to << " [versions=\""
       << versions_str(e.versions) << "\"];\n";
  os << "}\n";
  return os.str();
}

} // namespace warncas
