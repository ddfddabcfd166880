//===-- source_tree.cpp - In-memory source trees --------------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/source_tree.hpp"

#include "warncas/error.hpp"

#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace warncas {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(pos));
      break;
    }
    lines.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

SourceTree load_source_tree(const fs::path& root) {
  if (!fs::is_directory(root))
    throw ConfigError("source root is not a directory: " + root.string());
  SourceTree tree;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file())
      continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    tree[entry.path().lexically_relative(root).generic_string()] = buf.str();
  }
  return tree;
}

void write_source_tree(const SourceTree& tree, const fs::path& root) {
  for (const auto& [rel, content] : tree) {
    fs::path target = root / fs::path(rel);
    fs::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    if (!out)
      throw ConfigError("cannot write file: " + target.string());
    out << content;
  }
}

} // namespace warncas
