//===-- source_tree.hpp - In-memory source trees and line splitting ------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace warncas {

/// Relative path ('/'-separated) -> file content. Ordered so that every
/// traversal of a tree is deterministic.
using SourceTree = std::map<std::string, std::string>;

/// Split on '\n'. A trailing newline does not produce a final empty line.
std::vector<std::string> split_lines(std::string_view text);

std::string trim(std::string_view s);

/// Read every regular file under `root` into a tree keyed by relative path.
/// Throws ConfigError if `root` is not a directory.
SourceTree load_source_tree(const std::filesystem::path& root);

/// Materialize a tree under `root`, creating directories as needed.
void write_source_tree(const SourceTree& tree, const std::filesystem::path& root);

} // namespace warncas
