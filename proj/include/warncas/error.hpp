//===-- error.hpp - Error types shared across the library ----------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include <stdexcept>
#include <string>

namespace warncas {

/// Bad run configuration: missing inputs, invalid globs, unusable flags.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Source text the mini-C parser cannot recover from (unbalanced braces).
class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed warning record file.
class WarningFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Internal consistency failure in CFG/union-graph construction or embedding.
class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace warncas
