//===-- parser.hpp - mini-C recursive-descent parser ----------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#pragma once

#include "warncas/ast.hpp"

#include <string>

namespace warncas {

/// Parse mini-C source text. Comments vanish, preprocessor lines become
/// PreprocDirective leaves, and any statement outside the grammar degrades to
/// an OpaqueStmt leaf labeled with the trimmed line text. The only hard
/// failure is unbalanced braces at function/block level, reported as a
/// ParseError carrying `filename:line`.
Ast parse_source(const std::string& text, const std::string& filename = "<input>");

} // namespace warncas
