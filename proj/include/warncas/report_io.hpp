//===-- report_io.hpp - Cascade report serialization ----------------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//
//
// JSON persistence for cascade reports. Serialization is byte-stable:
// object keys are emitted alphabetically and no timestamps or host data
// are recorded, so identical runs produce identical files.
//
//===----------------------------------------------------------------------===//

#ifndef WARNCAS_REPORT_IO_HPP
#define WARNCAS_REPORT_IO_HPP

#include "warncas/ast_diff.hpp"
#include "warncas/warning.hpp"

#include <string>

namespace warncas {

/// Renders a report as pretty-printed JSON with a trailing newline.
/// Warnings serialize as {condition, file, id, line}; the header carries
/// engine, format_version "1", and the match parameters in force.
std::string report_to_json(const CascadeReport& report,
                           const MatchParams& params);

void write_report(const std::string& path, const CascadeReport& report,
                  const MatchParams& params);

/// Parses a report written by write_report. Warnings carry only the
/// serialized fields; versions are restored from the report sections.
/// Throws ConfigError on malformed or version-incompatible input.
CascadeReport read_report(const std::string& path);

} // namespace warncas

#endif // WARNCAS_REPORT_IO_HPP
