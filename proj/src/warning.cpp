//===-- warning.cpp - Warning loading, aggregation, filtering ------------===//
//
// Part of warncas, under the Apache License v2.0.
// SPDX-License-Identifier: Apache-2.0
//
//===----------------------------------------------------------------------===//

#include "warncas/warning.hpp"

#include "warncas/error.hpp"
#include "warncas/source_tree.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace warncas {

const char* to_string(Version v) { return v == Version::V1 ? "v1" : "v2"; }

const char* to_string(CascadeClass c) {
  switch (c) {
  case CascadeClass::SameBug: return "SameBug";
  case CascadeClass::BugFix: return "BugFix";
  case CascadeClass::NewInV2: return "NewInV2";
  }
  return "?";
}

const char* to_string(EngineKind e) {
  switch (e) {
  case EngineKind::Text: return "text";
  case EngineKind::Ast: return "ast";
  case EngineKind::Cfg: return "cfg";
  }
  return "?";
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  size_t pos = 0;
  while (true) {
    size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

[[noreturn]] void bad_record(const std::string& origin, size_t lineno,
                             const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << lineno << ": " << what;
  throw WarningFormatError(os.str());
}

} // namespace

WarningSet parse_warnings(const std::string& text, Version version,
                          const std::string& origin) {
  WarningSet ws;
  ws.version = version;
  size_t record_no = 0;
  const auto lines = split_lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty() || line[0] == '#')
      continue;
    auto fields = split_fields(line);
    if (fields.size() != 5)
      bad_record(origin, i + 1,
                 "expected 5 tab-separated fields (tool, file, line, "
                 "condition, message), got " + std::to_string(fields.size()));
    if (fields[0].empty())
      bad_record(origin, i + 1, "field 'tool' is empty");
    if (fields[1].empty())
      bad_record(origin, i + 1, "field 'file' is empty");
    int lineno = 0;
    try {
      size_t used = 0;
      lineno = std::stoi(fields[2], &used);
      if (used != fields[2].size())
        throw std::invalid_argument("trailing chars");
    } catch (const std::exception&) {
      bad_record(origin, i + 1, "field 'line' is not an integer: '" + fields[2] + "'");
    }
    if (lineno < 1)
      bad_record(origin, i + 1, "field 'line' must be >= 1, got " + fields[2]);
    if (fields[3].empty())
      bad_record(origin, i + 1, "field 'condition' is empty");

    Warning w;
    ++record_no;
    w.id = std::string(to_string(version)) + ":" + std::to_string(record_no);
    w.version = version;
    w.file = fields[1];
    w.line = lineno;
    w.condition = fields[3];
    w.message = fields[4];
    w.tools.insert(fields[0]);
    ws.warnings.push_back(std::move(w));
  }
  return ws;
}

WarningSet load_warnings(const std::filesystem::path& path, Version version) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("cannot open warnings file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_warnings(buf.str(), version, path.string());
}

std::string format_warnings(const WarningSet& ws) {
  std::ostringstream out;
  for (const Warning& w : ws.warnings)
    for (const std::string& tool : w.tools)
      out << tool << '\t' << w.file << '\t' << w.line << '\t' << w.condition
          << '\t' << w.message << '\n';
  return out.str();
}

WarningSet aggregate_warnings(const WarningSet& ws) {
  using Key = std::tuple<std::string, int, std::string>;
  std::map<Key, Warning> merged;
  for (const Warning& w : ws.warnings) {
    Key key{w.file, w.line, w.condition};
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, w);
    } else {
      it->second.tools.insert(w.tools.begin(), w.tools.end());
      // First-seen id and message win; nothing else can differ under the key.
    }
  }
  WarningSet out;
  out.version = ws.version;
  out.warnings.reserve(merged.size());
  for (auto& [key, w] : merged)
    out.warnings.push_back(std::move(w));
  return out;
}

namespace {

// Validates the pattern as it matches; '**' crosses '/', '*'/'?' do not.
bool glob_match_at(const std::string& pat, size_t p, const std::string& str, size_t s) {
  while (p < pat.size()) {
    char c = pat[p];
    if (c == '*') {
      bool doublestar = p + 1 < pat.size() && pat[p + 1] == '*';
      size_t next = p + (doublestar ? 2 : 1);
      // Greedy scan over every split point.
      for (size_t skip = s; skip <= str.size(); ++skip) {
        if (glob_match_at(pat, next, str, skip))
          return true;
        if (skip < str.size() && !doublestar && str[skip] == '/')
          return false; // '*' cannot absorb a separator
      }
      return false;
    }
    if (s >= str.size())
      return false;
    if (c == '?') {
      if (str[s] == '/')
        return false;
      ++p, ++s;
      continue;
    }
    if (c == '[') {
      size_t q = p + 1;
      bool negate = q < pat.size() && (pat[q] == '!' || pat[q] == '^');
      if (negate)
        ++q;
      bool hit = false;
      bool closed = false;
      bool first = true;
      for (; q < pat.size(); ++q, first = false) {
        if (pat[q] == ']' && !first) {
          closed = true;
          break;
        }
        char lo = pat[q];
        char hi = lo;
        if (q + 2 < pat.size() && pat[q + 1] == '-' && pat[q + 2] != ']') {
          hi = pat[q + 2];
          q += 2;
        }
        if (str[s] >= lo && str[s] <= hi)
          hit = true;
      }
      if (!closed)
        throw ConfigError("invalid glob, unterminated '[': " + pat);
      if (hit == negate)
        return false;
      p = q + 1;
      ++s;
      continue;
    }
    if (c != str[s])
      return false;
    ++p, ++s;
  }
  return s == str.size();
}

void validate_glob(const std::string& pat) {
  // A match against the empty string walks every bracket expression.
  size_t depth = 0;
  for (size_t i = 0; i < pat.size(); ++i) {
    if (pat[i] == '[') {
      size_t q = i + 1;
      if (q < pat.size() && (pat[q] == '!' || pat[q] == '^'))
        ++q;
      bool closed = false;
      for (bool first = true; q < pat.size(); ++q, first = false) {
        if (pat[q] == ']' && !first) {
          closed = true;
          break;
        }
      }
      if (!closed)
        throw ConfigError("invalid glob, unterminated '[': " + pat);
      i = q;
    }
  }
  (void)depth;
  if (pat.empty())
    throw ConfigError("invalid glob: empty pattern");
}

} // namespace

bool glob_match(const std::string& pattern, const std::string& path) {
  validate_glob(pattern);
  return glob_match_at(pattern, 0, path, 0);
}

WarningSet filter_warnings(const WarningSet& ws,
                           const std::vector<std::string>& exclude_globs) {
  for (const std::string& g : exclude_globs)
    validate_glob(g);
  WarningSet out;
  out.version = ws.version;
  for (const Warning& w : ws.warnings) {
    bool drop = false;
    for (const std::string& g : exclude_globs)
      if (glob_match(g, w.file)) {
        drop = true;
        break;
      }
    if (!drop)
      out.warnings.push_back(w);
  }
  return out;
}

} // namespace warncas
