// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#include "moparker/csv.hpp"

#include "moparker/error.hpp"

namespace moparker::csv {

std::optional<Record> Reader::next() {
  while (true) {
    std::string line;
    if (!std::getline(in_, line)) {
      if (in_.bad()) throw IoError("failed reading CSV stream");
      return std::nullopt;
    }
    ++line_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    Record rec;
    rec.line = line_;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;
    while (true) {
      if (i >= line.size()) {
        if (!quoted) break;
        // newline inside a quoted field
        std::string more;
        if (!std::getline(in_, more)) {
          throw SchemaError("unterminated quoted field starting on line " + std::to_string(rec.line));
        }
        ++line_;
        if (!more.empty() && more.back() == '\r') more.pop_back();
        field.push_back('\n');
        line = std::move(more);
        i = 0;
        continue;
      }
      const char c = line[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          quoted = false;
          ++i;
          continue;
        }
        field.push_back(c);
        ++i;
        continue;
      }
      if (c == ',') {
        rec.fields.push_back(std::move(field));
        field.clear();
      } else if (c == '"' && field.empty()) {
        quoted = true;
      } else {
        field.push_back(c);
      }
      ++i;
    }
    rec.fields.push_back(std::move(field));
    return rec;
  }
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i != 0) out << ',';
    out << escape(fields[i]);
  }
  out << '\n';
}

}  // namespace moparker::csv
