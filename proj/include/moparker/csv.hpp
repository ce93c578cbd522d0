// Copyright 2026 The moparker Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace moparker::csv {

struct Record {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line where the record starts
};

/// RFC-4180 reader: comma separated, double-quote quoting with "" escapes,
/// CRLF or LF line endings, embedded newlines inside quoted fields.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  /// Next record, or nullopt at end of input. Blank lines are skipped.
  /// Throws SchemaError on an unterminated quoted field, IoError on a stream failure.
  std::optional<Record> next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace moparker::csv
