// Copyright 2026 The softrepair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Input formats.
//
// Tables are CSV with a header row of attribute names. A column named
// "__weight" holds the fact weight ("3", "1/3" or "0.25"); without it every
// fact weighs 1.
//
// FD files hold one FD per line:
//
//   # comment
//   Flight -> Airline @ 5
//   Flight,Airline,Date -> Destination @ 1
//    -> A @ 2            (empty lhs)

#ifndef SOFTREPAIR_IO_HPP_
#define SOFTREPAIR_IO_HPP_

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "softrepair/model.hpp"
#include "softrepair/rational.hpp"

namespace softrepair {

inline constexpr std::string_view kWeightColumn = "__weight";

class IngestionError : public std::runtime_error {
 public:
  IngestionError(std::size_t row, const std::string& what)
      : std::runtime_error("row " + std::to_string(row) + ": " + what),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class FdParseError : public std::runtime_error {
 public:
  FdParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

// Reads one CSV record (RFC 4180 quoting). Returns false at end of input.
inline bool read_csv_record(std::istream& in, std::vector<std::string>& fields,
                            bool& malformed) {
  fields.clear();
  malformed = false;
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      if (!field.empty()) malformed = true;
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (c != '\r') {
      field += c;
    }
  }
  if (in_quotes) malformed = true;
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

inline bool blank_record(const std::vector<std::string>& fields) {
  return fields.size() == 1 && trim(fields[0]).empty();
}

}  // namespace detail

/// Parses a weighted table. Errors name the 1-based row (the header is
/// row 1): ragged rows, duplicate tuples, malformed or negative weights.
inline Database parse_database(std::istream& in,
                               const std::string& relation_name) {
  std::vector<std::string> fields;
  bool malformed = false;
  std::size_t row = 1;
  while (true) {
    if (!detail::read_csv_record(in, fields, malformed)) {
      throw IngestionError(1, "missing header row");
    }
    if (!detail::blank_record(fields)) break;
  }
  if (malformed) throw IngestionError(row, "malformed quoting in header");
  std::vector<std::string> attributes;
  std::optional<std::size_t> weight_column;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    std::string name(detail::trim(fields[i]));
    if (name == kWeightColumn) {
      if (weight_column) throw IngestionError(row, "two __weight columns");
      weight_column = i;
    } else {
      attributes.push_back(std::move(name));
    }
  }
  const std::size_t width = fields.size();
  Database db = [&] {
    try {
      return Database(Schema(relation_name, std::move(attributes)));
    } catch (const SchemaMismatchError& e) {
      throw IngestionError(row, e.what());
    }
  }();
  while (detail::read_csv_record(in, fields, malformed)) {
    ++row;
    if (detail::blank_record(fields)) continue;
    if (malformed) throw IngestionError(row, "malformed quoting");
    if (fields.size() != width) {
      throw IngestionError(row, "expected " + std::to_string(width) +
                                    " fields, found " +
                                    std::to_string(fields.size()));
    }
    Rational weight = 1;
    std::vector<std::string> values;
    values.reserve(width);
    for (std::size_t i = 0; i < width; ++i) {
      if (weight_column && i == *weight_column) {
        try {
          weight = Rational::parse(fields[i]);
        } catch (const std::exception& e) {
          throw IngestionError(row, std::string("bad weight: ") + e.what());
        }
        if (weight.is_negative()) {
          throw IngestionError(row, "negative weight " + weight.to_string());
        }
      } else {
        values.push_back(std::move(fields[i]));
      }
    }
    try {
      db.add(std::move(values), std::move(weight));
    } catch (const ModelError& e) {
      throw IngestionError(row, e.what());
    }
  }
  return db;
}

/// Loads a CSV table; the relation is named after the file stem.
inline Database load_database(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError(0, "cannot open " + path.string());
  return parse_database(in, path.stem().string());
}

namespace detail {

inline std::vector<std::string> split_attribute_list(std::string_view text,
                                                     std::size_t line) {
  std::vector<std::string> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token = trim(text.substr(
        start, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - start));
    if (token.empty()) throw FdParseError(line, "empty attribute name");
    out.emplace_back(token);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace detail

/// Parses FD lines `LHS -> RHS @ WEIGHT` against `schema`.
inline FDSet parse_fd_spec(std::string_view text, const Schema& schema) {
  std::vector<FD> fds;
  std::vector<std::size_t> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = detail::trim(line);
    if (line.empty()) continue;

    const std::size_t arrow = line.find("->");
    if (arrow == std::string_view::npos) {
      throw FdParseError(line_no, "missing '->'");
    }
    if (line.find("->", arrow + 2) != std::string_view::npos) {
      throw FdParseError(line_no, "more than one '->'");
    }
    const std::size_t at = line.find('@', arrow + 2);
    if (at == std::string_view::npos) {
      throw FdParseError(line_no, "missing '@ WEIGHT'");
    }
    const auto lhs = detail::split_attribute_list(line.substr(0, arrow), line_no);
    const auto rhs = detail::split_attribute_list(
        line.substr(arrow + 2, at - arrow - 2), line_no);
    Rational weight;
    try {
      weight = Rational::parse(line.substr(at + 1));
    } catch (const std::exception& e) {
      throw FdParseError(line_no, std::string("malformed weight: ") + e.what());
    }
    if (weight.is_negative()) {
      throw FdParseError(line_no, "negative weight " + weight.to_string());
    }
    FD fd;
    try {
      fd = FD{schema.attr_set(lhs), schema.attr_set(rhs), weight};
    } catch (const SchemaMismatchError& e) {
      throw FdParseError(line_no, e.what());
    }
    for (std::size_t i = 0; i < fds.size(); ++i) {
      if (fds[i].lhs == fd.lhs && fds[i].rhs == fd.rhs) {
        throw FdParseError(line_no, "duplicate of the FD on line " +
                                        std::to_string(lines[i]));
      }
    }
    fds.push_back(std::move(fd));
    lines.push_back(line_no);
  }
  return FDSet(std::move(fds));
}

inline FDSet load_fd_spec(const std::filesystem::path& path,
                          const Schema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FdParseError(0, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_fd_spec(buffer.str(), schema);
}

}  // namespace softrepair

#endif  // SOFTREPAIR_IO_HPP_
