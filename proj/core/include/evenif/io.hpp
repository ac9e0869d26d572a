#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evenif/instance.hpp"
#include "evenif/model.hpp"
#include "evenif/preference.hpp"

namespace evenif {

/// Positioned parse failure. Line and column are 1-based and point at the
/// offending token in the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::string message,
             std::string expected = "")
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message +
                           (expected.empty() ? "" : " (expected " + expected +
                                                        ")")),
        line_(line),
        column_(column),
        detail_(std::move(message)),
        expected_(std::move(expected)) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }
  const std::string& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
  std::string expected_;
};

/// A preference head repeats a literal.
class DuplicateHeadLiteralError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// A feature index in a rule or literal lies outside [1, n].
class IndexOutOfRangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Parses one of the three line-oriented model grammars, dispatching on
/// the first significant line (`perceptron`, `fbdd` or `mlp`). '#' starts
/// a comment to end of line; blank lines are ignored. FBDD and MLP models
/// are validated after parsing; violations raise ValidationError.
Model parse_model(std::string_view text);

/// Canonical text form; parse_model(serialize_model(m)) reproduces m
/// (FBDD node identifiers are preserved verbatim).
std::string serialize_model(const Model& model);

/// Bitstring with f1 leftmost; must have length n exactly.
Instance parse_instance(std::string_view text, std::size_t n);

std::string serialize_instance(const Instance& x);

/// One rule per line, e.g. "!f2 > f1 <- !f3": head literals joined by '>',
/// optional body after '<-' joined by '&'. Feature indices are 1-based and
/// checked against n; duplicate head literals are rejected.
std::vector<PreferenceRule> parse_preferences(std::string_view text,
                                              std::size_t n);

std::string serialize_preferences(const std::vector<PreferenceRule>& rules);

}  // namespace evenif
