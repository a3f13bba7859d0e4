#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace revseq {

/// 1-based line/column into a source text. Line 0 means "no source" (e.g. a
/// circuit built in code).
struct SourceLocation {
  int line = 0;
  int column = 0;

  std::string str() const;
  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

/// Raised by every text front end (expressions, gate files, circuit files,
/// stimulus). what() is "line:col: message".
class ParseError : public std::runtime_error {
public:
  ParseError(SourceLocation loc, std::string message, std::vector<std::string> expected = {});

  const SourceLocation& location() const noexcept { return loc_; }
  const std::string& message() const noexcept { return message_; }
  /// Token kinds that would have been accepted at location().
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  SourceLocation loc_;
  std::string message_;
  std::vector<std::string> expected_;
};

/// Evaluation-time failures: unbound variables, width mismatches, missing
/// stimulus bindings.
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A name that does not resolve (gate, design, state variable).
class LookupError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A gate or permutation definition that violates its invariants.
class DefinitionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration requested beyond the supported size.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace revseq
