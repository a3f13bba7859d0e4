#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "revseq/error.hpp"

namespace revseq::detail {

/// Splits text into lines with `#` comments removed (outside string
/// literals). Line numbers are 1-based.
struct SourceLine {
  int number;
  std::string_view text;
};
std::vector<SourceLine> split_lines(std::string_view text);

/// Hand-rolled scanner over a single source line, shared by the gate-file,
/// circuit and stimulus front ends.
class LineCursor {
public:
  explicit LineCursor(SourceLine line) : line_(line) {}

  void skip_space();
  bool at_end();
  char peek();
  SourceLocation location() const { return {line_.number, static_cast<int>(pos_) + 1}; }

  bool accept(char c);
  bool accept(std::string_view token);
  void expect(char c);
  void expect(std::string_view token);
  /// Matches a whole identifier equal to `word`.
  bool accept_keyword(std::string_view word);
  std::string identifier(std::string_view what = "identifier");
  unsigned long number(std::string_view what = "number");
  bool bit();
  std::string quoted();
  /// Remaining text (untrimmed) and its starting location; consumes it.
  std::string_view rest(SourceLocation& start);
  void expect_end();

  [[noreturn]] void fail(const std::string& expected);

private:
  SourceLine line_;
  std::size_t pos_ = 0;
};

}  // namespace revseq::detail
