#include "line_cursor.hpp"

#include <cctype>

namespace revseq {

std::string SourceLocation::str() const { return std::to_string(line) + ":" + std::to_string(column); }

ParseError::ParseError(SourceLocation loc, std::string message, std::vector<std::string> expected)
    : std::runtime_error(loc.str() + ": " + message),
      loc_(loc),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

namespace detail {

std::vector<SourceLine> split_lines(std::string_view text) {
  std::vector<SourceLine> lines;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_string = !in_string;
      if (line[i] == '#' && !in_string) {
        line = line.substr(0, i);
        break;
      }
    }
    lines.push_back({number++, line});
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

void LineCursor::skip_space() {
  while (pos_ < line_.text.size() && std::isspace(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
}

bool LineCursor::at_end() {
  skip_space();
  return pos_ >= line_.text.size();
}

char LineCursor::peek() {
  skip_space();
  return pos_ < line_.text.size() ? line_.text[pos_] : '\0';
}

bool LineCursor::accept(char c) {
  if (peek() != c) return false;
  ++pos_;
  return true;
}

bool LineCursor::accept(std::string_view token) {
  skip_space();
  if (line_.text.substr(pos_).starts_with(token)) {
    pos_ += token.size();
    return true;
  }
  return false;
}

void LineCursor::expect(char c) {
  if (!accept(c)) fail(std::string("'") + c + "'");
}

void LineCursor::expect(std::string_view token) {
  if (!accept(token)) fail("'" + std::string(token) + "'");
}

bool LineCursor::accept_keyword(std::string_view word) {
  skip_space();
  auto rest = line_.text.substr(pos_);
  if (!rest.starts_with(word)) return false;
  if (rest.size() > word.size()) {
    auto next = static_cast<unsigned char>(rest[word.size()]);
    if (std::isalnum(next) || next == '_') return false;
  }
  pos_ += word.size();
  return true;
}

std::string LineCursor::identifier(std::string_view what) {
  skip_space();
  std::size_t start = pos_;
  if (pos_ < line_.text.size()) {
    auto c = static_cast<unsigned char>(line_.text[pos_]);
    if (std::isalpha(c) || c == '_') {
      ++pos_;
      while (pos_ < line_.text.size() &&
             (std::isalnum(static_cast<unsigned char>(line_.text[pos_])) || line_.text[pos_] == '_')) {
        ++pos_;
      }
    }
  }
  if (pos_ == start) fail(std::string(what));
  return std::string(line_.text.substr(start, pos_ - start));
}

unsigned long LineCursor::number(std::string_view what) {
  skip_space();
  std::size_t start = pos_;
  while (pos_ < line_.text.size() && std::isdigit(static_cast<unsigned char>(line_.text[pos_]))) ++pos_;
  if (pos_ == start) fail(std::string(what));
  auto digits = line_.text.substr(start, pos_ - start);
  if (digits.size() > 9) {
    throw ParseError({line_.number, static_cast<int>(start) + 1}, "number too large");
  }
  return std::stoul(std::string(digits));
}

bool LineCursor::bit() {
  SourceLocation loc = (skip_space(), location());
  if (accept('0')) return false;
  if (accept('1')) return true;
  throw ParseError(loc, "expected 0 or 1", {"'0'", "'1'"});
}

std::string LineCursor::quoted() {
  expect('"');
  std::size_t start = pos_;
  while (pos_ < line_.text.size() && line_.text[pos_] != '"') ++pos_;
  if (pos_ >= line_.text.size()) {
    throw ParseError({line_.number, static_cast<int>(start)}, "unterminated string", {"'\"'"});
  }
  std::string s(line_.text.substr(start, pos_ - start));
  ++pos_;
  return s;
}

std::string_view LineCursor::rest(SourceLocation& start) {
  skip_space();
  start = location();
  auto r = line_.text.substr(pos_);
  pos_ = line_.text.size();
  return r;
}

void LineCursor::expect_end() {
  if (!at_end()) fail("end of line");
}

void LineCursor::fail(const std::string& expected) {
  skip_space();
  std::string found;
  if (pos_ >= line_.text.size()) {
    found = "end of line";
  } else {
    std::size_t end = pos_;
    while (end < line_.text.size() && !std::isspace(static_cast<unsigned char>(line_.text[end])) &&
           end - pos_ < 16) {
      ++end;
    }
    found = "'" + std::string(line_.text.substr(pos_, end - pos_)) + "'";
  }
  throw ParseError(location(), "expected " + expected + ", found " + found, {expected});
}

}  // namespace detail
}  // namespace revseq
