#include "revseq/stimulus.hpp"

#include <algorithm>

#include "line_cursor.hpp"

namespace revseq {

std::vector<Assignment> parse_stimulus_file(std::string_view text) {
  std::vector<std::string> header;
  std::vector<Assignment> steps;
  for (const auto& line : detail::split_lines(text)) {
    detail::LineCursor cur(line);
    if (cur.at_end()) continue;
    if (header.empty()) {
      while (!cur.at_end()) {
        SourceLocation loc = cur.location();
        auto name = cur.identifier("input name");
        if (std::find(header.begin(), header.end(), name) != header.end()) {
          throw ParseError(loc, "duplicate column '" + name + "'");
        }
        header.push_back(std::move(name));
      }
      continue;
    }
    Assignment step;
    for (const auto& name : header) {
      if (cur.at_end()) {
        throw ParseError(cur.location(), "row has fewer values than the header (missing " + name + ")", {"'0'", "'1'"});
      }
      step[name] = cur.bit();
    }
    cur.expect_end();
    steps.push_back(std::move(step));
  }
  return steps;
}

std::vector<Assignment> parse_stimulus_inline(std::string_view text) {
  std::vector<Assignment> steps;
  std::string flat(text);
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  detail::LineCursor cur({1, flat});
  if (cur.at_end()) return steps;
  do {
    if (cur.at_end()) break;  // trailing ';'
    Assignment step;
    do {
      SourceLocation loc = cur.location();
      auto name = cur.identifier("input name");
      cur.expect('=');
      if (!step.emplace(name, cur.bit()).second) throw ParseError(loc, "input '" + name + "' bound twice in one step");
    } while (cur.accept(','));
    steps.push_back(std::move(step));
  } while (cur.accept(';'));
  cur.expect_end();
  return steps;
}

}  // namespace revseq
