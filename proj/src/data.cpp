#include "revseq/data.hpp"

#include "revseq/error.hpp"

namespace revseq::data {

std::string_view file(std::string_view path) {
  for (const auto& f : embedded_files()) {
    if (f.path == path) return f.content;
  }
  throw LookupError("no embedded data file '" + std::string(path) + "'");
}

std::vector<std::string_view> list(std::string_view prefix) {
  std::vector<std::string_view> out;
  for (const auto& f : embedded_files()) {
    if (f.path.starts_with(prefix)) out.push_back(f.path);
  }
  return out;
}

}  // namespace revseq::data
