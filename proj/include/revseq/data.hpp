#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace revseq::data {

/// A file from the project's data/ directory compiled into the library.
struct EmbeddedFile {
  std::string_view path;  // relative to data/, e.g. "circuits/d_latch.rseq"
  std::string_view content;
};

std::span<const EmbeddedFile> embedded_files();

/// Throws LookupError if `path` was not embedded.
std::string_view file(std::string_view path);

/// Paths with the given prefix, sorted.
std::vector<std::string_view> list(std::string_view prefix);

}  // namespace revseq::data
