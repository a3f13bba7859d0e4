#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace support {

// Output words (P,Q,R,S) of the 16 rows, input ABCD counting up, copied
// row by row from the reference truth tables.
inline constexpr std::array<unsigned, 16> kTable1 = {0b0000, 0b1001, 0b0011, 0b1010, 0b0100, 0b1101, 0b0111, 0b1110,
                                                     0b1100, 0b0101, 0b1000, 0b0001, 0b1111, 0b0110, 0b1011, 0b0010};
inline constexpr std::array<unsigned, 16> kTable2 = {0b0000, 0b0001, 0b0010, 0b0011, 0b0100, 0b0101, 0b0110, 0b0111,
                                                     0b1101, 0b1100, 0b1001, 0b1000, 0b1111, 0b1110, 0b1011, 0b1010};

inline bool bit(unsigned word, unsigned pos_from_msb, unsigned width) { return (word >> (width - 1 - pos_from_msb)) & 1u; }

/// Table-driven MG-1/MG-2: returns the output bits for (a,b,c,d).
struct Quad {
  bool p, q, r, s;
};
inline Quad table_lookup(const std::array<unsigned, 16>& t, bool a, bool b, bool c, bool d) {
  const unsigned w = t[(a << 3) | (b << 2) | (c << 1) | unsigned(d)];
  return {bit(w, 0, 4), bit(w, 1, 4), bit(w, 2, 4), bit(w, 3, 4)};
}
inline Quad mg1(bool a, bool b, bool c, bool d) { return table_lookup(kTable1, a, b, c, d); }
inline Quad mg2(bool a, bool b, bool c, bool d) { return table_lookup(kTable2, a, b, c, d); }

inline std::string fixture(const std::string& rel) { return std::string(REVSEQ_FIXTURES) + "/" + rel; }

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CommandResult {
  int code = -1;
  std::string out;
};

/// Runs a shell command, capturing stdout and stderr together.
inline CommandResult run_command(const std::string& command) {
  CommandResult r;
  FILE* pipe = ::popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("revseq_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace support
