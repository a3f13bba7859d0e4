#pragma once

#include <string_view>
#include <vector>

#include "revseq/bool_expr.hpp"

namespace revseq {

/// Stimulus file: a header naming the inputs, then one whitespace-separated
/// row of bits per step.
///
///     CLK D
///     1   1
///     0   1
std::vector<Assignment> parse_stimulus_file(std::string_view text);

/// Inline form: `CLK=1,D=1; CLK=0,D=1`.
std::vector<Assignment> parse_stimulus_inline(std::string_view text);

}  // namespace revseq
