#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revseq/gate.hpp"

namespace revseq {

/// Parses a gate definition file:
///
///     gate MG1(A, B, C, D) -> (P, Q, R, S)
///       P = A ^ D
///       ...
///       meta quantum_cost = 7
///     gate SWAP(2) perm = [0, 2, 1, 3]
///
/// Definition errors (non-bijective, unknown variable) surface as
/// ParseError located at the gate header.
std::vector<Gate> parse_gate_file(std::string_view text);

std::string format_gate(const Gate& gate);
std::string format_gate_file(std::span<const Gate> gates);

}  // namespace revseq
