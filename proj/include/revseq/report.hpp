#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revseq/gate.hpp"
#include "revseq/metrics.hpp"
#include "revseq/netlist.hpp"
#include "revseq/simulator.hpp"

namespace revseq {

enum class Format : std::uint8_t { Text, Csv, Json };

/// Throws std::invalid_argument for anything but text/csv/json.
Format parse_format(std::string_view name);

struct RenderOptions {
  Format format = Format::Text;
  /// ANSI styling of verdict words in text output.
  bool color = false;
};

// Every renderer returns the full document, newline-terminated. All three
// formats carry the same data.

std::string render_gate_list(const GateRegistry& registry, const RenderOptions& opts);
std::string render_truth_table(const TruthTable& table, const RenderOptions& opts);
/// Bijectivity verdict plus the inverse-composition check.
std::string render_gate_verification(const Gate& gate, const RenderOptions& opts);
std::string render_diagnostics(const Circuit& circuit, std::span<const Diagnostic> diagnostics,
                               const RenderOptions& opts);
std::string render_next_state_table(const NextStateTable& table, const RenderOptions& opts);
std::string render_characteristic(const CharacteristicReport& report, const RenderOptions& opts);
std::string render_trace(const Trace& trace, const RenderOptions& opts);
std::string render_metrics(const MetricsReport& report, const RenderOptions& opts);
std::string render_comparison(std::span<const ComparisonTable> tables, const RenderOptions& opts);

/// CSV for one comparison table: design,source,gates,garbage_declared,
/// garbage_strict,delay,match. The computed row (source "Computed") comes
/// first when present.
std::string comparison_table_csv(const ComparisonTable& table);

}  // namespace revseq
