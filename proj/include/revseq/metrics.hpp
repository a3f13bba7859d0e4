#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revseq/netlist.hpp"
#include "revseq/simulator.hpp"

namespace revseq {

enum class OutputRole : std::uint8_t {
  PrimaryOutput,
  ComplementOfSignal,
  SignalCopy,
  ClockDerived,
  ConsumedInternal,
  Garbage,
};

std::string_view role_name(OutputRole role);

struct OutputClass {
  std::string wire;
  std::string instance;
  OutputRole role = OutputRole::Garbage;
  /// The signal matched for copies/complements/clock-derived wires, or the
  /// exported label for primary outputs.
  std::string related;
  bool complemented = false;
};

struct MetricsReport {
  std::string circuit;
  int gate_count = 0;
  int constant_inputs = 0;
  /// Unused outputs that are neither exported nor consumed, including
  /// copies and complements of other signals.
  int garbage_strict = 0;
  /// Unused outputs whose function matches no signal of interest.
  int garbage_declared = 0;
  int delay = 0;
  std::vector<OutputClass> classification;
};

/// Longest path, in gate instances, through the cut DAG.
int delay(const Simulator& sim);

/// Role of every gate-output wire, in instance declaration order.
///
/// Exported wires are primary outputs; wires feeding a gate or a state
/// next-value are consumed. Any other wire is compared, as a function of the
/// free inputs, against the primary inputs, state taps, state next values
/// and exported outputs: equal or complementary to one of them makes it a
/// copy/complement (clock-derived if that signal is a clock), otherwise it
/// is garbage.
std::vector<OutputClass> classify_outputs(const Simulator& sim);

MetricsReport compute_metrics(const Simulator& sim);
MetricsReport compute_metrics(const Circuit& circuit, const GateRegistry& registry);

/// One row of a stored comparison table.
struct ComparisonRow {
  int table = 0;
  std::string title;
  std::string circuit;  // the shipped design this table compares against
  std::string source;   // "Proposed", "Existing [8]", ...
  int gates = 0;
  int garbage = 0;
  int delay = 0;

  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

/// Parses `table,title,circuit,source,gates,garbage,delay` CSV.
std::vector<ComparisonRow> parse_dataset_csv(std::string_view text);
std::string format_dataset_csv(std::span<const ComparisonRow> rows);

/// The shipped comparison dataset (tables 3-6).
const std::vector<ComparisonRow>& builtin_dataset();

inline constexpr std::string_view kProposedSource = "Proposed";

struct ComparisonTable {
  int table = 0;
  std::string title;
  std::string circuit;
  std::optional<MetricsReport> computed;
  std::vector<ComparisonRow> stored;
  /// Set when a computed report exists: computed (gates, garbage_declared,
  /// delay) equals the stored Proposed row.
  std::optional<bool> match;
  std::vector<std::string> mismatches;
};

/// Groups the dataset by table and pairs each with the computed report for
/// its circuit. Computed reports with no table get a table number of 0.
std::vector<ComparisonTable> comparison_report(std::span<const MetricsReport> computed,
                                               std::span<const ComparisonRow> dataset);

}  // namespace revseq
