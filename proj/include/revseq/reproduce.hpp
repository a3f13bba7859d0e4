#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "revseq/gate.hpp"
#include "revseq/metrics.hpp"
#include "revseq/netlist.hpp"

namespace revseq {

/// A next-state equation a shipped design must (or, when `required` is
/// false, is only reported to) satisfy.
struct BehaviorCheck {
  std::string circuit;
  std::string target;
  std::string oracle;
  bool required = true;
  std::string label;
};

/// Checks run for tables 3-6, grouped by circuit.
const std::vector<BehaviorCheck>& behavior_checks();

struct ReproduceInputs {
  GateRegistry gates;
  std::vector<Circuit> designs;
  std::vector<ComparisonRow> dataset;
  std::string table1_golden;  // CSV, header A,B,C,D,P,Q,R,S
  std::string table2_golden;

  /// Builtin gates, designs, dataset and goldens.
  static ReproduceInputs defaults();
};

struct ReproduceResult {
  bool ok = true;
  /// One line per mismatch; empty when ok.
  std::vector<std::string> diffs;
  /// Informational lines (non-required checks).
  std::vector<std::string> notes;
  /// (file name, content) in table order: table1.csv ... table6.csv.
  std::vector<std::pair<std::string, std::string>> files;
  std::vector<ComparisonTable> comparisons;
};

/// Tables 1-2: MG1/MG2 truth tables diffed cell by cell against the goldens.
/// Tables 3-6: computed metrics against the dataset's Proposed rows, plus the
/// behavior checks for each table's circuit.
ReproduceResult reproduce(const ReproduceInputs& inputs, std::span<const int> tables);

}  // namespace revseq
