#include "revseq/reproduce.hpp"

#include <algorithm>
#include <sstream>

#include "revseq/bool_expr.hpp"
#include "revseq/data.hpp"
#include "revseq/error.hpp"
#include "revseq/report.hpp"
#include "revseq/simulator.hpp"

namespace revseq {

const std::vector<BehaviorCheck>& behavior_checks() {
  static const std::vector<BehaviorCheck> checks{
      {"d_latch", "Q", "(CLK & D) ^ (!CLK & Q)", true, "D latch"},
      {"ms_d_ff", "Qm", "(CLK & D) ^ (!CLK & Qm)", true, "master"},
      {"ms_d_ff", "Qs", "(CLK & Qs) ^ (!CLK & Qm)", true, "slave"},
      {"jk_latch", "Q", "(!CLK & Q) ^ (CLK & ((J & !Q) ^ (!K & Q)))", true, "JK latch"},
      {"jk_latch", "Q", "(!CLK & Q) ^ (CLK & ((J & !Q) ^ (K & Q)))", false, "JK latch, KQ form"},
      {"ms_jk_ff", "Qm", "(!CLK & Qm) ^ (CLK & ((J & !Qs) ^ (!K & Qs)))", true, "master"},
      {"ms_jk_ff", "Qs", "(CLK & Qs) ^ (!CLK & Qm)", true, "slave"},
  };
  return checks;
}

ReproduceInputs ReproduceInputs::defaults() {
  ReproduceInputs in;
  in.gates = builtin_library();
  in.designs = builtin_designs(in.gates);
  in.dataset = builtin_dataset();
  in.table1_golden = std::string(data::file("golden/table1.csv"));
  in.table2_golden = std::string(data::file("golden/table2.csv"));
  return in;
}

namespace {

using Grid = std::vector<std::vector<std::string>>;

Grid read_csv(std::string_view text) {
  Grid grid;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    grid.push_back(std::move(cells));
  }
  return grid;
}

void diff_truth_table(int number, const std::string& gate_name, const ReproduceInputs& in, const std::string& golden,
                      ReproduceResult& out) {
  const std::string tag = "table" + std::to_string(number);
  const Gate* gate = in.gates.find(gate_name);
  if (!gate) {
    out.diffs.push_back(tag + ": gate " + gate_name + " is not defined");
    return;
  }
  const std::string csv = render_truth_table(truth_table(*gate), {Format::Csv, false});
  out.files.emplace_back(tag + ".csv", csv);

  const Grid got = read_csv(csv);
  const Grid want = read_csv(golden);
  if (want.empty()) {
    out.diffs.push_back(tag + ": golden table is empty");
    return;
  }
  if (got.front() != want.front()) {
    out.diffs.push_back(tag + ": header differs from golden");
    return;
  }
  if (got.size() != want.size()) {
    out.diffs.push_back(tag + ": computed " + std::to_string(got.size() - 1) + " rows, golden " +
                        std::to_string(want.size() - 1));
  }
  const auto& header = got.front();
  const std::size_t in_cols = gate->arity();
  for (std::size_t r = 1; r < std::min(got.size(), want.size()); ++r) {
    std::string row_key;
    for (std::size_t c = 0; c < in_cols && c < got[r].size(); ++c) row_key += got[r][c];
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string a = c < got[r].size() ? got[r][c] : "";
      const std::string b = c < want[r].size() ? want[r][c] : "";
      if (a != b) {
        out.diffs.push_back(tag + ": row " + row_key + " column " + header[c] + ": computed " + a + ", golden " + b);
      }
    }
  }
}

void run_behavior_checks(const Simulator& sim, ReproduceResult& out) {
  const std::string& name = sim.circuit().name;
  for (const auto& check : behavior_checks()) {
    if (check.circuit != name) continue;
    CharacteristicReport rep;
    try {
      rep = sim.verify_characteristic(parse_expr(check.oracle), check.target);
    } catch (const std::exception& e) {
      out.diffs.push_back(name + ": " + check.label + ": " + e.what());
      continue;
    }
    const std::size_t agree = rep.rows_checked - rep.failures.size();
    std::string line = name + ": " + check.label + ": " + check.target + ".next == " + check.oracle + " holds on " +
                       std::to_string(agree) + "/" + std::to_string(rep.rows_checked) + " rows";
    if (!rep.failures.empty()) {
      const auto& f = rep.failures.front();
      std::string row;
      auto ins = unpack_bits(f.inputs, static_cast<unsigned>(rep.input_names.size()));
      auto st = unpack_bits(f.state, static_cast<unsigned>(rep.state_names.size()));
      for (std::size_t i = 0; i < ins.size(); ++i) row += (row.empty() ? "" : " ") + rep.input_names[i] + "=" + std::to_string(ins[i]);
      for (std::size_t i = 0; i < st.size(); ++i) row += " " + rep.state_names[i] + "=" + std::to_string(st[i]);
      line += " (first failure: " + row + ")";
    }
    if (check.required && !rep.passed()) {
      out.diffs.push_back(line);
    } else {
      out.notes.push_back(line);
    }
  }
}

}  // namespace

ReproduceResult reproduce(const ReproduceInputs& in, std::span<const int> tables) {
  ReproduceResult out;
  std::vector<int> wanted(tables.begin(), tables.end());
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

  std::vector<MetricsReport> computed;
  std::vector<int> comparison_tables;
  for (int t : wanted) {
    if (t == 1) {
      diff_truth_table(1, "MG1", in, in.table1_golden, out);
      continue;
    }
    if (t == 2) {
      diff_truth_table(2, "MG2", in, in.table2_golden, out);
      continue;
    }
    auto row = std::find_if(in.dataset.begin(), in.dataset.end(), [&](const ComparisonRow& r) { return r.table == t; });
    if (row == in.dataset.end()) {
      out.diffs.push_back("table" + std::to_string(t) + ": not present in the dataset");
      continue;
    }
    comparison_tables.push_back(t);
    auto design = std::find_if(in.designs.begin(), in.designs.end(),
                               [&](const Circuit& c) { return c.name == row->circuit; });
    if (design == in.designs.end()) {
      out.diffs.push_back("table" + std::to_string(t) + ": no design named " + row->circuit);
      continue;
    }
    try {
      Simulator sim(*design, in.gates);
      computed.push_back(compute_metrics(sim));
      run_behavior_checks(sim, out);
    } catch (const std::exception& e) {
      out.diffs.push_back("table" + std::to_string(t) + ": " + row->circuit + ": " + e.what());
    }
  }

  if (!comparison_tables.empty()) {
    for (auto& table : comparison_report(computed, in.dataset)) {
      if (std::find(comparison_tables.begin(), comparison_tables.end(), table.table) == comparison_tables.end()) {
        continue;
      }
      const std::string tag = "table" + std::to_string(table.table);
      if (table.computed) {
        for (const auto& m : table.mismatches) out.diffs.push_back(tag + ": " + table.circuit + ": " + m);
      }
      out.files.emplace_back(tag + ".csv", comparison_table_csv(table));
      out.comparisons.push_back(std::move(table));
    }
  }

  std::stable_sort(out.files.begin(), out.files.end(), [](const auto& a, const auto& b) {
    return std::stoi(a.first.substr(5)) < std::stoi(b.first.substr(5));
  });
  out.ok = out.diffs.empty();
  return out;
}

}  // namespace revseq
