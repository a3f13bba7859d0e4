#include "revseq/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "revseq/data.hpp"

namespace revseq {

std::string_view role_name(OutputRole role) {
  switch (role) {
    case OutputRole::PrimaryOutput: return "primary-output";
    case OutputRole::ComplementOfSignal: return "complement-of-signal";
    case OutputRole::SignalCopy: return "signal-copy";
    case OutputRole::ClockDerived: return "clock-derived";
    case OutputRole::ConsumedInternal: return "consumed-internal";
    case OutputRole::Garbage: return "garbage";
  }
  return "?";
}

int delay(const Simulator& sim) {
  const auto& depths = sim.instance_depths();
  return depths.empty() ? 0 : *std::max_element(depths.begin(), depths.end());
}

std::vector<OutputClass> classify_outputs(const Simulator& sim) {
  const Circuit& c = sim.circuit();
  const auto columns = sim.wire_functions();

  struct Signal {
    std::size_t wire;
    std::string name;
    bool clock;
  };
  std::vector<Signal> signals;
  for (const auto& in : c.inputs) signals.push_back({sim.wire_index(Wire::plain(in.name)), in.name, c.is_clock(in.name)});
  for (const auto& s : c.states) signals.push_back({sim.wire_index(Wire::prev(s.name)), s.name + ".prev", false});
  for (const auto& s : c.states) signals.push_back({sim.wire_index(Wire::next(s.name)), s.name + ".next", false});
  for (const auto& p : c.outputs) signals.push_back({sim.wire_index(p.wire), p.label, false});

  std::map<Wire, std::string> exported;
  for (const auto& p : c.outputs) exported.emplace(p.wire, p.label);
  std::map<Wire, int> reads;
  for (const auto& inst : c.instances) {
    for (const auto& w : inst.inputs) ++reads[w];
  }

  auto complement_equal = [](const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) return false;
    }
    return true;
  };

  std::vector<OutputClass> result;
  for (const auto& inst : c.instances) {
    for (const auto& w : inst.outputs) {
      OutputClass oc{w.str(), inst.id, OutputRole::Garbage, {}, false};
      if (auto it = exported.find(w); it != exported.end()) {
        oc.role = OutputRole::PrimaryOutput;
        oc.related = it->second;
      } else if (reads[w] > 0 || w.tap == Wire::Tap::Next) {
        oc.role = OutputRole::ConsumedInternal;
      } else {
        const std::size_t self = sim.wire_index(w);
        const auto& fn = columns[self];
        for (const auto& s : signals) {
          if (s.wire == self) continue;
          const bool copy = columns[s.wire] == fn;
          if (!copy && !complement_equal(columns[s.wire], fn)) continue;
          oc.role = s.clock ? OutputRole::ClockDerived : copy ? OutputRole::SignalCopy : OutputRole::ComplementOfSignal;
          oc.related = s.name;
          oc.complemented = !copy;
          break;
        }
      }
      result.push_back(std::move(oc));
    }
  }
  return result;
}

MetricsReport compute_metrics(const Simulator& sim) {
  MetricsReport r;
  r.circuit = sim.circuit().name;
  r.gate_count = static_cast<int>(sim.circuit().instances.size());
  r.constant_inputs = static_cast<int>(sim.circuit().constants.size());
  r.delay = delay(sim);
  r.classification = classify_outputs(sim);
  for (const auto& oc : r.classification) {
    if (oc.role == OutputRole::Garbage) ++r.garbage_declared;
    if (oc.role != OutputRole::PrimaryOutput && oc.role != OutputRole::ConsumedInternal) ++r.garbage_strict;
  }
  return r;
}

MetricsReport compute_metrics(const Circuit& circuit, const GateRegistry& registry) {
  return compute_metrics(Simulator(circuit, registry));
}

// ---------------------------------------------------------------------------
// Dataset

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell += ch;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

int parse_count(const std::string& cell, SourceLocation loc, const char* column) {
  if (cell.empty() || cell.size() > 9 || !std::all_of(cell.begin(), cell.end(), ::isdigit)) {
    throw ParseError(loc, std::string("column ") + column + ": expected a nonnegative integer, found '" + cell + "'");
  }
  return std::stoi(cell);
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::vector<ComparisonRow> parse_dataset_csv(std::string_view text) {
  static const std::vector<std::string> header{"table", "title", "circuit", "source", "gates", "garbage", "delay"};
  std::vector<ComparisonRow> rows;
  bool seen_header = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split_csv_line(line);
    SourceLocation loc{line_no, 1};
    if (!seen_header) {
      if (cells != header) throw ParseError(loc, "expected header table,title,circuit,source,gates,garbage,delay");
      seen_header = true;
      continue;
    }
    if (cells.size() != header.size()) {
      throw ParseError(loc, "expected 7 columns, found " + std::to_string(cells.size()));
    }
    ComparisonRow row;
    row.table = parse_count(cells[0], loc, "table");
    row.title = cells[1];
    row.circuit = cells[2];
    row.source = cells[3];
    row.gates = parse_count(cells[4], loc, "gates");
    row.garbage = parse_count(cells[5], loc, "garbage");
    row.delay = parse_count(cells[6], loc, "delay");
    rows.push_back(std::move(row));
  }
  if (!seen_header) throw ParseError({1, 1}, "empty dataset");
  return rows;
}

std::string format_dataset_csv(std::span<const ComparisonRow> rows) {
  std::string out = "table,title,circuit,source,gates,garbage,delay\n";
  for (const auto& r : rows) {
    out += std::to_string(r.table) + "," + csv_cell(r.title) + "," + csv_cell(r.circuit) + "," + csv_cell(r.source) +
           "," + std::to_string(r.gates) + "," + std::to_string(r.garbage) + "," + std::to_string(r.delay) + "\n";
  }
  return out;
}

const std::vector<ComparisonRow>& builtin_dataset() {
  static const std::vector<ComparisonRow> rows = parse_dataset_csv(data::file("comparison_dataset.csv"));
  return rows;
}

std::vector<ComparisonTable> comparison_report(std::span<const MetricsReport> computed,
                                               std::span<const ComparisonRow> dataset) {
  std::vector<ComparisonTable> tables;
  for (const auto& row : dataset) {
    auto it = std::find_if(tables.begin(), tables.end(), [&](const ComparisonTable& t) { return t.table == row.table; });
    if (it == tables.end()) {
      tables.push_back({row.table, row.title, row.circuit, std::nullopt, {}, std::nullopt, {}});
      it = tables.end() - 1;
    }
    it->stored.push_back(row);
  }
  std::sort(tables.begin(), tables.end(), [](const auto& a, const auto& b) { return a.table < b.table; });

  for (const auto& report : computed) {
    auto it = std::find_if(tables.begin(), tables.end(),
                           [&](const ComparisonTable& t) { return t.circuit == report.circuit && !t.computed; });
    if (it == tables.end()) {
      tables.push_back({0, report.circuit, report.circuit, report, {}, std::nullopt, {}});
      continue;
    }
    it->computed = report;
    auto proposed = std::find_if(it->stored.begin(), it->stored.end(),
                                 [](const ComparisonRow& r) { return r.source == kProposedSource; });
    if (proposed == it->stored.end()) {
      it->mismatches.push_back("no stored Proposed row");
    } else {
      auto check = [&](const char* what, int got, int want) {
        if (got != want) {
          it->mismatches.push_back(std::string(what) + ": computed " + std::to_string(got) + ", stored " +
                                   std::to_string(want));
        }
      };
      check("gates", report.gate_count, proposed->gates);
      check("garbage", report.garbage_declared, proposed->garbage);
      check("delay", report.delay, proposed->delay);
    }
    it->match = it->mismatches.empty();
  }
  return tables;
}

}  // namespace revseq
