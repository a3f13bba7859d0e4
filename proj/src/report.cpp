#include "revseq/report.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace revseq {

using json = nlohmann::ordered_json;

Format parse_format(std::string_view name) {
  if (name == "text") return Format::Text;
  if (name == "csv") return Format::Csv;
  if (name == "json") return Format::Json;
  throw std::invalid_argument("unknown format '" + std::string(name) + "' (expected text, csv or json)");
}

namespace {

constexpr std::string_view kGreen = "\x1b[32m";
constexpr std::string_view kRed = "\x1b[31m";
constexpr std::string_view kYellow = "\x1b[33m";
constexpr std::string_view kReset = "\x1b[0m";

std::string paint(std::string_view word, std::string_view color, bool enabled) {
  if (!enabled) return std::string(word);
  return std::string(color) + std::string(word) + std::string(kReset);
}

std::string verdict(bool ok, std::string_view yes, std::string_view no, bool color) {
  return ok ? paint(yes, kGreen, color) : paint(no, kRed, color);
}

/// Left-aligned text grid with a rule under the header.
class TextTable {
public:
  explicit TextTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  std::string str() const {
    std::vector<std::size_t> width(header_.size(), 0);
    auto measure = [&](const std::vector<std::string>& row) {
      for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
    };
    measure(header_);
    for (const auto& r : rows_) measure(r);
    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += "  ";
        line += row[i];
        if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
      }
      out += line + "\n";
    };
    emit(header_);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out += std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') + "\n";
    for (const auto& r : rows_) emit(r);
    return out;
  }

private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += csv_cell(cells[i]);
  }
  return line + "\n";
}

std::string bit(bool b) { return b ? "1" : "0"; }

std::vector<std::string> bits_of(Word word, std::size_t width) {
  std::vector<std::string> out;
  for (auto b : unpack_bits(word, static_cast<unsigned>(width))) out.push_back(bit(b));
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += sep;
    s += parts[i];
  }
  return s;
}

std::string assignment_text(const std::vector<std::string>& names, const std::vector<std::string>& values) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < names.size(); ++i) parts.push_back(names[i] + "=" + values[i]);
  return join(parts, " ");
}

json named_bits_json(const NamedBits& bits) {
  json j = json::object();
  for (std::size_t i = 0; i < bits.size(); ++i) j[bits.name(i)] = bits.value(i) ? 1 : 0;
  return j;
}

std::string named_bits_text(const NamedBits& bits) {
  std::vector<std::string> parts;
  for (std::size_t i = 0; i < bits.size(); ++i) parts.push_back(bits.name(i) + "=" + bit(bits.value(i)));
  return join(parts, " ");
}

}  // namespace

// ---------------------------------------------------------------------------

std::string render_gate_list(const GateRegistry& registry, const RenderOptions& opts) {
  auto qcost = [](const Gate& g) { return g.quantum_cost() ? std::to_string(*g.quantum_cost()) : std::string(); };
  switch (opts.format) {
    case Format::Json: {
      json arr = json::array();
      for (const auto& g : registry.gates()) {
        json e{{"name", g.name()}, {"arity", g.arity()}, {"inputs", g.input_names()}, {"outputs", g.output_names()}};
        if (g.exprs()) {
          json defs = json::object();
          for (std::size_t i = 0; i < g.arity(); ++i) defs[g.output_names()[i]] = format_expr((*g.exprs())[i]);
          e["definition"] = defs;
        } else {
          e["permutation"] = g.permutation().image();
        }
        e["quantum_cost"] = g.quantum_cost() ? json(*g.quantum_cost()) : json(nullptr);
        if (!g.note().empty()) e["note"] = g.note();
        arr.push_back(std::move(e));
      }
      return dump(arr);
    }
    case Format::Csv: {
      std::string out = "name,arity,inputs,outputs,quantum_cost\n";
      for (const auto& g : registry.gates()) {
        out += csv_row({g.name(), std::to_string(g.arity()), join(g.input_names(), " "), join(g.output_names(), " "),
                        qcost(g)});
      }
      return out;
    }
    case Format::Text: break;
  }
  TextTable t({"NAME", "SIZE", "INPUTS", "OUTPUTS", "QUANTUM COST"});
  for (const auto& g : registry.gates()) {
    auto size = std::to_string(g.arity()) + "x" + std::to_string(g.arity());
    t.add({g.name(), size, join(g.input_names(), ","), join(g.output_names(), ","),
           g.quantum_cost() ? qcost(g) : "-"});
  }
  return t.str();
}

std::string render_truth_table(const TruthTable& table, const RenderOptions& opts) {
  std::vector<std::string> header = table.input_names;
  header.insert(header.end(), table.output_names.begin(), table.output_names.end());
  auto row_cells = [&](Word row) {
    auto cells = bits_of(row, table.arity);
    auto outs = bits_of(table.outputs[row], table.arity);
    cells.insert(cells.end(), outs.begin(), outs.end());
    return cells;
  };
  switch (opts.format) {
    case Format::Json: {
      json rows = json::array();
      for (Word r = 0; r < table.num_rows(); ++r) {
        rows.push_back({{"in", word_string(r, table.arity)}, {"out", word_string(table.outputs[r], table.arity)}});
      }
      return dump(json{{"inputs", table.input_names}, {"outputs", table.output_names}, {"rows", rows}});
    }
    case Format::Csv: {
      std::string out = csv_row(header);
      for (Word r = 0; r < table.num_rows(); ++r) out += csv_row(row_cells(r));
      return out;
    }
    case Format::Text: break;
  }
  header.insert(header.begin() + table.arity, "|");
  TextTable t(header);
  for (Word r = 0; r < table.num_rows(); ++r) {
    auto cells = row_cells(r);
    cells.insert(cells.begin() + table.arity, "|");
    t.add(std::move(cells));
  }
  return t.str();
}

std::string render_gate_verification(const Gate& gate, const RenderOptions& opts) {
  const auto table = truth_table(gate);
  const auto result = is_bijective(table);
  const Gate inv = inverse_gate(gate);
  std::size_t restored = 0;
  for (Word x = 0; x < table.num_rows(); ++x) {
    if (inv.eval(gate.eval(x)) == x) ++restored;
  }
  const bool inverse_ok = restored == table.num_rows();
  switch (opts.format) {
    case Format::Json: {
      json j{{"gate", gate.name()},
             {"arity", gate.arity()},
             {"rows", table.num_rows()},
             {"bijective", result.bijective},
             {"inverse_identity", inverse_ok},
             {"inverse_checks", restored}};
      j["witness"] = result.witness ? json{word_string(result.witness->first, gate.arity()),
                                           word_string(result.witness->second, gate.arity())}
                                    : json(nullptr);
      return dump(j);
    }
    case Format::Csv:
      return "gate,arity,rows,bijective,inverse_identity\n" +
             csv_row({gate.name(), std::to_string(gate.arity()), std::to_string(table.num_rows()),
                      result.bijective ? "true" : "false", inverse_ok ? "true" : "false"});
    case Format::Text: break;
  }
  std::string out = gate.name() + ": " + verdict(result.bijective, "bijective", "NOT bijective", opts.color);
  if (result.witness) {
    out += " (inputs " + word_string(result.witness->first, gate.arity()) + " and " +
           word_string(result.witness->second, gate.arity()) + " collide)";
  } else {
    out += " (" + std::to_string(table.num_rows()) + "/" + std::to_string(table.num_rows()) +
           " distinct output words)";
  }
  out += "\ninverse composition: " + verdict(inverse_ok, "identity", "BROKEN", opts.color) + " on " +
         std::to_string(restored) + "/" + std::to_string(table.num_rows()) + " inputs\n";
  return out;
}

std::string render_diagnostics(const Circuit& circuit, std::span<const Diagnostic> diagnostics,
                               const RenderOptions& opts) {
  std::size_t errors = 0;
  for (const auto& d : diagnostics) errors += d.is_error() ? 1 : 0;
  const std::size_t warnings = diagnostics.size() - errors;
  switch (opts.format) {
    case Format::Json: {
      json arr = json::array();
      for (const auto& d : diagnostics) {
        arr.push_back({{"severity", d.is_error() ? "error" : "warning"},
                       {"code", d.code},
                       {"line", d.loc.line},
                       {"column", d.loc.column},
                       {"message", d.message}});
      }
      return dump(json{{"circuit", circuit.name}, {"errors", errors}, {"warnings", warnings}, {"diagnostics", arr}});
    }
    case Format::Csv: {
      std::string out = "severity,code,line,column,message\n";
      for (const auto& d : diagnostics) {
        out += csv_row({d.is_error() ? "error" : "warning", d.code, std::to_string(d.loc.line),
                        std::to_string(d.loc.column), d.message});
      }
      return out;
    }
    case Format::Text: break;
  }
  std::string out;
  for (const auto& d : diagnostics) {
    std::string line = d.str();
    if (opts.color) {
      auto word = d.is_error() ? std::string("error:") : std::string("warning:");
      auto pos = line.find(word);
      if (pos != std::string::npos) {
        line.replace(pos, word.size(), paint(word, d.is_error() ? kRed : kYellow, true));
      }
    }
    out += line + "\n";
  }
  out += circuit.name + ": " + std::to_string(errors) + " error(s), " + std::to_string(warnings) + " warning(s)\n";
  return out;
}

std::string render_next_state_table(const NextStateTable& table, const RenderOptions& opts) {
  std::vector<std::string> header = table.input_names;
  header.insert(header.end(), table.state_names.begin(), table.state_names.end());
  for (const auto& o : table.output_labels) header.push_back("out:" + o);
  for (const auto& s : table.state_names) header.push_back("next:" + s);
  auto cells = [&](const NextStateRow& row) {
    auto c = bits_of(row.inputs, table.input_names.size());
    auto st = bits_of(row.state, table.state_names.size());
    c.insert(c.end(), st.begin(), st.end());
    for (auto b : row.outputs) c.push_back(bit(b));
    for (auto b : row.next_state) c.push_back(bit(b));
    return c;
  };
  switch (opts.format) {
    case Format::Json: {
      json rows = json::array();
      for (const auto& row : table.rows) {
        json r = json::object();
        auto c = cells(row);
        for (std::size_t i = 0; i < header.size(); ++i) r[header[i]] = c[i] == "1" ? 1 : 0;
        rows.push_back(std::move(r));
      }
      return dump(json{{"inputs", table.input_names},
                       {"state", table.state_names},
                       {"outputs", table.output_labels},
                       {"rows", rows}});
    }
    case Format::Csv: {
      std::string out = csv_row(header);
      for (const auto& row : table.rows) out += csv_row(cells(row));
      return out;
    }
    case Format::Text: break;
  }
  TextTable t(header);
  for (const auto& row : table.rows) t.add(cells(row));
  return t.str();
}

std::string render_characteristic(const CharacteristicReport& report, const RenderOptions& opts) {
  const std::size_t agree = report.rows_checked - report.failures.size();
  auto failure_cells = [&](const CharacteristicFailure& f) {
    auto c = bits_of(f.inputs, report.input_names.size());
    auto s = bits_of(f.state, report.state_names.size());
    c.insert(c.end(), s.begin(), s.end());
    return c;
  };
  std::vector<std::string> names = report.input_names;
  names.insert(names.end(), report.state_names.begin(), report.state_names.end());
  switch (opts.format) {
    case Format::Json: {
      json fails = json::array();
      for (const auto& f : report.failures) {
        json row = json::object();
        auto c = failure_cells(f);
        for (std::size_t i = 0; i < names.size(); ++i) row[names[i]] = c[i] == "1" ? 1 : 0;
        fails.push_back({{"row", row}, {"oracle", f.expected ? 1 : 0}, {"circuit", f.actual ? 1 : 0}});
      }
      return dump(json{{"target", report.target},
                       {"oracle", report.oracle},
                       {"pass", report.passed()},
                       {"rows", report.rows_checked},
                       {"agree", agree},
                       {"failures", fails}});
    }
    case Format::Csv: {
      std::vector<std::string> header = names;
      header.push_back("oracle");
      header.push_back("circuit");
      std::string out = csv_row(header);
      for (const auto& f : report.failures) {
        auto c = failure_cells(f);
        c.push_back(bit(f.expected));
        c.push_back(bit(f.actual));
        out += csv_row(c);
      }
      return out;
    }
    case Format::Text: break;
  }
  std::string out = verdict(report.passed(), "PASS", "FAIL", opts.color) + " " + std::to_string(agree) + "/" +
                    std::to_string(report.rows_checked) + "  " + report.target + ".next == " + report.oracle + "\n";
  for (const auto& f : report.failures) {
    out += "  " + assignment_text(names, failure_cells(f)) + ": oracle " + bit(f.expected) + ", circuit " +
           bit(f.actual) + "\n";
  }
  return out;
}

std::string render_trace(const Trace& trace, const RenderOptions& opts) {
  switch (opts.format) {
    case Format::Json: {
      json arr = json::array();
      for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        arr.push_back({{"step", i + 1},
                       {"inputs", named_bits_json(s.inputs)},
                       {"state", named_bits_json(s.state)},
                       {"outputs", named_bits_json(s.result.outputs)},
                       {"next_state", named_bits_json(s.result.next_state)},
                       {"settle_iterations", s.settle_iterations}});
      }
      return dump(arr);
    }
    case Format::Csv: {
      if (trace.steps.empty()) return "step\n";
      const auto& first = trace.steps.front();
      std::vector<std::string> header{"step"};
      for (const auto& n : first.inputs.names()) header.push_back(n);
      for (const auto& n : first.state.names()) header.push_back(n);
      for (const auto& n : first.result.outputs.names()) header.push_back("out:" + n);
      for (const auto& n : first.result.next_state.names()) header.push_back("next:" + n);
      std::string out = csv_row(header);
      for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& s = trace.steps[i];
        std::vector<std::string> row{std::to_string(i + 1)};
        for (const NamedBits* nb : {&s.inputs, &s.state, &s.result.outputs, &s.result.next_state}) {
          for (auto v : nb->values()) row.push_back(bit(v));
        }
        out += csv_row(row);
      }
      return out;
    }
    case Format::Text: break;
  }
  TextTable t({"STEP", "INPUTS", "STATE", "OUTPUTS", "NEXT"});
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& s = trace.steps[i];
    t.add({std::to_string(i + 1), named_bits_text(s.inputs), named_bits_text(s.state),
           named_bits_text(s.result.outputs), named_bits_text(s.result.next_state)});
  }
  return t.str();
}

std::string render_metrics(const MetricsReport& r, const RenderOptions& opts) {
  switch (opts.format) {
    case Format::Json: {
      json cls = json::object();
      for (const auto& oc : r.classification) {
        json e{{"instance", oc.instance}, {"role", role_name(oc.role)}};
        if (!oc.related.empty()) e["related"] = oc.related;
        cls[oc.wire] = std::move(e);
      }
      return dump(json{{"circuit", r.circuit},
                       {"gates", r.gate_count},
                       {"constant_inputs", r.constant_inputs},
                       {"garbage_declared", r.garbage_declared},
                       {"garbage_strict", r.garbage_strict},
                       {"delay", r.delay},
                       {"classification", cls}});
    }
    case Format::Csv:
      return "circuit,gates,constant_inputs,garbage_declared,garbage_strict,delay\n" +
             csv_row({r.circuit, std::to_string(r.gate_count), std::to_string(r.constant_inputs),
                      std::to_string(r.garbage_declared), std::to_string(r.garbage_strict), std::to_string(r.delay)});
    case Format::Text: break;
  }
  std::string out = "circuit          " + r.circuit + "\n";
  out += "gates            " + std::to_string(r.gate_count) + "\n";
  out += "constant inputs  " + std::to_string(r.constant_inputs) + "\n";
  out += "garbage          " + std::to_string(r.garbage_declared) + " (declared convention), " +
         std::to_string(r.garbage_strict) + " (strict)\n";
  out += "delay            " + std::to_string(r.delay) + "\n\n";
  TextTable t({"WIRE", "INSTANCE", "ROLE", "RELATED"});
  for (const auto& oc : r.classification) {
    std::string role(role_name(oc.role));
    if (oc.role == OutputRole::Garbage) role = paint(role, kYellow, opts.color);
    t.add({oc.wire, oc.instance, role, oc.related.empty() ? "" : (oc.complemented ? "!" : "") + oc.related});
  }
  return out + t.str();
}

std::string comparison_table_csv(const ComparisonTable& table) {
  std::string out = "design,source,gates,garbage_declared,garbage_strict,delay,match\n";
  if (table.computed) {
    const auto& c = *table.computed;
    out += csv_row({table.title, "Computed", std::to_string(c.gate_count), std::to_string(c.garbage_declared),
                    std::to_string(c.garbage_strict), std::to_string(c.delay),
                    table.match ? (*table.match ? "MATCH" : "MISMATCH") : ""});
  }
  for (const auto& r : table.stored) {
    out += csv_row({table.title, r.source, std::to_string(r.gates), std::to_string(r.garbage), "",
                    std::to_string(r.delay), ""});
  }
  return out;
}

std::string render_comparison(std::span<const ComparisonTable> tables, const RenderOptions& opts) {
  switch (opts.format) {
    case Format::Json: {
      json arr = json::array();
      for (const auto& t : tables) {
        json stored = json::array();
        for (const auto& r : t.stored) {
          stored.push_back({{"source", r.source}, {"gates", r.gates}, {"garbage", r.garbage}, {"delay", r.delay}});
        }
        json j{{"table", t.table}, {"design", t.title}, {"circuit", t.circuit}, {"stored", stored}};
        if (t.computed) {
          j["computed"] = {{"gates", t.computed->gate_count},
                           {"garbage_declared", t.computed->garbage_declared},
                           {"garbage_strict", t.computed->garbage_strict},
                           {"delay", t.computed->delay}};
        }
        j["match"] = t.match ? json(*t.match) : json(nullptr);
        j["mismatches"] = t.mismatches;
        arr.push_back(std::move(j));
      }
      return dump(arr);
    }
    case Format::Csv: {
      std::string out = "table,design,source,gates,garbage_declared,garbage_strict,delay,match\n";
      for (const auto& t : tables) {
        auto body = comparison_table_csv(t);
        auto pos = body.find('\n');
        std::size_t start = pos + 1;
        while (start < body.size()) {
          auto end = body.find('\n', start);
          out += std::to_string(t.table) + "," + body.substr(start, end - start) + "\n";
          start = end + 1;
        }
      }
      return out;
    }
    case Format::Text: break;
  }
  std::string out;
  for (const auto& t : tables) {
    if (!out.empty()) out += "\n";
    out += (t.table ? "Table " + std::to_string(t.table) + ": " : std::string("Unmatched: ")) + t.title + " (" +
           t.circuit + ")\n";
    TextTable grid({"SOURCE", "GATES", "GARBAGE", "STRICT", "DELAY", "MATCH"});
    if (t.computed) {
      grid.add({"Computed", std::to_string(t.computed->gate_count), std::to_string(t.computed->garbage_declared),
                std::to_string(t.computed->garbage_strict), std::to_string(t.computed->delay),
                t.match ? verdict(*t.match, "MATCH", "MISMATCH", opts.color) : ""});
    }
    for (const auto& r : t.stored) {
      grid.add({r.source, std::to_string(r.gates), std::to_string(r.garbage), "", std::to_string(r.delay), ""});
    }
    out += grid.str();
    for (const auto& m : t.mismatches) out += "  mismatch: " + m + "\n";
  }
  if (!tables.empty()) {
    out += "\nGarbage: declared convention counts unused outputs that are not copies or complements of a signal "
           "of interest; strict counts every unused output.\n";
  }
  return out;
}

}  // namespace revseq
