// revseq command-line front end.
//
// Exit codes: 0 success, 1 verification/reproduction mismatch,
// 2 usage or parse error, 3 oscillation.

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "revseq/bool_expr.hpp"
#include "revseq/error.hpp"
#include "revseq/gate.hpp"
#include "revseq/gate_file.hpp"
#include "revseq/metrics.hpp"
#include "revseq/netlist.hpp"
#include "revseq/report.hpp"
#include "revseq/reproduce.hpp"
#include "revseq/simulator.hpp"
#include "revseq/stimulus.hpp"

namespace fs = std::filesystem;
using namespace revseq;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kOscillation = 3;

/// Failure carrying its exit code; the message goes to stderr.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kUsage, "cannot read '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Common {
  std::string format = "text";
  std::string output;
  std::vector<std::string> gate_files;
};

bool color_enabled(const Common& common) {
  if (const char* env = std::getenv("REVSEQ_COLOR")) {
    std::string v(env);
    if (v == "0") return false;
    if (v == "1") return true;
  }
  return common.output.empty() && ::isatty(STDOUT_FILENO);
}

RenderOptions render_options(const Common& common) {
  try {
    return {parse_format(common.format), color_enabled(common)};
  } catch (const std::invalid_argument& e) {
    throw Exit{kUsage, e.what()};
  }
}

void emit(const Common& common, const std::string& text) {
  if (common.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(common.output, std::ios::binary);
  if (!out) throw Exit{kUsage, "cannot write '" + common.output + "'"};
  out << text;
}

/// Builtin gates with every --gates file layered on top (same name replaces).
GateRegistry load_registry(const std::vector<std::string>& files) {
  GateRegistry reg = builtin_library();
  for (const auto& path : files) {
    try {
      for (auto& g : parse_gate_file(read_file(path))) reg.put(std::move(g));
    } catch (const ParseError& e) {
      throw Exit{kUsage, path + ":" + e.what()};
    }
  }
  return reg;
}

Circuit load_circuit(const std::string& spec) {
  std::string text;
  std::string origin = spec;
  if (!spec.empty() && spec.front() == '@') {
    try {
      text = std::string(builtin_design_source(spec.substr(1)));
    } catch (const LookupError& e) {
      throw Exit{kUsage, e.what()};
    }
  } else {
    text = read_file(spec);
  }
  try {
    return parse_circuit(text);
  } catch (const ParseError& e) {
    throw Exit{kUsage, origin + ":" + e.what()};
  }
}

std::vector<int> parse_table_list(const std::string& list) {
  std::vector<int> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.size() != 1 || item[0] < '1' || item[0] > '6') {
      throw Exit{kUsage, "--tables: expected numbers 1-6, found '" + item + "'"};
    }
    out.push_back(item[0] - '0');
  }
  if (out.empty()) throw Exit{kUsage, "--tables: empty list"};
  return out;
}

// ---------------------------------------------------------------------------

struct GatesArgs {
  Common common;
  std::string name;
};

int run_gates(const std::string& action, const GatesArgs& args) {
  const auto opts = render_options(args.common);
  const GateRegistry reg = load_registry(args.common.gate_files);
  if (action == "list") {
    emit(args.common, render_gate_list(reg, opts));
    return kOk;
  }
  const Gate* gate = reg.find(args.name);
  if (!gate) throw Exit{kUsage, "unknown gate '" + args.name + "'"};
  if (action == "table") {
    emit(args.common, render_truth_table(truth_table(*gate), opts));
    return kOk;
  }
  emit(args.common, render_gate_verification(*gate, opts));
  return is_bijective(truth_table(*gate)).bijective ? kOk : kMismatch;
}

struct CircuitArgs {
  Common common;
  std::string file;
  std::string stim;
  std::string stim_file;
  bool settle = false;
  std::string oracle;
  std::string next;
  bool strict_fanout = false;
};

std::vector<Assignment> load_stimulus(const CircuitArgs& args) {
  if (!args.stim.empty() && !args.stim_file.empty()) throw Exit{kUsage, "use either --stim or --stim-file"};
  try {
    if (!args.stim_file.empty()) return parse_stimulus_file(read_file(args.stim_file));
    if (!args.stim.empty()) return parse_stimulus_inline(args.stim);
  } catch (const ParseError& e) {
    throw Exit{kUsage, std::string("stimulus:") + e.what()};
  }
  throw Exit{kUsage, "simulate needs --stim or --stim-file"};
}

int run_circuit(const std::string& action, const CircuitArgs& args) {
  const auto opts = render_options(args.common);
  const GateRegistry reg = load_registry(args.common.gate_files);
  const Circuit circuit = load_circuit(args.file);
  const ValidateOptions vopts{args.strict_fanout};

  if (action == "check") {
    const auto diags = validate(circuit, reg, vopts);
    emit(args.common, render_diagnostics(circuit, diags, opts));
    return has_errors(diags) ? kMismatch : kOk;
  }

  std::optional<Simulator> sim;
  try {
    sim.emplace(circuit, reg, vopts);
  } catch (const ValidationError& e) {
    std::cerr << render_diagnostics(circuit, e.diagnostics(), {Format::Text, false});
    return kUsage;
  }

  if (action == "table") {
    emit(args.common, render_next_state_table(sim->next_state_table(), opts));
    return kOk;
  }
  if (action == "simulate") {
    const auto stimulus = load_stimulus(args);
    try {
      emit(args.common, render_trace(sim->run(stimulus, args.settle), opts));
    } catch (const OscillationError& e) {
      throw Exit{kOscillation, e.what()};
    }
    return kOk;
  }
  if (action == "verify") {
    if (args.oracle.empty() || args.next.empty()) throw Exit{kUsage, "verify needs --oracle EXPR and --next VAR"};
    Expr oracle;
    try {
      oracle = parse_expr(args.oracle);
    } catch (const ParseError& e) {
      throw Exit{kUsage, std::string("--oracle:") + e.what()};
    }
    const auto report = sim->verify_characteristic(oracle, args.next);
    emit(args.common, render_characteristic(report, opts));
    return report.passed() ? kOk : kMismatch;
  }
  emit(args.common, render_metrics(compute_metrics(*sim), opts));
  return kOk;
}

struct ReproduceArgs {
  Common common;
  std::string tables = "1,2,3,4,5,6";
  std::string out_dir = ".";
  std::vector<std::string> designs;
  std::string dataset;
};

int run_reproduce(const ReproduceArgs& args) {
  const auto tables = parse_table_list(args.tables);
  ReproduceInputs in = ReproduceInputs::defaults();
  in.gates = load_registry(args.common.gate_files);
  try {
    in.designs = builtin_designs(builtin_library());
  } catch (const LookupError& e) {
    throw Exit{kUsage, e.what()};
  }
  for (const auto& path : args.designs) {
    Circuit c = load_circuit(path);
    auto it = std::find_if(in.designs.begin(), in.designs.end(), [&](const Circuit& d) { return d.name == c.name; });
    if (it != in.designs.end()) {
      *it = std::move(c);
    } else {
      in.designs.push_back(std::move(c));
    }
  }
  if (!args.dataset.empty()) {
    try {
      in.dataset = parse_dataset_csv(read_file(args.dataset));
    } catch (const ParseError& e) {
      throw Exit{kUsage, args.dataset + ":" + e.what()};
    }
  }

  const ReproduceResult result = reproduce(in, tables);

  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) throw Exit{kUsage, "cannot create '" + args.out_dir + "': " + ec.message()};
  std::string log;
  for (const auto& [name, content] : result.files) {
    const fs::path path = fs::path(args.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Exit{kUsage, "cannot write '" + path.string() + "'"};
    out << content;
    log += "wrote " + path.string() + "\n";
  }

  const auto opts = render_options(args.common);
  if (!result.comparisons.empty()) log += "\n" + render_comparison(result.comparisons, opts);
  if (!result.notes.empty()) {
    log += "\nchecks:\n";
    for (const auto& n : result.notes) log += "  " + n + "\n";
  }
  if (!result.ok) {
    log += "\nmismatches:\n";
    for (const auto& d : result.diffs) log += "  " + d + "\n";
  }
  log += std::string("\nreproduce: ") + (result.ok ? "all tables match" : std::to_string(result.diffs.size()) +
                                                                             " mismatch(es)") + "\n";
  std::cout << log;
  return result.ok ? kOk : kMismatch;
}

void add_common(CLI::App* cmd, Common& common, bool with_output = true) {
  cmd->add_option("--format", common.format, "Output format: text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  if (with_output) cmd->add_option("-o,--output", common.output, "Write the report to a file");
  cmd->add_option("--gates", common.gate_files, "Gate definition file layered over the builtin library");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reversible sequential logic workbench"};
  app.require_subcommand(1);

  // gates
  GatesArgs gates_args;
  auto* gates = app.add_subcommand("gates", "Inspect and verify reversible gates");
  gates->require_subcommand(1);
  auto* gates_list = gates->add_subcommand("list", "List registered gates");
  auto* gates_table = gates->add_subcommand("table", "Print a gate's truth table");
  auto* gates_verify = gates->add_subcommand("verify", "Check bijectivity and the inverse");
  add_common(gates_list, gates_args.common);
  for (auto* sub : {gates_table, gates_verify}) {
    sub->add_option("NAME", gates_args.name, "Gate name")->required();
    add_common(sub, gates_args.common);
  }

  // circuit
  CircuitArgs circuit_args;
  auto* circuit = app.add_subcommand("circuit", "Check, simulate, verify and measure circuits");
  circuit->require_subcommand(1);
  std::vector<CLI::App*> circuit_actions;
  for (const char* name : {"check", "table", "simulate", "verify", "metrics"}) {
    auto* sub = circuit->add_subcommand(name);
    sub->add_option("FILE", circuit_args.file, "Circuit file, or @name for a shipped design")->required();
    add_common(sub, circuit_args.common);
    sub->add_flag("--strict-fanout", circuit_args.strict_fanout, "Treat FANOUT warnings as errors");
    circuit_actions.push_back(sub);
  }
  circuit_actions[0]->description("Validate and print diagnostics");
  circuit_actions[1]->description("Print the exhaustive next-state table");
  circuit_actions[2]->description("Run a stimulus sequence");
  circuit_actions[2]->add_option("--stim", circuit_args.stim, "Inline stimulus, e.g. \"CLK=1,D=1; CLK=0,D=1\"");
  circuit_actions[2]->add_option("--stim-file", circuit_args.stim_file, "Stimulus file");
  circuit_actions[2]->add_flag("--settle", circuit_args.settle, "Settle each step to a fixpoint");
  circuit_actions[3]->description("Check a next-state variable against an equation");
  circuit_actions[3]->add_option("--oracle", circuit_args.oracle, "Expression over inputs and current state");
  circuit_actions[3]->add_option("--next", circuit_args.next, "State variable to check");
  circuit_actions[4]->description("Gate count, garbage and delay");

  // reproduce
  ReproduceArgs repro_args;
  auto* repro = app.add_subcommand("reproduce", "Regenerate tables 1-6 and compare with stored values");
  repro->add_option("--tables", repro_args.tables, "Comma-separated subset of 1-6");
  repro->add_option("--out", repro_args.out_dir, "Output directory");
  repro->add_option("--design", repro_args.designs, "Circuit file replacing the shipped design of the same name");
  repro->add_option("--dataset", repro_args.dataset, "Comparison dataset CSV");
  add_common(repro, repro_args.common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (gates->parsed()) {
      for (auto* sub : {gates_list, gates_table, gates_verify}) {
        if (sub->parsed()) return run_gates(sub->get_name(), gates_args);
      }
    }
    if (circuit->parsed()) {
      for (auto* sub : circuit_actions) {
        if (sub->parsed()) return run_circuit(sub->get_name(), circuit_args);
      }
    }
    return run_reproduce(repro_args);
  } catch (const Exit& e) {
    std::cerr << "revseq: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "revseq: " << e.what() << "\n";
    return kUsage;
  }
}
