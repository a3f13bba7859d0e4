#include "revseq/netlist.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "line_cursor.hpp"
#include "revseq/data.hpp"

namespace revseq {

std::string Wire::str() const {
  switch (tap) {
    case Tap::Prev: return base + ".prev";
    case Tap::Next: return base + ".next";
    case Tap::None: break;
  }
  return base;
}

bool Circuit::is_clock(std::string_view input) const {
  if (!has_input(input)) return false;
  if (input == "CLK") return true;
  return std::any_of(clocks.begin(), clocks.end(), [&](const ClockDecl& c) { return c.name == input; });
}

const StateDecl* Circuit::find_state(std::string_view name) const {
  auto it = std::find_if(states.begin(), states.end(), [&](const StateDecl& s) { return s.name == name; });
  return it == states.end() ? nullptr : &*it;
}

bool Circuit::has_input(std::string_view name) const {
  return std::any_of(inputs.begin(), inputs.end(), [&](const InputDecl& i) { return i.name == name; });
}

bool Circuit::has_constant(std::string_view name) const {
  return std::any_of(constants.begin(), constants.end(), [&](const ConstDecl& c) { return c.name == name; });
}

bool operator==(const InputDecl& a, const InputDecl& b) { return a.name == b.name; }
bool operator==(const ConstDecl& a, const ConstDecl& b) { return a.name == b.name && a.value == b.value; }
bool operator==(const StateDecl& a, const StateDecl& b) { return a.name == b.name && a.initial == b.initial; }
bool operator==(const GateInstance& a, const GateInstance& b) {
  return a.id == b.id && a.gate == b.gate && a.inputs == b.inputs && a.outputs == b.outputs;
}
bool operator==(const OutputPort& a, const OutputPort& b) { return a.wire == b.wire && a.label == b.label; }
bool operator==(const GarbageDecl& a, const GarbageDecl& b) { return a.wire == b.wire; }
bool operator==(const ClockDecl& a, const ClockDecl& b) { return a.name == b.name; }
bool operator==(const Circuit& a, const Circuit& b) {
  return a.name == b.name && a.inputs == b.inputs && a.clocks == b.clocks && a.states == b.states &&
         a.constants == b.constants && a.instances == b.instances && a.outputs == b.outputs &&
         a.garbage == b.garbage;
}

std::string Diagnostic::str() const {
  std::string s;
  if (loc.line > 0) s += loc.str() + ": ";
  s += severity == Severity::Error ? "error: " : "warning: ";
  s += message + " [" + code + "]";
  return s;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) { return d.is_error(); });
}

namespace {

std::string summarize(const std::string& circuit, const std::vector<Diagnostic>& diagnostics) {
  std::string msg = "circuit " + circuit + " is invalid";
  for (const auto& d : diagnostics) {
    if (d.is_error()) {
      msg += ": " + d.str();
      break;
    }
  }
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::string circuit, std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(circuit, diagnostics)), diagnostics_(std::move(diagnostics)) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::LineCursor;

Wire parse_wire(LineCursor& cur) {
  Wire w;
  w.base = cur.identifier("wire");
  if (cur.accept('.')) {
    if (cur.accept_keyword("prev")) {
      w.tap = Wire::Tap::Prev;
    } else if (cur.accept_keyword("next")) {
      w.tap = Wire::Tap::Next;
    } else {
      cur.fail("'prev' or 'next'");
    }
  }
  return w;
}

std::vector<Wire> wire_list(LineCursor& cur) {
  std::vector<Wire> wires;
  cur.expect('(');
  if (cur.accept(')')) return wires;
  do {
    wires.push_back(parse_wire(cur));
  } while (cur.accept(','));
  cur.expect(')');
  return wires;
}

class CircuitParser {
public:
  Circuit parse(std::string_view text) {
    bool have_header = false;
    for (const auto& line : detail::split_lines(text)) {
      LineCursor cur(line);
      if (cur.at_end()) continue;
      SourceLocation loc = cur.location();
      if (cur.accept_keyword("circuit")) {
        if (have_header) throw ParseError(loc, "duplicate 'circuit' statement");
        circuit_.name = cur.identifier("circuit name");
        have_header = true;
      } else if (!have_header) {
        throw ParseError(loc, "expected 'circuit NAME' as the first statement", {"'circuit'"});
      } else if (cur.accept_keyword("input")) {
        do {
          SourceLocation at = cur.location();
          auto name = cur.identifier("input name");
          declare(name, at);
          circuit_.inputs.push_back({std::move(name), at});
        } while (cur.accept(','));
      } else if (cur.accept_keyword("clock")) {
        do {
          SourceLocation at = cur.location();
          circuit_.clocks.push_back({cur.identifier("clock input"), at});
        } while (cur.accept(','));
      } else if (cur.accept_keyword("state")) {
        do {
          SourceLocation at = cur.location();
          auto name = cur.identifier("state name");
          declare(name, at);
          bool initial = false;
          if (cur.accept('=')) initial = cur.bit();
          circuit_.states.push_back({std::move(name), initial, at});
        } while (cur.accept(','));
      } else if (cur.accept_keyword("const")) {
        do {
          SourceLocation at = cur.location();
          auto name = cur.identifier("constant name");
          declare(name, at);
          cur.expect('=');
          circuit_.constants.push_back({std::move(name), cur.bit(), at});
        } while (cur.accept(','));
      } else if (cur.accept_keyword("gate")) {
        GateInstance inst;
        inst.loc = cur.location();
        inst.id = cur.identifier("instance id");
        if (auto [it, fresh] = instance_ids_.emplace(inst.id, inst.loc); !fresh) {
          throw ParseError(inst.loc, "duplicate instance id '" + inst.id + "' (first declared at " +
                                         it->second.str() + ")");
        }
        cur.expect(':');
        inst.gate = cur.identifier("gate name");
        inst.inputs = wire_list(cur);
        cur.expect("->");
        inst.outputs = wire_list(cur);
        circuit_.instances.push_back(std::move(inst));
      } else if (cur.accept_keyword("output")) {
        do {
          OutputPort port;
          port.loc = cur.location();
          port.wire = parse_wire(cur);
          port.label = cur.accept_keyword("as") ? cur.identifier("output label") : port.wire.str();
          circuit_.outputs.push_back(std::move(port));
        } while (cur.accept(','));
      } else if (cur.accept_keyword("garbage")) {
        do {
          SourceLocation at = cur.location();
          circuit_.garbage.push_back({parse_wire(cur), at});
        } while (cur.accept(','));
      } else {
        std::string word = cur.identifier("statement");
        throw ParseError(loc, "unknown statement '" + word + "'",
                         {"circuit", "input", "clock", "state", "const", "gate", "output", "garbage"});
      }
      cur.expect_end();
    }
    if (!have_header) throw ParseError({1, 1}, "missing 'circuit NAME' statement", {"'circuit'"});
    return std::move(circuit_);
  }

private:
  void declare(const std::string& name, SourceLocation loc) {
    if (auto [it, fresh] = names_.emplace(name, loc); !fresh) {
      throw ParseError(loc, "duplicate identifier '" + name + "' (first declared at " + it->second.str() + ")");
    }
  }

  Circuit circuit_;
  std::map<std::string, SourceLocation, std::less<>> names_;
  std::map<std::string, SourceLocation, std::less<>> instance_ids_;
};

std::string join_wires(const std::vector<Wire>& wires) {
  std::string s;
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (i) s += ", ";
    s += wires[i].str();
  }
  return s;
}

}  // namespace

Circuit parse_circuit(std::string_view text) { return CircuitParser().parse(text); }

std::string format_circuit(const Circuit& c) {
  std::string out = "circuit " + c.name + "\n";
  if (!c.inputs.empty()) {
    out += "input ";
    for (std::size_t i = 0; i < c.inputs.size(); ++i) out += (i ? ", " : "") + c.inputs[i].name;
    out += "\n";
  }
  if (!c.clocks.empty()) {
    out += "clock ";
    for (std::size_t i = 0; i < c.clocks.size(); ++i) out += (i ? ", " : "") + c.clocks[i].name;
    out += "\n";
  }
  for (const auto& s : c.states) out += "state " + s.name + " = " + (s.initial ? "1" : "0") + "\n";
  for (const auto& k : c.constants) out += "const " + k.name + " = " + (k.value ? "1" : "0") + "\n";
  for (const auto& g : c.instances) {
    out += "gate " + g.id + " : " + g.gate + " (" + join_wires(g.inputs) + ") -> (" + join_wires(g.outputs) + ")\n";
  }
  if (!c.outputs.empty()) {
    out += "output ";
    for (std::size_t i = 0; i < c.outputs.size(); ++i) {
      const auto& p = c.outputs[i];
      if (i) out += ", ";
      out += p.wire.str();
      if (p.label != p.wire.str()) out += " as " + p.label;
    }
    out += "\n";
  }
  if (!c.garbage.empty()) {
    out += "garbage ";
    for (std::size_t i = 0; i < c.garbage.size(); ++i) out += (i ? ", " : "") + c.garbage[i].wire.str();
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

struct Driver {
  enum class Kind { Input, Const, State, Gate } kind;
  std::size_t instance = 0;
};

class Validator {
public:
  Validator(const Circuit& c, const GateRegistry& r, const ValidateOptions& o) : c_(c), registry_(r), opts_(o) {}

  std::vector<Diagnostic> run() {
    if (c_.instances.empty()) {
      warn(diag::kEmpty, "circuit " + c_.name + " has no gate instances", {});
    }
    for (const auto& clk : c_.clocks) {
      if (!c_.has_input(clk.name)) error(diag::kClockNotInput, "clock '" + clk.name + "' is not a primary input", clk.loc);
    }
    for (const auto& i : c_.inputs) drivers_[Wire::plain(i.name)] = {Driver::Kind::Input};
    for (const auto& k : c_.constants) drivers_[Wire::plain(k.name)] = {Driver::Kind::Const};
    for (const auto& s : c_.states) drivers_[Wire::prev(s.name)] = {Driver::Kind::State};

    check_instances();
    check_uses();
    for (const auto& s : c_.states) {
      if (!drivers_.count(Wire::next(s.name))) {
        error(diag::kNextUndriven, "next-state wire " + s.name + ".next is never driven", s.loc);
      }
    }
    check_cycles();
    check_fanout();

    std::stable_sort(diags_.begin(), diags_.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.loc.line < b.loc.line; });
    return std::move(diags_);
  }

private:
  void error(std::string_view code, std::string msg, SourceLocation loc) {
    diags_.push_back({Severity::Error, std::string(code), std::move(msg), loc});
  }
  void warn(std::string_view code, std::string msg, SourceLocation loc) {
    diags_.push_back({Severity::Warning, std::string(code), std::move(msg), loc});
  }

  // Checks that a reference is well-formed with respect to state taps.
  bool check_ref(const Wire& w, SourceLocation loc) {
    const bool is_state = c_.find_state(w.base) != nullptr;
    if (w.tap != Wire::Tap::None && !is_state) {
      error(diag::kUnknownState, "'" + w.str() + "' refers to undeclared state variable '" + w.base + "'", loc);
      return false;
    }
    if (w.tap == Wire::Tap::None && is_state) {
      error(diag::kStateRef, "state variable '" + w.base + "' must be referenced as " + w.base + ".prev or " +
                                 w.base + ".next",
            loc);
      return false;
    }
    return true;
  }

  void check_instances() {
    for (std::size_t i = 0; i < c_.instances.size(); ++i) {
      const auto& inst = c_.instances[i];
      if (const Gate* g = registry_.find(inst.gate)) {
        if (inst.inputs.size() != g->arity()) {
          error(diag::kArity, "instance " + inst.id + ": gate " + inst.gate + " takes " + std::to_string(g->arity()) +
                                  " inputs, got " + std::to_string(inst.inputs.size()),
                inst.loc);
        }
        if (inst.outputs.size() != g->arity()) {
          error(diag::kArity, "instance " + inst.id + ": gate " + inst.gate + " has " + std::to_string(g->arity()) +
                                  " outputs, got " + std::to_string(inst.outputs.size()),
                inst.loc);
        }
      } else {
        error(diag::kUnknownGate, "instance " + inst.id + ": unknown gate '" + inst.gate + "'", inst.loc);
      }
      for (const auto& w : inst.outputs) {
        if (!check_ref(w, inst.loc)) continue;
        if (w.tap == Wire::Tap::Prev) {
          error(diag::kDriveSource, "instance " + inst.id + " drives state tap " + w.str(), inst.loc);
          continue;
        }
        auto [it, fresh] = drivers_.emplace(w, Driver{Driver::Kind::Gate, i});
        if (fresh) continue;
        if (it->second.kind == Driver::Kind::Gate) {
          error(diag::kMultiDrive, "wire " + w.str() + " is driven by both " + c_.instances[it->second.instance].id +
                                       " and " + inst.id,
                inst.loc);
        } else {
          error(diag::kDriveSource, "instance " + inst.id + " drives " + w.str() + ", which is a primary input or constant",
                inst.loc);
        }
      }
    }
  }

  void check_uses() {
    for (const auto& inst : c_.instances) {
      for (const auto& w : inst.inputs) {
        if (!check_ref(w, inst.loc)) continue;
        if (!drivers_.count(w)) error(diag::kUndriven, "instance " + inst.id + " reads undriven wire " + w.str(), inst.loc);
        ++consumers_[w];
      }
    }
    std::set<std::string, std::less<>> labels;
    for (const auto& port : c_.outputs) {
      if (check_ref(port.wire, port.loc) && !drivers_.count(port.wire)) {
        error(diag::kUndriven, "output " + port.label + " reads undriven wire " + port.wire.str(), port.loc);
      }
      if (!labels.insert(port.label).second) {
        error(diag::kDuplicateLabel, "output label '" + port.label + "' used twice", port.loc);
      }
      ++consumers_[port.wire];
    }
    for (const auto& g : c_.garbage) {
      if (!check_ref(g.wire, g.loc)) continue;
      auto it = drivers_.find(g.wire);
      if (it == drivers_.end() || it->second.kind != Driver::Kind::Gate) {
        error(diag::kBadGarbage, "garbage " + g.wire.str() + " is not a gate output", g.loc);
      }
    }
  }

  void check_cycles() {
    const std::size_t n = c_.instances.size();
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::size_t> indegree(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& w : c_.instances[i].inputs) {
        auto it = drivers_.find(w);
        if (it == drivers_.end() || it->second.kind != Driver::Kind::Gate) continue;
        succ[it->second.instance].push_back(i);
        ++indegree[i];
      }
    }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] == 0) ready.push_back(i);
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
      auto i = ready.back();
      ready.pop_back();
      ++seen;
      for (auto j : succ[i]) {
        if (--indegree[j] == 0) ready.push_back(j);
      }
    }
    if (seen == n) return;
    std::string members;
    SourceLocation loc;
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] == 0) continue;
      if (members.empty()) loc = c_.instances[i].loc;
      members += (members.empty() ? "" : ", ") + c_.instances[i].id;
    }
    error(diag::kCycle, "combinational cycle through instances " + members + " (feedback must go through state)",
          loc);
  }

  void check_fanout() {
    for (const auto& inst : c_.instances) {
      for (const auto& w : inst.outputs) {
        auto it = drivers_.find(w);
        if (it == drivers_.end() || it->second.kind != Driver::Kind::Gate ||
            &c_.instances[it->second.instance] != &inst) {
          continue;
        }
        int uses = consumers_[w] + (w.tap == Wire::Tap::Next ? 1 : 0);
        if (uses > 1) {
          std::string msg = "wire " + w.str() + " from " + inst.id + " fans out to " + std::to_string(uses) + " sinks";
          if (opts_.strict_fanout) {
            error(diag::kFanout, std::move(msg), inst.loc);
          } else {
            warn(diag::kFanout, std::move(msg), inst.loc);
          }
        }
      }
    }
    for (const auto& g : c_.garbage) {
      if (consumers_.count(g.wire) && consumers_[g.wire] > 0) {
        warn(diag::kGarbageUsed, "wire " + g.wire.str() + " is declared garbage but is used", g.loc);
      }
    }
  }

  const Circuit& c_;
  const GateRegistry& registry_;
  const ValidateOptions& opts_;
  std::map<Wire, Driver> drivers_;
  std::map<Wire, int> consumers_;
  std::vector<Diagnostic> diags_;
};

}  // namespace

std::vector<Diagnostic> validate(const Circuit& circuit, const GateRegistry& registry, const ValidateOptions& options) {
  return Validator(circuit, registry, options).run();
}

// ---------------------------------------------------------------------------
// Builtin designs

const std::vector<std::string>& builtin_design_names() {
  static const std::vector<std::string> names{"d_latch", "ms_d_ff", "jk_latch", "ms_jk_ff"};
  return names;
}

std::string_view builtin_design_source(std::string_view name) {
  const auto& names = builtin_design_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    throw LookupError("unknown builtin design '" + std::string(name) + "'");
  }
  return data::file("circuits/" + std::string(name) + ".rseq");
}

Circuit builtin_design(std::string_view name) { return parse_circuit(builtin_design_source(name)); }

std::vector<Circuit> builtin_designs(const GateRegistry& registry) {
  std::vector<Circuit> designs;
  for (const auto& name : builtin_design_names()) {
    Circuit c = builtin_design(name);
    for (const auto& inst : c.instances) {
      if (!registry.contains(inst.gate)) {
        throw LookupError("design " + c.name + " needs gate '" + inst.gate + "', which is not in the registry");
      }
    }
    designs.push_back(std::move(c));
  }
  return designs;
}

}  // namespace revseq
