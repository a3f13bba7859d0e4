#include "revseq/gate_file.hpp"

#include <cctype>
#include <optional>
#include <set>

#include "line_cursor.hpp"

namespace revseq {

namespace {

using detail::LineCursor;
using detail::SourceLine;

struct PendingGate {
  SourceLocation loc;
  std::string name;
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::optional<unsigned> arity;
  std::optional<std::vector<Word>> perm;
  std::vector<std::optional<Expr>> exprs;
  std::optional<unsigned> quantum_cost;
  std::string note;
};

std::vector<std::string> identifier_list(LineCursor& cur) {
  std::vector<std::string> names;
  cur.expect('(');
  if (cur.accept(')')) return names;
  do {
    names.push_back(cur.identifier("line name"));
  } while (cur.accept(','));
  cur.expect(')');
  return names;
}

std::vector<Word> word_list(LineCursor& cur) {
  std::vector<Word> words;
  cur.expect('[');
  if (cur.accept(']')) return words;
  do {
    words.push_back(static_cast<Word>(cur.number("permutation entry")));
  } while (cur.accept(','));
  cur.expect(']');
  return words;
}

PendingGate parse_header(LineCursor& cur) {
  PendingGate g;
  g.loc = cur.location();
  g.name = cur.identifier("gate name");
  if (cur.peek() == '(') {
    // Either `(k)` or `(A, B, ...)`.
    cur.expect('(');
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      g.arity = static_cast<unsigned>(cur.number("arity"));
      cur.expect(')');
    } else {
      if (!cur.accept(')')) {
        do {
          g.inputs.push_back(cur.identifier("line name"));
        } while (cur.accept(','));
        cur.expect(')');
      }
      cur.expect("->");
      g.outputs = identifier_list(cur);
    }
  } else {
    cur.fail("'('");
  }
  if (cur.accept_keyword("perm")) {
    cur.expect('=');
    g.perm = word_list(cur);
  } else if (g.arity) {
    cur.fail("'perm'");
  }
  cur.expect_end();
  g.exprs.resize(g.outputs.size());
  return g;
}

Gate finish(PendingGate&& p) {
  try {
    std::optional<Gate> gate;
    if (p.perm) {
      unsigned arity = p.arity ? *p.arity : static_cast<unsigned>(p.inputs.size());
      for (const auto& e : p.exprs) {
        if (e) throw DefinitionError("gate " + p.name + ": permutation gates take no output expressions");
      }
      if (arity == 0 || arity > kMaxGateArity) {
        throw DefinitionError("gate " + p.name + ": arity " + std::to_string(arity) + " outside 1.." +
                              std::to_string(kMaxGateArity));
      }
      gate = Gate::from_permutation(p.name, arity, Permutation(std::move(*p.perm)), p.inputs, p.outputs);
    } else {
      std::vector<Gate::Output> outputs;
      for (std::size_t i = 0; i < p.outputs.size(); ++i) {
        if (!p.exprs[i]) throw DefinitionError("gate " + p.name + ": output " + p.outputs[i] + " is not assigned");
        outputs.push_back({p.outputs[i], *p.exprs[i]});
      }
      gate = Gate::from_exprs(p.name, p.inputs, std::move(outputs));
    }
    gate->set_quantum_cost(p.quantum_cost);
    gate->set_note(std::move(p.note));
    return std::move(*gate);
  } catch (const DefinitionError& e) {
    throw ParseError(p.loc, e.what());
  }
}

}  // namespace

std::vector<Gate> parse_gate_file(std::string_view text) {
  std::vector<Gate> gates;
  std::set<std::string, std::less<>> names;
  std::optional<PendingGate> pending;

  auto flush = [&] {
    if (!pending) return;
    if (!names.insert(pending->name).second) {
      throw ParseError(pending->loc, "duplicate gate '" + pending->name + "'");
    }
    gates.push_back(finish(std::move(*pending)));
    pending.reset();
  };

  for (const SourceLine& line : detail::split_lines(text)) {
    LineCursor cur(line);
    if (cur.at_end()) continue;
    SourceLocation stmt = cur.location();
    if (cur.accept_keyword("gate")) {
      flush();
      pending = parse_header(cur);
      continue;
    }
    if (!pending) {
      throw ParseError(stmt, "expected 'gate' definition", {"'gate'"});
    }
    if (cur.accept_keyword("meta")) {
      SourceLocation key_loc = cur.location();
      std::string key = cur.identifier("meta key");
      cur.expect('=');
      if (key == "quantum_cost") {
        pending->quantum_cost = static_cast<unsigned>(cur.number("quantum cost"));
      } else if (key == "note") {
        pending->note = cur.quoted();
      } else {
        throw ParseError(key_loc, "unknown meta key '" + key + "'", {"quantum_cost", "note"});
      }
      cur.expect_end();
      continue;
    }
    SourceLocation name_loc = cur.location();
    std::string out = cur.identifier("output assignment");
    std::size_t index = 0;
    while (index < pending->outputs.size() && pending->outputs[index] != out) ++index;
    if (index == pending->outputs.size()) {
      throw ParseError(name_loc, "'" + out + "' is not an output of gate " + pending->name);
    }
    if (pending->exprs[index]) {
      throw ParseError(name_loc, "output " + out + " assigned twice");
    }
    cur.expect('=');
    SourceLocation expr_loc;
    std::string_view expr_text = cur.rest(expr_loc);
    pending->exprs[index] = parse_expr(expr_text, expr_loc);
  }
  flush();
  return gates;
}

namespace {

bool default_names(const std::vector<std::string>& names, char prefix) {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] != prefix + std::to_string(i)) return false;
  }
  return true;
}

std::string join(const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) s += ", ";
    s += names[i];
  }
  return s;
}

}  // namespace

std::string format_gate(const Gate& gate) {
  std::string out = "gate " + gate.name();
  if (gate.exprs()) {
    out += "(" + join(gate.input_names()) + ") -> (" + join(gate.output_names()) + ")\n";
    for (std::size_t i = 0; i < gate.arity(); ++i) {
      out += "  " + gate.output_names()[i] + " = " + format_expr((*gate.exprs())[i]) + "\n";
    }
  } else {
    if (default_names(gate.input_names(), 'x') && default_names(gate.output_names(), 'y')) {
      out += "(" + std::to_string(gate.arity()) + ")";
    } else {
      out += "(" + join(gate.input_names()) + ") -> (" + join(gate.output_names()) + ")";
    }
    out += " perm = [";
    const auto& image = gate.permutation().image();
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(image[i]);
    }
    out += "]\n";
  }
  if (gate.quantum_cost()) out += "  meta quantum_cost = " + std::to_string(*gate.quantum_cost()) + "\n";
  if (!gate.note().empty()) out += "  meta note = \"" + gate.note() + "\"\n";
  return out;
}

std::string format_gate_file(std::span<const Gate> gates) {
  std::string out;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (i) out += "\n";
    out += format_gate(gates[i]);
  }
  return out;
}

}  // namespace revseq
