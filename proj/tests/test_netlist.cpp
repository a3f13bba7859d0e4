#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "revseq/data.hpp"
#include "revseq/netlist.hpp"
#include "support.hpp"

using namespace revseq;

namespace {

const char* kDLatch = R"(circuit d_latch
input CLK, D
state Q = 0
const ONE = 1
gate g1 : MG1 (CLK, D, Q.prev, ONE) -> (nCLK, g, Q.next, Qbar)
output Q.next as Q, Qbar as Qn
garbage g
)";

std::vector<Diagnostic> check(std::string_view text, ValidateOptions opts = {}) {
  return validate(parse_circuit(text), builtin_library(), opts);
}

std::vector<std::string> codes(const std::vector<Diagnostic>& diags, Severity sev) {
  std::vector<std::string> out;
  for (const auto& d : diags) {
    if (d.severity == sev) out.push_back(d.code);
  }
  return out;
}

const Diagnostic* find_code(const std::vector<Diagnostic>& diags, std::string_view code) {
  for (const auto& d : diags) {
    if (d.code == code) return &d;
  }
  return nullptr;
}

// Random feed-forward circuits over the 2- and 3-line builtins; every wire
// is driven once and consumed at most once.
Circuit random_circuit(std::mt19937& rng, int index) {
  Circuit c;
  c.name = "rand" + std::to_string(index);
  std::vector<Wire> free;
  const int n_inputs = 2 + int(rng() % 3);
  for (int i = 0; i < n_inputs; ++i) {
    c.inputs.push_back({"i" + std::to_string(i), {}});
    free.push_back(Wire::plain("i" + std::to_string(i)));
  }
  if (rng() % 2) {
    c.constants.push_back({"K", bool(rng() % 2), {}});
    free.push_back(Wire::plain("K"));
  }
  if (rng() % 2) {
    c.states.push_back({"S", bool(rng() % 2), {}});
    free.push_back(Wire::prev("S"));
  }
  int wire_id = 0;
  const char* gates[] = {"FG", "TG", "FRG", "PG"};
  const int n_gates = 1 + int(rng() % 4);
  for (int g = 0; g < n_gates; ++g) {
    const std::string gate = gates[rng() % 4];
    const std::size_t arity = gate == "FG" ? 2 : 3;
    while (free.size() < arity) {
      const std::string name = "x" + std::to_string(c.inputs.size());
      c.inputs.push_back({name, {}});
      free.push_back(Wire::plain(name));
    }
    std::shuffle(free.begin(), free.end(), rng);
    GateInstance inst{"u" + std::to_string(g), gate, {}, {}, {}};
    for (std::size_t k = 0; k < arity; ++k) {
      inst.inputs.push_back(free.back());
      free.pop_back();
    }
    for (std::size_t k = 0; k < arity; ++k) {
      Wire w = Wire::plain("w" + std::to_string(wire_id++));
      inst.outputs.push_back(w);
      free.push_back(w);
    }
    c.instances.push_back(std::move(inst));
  }
  if (!c.states.empty()) {
    // Route one gate output into the next-state tap.
    auto& last = c.instances.back();
    auto& out = last.outputs[rng() % last.outputs.size()];
    std::erase(free, out);
    out = Wire::next("S");
  }
  for (const auto& w : free) {
    if (w.tap == Wire::Tap::None && w.base[0] == 'w') {
      if (rng() % 2) {
        c.outputs.push_back({w, rng() % 2 ? w.str() : "L" + w.base, {}});
      } else {
        c.garbage.push_back({w, {}});
      }
    }
  }
  return c;
}

}  // namespace

TEST(Parse, DLatchStructure) {
  const Circuit c = parse_circuit(kDLatch);
  EXPECT_EQ(c.name, "d_latch");
  ASSERT_EQ(c.inputs.size(), 2u);
  EXPECT_EQ(c.inputs[0].name, "CLK");
  ASSERT_EQ(c.states.size(), 1u);
  EXPECT_FALSE(c.states[0].initial);
  ASSERT_EQ(c.constants.size(), 1u);
  EXPECT_TRUE(c.constants[0].value);
  ASSERT_EQ(c.instances.size(), 1u);
  EXPECT_EQ(c.instances[0].gate, "MG1");
  EXPECT_EQ(c.instances[0].inputs[2], Wire::prev("Q"));
  EXPECT_EQ(c.instances[0].outputs[2], Wire::next("Q"));
  EXPECT_EQ(c.instances[0].loc.line, 5);
  ASSERT_EQ(c.outputs.size(), 2u);
  EXPECT_EQ(c.outputs[0].label, "Q");
  EXPECT_EQ(c.outputs[1].wire, Wire::plain("Qbar"));
  EXPECT_TRUE(c.is_clock("CLK"));
  EXPECT_FALSE(c.is_clock("D"));
}
TEST(Parse, ShippedDLatchEqualsDocumentedSource) { EXPECT_EQ(builtin_design("d_latch"), parse_circuit(kDLatch)); }

TEST(Parse, EmptyBodyParses) {
  const Circuit c = parse_circuit("circuit empty\n");
  EXPECT_TRUE(c.instances.empty());
  const auto diags = validate(c, builtin_library());
  EXPECT_FALSE(has_errors(diags));
  EXPECT_NE(find_code(diags, diag::kEmpty), nullptr);
}

TEST(Parse, ListsCommentsAndClockStatement) {
  const Circuit c = parse_circuit(
      "# leading comment\n"
      "circuit c   # trailing\n"
      "input EN, X\n"
      "clock EN\n"
      "state A = 1, B\n"
      "const Z = 0\n");
  EXPECT_EQ(c.states.size(), 2u);
  EXPECT_TRUE(c.states[0].initial);
  EXPECT_TRUE(c.is_clock("EN"));
  EXPECT_FALSE(c.is_clock("X"));
}

TEST(ParseErrors, Located) {
  struct Case {
    const char* text;
    int line;
  };
  const Case cases[] = {
      {"input A\n", 1},
      {"circuit c\ncircuit d\n", 2},
      {"circuit c\ninput A, A\n", 2},
      {"circuit c\ninput A\nconst A = 1\n", 3},
      {"circuit c\nconst K = 2\n", 2},
      {"circuit c\nwire x\n", 2},
      {"circuit c\ninput A, B\ngate g : FG (A, B) (p, q)\n", 3},
      {"circuit c\ninput A, B\ngate g : FG (A, B) -> (p, q)\ngate g : FG (p, q) -> (r, s)\n", 4},
      {"circuit c\ninput A\ngate g : FG (A, Q.now) -> (p, q)\n", 3},
      {"circuit c\ninput A\noutput A as\n", 3},
      {"circuit c\ninput A,\n", 2},
      {"circuit c\nstate Q = x\n", 2},
  };
  for (const auto& c : cases) {
    try {
      parse_circuit(c.text);
      ADD_FAILURE() << "accepted:\n" << c.text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.location().line, c.line) << c.text << "\n" << e.what();
      EXPECT_GT(e.location().column, 0);
    }
  }
}

TEST(ParseErrors, UnknownStatementListsKeywords) {
  try {
    parse_circuit("circuit c\nwire x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GE(e.expected().size(), 6u);
  }
}

TEST(Format, CanonicalText) {
  const std::string text = format_circuit(parse_circuit(kDLatch));
  EXPECT_NE(text.find("output Q.next as Q, Qbar as Qn"), std::string::npos) << text;
  Circuit c = parse_circuit(kDLatch);
  c.outputs.clear();
  EXPECT_EQ(format_circuit(c).find("output"), std::string::npos);
  c.outputs.push_back({Wire::plain("Qbar"), "Qbar", {}});
  EXPECT_NE(format_circuit(c).find("output Qbar\n"), std::string::npos);
}

TEST(Format, ShippedDesignsRoundTrip) {
  for (const auto& name : builtin_design_names()) {
    const Circuit c = parse_circuit(builtin_design_source(name));
    const std::string text = format_circuit(c);
    EXPECT_EQ(parse_circuit(text), c) << name;
    EXPECT_EQ(format_circuit(parse_circuit(text)), text) << name;
  }
}

TEST(Format, FixtureCircuitsRoundTrip) {
  for (const auto* rel : {"not_feedback.rseq", "faults/miswired_jk_latch.rseq"}) {
    const Circuit c = parse_circuit(support::slurp(support::fixture(rel)));
    EXPECT_EQ(parse_circuit(format_circuit(c)), c) << rel;
  }
}

TEST(Property, RandomCircuitsRoundTripAndValidate) {
  std::mt19937 rng(1234);
  for (int i = 0; i < 300; ++i) {
    const Circuit c = random_circuit(rng, i);
    const std::string text = format_circuit(c);
    ASSERT_EQ(parse_circuit(text), c) << text;
    const auto diags = validate(c, builtin_library());
    ASSERT_FALSE(has_errors(diags)) << text;
  }
}

TEST(Validate, BuiltinDesigns) {
  const auto designs = builtin_designs(builtin_library());
  ASSERT_EQ(designs.size(), 4u);
  const std::size_t gates[] = {1, 2, 2, 3};
  for (std::size_t i = 0; i < designs.size(); ++i) {
    EXPECT_EQ(designs[i].name, builtin_design_names()[i]);
    EXPECT_EQ(designs[i].instances.size(), gates[i]);
    const auto diags = validate(designs[i], builtin_library());
    EXPECT_TRUE(codes(diags, Severity::Error).empty()) << designs[i].name;
  }
  const auto d = validate(designs[0], builtin_library());
  EXPECT_EQ(codes(d, Severity::Warning), (std::vector<std::string>{"FANOUT"}));
}

TEST(Validate, StrictFanoutPromotes) {
  const auto diags = check(kDLatch, {true});
  EXPECT_EQ(codes(diags, Severity::Error), (std::vector<std::string>{"FANOUT"}));
}

TEST(Validate, ArityMismatch) {
  const auto diags = check("circuit c\ninput CLK, D\ngate g1 : MG1 (CLK, D) -> (a, b)\n");
  const auto* d = find_code(diags, diag::kArity);
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->loc.line, 3);
}

TEST(Validate, UndrivenNamesWire) {
  const auto diags = check("circuit c\ninput A\ngate g : FG (A, x) -> (p, q)\noutput p, q\n");
  const auto* d = find_code(diags, diag::kUndriven);
  ASSERT_NE(d, nullptr);
  EXPECT_NE(d->message.find("x"), std::string::npos);
}

TEST(Validate, MultiDrive) {
  const auto diags =
      check("circuit c\ninput A, B\ngate g1 : FG (A, B) -> (y, p)\ngate g2 : FG (p, A) -> (y, q)\noutput q\n");
  EXPECT_NE(find_code(diags, diag::kMultiDrive), nullptr);
}

TEST(Validate, OtherCodes) {
  struct Case {
    const char* text;
    std::string_view code;
  };
  const Case cases[] = {
      {"circuit c\ninput A\ngate g : XYZ (A) -> (p)\n", diag::kUnknownGate},
      {"circuit c\ninput A\nstate Q\ngate g : FG (A, Q.prev) -> (p, q)\noutput p, q\n", diag::kNextUndriven},
      {"circuit c\ninput A, B\ngate g : FG (A, B) -> (A, q)\n", diag::kDriveSource},
      {"circuit c\ninput A\ngate g : FG (A, R.prev) -> (p, q)\n", diag::kUnknownState},
      {"circuit c\ninput A\nstate Q\ngate g : FG (A, Q) -> (p, Q.next)\n", diag::kStateRef},
      {"circuit c\ninput A\ngate g1 : FG (A, y) -> (x, p)\ngate g2 : FG (p, x) -> (q, y)\n", diag::kCycle},
      {"circuit c\ninput A, B\ngate g : FG (A, B) -> (p, q)\noutput p as L, q as L\n", diag::kDuplicateLabel},
      {"circuit c\ninput A, B\nclock Z\ngate g : FG (A, B) -> (p, q)\n", diag::kClockNotInput},
      {"circuit c\ninput A, B\ngate g : FG (A, B) -> (p, q)\ngarbage zz\n", diag::kBadGarbage},
      {"circuit c\ninput A, B\ngate g : FG (A, B) -> (p, q)\ngate h : FG (p, A) -> (r, s)\ngarbage p\n",
       diag::kGarbageUsed},
  };
  for (const auto& c : cases) {
    const auto diags = check(c.text);
    const auto* d = find_code(diags, c.code);
    ASSERT_NE(d, nullptr) << c.code << "\n" << c.text;
    EXPECT_GT(d->loc.line, 0) << c.code;
  }
}

TEST(Validate, DiagnosticText) {
  const auto diags = check("circuit c\ninput A\ngate g : XYZ (A) -> (p)\n");
  ASSERT_FALSE(diags.empty());
  EXPECT_EQ(diags[0].str().rfind("3:", 0), 0u) << diags[0].str();
  EXPECT_NE(diags[0].str().find("[UNKNOWN_GATE]"), std::string::npos);
}

TEST(MalformedCorpus, EveryFileYieldsLocatedDiagnostic) {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(support::fixture("malformed"))) {
    if (entry.path().extension() != ".rseq") continue;
    ++files;
    const std::string text = support::slurp(entry.path());
    try {
      const auto diags = validate(parse_circuit(text), builtin_library());
      ASSERT_TRUE(has_errors(diags)) << entry.path();
      for (const auto& d : diags) EXPECT_GT(d.loc.line, 0) << entry.path() << ": " << d.str();
    } catch (const ParseError& e) {
      EXPECT_GT(e.location().line, 0) << entry.path();
    }
  }
  EXPECT_GE(files, 10);
}

TEST(Builtins, LookupErrors) {
  EXPECT_THROW(builtin_design("nope"), LookupError);
  EXPECT_THROW(builtin_design_source("nope"), LookupError);
  GateRegistry only_mg1;
  only_mg1.add(builtin_library().at("MG1"));
  EXPECT_THROW(builtin_designs(only_mg1), LookupError);
}
