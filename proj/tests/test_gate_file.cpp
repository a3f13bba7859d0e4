#include <gtest/gtest.h>

#include "revseq/data.hpp"
#include "revseq/gate_file.hpp"
#include "support.hpp"

using namespace revseq;

namespace {

SourceLocation parse_error_at(std::string_view text) {
  try {
    parse_gate_file(text);
  } catch (const ParseError& e) {
    return e.location();
  }
  ADD_FAILURE() << "no ParseError for:\n" << text;
  return {};
}

}  // namespace

TEST(GateFile, BuiltinLibraryRoundTrips) {
  const auto text = data::file("gates/builtin.gates");
  const auto gates = parse_gate_file(text);
  ASSERT_EQ(gates.size(), 7u);
  const std::string canonical = format_gate_file(gates);
  EXPECT_EQ(parse_gate_file(canonical), gates);
  EXPECT_EQ(format_gate_file(parse_gate_file(canonical)), canonical);
}

TEST(GateFile, ExpressionBlock) {
  const auto gates = parse_gate_file(R"(
gate MG1(A, B, C, D) -> (P, Q, R, S)
  P = A ^ D
  Q = (!A & B) ^ (A & !C)
  R = (!A & C) ^ (A & B)
  S = (!A & C) ^ (A & B) ^ D
  meta quantum_cost = 7
)");
  ASSERT_EQ(gates.size(), 1u);
  EXPECT_EQ(truth_table(gates[0]).outputs, truth_table(builtin_library().at("MG1")).outputs);
  EXPECT_EQ(gates[0].quantum_cost(), 7u);
}

TEST(GateFile, PermutationForms) {
  const auto gates = parse_gate_file(
      "gate SWAP(2) perm = [0, 2, 1, 3]\n"
      "gate CN(A, B) -> (P, Q) perm = [0, 1, 3, 2]\n"
      "  meta note = \"named lines\"\n");
  ASSERT_EQ(gates.size(), 2u);
  EXPECT_EQ(gates[0].input_names(), (std::vector<std::string>{"x0", "x1"}));
  EXPECT_EQ(gates[0].eval(1), 2u);
  EXPECT_EQ(gates[1].output_names(), (std::vector<std::string>{"P", "Q"}));
  EXPECT_EQ(gates[1].note(), "named lines");
  EXPECT_EQ(parse_gate_file(format_gate_file(gates)), gates);
}

TEST(GateFile, FaultFixtureIsValidButDiffers) {
  const auto gates = parse_gate_file(support::slurp(support::fixture("faults/mg1_corrupt_s.gates")));
  ASSERT_EQ(gates.size(), 1u);
  const auto& good = builtin_library().at("MG1");
  int differing = 0;
  for (Word x = 0; x < 16; ++x) differing += gates[0].eval(x) != good.eval(x);
  EXPECT_EQ(differing, 2);
}

TEST(GateFileErrors, Located) {
  EXPECT_EQ(parse_error_at("gate BAD(A, B) -> (P, Q)\n  P = A\n  Q = A\n").line, 1);
  EXPECT_EQ(parse_error_at("gate G(A, B) -> (P, Q)\n  P = A\n  Q = A ^ E\n").line, 1);
  EXPECT_EQ(parse_error_at("gate G(A, B) -> (P, Q)\n  P = A\n  P = B\n  Q = A ^ B\n").line, 3);
  EXPECT_EQ(parse_error_at("gate G(A, B) -> (P, Q)\n  P = A\n  Z = B\n").line, 3);
  EXPECT_EQ(parse_error_at("gate G(2) perm = [0, 0, 1, 2]\n").line, 1);
  EXPECT_EQ(parse_error_at("gate G(A) -> (P)\n  P = !A\ngate G(A) -> (P)\n  P = A\n").line, 3);
  EXPECT_EQ(parse_error_at("gate G(A, B) -> (P, Q)\n  P = A &\n").line, 2);
  EXPECT_EQ(parse_error_at("  P = A\n").line, 1);
  EXPECT_EQ(parse_error_at("gate G(A) -> (P)\n  P = A\n  meta colour = 3\n").line, 3);
}

TEST(GateFileErrors, ExpressionColumnIsFileRelative) {
  const auto loc = parse_error_at("gate G(A, B) -> (P, Q)\n  P = A\n  Q = A $ B\n");
  EXPECT_EQ(loc.line, 3);
  EXPECT_EQ(loc.column, 9);
}
