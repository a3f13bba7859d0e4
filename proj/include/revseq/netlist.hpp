#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "revseq/error.hpp"
#include "revseq/gate.hpp"

namespace revseq {

/// A net reference. State variables are only reachable through their taps:
/// `Q.prev` (current value, a source) and `Q.next` (next value, driven once).
struct Wire {
  enum class Tap : std::uint8_t { None, Prev, Next };

  std::string base;
  Tap tap = Tap::None;

  static Wire plain(std::string name) { return {std::move(name), Tap::None}; }
  static Wire prev(std::string state) { return {std::move(state), Tap::Prev}; }
  static Wire next(std::string state) { return {std::move(state), Tap::Next}; }

  std::string str() const;
  friend auto operator<=>(const Wire&, const Wire&) = default;
};

struct InputDecl {
  std::string name;
  SourceLocation loc;
};

struct ConstDecl {
  std::string name;
  bool value = false;
  SourceLocation loc;
};

struct StateDecl {
  std::string name;
  bool initial = false;
  SourceLocation loc;
};

struct GateInstance {
  std::string id;
  std::string gate;
  std::vector<Wire> inputs;
  std::vector<Wire> outputs;
  SourceLocation loc;
};

struct OutputPort {
  Wire wire;
  std::string label;
  SourceLocation loc;
};

struct GarbageDecl {
  Wire wire;
  SourceLocation loc;
};

struct ClockDecl {
  std::string name;
  SourceLocation loc;
};

/// Netlist of reversible gate instances with explicit feedback through
/// state variables. Source locations are not part of equality.
struct Circuit {
  std::string name;
  std::vector<InputDecl> inputs;
  std::vector<ClockDecl> clocks;
  std::vector<StateDecl> states;
  std::vector<ConstDecl> constants;
  std::vector<GateInstance> instances;
  std::vector<OutputPort> outputs;
  std::vector<GarbageDecl> garbage;

  /// Inputs named CLK, plus any flagged with a `clock` statement.
  bool is_clock(std::string_view input) const;
  const StateDecl* find_state(std::string_view name) const;
  bool has_input(std::string_view name) const;
  bool has_constant(std::string_view name) const;
};

bool operator==(const InputDecl& a, const InputDecl& b);
bool operator==(const ConstDecl& a, const ConstDecl& b);
bool operator==(const StateDecl& a, const StateDecl& b);
bool operator==(const GateInstance& a, const GateInstance& b);
bool operator==(const OutputPort& a, const OutputPort& b);
bool operator==(const GarbageDecl& a, const GarbageDecl& b);
bool operator==(const ClockDecl& a, const ClockDecl& b);
bool operator==(const Circuit& a, const Circuit& b);

enum class Severity : std::uint8_t { Error, Warning };

/// Validation codes. Errors block simulation; warnings do not.
namespace diag {
inline constexpr std::string_view kUnknownGate = "UNKNOWN_GATE";
inline constexpr std::string_view kArity = "ARITY";
inline constexpr std::string_view kUndriven = "UNDRIVEN";
inline constexpr std::string_view kMultiDrive = "MULTIDRIVE";
inline constexpr std::string_view kNextUndriven = "NEXT_UNDRIVEN";
inline constexpr std::string_view kDriveSource = "DRIVE_SOURCE";
inline constexpr std::string_view kUnknownState = "UNKNOWN_STATE";
inline constexpr std::string_view kStateRef = "STATE_REF";
inline constexpr std::string_view kCycle = "CYCLE";
inline constexpr std::string_view kDuplicateLabel = "DUPLICATE_LABEL";
inline constexpr std::string_view kClockNotInput = "CLOCK_NOT_INPUT";
inline constexpr std::string_view kBadGarbage = "BAD_GARBAGE";
inline constexpr std::string_view kFanout = "FANOUT";
inline constexpr std::string_view kGarbageUsed = "GARBAGE_USED";
inline constexpr std::string_view kEmpty = "EMPTY";
}  // namespace diag

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceLocation loc;

  bool is_error() const noexcept { return severity == Severity::Error; }
  /// "line:col: error: message [CODE]"
  std::string str() const;
};

/// Parses the line-oriented circuit DSL:
///
///     circuit d_latch
///     input CLK, D
///     state Q = 0
///     const ONE = 1
///     gate g1 : MG1 (CLK, D, Q.prev, ONE) -> (nCLK, g, Q.next, Qbar)
///     output Q.next as Q, Qbar as Qn
///     garbage g
///
/// Only syntax and duplicate declarations are checked here; everything
/// that needs the gate registry is left to validate().
Circuit parse_circuit(std::string_view text);

/// Canonical DSL text; parse_circuit(format_circuit(c)) == c.
std::string format_circuit(const Circuit& circuit);

struct ValidateOptions {
  /// Promote FANOUT warnings to errors.
  bool strict_fanout = false;
};

std::vector<Diagnostic> validate(const Circuit& circuit, const GateRegistry& registry,
                                 const ValidateOptions& options = {});

bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Thrown when an operation needs a circuit that validates cleanly.
class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(std::string circuit, std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

private:
  std::vector<Diagnostic> diagnostics_;
};

/// Names of the shipped designs, in table order.
const std::vector<std::string>& builtin_design_names();

/// d_latch, ms_d_ff, jk_latch, ms_jk_ff. Throws LookupError if `registry`
/// lacks a gate they instantiate.
std::vector<Circuit> builtin_designs(const GateRegistry& registry);

/// One shipped design by name; LookupError if unknown.
Circuit builtin_design(std::string_view name);

/// DSL source text of a shipped design.
std::string_view builtin_design_source(std::string_view name);

}  // namespace revseq
