#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "revseq/bool_expr.hpp"
#include "revseq/gate.hpp"
#include "revseq/netlist.hpp"

namespace revseq {

/// Ordered name -> bit pairs, in declaration order.
class NamedBits {
public:
  NamedBits() = default;
  NamedBits(std::vector<std::string> names, std::vector<std::uint8_t> values);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<std::uint8_t>& values() const noexcept { return values_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  bool value(std::size_t i) const { return values_.at(i) != 0; }
  /// Throws LookupError.
  bool at(std::string_view name) const;
  bool contains(std::string_view name) const;
  Assignment to_assignment() const;

  friend bool operator==(const NamedBits&, const NamedBits&) = default;

private:
  std::vector<std::string> names_;
  std::vector<std::uint8_t> values_;
};

struct StepResult {
  NamedBits outputs;     // exported label -> bit
  NamedBits next_state;  // state var -> bit
  NamedBits wires;       // every wire -> bit

  friend bool operator==(const StepResult&, const StepResult&) = default;
};

enum class SettleOutcome : std::uint8_t { Stable, Oscillating };

struct SettleResult {
  SettleOutcome outcome = SettleOutcome::Stable;
  /// The fixpoint when stable; the state at which the repeat was detected
  /// otherwise.
  NamedBits state;
  /// State transitions applied before the fixpoint was first observed.
  std::size_t iterations = 0;
  /// Cycle length when oscillating, 0 when stable.
  std::size_t period = 0;
  /// Evaluation at `state` under the held inputs.
  StepResult step;

  bool stable() const noexcept { return outcome == SettleOutcome::Stable; }
};

struct TraceStep {
  NamedBits inputs;
  NamedBits state;  // before the step
  StepResult result;
  std::size_t settle_iterations = 0;
};

struct Trace {
  std::vector<TraceStep> steps;
};

/// A settle step inside run() that did not reach a fixpoint.
class OscillationError : public std::runtime_error {
public:
  OscillationError(std::size_t step, std::size_t period);
  /// 0-based stimulus index.
  std::size_t step() const noexcept { return step_; }
  std::size_t period() const noexcept { return period_; }

private:
  std::size_t step_;
  std::size_t period_;
};

struct NextStateRow {
  Word inputs = 0;
  Word state = 0;
  std::vector<std::uint8_t> outputs;
  std::vector<std::uint8_t> next_state;
};

/// Exhaustive (input word x state word) enumeration; inputs outer, state
/// inner, first declared name is the most significant bit.
struct NextStateTable {
  std::vector<std::string> input_names;
  std::vector<std::string> state_names;
  std::vector<std::string> output_labels;
  std::vector<NextStateRow> rows;
};

struct CharacteristicFailure {
  Word inputs = 0;
  Word state = 0;
  bool expected = false;
  bool actual = false;
};

struct CharacteristicReport {
  std::string target;
  std::string oracle;
  std::vector<std::string> input_names;
  std::vector<std::string> state_names;
  std::size_t rows_checked = 0;
  std::vector<CharacteristicFailure> failures;

  bool passed() const noexcept { return failures.empty(); }
};

enum class BijectivityVerdict : std::uint8_t { Bijective, NotBijective, NotApplicable };

/// Map of the cut combinational core: free inputs (primary inputs, then
/// state taps) to every gate-output wire, constants held fixed.
struct CircuitTruthMap {
  std::vector<std::string> free_names;
  std::vector<std::string> output_wires;
  /// Row-major: bits[row * output_wires.size() + j].
  std::vector<std::uint8_t> bits;
  BijectivityVerdict verdict = BijectivityVerdict::NotApplicable;
  std::optional<std::pair<Word, Word>> witness;

  std::size_t num_rows() const noexcept { return std::size_t{1} << free_names.size(); }
  bool bit(std::size_t row, std::size_t output) const { return bits.at(row * output_wires.size() + output) != 0; }
  Word row_word(std::size_t row) const;
};

/// Exhaustive enumeration is capped at this many free bits.
inline constexpr unsigned kMaxEnumerationBits = 20;

/// Evaluates a validated circuit. Construction resolves gates against the
/// registry and computes a topological order of the cut graph (state taps
/// are sources, next-state wires are sinks).
///
/// Step semantics are two-phase: state taps hold their current values for
/// the whole evaluation; next-state values are returned, never fed back
/// within the same step.
class Simulator {
public:
  /// Throws ValidationError when validate() reports errors.
  Simulator(Circuit circuit, const GateRegistry& registry, const ValidateOptions& options = {});

  const Circuit& circuit() const noexcept { return circuit_; }
  /// Warnings produced during validation.
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

  std::vector<std::string> input_names() const;
  std::vector<std::string> state_names() const;
  std::vector<std::string> output_labels() const;
  NamedBits initial_state() const;

  /// Throws EvalError on a missing or unknown binding.
  StepResult eval(const Assignment& inputs, const Assignment& state) const;

  /// Holds inputs steady and iterates state until it repeats; at most
  /// 2^(#state)+1 evaluations.
  SettleResult settle(const Assignment& inputs, const Assignment& state) const;

  /// Starts from the declared initial state. Throws OscillationError when a
  /// settle step does not converge.
  Trace run(std::span<const Assignment> stimulus, bool settle_each) const;

  /// Throws CapacityError above kMaxEnumerationBits.
  NextStateTable next_state_table() const;

  /// Compares the next value of `target` against `oracle` (over primary
  /// inputs and current state names) on every row of next_state_table().
  CharacteristicReport verify_characteristic(const Expr& oracle, std::string_view target) const;

  CircuitTruthMap truth_map() const;

  /// Every wire's value as a function of the free inputs, one byte per
  /// row of truth_map(). Indexed like wires().
  std::vector<std::vector<std::uint8_t>> wire_functions() const;
  const std::vector<Wire>& wires() const noexcept { return wires_; }
  std::size_t wire_index(const Wire& wire) const;

  /// Gate instances in evaluation order (indices into circuit().instances).
  const std::vector<std::size_t>& topological_order() const noexcept { return order_; }
  /// Unit-delay depth of each instance: 1 + max depth of its gate-driven
  /// inputs.
  const std::vector<int>& instance_depths() const noexcept { return depths_; }
  /// For each wire, the instance driving it, if any.
  std::optional<std::size_t> driver_of(std::size_t wire) const;

private:
  struct Instance {
    std::size_t gate;  // index into gates_.gates()
    std::vector<std::size_t> inputs;
    std::vector<std::size_t> outputs;
  };

  void eval_values(std::span<const std::uint8_t> inputs, std::span<const std::uint8_t> state,
                   std::vector<std::uint8_t>& values) const;
  StepResult make_step(const std::vector<std::uint8_t>& values) const;
  std::vector<std::uint8_t> bind(const Assignment& given, const std::vector<std::string>& names,
                                 const char* what) const;
  void check_enumerable(std::size_t bits) const;

  Circuit circuit_;
  GateRegistry gates_;  // only the gates this circuit instantiates
  std::vector<Diagnostic> diagnostics_;
  std::vector<Wire> wires_;
  std::vector<std::string> wire_names_;
  std::vector<Instance> instances_;
  std::vector<std::size_t> order_;
  std::vector<int> depths_;
  std::vector<std::optional<std::size_t>> drivers_;
  std::vector<std::size_t> input_wires_;
  std::vector<std::size_t> state_prev_wires_;
  std::vector<std::size_t> state_next_wires_;
  std::vector<std::pair<std::size_t, bool>> const_wires_;
  std::vector<std::size_t> output_wires_;
  std::vector<std::string> input_names_;
  std::vector<std::string> state_names_;
};

}  // namespace revseq
