#include "revseq/simulator.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace revseq {

NamedBits::NamedBits(std::vector<std::string> names, std::vector<std::uint8_t> values)
    : names_(std::move(names)), values_(std::move(values)) {
  if (names_.size() != values_.size()) throw std::invalid_argument("NamedBits: size mismatch");
}

bool NamedBits::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

bool NamedBits::at(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw LookupError("no value named '" + std::string(name) + "'");
  return values_[static_cast<std::size_t>(it - names_.begin())] != 0;
}

Assignment NamedBits::to_assignment() const {
  Assignment a;
  for (std::size_t i = 0; i < names_.size(); ++i) a[names_[i]] = values_[i] != 0;
  return a;
}

OscillationError::OscillationError(std::size_t step, std::size_t period)
    : std::runtime_error("oscillation at step " + std::to_string(step + 1) + " (period " + std::to_string(period) + ")"),
      step_(step),
      period_(period) {}

Word CircuitTruthMap::row_word(std::size_t row) const {
  Word w = 0;
  for (std::size_t j = 0; j < output_wires.size(); ++j) w = (w << 1) | (bit(row, j) ? 1u : 0u);
  return w;
}

Simulator::Simulator(Circuit circuit, const GateRegistry& registry, const ValidateOptions& options)
    : circuit_(std::move(circuit)) {
  auto diags = validate(circuit_, registry, options);
  if (has_errors(diags)) throw ValidationError(circuit_.name, std::move(diags));
  diagnostics_ = std::move(diags);

  std::map<Wire, std::size_t> index;
  auto add_wire = [&](Wire w) {
    auto [it, fresh] = index.emplace(w, wires_.size());
    if (fresh) {
      wire_names_.push_back(w.str());
      wires_.push_back(std::move(w));
      drivers_.push_back(std::nullopt);
    }
    return it->second;
  };
  for (const auto& in : circuit_.inputs) {
    input_wires_.push_back(add_wire(Wire::plain(in.name)));
    input_names_.push_back(in.name);
  }
  for (const auto& s : circuit_.states) {
    state_prev_wires_.push_back(add_wire(Wire::prev(s.name)));
    state_names_.push_back(s.name);
  }
  for (const auto& k : circuit_.constants) const_wires_.emplace_back(add_wire(Wire::plain(k.name)), k.value);

  for (std::size_t i = 0; i < circuit_.instances.size(); ++i) {
    const auto& inst = circuit_.instances[i];
    Instance resolved;
    if (!gates_.contains(inst.gate)) gates_.add(registry.at(inst.gate));
    const auto& pool = gates_.gates();
    resolved.gate = static_cast<std::size_t>(
        std::find_if(pool.begin(), pool.end(), [&](const Gate& g) { return g.name() == inst.gate; }) - pool.begin());
    for (const auto& w : inst.outputs) {
      auto idx = add_wire(w);
      drivers_[idx] = i;
      resolved.outputs.push_back(idx);
    }
    instances_.push_back(std::move(resolved));
  }
  // Validation guarantees every read wire is driven, so all indices exist.
  for (std::size_t i = 0; i < circuit_.instances.size(); ++i) {
    for (const auto& w : circuit_.instances[i].inputs) instances_[i].inputs.push_back(index.at(w));
  }
  for (const auto& s : circuit_.states) state_next_wires_.push_back(index.at(Wire::next(s.name)));
  for (const auto& p : circuit_.outputs) output_wires_.push_back(index.at(p.wire));

  // Kahn's algorithm, lowest declaration index first so the order is
  // deterministic.
  const std::size_t n = instances_.size();
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto w : instances_[i].inputs) {
      if (auto d = drivers_[w]) {
        succ[*d].push_back(i);
        ++indegree[i];
      }
    }
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  depths_.assign(n, 1);
  while (!ready.empty()) {
    auto i = ready.top();
    ready.pop();
    order_.push_back(i);
    for (auto j : succ[i]) {
      depths_[j] = std::max(depths_[j], depths_[i] + 1);
      if (--indegree[j] == 0) ready.push(j);
    }
  }
}

std::vector<std::string> Simulator::input_names() const { return input_names_; }
std::vector<std::string> Simulator::state_names() const { return state_names_; }

std::vector<std::string> Simulator::output_labels() const {
  std::vector<std::string> labels;
  for (const auto& p : circuit_.outputs) labels.push_back(p.label);
  return labels;
}

NamedBits Simulator::initial_state() const {
  std::vector<std::uint8_t> bits;
  for (const auto& s : circuit_.states) bits.push_back(s.initial ? 1 : 0);
  return {state_names_, std::move(bits)};
}

std::size_t Simulator::wire_index(const Wire& wire) const {
  auto it = std::find(wires_.begin(), wires_.end(), wire);
  if (it == wires_.end()) throw LookupError("circuit " + circuit_.name + " has no wire " + wire.str());
  return static_cast<std::size_t>(it - wires_.begin());
}

std::optional<std::size_t> Simulator::driver_of(std::size_t wire) const { return drivers_.at(wire); }

void Simulator::eval_values(std::span<const std::uint8_t> inputs, std::span<const std::uint8_t> state,
                            std::vector<std::uint8_t>& values) const {
  values.assign(wires_.size(), 0);
  for (std::size_t i = 0; i < input_wires_.size(); ++i) values[input_wires_[i]] = inputs[i];
  for (std::size_t i = 0; i < state_prev_wires_.size(); ++i) values[state_prev_wires_[i]] = state[i];
  for (auto [w, v] : const_wires_) values[w] = v ? 1 : 0;
  for (auto i : order_) {
    const auto& inst = instances_[i];
    Word in = 0;
    for (auto w : inst.inputs) in = (in << 1) | values[w];
    Word out = gates_.gates()[inst.gate].permutation()[in];
    const auto k = inst.outputs.size();
    for (std::size_t j = 0; j < k; ++j) values[inst.outputs[j]] = (out >> (k - 1 - j)) & 1u;
  }
}

StepResult Simulator::make_step(const std::vector<std::uint8_t>& values) const {
  StepResult r;
  std::vector<std::uint8_t> outs;
  for (auto w : output_wires_) outs.push_back(values[w]);
  r.outputs = NamedBits(output_labels(), std::move(outs));
  std::vector<std::uint8_t> next;
  for (auto w : state_next_wires_) next.push_back(values[w]);
  r.next_state = NamedBits(state_names_, std::move(next));
  r.wires = NamedBits(wire_names_, values);
  return r;
}

std::vector<std::uint8_t> Simulator::bind(const Assignment& given, const std::vector<std::string>& names,
                                          const char* what) const {
  std::vector<std::uint8_t> bits;
  bits.reserve(names.size());
  for (const auto& n : names) {
    auto it = given.find(n);
    if (it == given.end()) throw EvalError("missing binding for " + std::string(what) + " '" + n + "'");
    bits.push_back(it->second ? 1 : 0);
  }
  for (const auto& [n, v] : given) {
    if (std::find(names.begin(), names.end(), n) == names.end()) {
      throw EvalError("circuit " + circuit_.name + " has no " + what + " named '" + n + "'");
    }
  }
  return bits;
}

StepResult Simulator::eval(const Assignment& inputs, const Assignment& state) const {
  auto in = bind(inputs, input_names_, "input");
  auto st = bind(state, state_names_, "state variable");
  std::vector<std::uint8_t> values;
  eval_values(in, st, values);
  return make_step(values);
}

SettleResult Simulator::settle(const Assignment& inputs, const Assignment& state) const {
  auto in = bind(inputs, input_names_, "input");
  auto current = bind(state, state_names_, "state variable");
  const std::size_t ns = state_names_.size();
  const std::size_t cap = ns >= 62 ? std::size_t(-1) : (std::size_t{1} << ns) + 1;

  std::map<std::vector<std::uint8_t>, std::size_t> seen;  // state -> first iteration index
  std::vector<std::uint8_t> values;
  SettleResult result;
  for (std::size_t iter = 0; iter < cap; ++iter) {
    seen.emplace(current, iter);
    eval_values(in, current, values);
    std::vector<std::uint8_t> next;
    next.reserve(ns);
    for (auto w : state_next_wires_) next.push_back(values[w]);
    if (next == current) {
      result.outcome = SettleOutcome::Stable;
      result.iterations = iter;
      result.state = NamedBits(state_names_, current);
      result.step = make_step(values);
      return result;
    }
    if (auto it = seen.find(next); it != seen.end()) {
      result.outcome = SettleOutcome::Oscillating;
      result.iterations = iter + 1;
      result.period = iter + 1 - it->second;
      result.state = NamedBits(state_names_, next);
      std::vector<std::uint8_t> at_repeat;
      eval_values(in, next, at_repeat);
      result.step = make_step(at_repeat);
      return result;
    }
    current = std::move(next);
  }
  // Unreachable by pigeonhole: 2^n + 1 states cannot all be distinct.
  throw std::logic_error("settle exceeded its iteration cap without a repeated state");
}

Trace Simulator::run(std::span<const Assignment> stimulus, bool settle_each) const {
  Trace trace;
  NamedBits state = initial_state();
  for (std::size_t i = 0; i < stimulus.size(); ++i) {
    TraceStep step;
    step.inputs = NamedBits(input_names_, bind(stimulus[i], input_names_, "input"));
    step.state = state;
    if (settle_each) {
      auto s = settle(stimulus[i], state.to_assignment());
      if (!s.stable()) throw OscillationError(i, s.period);
      step.result = std::move(s.step);
      step.settle_iterations = s.iterations;
    } else {
      step.result = eval(stimulus[i], state.to_assignment());
    }
    state = step.result.next_state;
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

void Simulator::check_enumerable(std::size_t bits) const {
  if (bits > kMaxEnumerationBits) {
    throw CapacityError("circuit " + circuit_.name + " has " + std::to_string(bits) +
                        " free input bits; exhaustive enumeration is limited to " +
                        std::to_string(kMaxEnumerationBits));
  }
}

NextStateTable Simulator::next_state_table() const {
  const std::size_t ni = input_names_.size();
  const std::size_t ns = state_names_.size();
  check_enumerable(ni + ns);
  NextStateTable table{input_names_, state_names_, output_labels(), {}};
  table.rows.reserve(std::size_t{1} << (ni + ns));
  std::vector<std::uint8_t> values;
  for (Word in = 0; in < (Word{1} << ni); ++in) {
    auto in_bits = unpack_bits(in, static_cast<unsigned>(ni));
    for (Word st = 0; st < (Word{1} << ns); ++st) {
      auto st_bits = unpack_bits(st, static_cast<unsigned>(ns));
      eval_values(in_bits, st_bits, values);
      NextStateRow row{in, st, {}, {}};
      for (auto w : output_wires_) row.outputs.push_back(values[w]);
      for (auto w : state_next_wires_) row.next_state.push_back(values[w]);
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

CharacteristicReport Simulator::verify_characteristic(const Expr& oracle, std::string_view target) const {
  auto target_it = std::find(state_names_.begin(), state_names_.end(), target);
  if (target_it == state_names_.end()) {
    throw LookupError("circuit " + circuit_.name + " has no state variable '" + std::string(target) + "'");
  }
  const auto target_index = static_cast<std::size_t>(target_it - state_names_.begin());
  std::vector<std::string> vars = input_names_;
  vars.insert(vars.end(), state_names_.begin(), state_names_.end());
  for (const auto& v : expr_vars(oracle)) {
    if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
      throw EvalError("oracle variable '" + v + "' is neither an input nor a state variable of " + circuit_.name);
    }
  }
  CompiledExpr compiled(oracle, vars);

  CharacteristicReport report;
  report.target = std::string(target);
  report.oracle = format_expr(oracle);
  report.input_names = input_names_;
  report.state_names = state_names_;
  const auto ni = static_cast<unsigned>(input_names_.size());
  const auto ns = static_cast<unsigned>(state_names_.size());
  for (const auto& row : next_state_table().rows) {
    auto bits = unpack_bits(row.inputs, ni);
    auto st = unpack_bits(row.state, ns);
    bits.insert(bits.end(), st.begin(), st.end());
    bool expected = compiled.eval(bits);
    bool actual = row.next_state[target_index] != 0;
    ++report.rows_checked;
    if (expected != actual) report.failures.push_back({row.inputs, row.state, expected, actual});
  }
  return report;
}

std::vector<std::vector<std::uint8_t>> Simulator::wire_functions() const {
  const std::size_t ni = input_names_.size();
  const std::size_t ns = state_names_.size();
  check_enumerable(ni + ns);
  const std::size_t rows = std::size_t{1} << (ni + ns);
  std::vector<std::vector<std::uint8_t>> columns(wires_.size(), std::vector<std::uint8_t>(rows));
  std::vector<std::uint8_t> values;
  for (std::size_t row = 0; row < rows; ++row) {
    auto free_bits = unpack_bits(static_cast<Word>(row), static_cast<unsigned>(ni + ns));
    std::span<const std::uint8_t> all(free_bits);
    eval_values(all.first(ni), all.subspan(ni), values);
    for (std::size_t w = 0; w < wires_.size(); ++w) columns[w][row] = values[w];
  }
  return columns;
}

CircuitTruthMap Simulator::truth_map() const {
  CircuitTruthMap map;
  map.free_names = input_names_;
  map.free_names.insert(map.free_names.end(), state_names_.begin(), state_names_.end());
  check_enumerable(map.free_names.size());

  std::vector<std::size_t> outs;
  for (const auto& inst : instances_) {
    for (auto w : inst.outputs) {
      outs.push_back(w);
      map.output_wires.push_back(wire_names_[w]);
    }
  }
  const std::size_t ni = input_names_.size();
  const std::size_t rows = map.num_rows();
  map.bits.reserve(rows * outs.size());
  std::vector<std::uint8_t> values;
  for (std::size_t row = 0; row < rows; ++row) {
    auto free_bits = unpack_bits(static_cast<Word>(row), static_cast<unsigned>(map.free_names.size()));
    std::span<const std::uint8_t> all(free_bits);
    eval_values(all.first(ni), all.subspan(ni), values);
    for (auto w : outs) map.bits.push_back(values[w]);
  }

  if (outs.size() != map.free_names.size() || outs.empty()) {
    map.verdict = BijectivityVerdict::NotApplicable;
    return map;
  }
  TruthTable table;
  table.arity = static_cast<unsigned>(outs.size());
  for (std::size_t row = 0; row < rows; ++row) table.outputs.push_back(map.row_word(row));
  auto result = is_bijective(table);
  map.verdict = result.bijective ? BijectivityVerdict::Bijective : BijectivityVerdict::NotBijective;
  map.witness = result.witness;
  return map;
}

}  // namespace revseq
