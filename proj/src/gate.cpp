#include "revseq/gate.hpp"

#include <algorithm>
#include <set>

#include "revseq/data.hpp"
#include "revseq/gate_file.hpp"

namespace revseq {

Permutation::Permutation(std::vector<Word> image) : image_(std::move(image)) {
  if (image_.empty()) throw DefinitionError("permutation must have at least one entry");
  std::vector<std::int64_t> first_seen(image_.size(), -1);
  for (std::size_t i = 0; i < image_.size(); ++i) {
    Word v = image_[i];
    if (v >= image_.size()) {
      throw DefinitionError("permutation entry " + std::to_string(v) + " at index " + std::to_string(i) +
                            " is out of range [0, " + std::to_string(image_.size()) + ")");
    }
    if (first_seen[v] >= 0) {
      throw DefinitionError("permutation entry " + std::to_string(v) + " repeated at indices " +
                            std::to_string(first_seen[v]) + " and " + std::to_string(i));
    }
    first_seen[v] = static_cast<std::int64_t>(i);
  }
}

Permutation Permutation::identity(std::size_t size) {
  std::vector<Word> image(size);
  for (std::size_t i = 0; i < size; ++i) image[i] = static_cast<Word>(i);
  return Permutation(std::move(image));
}

Permutation Permutation::inverse() const {
  std::vector<Word> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = static_cast<Word>(i);
  return Permutation(std::move(inv));
}

Word pack_bits(std::span<const std::uint8_t> bits) {
  Word w = 0;
  for (auto b : bits) w = (w << 1) | (b & 1u);
  return w;
}

std::vector<std::uint8_t> unpack_bits(Word word, unsigned width) {
  std::vector<std::uint8_t> bits(width);
  for (unsigned i = 0; i < width; ++i) bits[i] = (word >> (width - 1 - i)) & 1u;
  return bits;
}

std::string word_string(Word word, unsigned width) {
  std::string s(width, '0');
  for (unsigned i = 0; i < width; ++i) {
    if ((word >> (width - 1 - i)) & 1u) s[i] = '1';
  }
  return s;
}

namespace {

void check_arity(const std::string& gate, std::size_t arity) {
  if (arity == 0 || arity > kMaxGateArity) {
    throw DefinitionError("gate " + gate + ": arity " + std::to_string(arity) + " outside 1.." +
                          std::to_string(kMaxGateArity));
  }
}

void check_line_names(const std::string& gate, const std::vector<std::string>& names, const char* side) {
  std::set<std::string, std::less<>> seen;
  for (const auto& n : names) {
    if (!is_identifier(n)) throw DefinitionError("gate " + gate + ": invalid " + side + " line name '" + n + "'");
    if (!seen.insert(n).second) {
      throw DefinitionError("gate " + gate + ": duplicate " + side + " line name '" + n + "'");
    }
  }
}

}  // namespace

BijectivityResult is_bijective(const TruthTable& table) {
  // Output words are bounded by the row count only for k x k tables; size
  // the index to the largest word seen so raw tables of any shape work.
  Word max_word = 0;
  for (Word w : table.outputs) max_word = std::max(max_word, w);
  std::vector<std::int64_t> first(static_cast<std::size_t>(max_word) + 1, -1);
  for (std::size_t i = 0; i < table.outputs.size(); ++i) {
    auto& slot = first[table.outputs[i]];
    if (slot >= 0) {
      return {false, std::make_pair(static_cast<Word>(slot), static_cast<Word>(i))};
    }
    slot = static_cast<std::int64_t>(i);
  }
  return {};
}

Gate Gate::from_exprs(std::string name, std::vector<std::string> inputs, std::vector<Output> outputs,
                      const Permutation* cross_check) {
  if (!is_identifier(name)) throw DefinitionError("invalid gate name '" + name + "'");
  check_arity(name, inputs.size());
  if (outputs.size() != inputs.size()) {
    throw DefinitionError("gate " + name + ": " + std::to_string(inputs.size()) + " inputs but " +
                          std::to_string(outputs.size()) + " outputs");
  }
  std::vector<std::string> out_names;
  for (const auto& o : outputs) out_names.push_back(o.name);
  check_line_names(name, inputs, "input");
  check_line_names(name, out_names, "output");

  const auto k = static_cast<unsigned>(inputs.size());
  std::vector<CompiledExpr> compiled;
  std::vector<Expr> exprs;
  for (const auto& o : outputs) {
    try {
      compiled.emplace_back(o.expr, inputs);
    } catch (const DefinitionError& e) {
      throw DefinitionError("gate " + name + ", output " + o.name + ": " + e.what());
    }
    exprs.push_back(o.expr);
  }

  TruthTable table{k, inputs, out_names, std::vector<Word>(std::size_t{1} << k)};
  for (Word row = 0; row < table.outputs.size(); ++row) {
    auto bits = unpack_bits(row, k);
    Word out = 0;
    for (const auto& c : compiled) out = (out << 1) | (c.eval(bits) ? 1u : 0u);
    table.outputs[row] = out;
  }
  auto verdict = is_bijective(table);
  if (!verdict.bijective) {
    auto [a, b] = *verdict.witness;
    throw DefinitionError("gate " + name + " is not bijective: inputs " + word_string(a, k) + " and " +
                          word_string(b, k) + " both map to " + word_string(table.outputs[a], k));
  }
  if (cross_check != nullptr && cross_check->image() != table.outputs) {
    const auto& image = cross_check->image();
    if (image.size() != table.outputs.size()) {
      throw DefinitionError("gate " + name + ": permutation has " + std::to_string(image.size()) +
                            " entries, expected " + std::to_string(table.outputs.size()));
    }
    for (Word row = 0; row < image.size(); ++row) {
      if (image[row] != table.outputs[row]) {
        throw DefinitionError("gate " + name + ": expressions and permutation disagree at input " +
                              word_string(row, k));
      }
    }
  }

  Gate g;
  g.name_ = std::move(name);
  g.arity_ = k;
  g.inputs_ = std::move(inputs);
  g.outputs_ = std::move(out_names);
  g.exprs_ = std::move(exprs);
  g.perm_ = Permutation(std::move(table.outputs));
  return g;
}

Gate Gate::from_permutation(std::string name, unsigned arity, Permutation perm, std::vector<std::string> inputs,
                            std::vector<std::string> outputs) {
  if (!is_identifier(name)) throw DefinitionError("invalid gate name '" + name + "'");
  check_arity(name, arity);
  if (perm.size() != (std::size_t{1} << arity)) {
    throw DefinitionError("gate " + name + ": permutation has " + std::to_string(perm.size()) +
                          " entries, expected " + std::to_string(std::size_t{1} << arity));
  }
  if (inputs.empty()) {
    for (unsigned i = 0; i < arity; ++i) inputs.push_back("x" + std::to_string(i));
  }
  if (outputs.empty()) {
    for (unsigned i = 0; i < arity; ++i) outputs.push_back("y" + std::to_string(i));
  }
  if (inputs.size() != arity || outputs.size() != arity) {
    throw DefinitionError("gate " + name + ": line name count does not match arity " + std::to_string(arity));
  }
  check_line_names(name, inputs, "input");
  check_line_names(name, outputs, "output");

  Gate g;
  g.name_ = std::move(name);
  g.arity_ = arity;
  g.inputs_ = std::move(inputs);
  g.outputs_ = std::move(outputs);
  g.perm_ = std::move(perm);
  return g;
}

Word Gate::eval(Word input) const {
  if (input >= perm_.size()) {
    throw EvalError("gate " + name_ + ": input word " + std::to_string(input) + " wider than " +
                    std::to_string(arity_) + " bits");
  }
  return perm_[input];
}

std::vector<std::uint8_t> Gate::eval(std::span<const std::uint8_t> bits) const {
  if (bits.size() != arity_) {
    throw EvalError("gate " + name_ + ": expected " + std::to_string(arity_) + " input bits, got " +
                    std::to_string(bits.size()));
  }
  return unpack_bits(perm_[pack_bits(bits)], arity_);
}

bool operator==(const Gate& lhs, const Gate& rhs) {
  return lhs.name_ == rhs.name_ && lhs.arity_ == rhs.arity_ && lhs.inputs_ == rhs.inputs_ &&
         lhs.outputs_ == rhs.outputs_ && lhs.exprs_ == rhs.exprs_ && lhs.perm_ == rhs.perm_ &&
         lhs.quantum_cost_ == rhs.quantum_cost_ && lhs.note_ == rhs.note_;
}

TruthTable truth_table(const Gate& gate) {
  return {gate.arity(), gate.input_names(), gate.output_names(), gate.permutation().image()};
}

Gate inverse_gate(const Gate& gate) {
  return Gate::from_permutation(gate.name() + "_inv", gate.arity(), gate.permutation().inverse(),
                                gate.output_names(), gate.input_names());
}

void GateRegistry::add(Gate gate) {
  if (contains(gate.name())) throw DefinitionError("duplicate gate '" + gate.name() + "'");
  gates_.push_back(std::move(gate));
}

void GateRegistry::put(Gate gate) {
  auto it = std::find_if(gates_.begin(), gates_.end(), [&](const Gate& g) { return g.name() == gate.name(); });
  if (it == gates_.end()) {
    gates_.push_back(std::move(gate));
  } else {
    *it = std::move(gate);
  }
}

const Gate* GateRegistry::find(std::string_view name) const {
  auto it = std::find_if(gates_.begin(), gates_.end(), [&](const Gate& g) { return g.name() == name; });
  return it == gates_.end() ? nullptr : &*it;
}

const Gate& GateRegistry::at(std::string_view name) const {
  if (const Gate* g = find(name)) return *g;
  throw LookupError("unknown gate '" + std::string(name) + "'");
}

const GateRegistry& builtin_library() {
  static const GateRegistry registry = [] {
    GateRegistry r;
    for (auto& g : parse_gate_file(data::file("gates/builtin.gates"))) r.add(std::move(g));
    return r;
  }();
  return registry;
}

}  // namespace revseq
