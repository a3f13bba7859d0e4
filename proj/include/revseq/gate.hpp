#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "revseq/bool_expr.hpp"

namespace revseq {

/// A k-bit word. Bit (k-1-i) holds line i, so the first listed line is the
/// most significant bit and row index == input word.
using Word = std::uint32_t;

inline constexpr unsigned kMaxGateArity = 16;

/// Bijection on {0, ..., n-1}.
class Permutation {
public:
  /// Throws DefinitionError on an out-of-range or repeated image entry.
  explicit Permutation(std::vector<Word> image);

  static Permutation identity(std::size_t size);

  std::size_t size() const noexcept { return image_.size(); }
  Word operator[](Word index) const { return image_[index]; }
  const std::vector<Word>& image() const noexcept { return image_; }
  Permutation inverse() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

private:
  std::vector<Word> image_;
};

/// Complete input -> output map of a k-input, k-output block.
///
/// Unlike Gate, a TruthTable may be non-bijective; it is the raw material
/// for is_bijective.
struct TruthTable {
  unsigned arity = 0;
  std::vector<std::string> input_names;
  std::vector<std::string> output_names;
  /// outputs[i] is the output word for input word i.
  std::vector<Word> outputs;

  std::size_t num_rows() const noexcept { return outputs.size(); }
  bool input_bit(Word row, unsigned line) const { return (row >> (arity - 1 - line)) & 1u; }
  bool output_bit(Word row, unsigned line) const { return (outputs.at(row) >> (arity - 1 - line)) & 1u; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;
};

struct BijectivityResult {
  bool bijective = true;
  /// Two distinct inputs with the same output, when not bijective.
  std::optional<std::pair<Word, Word>> witness;
};

/// Reversible k x k primitive. Immutable once constructed; construction
/// verifies bijectivity exhaustively.
class Gate {
public:
  struct Output {
    std::string name;
    Expr expr;
  };

  /// Throws DefinitionError for unknown variables, duplicate or invalid
  /// line names, arity out of range, non-bijective maps, or disagreement
  /// with `cross_check` when one is given.
  static Gate from_exprs(std::string name, std::vector<std::string> inputs, std::vector<Output> outputs,
                         const Permutation* cross_check = nullptr);

  /// Line names default to x0..x{k-1} / y0..y{k-1} when omitted.
  static Gate from_permutation(std::string name, unsigned arity, Permutation perm,
                               std::vector<std::string> inputs = {}, std::vector<std::string> outputs = {});

  const std::string& name() const noexcept { return name_; }
  unsigned arity() const noexcept { return arity_; }
  const std::vector<std::string>& input_names() const noexcept { return inputs_; }
  const std::vector<std::string>& output_names() const noexcept { return outputs_; }
  /// Output expressions, or nullopt for permutation-defined gates.
  const std::optional<std::vector<Expr>>& exprs() const noexcept { return exprs_; }
  const Permutation& permutation() const noexcept { return perm_; }

  const std::optional<unsigned>& quantum_cost() const noexcept { return quantum_cost_; }
  const std::string& note() const noexcept { return note_; }
  Gate& set_quantum_cost(std::optional<unsigned> cost) {
    quantum_cost_ = cost;
    return *this;
  }
  Gate& set_note(std::string note) {
    note_ = std::move(note);
    return *this;
  }

  /// Throws EvalError if `input` has bits above the gate width.
  Word eval(Word input) const;
  /// Bit-vector form, one entry per line in declaration order.
  std::vector<std::uint8_t> eval(std::span<const std::uint8_t> bits) const;

  friend bool operator==(const Gate&, const Gate&);

private:
  Gate() = default;

  std::string name_;
  unsigned arity_ = 0;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::optional<std::vector<Expr>> exprs_;
  Permutation perm_{std::vector<Word>{0}};
  std::optional<unsigned> quantum_cost_;
  std::string note_;
};

TruthTable truth_table(const Gate& gate);

BijectivityResult is_bijective(const TruthTable& table);

/// G^-1: inputs and outputs swap names; semantics are the inverse
/// permutation.
Gate inverse_gate(const Gate& gate);

Word pack_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> unpack_bits(Word word, unsigned width);
/// MSB-first binary rendering, e.g. (0b1011, 4) -> "1011".
std::string word_string(Word word, unsigned width);

/// Name-keyed gate collection. Iteration follows insertion order.
class GateRegistry {
public:
  /// Throws DefinitionError if a gate with that name already exists.
  void add(Gate gate);
  /// Adds or replaces.
  void put(Gate gate);

  const Gate* find(std::string_view name) const;
  /// Throws LookupError.
  const Gate& at(std::string_view name) const;
  bool contains(std::string_view name) const { return find(name) != nullptr; }

  std::size_t size() const noexcept { return gates_.size(); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

private:
  std::vector<Gate> gates_;
};

/// NOT, FG, TG, FRG, PG, MG1, MG2 -- parsed from the shipped gate library.
const GateRegistry& builtin_library();

}  // namespace revseq
