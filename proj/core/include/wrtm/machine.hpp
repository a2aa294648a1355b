#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wrtm {

using StateId = std::uint32_t;
using SymbolId = std::uint32_t;

// A word over a machine's symbol table.
using Word = std::vector<SymbolId>;

enum class Move : std::int8_t { Left = -1, Right = 1 };

inline constexpr int delta_of(Move m) { return static_cast<int>(m); }
inline constexpr Move mirror(Move m) { return m == Move::Left ? Move::Right : Move::Left; }

inline constexpr std::string_view kBlankToken = "_";
inline constexpr std::string_view kLeftMarkerToken = "<";
inline constexpr std::string_view kRightMarkerToken = ">";

// The blank symbol always has id 0.
inline constexpr SymbolId kBlank = 0;

struct Transition {
  StateId target;
  SymbolId write;
  Move move;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Rule {
  StateId from;
  SymbolId read;
  Transition action;

  friend bool operator==(const Rule&, const Rule&) = default;
};

/// One-tape deterministic Turing machine.
///
/// The symbol table is the working alphabet. Id 0 is the blank; for
/// end-marked machines ids 1 and 2 are the left and right endmarkers. Input
/// symbols are flagged members of the working alphabet.
///
/// A Machine is a builder as well as a value: the mutators never check the
/// structural rules (blank never written, endmarkers preserved). Use
/// validate() for that; parse_machine() only returns valid machines.
class Machine {
 public:
  explicit Machine(std::string name = "M", bool end_marked = false);

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  bool end_marked() const noexcept { return end_marked_; }

  // States. Throws InvalidMachine on duplicate names.
  StateId add_state(std::string name);
  std::size_t state_count() const noexcept { return states_.size(); }
  const std::string& state_name(StateId q) const { return states_.at(q); }
  std::optional<StateId> find_state(std::string_view name) const;

  // Symbols. Throws InvalidMachine on duplicates or reserved tokens.
  SymbolId add_symbol(std::string token, bool input = false);
  std::size_t symbol_count() const noexcept { return symbols_.size(); }
  const std::string& symbol_name(SymbolId s) const { return symbols_.at(s); }
  std::optional<SymbolId> find_symbol(std::string_view token) const;
  bool is_input(SymbolId s) const { return input_flag_.at(s); }
  // Input symbols in declaration order.
  const std::vector<SymbolId>& input_symbols() const noexcept { return inputs_; }
  std::optional<SymbolId> left_marker() const;
  std::optional<SymbolId> right_marker() const;
  bool is_endmarker(SymbolId s) const;

  StateId initial() const noexcept { return initial_; }
  void set_initial(StateId q);
  bool is_final(StateId q) const { return final_.at(q); }
  void set_final(StateId q, bool final = true);
  std::vector<StateId> finals() const;

  // Adds δ(from, read) = action. Throws InvalidMachine if the key is taken.
  void add_transition(StateId from, SymbolId read, Transition action);
  std::optional<Transition> transition(StateId q, SymbolId s) const {
    if (q >= table_.size() || s >= table_[q].size()) return std::nullopt;
    return table_[q][s];
  }
  // All rules in insertion order.
  const std::vector<Rule>& rules() const noexcept { return rules_; }

  friend bool operator==(const Machine& a, const Machine& b);

 private:
  std::string name_;
  bool end_marked_;
  std::vector<std::string> states_;
  std::unordered_map<std::string, StateId> state_index_;
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, SymbolId> symbol_index_;
  std::vector<bool> input_flag_;
  std::vector<SymbolId> inputs_;
  StateId initial_ = 0;
  std::vector<bool> final_;
  std::vector<std::vector<std::optional<Transition>>> table_;
  std::vector<Rule> rules_;
};

struct Violation {
  std::string rule;    // short rule id, e.g. "blank written"
  std::string detail;  // offending item, human readable
};

// Empty iff every structural rule holds.
std::vector<Violation> validate(const Machine& m);

// Throws InvalidMachine listing all violations, if any.
void require_valid(const Machine& m);

std::string describe(const Machine& m, const Rule& r);

// Returns a token not yet used as a symbol name, starting from `base`.
std::string fresh_symbol_name(const Machine& m, std::string_view base);
std::string fresh_state_name(const Machine& m, std::string_view base);

// Head position of a configuration.
enum class Head : std::uint8_t {
  OnContent,   // scanning right.front()
  LeftBlank,   // scanning the blank left of the content; left is empty
  RightBlank,  // scanning the blank right of the content; right is empty
};

/// ⟨z, q, u⟩: non-blank tape contents split at the head.
struct Configuration {
  Word left;
  StateId state = 0;
  Word right;
  Head head = Head::LeftBlank;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

Configuration initial_configuration(const Machine& m, const Word& w);

// Symbol under the head.
SymbolId scanned(const Configuration& c);

// One application of δ; nullopt when the machine halts.
// Throws Error if the configuration mentions symbols or states outside m.
std::optional<Configuration> step(const Machine& m, const Configuration& c);

std::string format_configuration(const Machine& m, const Configuration& c);

// Words. A word is written either with separators (spaces or commas) between
// symbol tokens, or as a plain concatenation split by longest match.
Word parse_word(const Machine& m, std::string_view text);
std::string format_word(const Machine& m, const Word& w);

// Checks that every symbol of w is an input symbol.
bool is_input_word(const Machine& m, const Word& w);

// All words over Σ of length ≤ max_len, shortest first, then by input
// symbol declaration order.
std::vector<Word> words_up_to(const Machine& m, std::size_t max_len);

}  // namespace wrtm
