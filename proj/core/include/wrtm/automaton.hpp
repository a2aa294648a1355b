#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wrtm/machine.hpp"

namespace wrtm {

enum class AutomatonKind { Nfa, Dfa };

using AState = std::uint32_t;
// Word over an automaton alphabet, as indices into Automaton::alphabet.
using AWord = std::vector<std::uint32_t>;

/// Finite automaton ⟨Q, Σ, δ, q₀, F⟩ with a single initial state. A DFA
/// may be partial: every transition set has at most one element.
struct Automaton {
  std::string name = "A";
  AutomatonKind kind = AutomatonKind::Nfa;
  std::vector<std::string> alphabet;
  std::vector<std::string> state_names;
  AState initial = 0;
  std::vector<bool> final;
  std::vector<std::vector<std::vector<AState>>> delta;  // [state][symbol], sorted

  std::size_t state_count() const noexcept { return state_names.size(); }
  AState add_state(std::string name, bool is_final = false);
  void add_edge(AState from, std::uint32_t symbol, AState to);
  std::size_t edge_count() const;
  // Every transition set has at most one element.
  bool deterministic() const;
};

// Membership by subset simulation. Throws Error on out-of-range symbols.
bool automaton_accepts(const Automaton& a, const AWord& w);

/// Reachable-subset construction; the empty subset is not materialized.
/// Throws BudgetExceeded when more than `state_budget` subsets appear
/// (0 = unlimited).
Automaton determinize(const Automaton& a, std::uint64_t state_budget = 0);

/// Minimal complete DFA, states numbered in breadth-first order over the
/// alphabet. Includes the sink state exactly when it is reachable.
/// NFAs are determinized first.
Automaton minimize(const Automaton& a);

struct EquivalenceResult {
  bool equal = true;
  std::optional<AWord> counterexample;  // shortest, then alphabet-least
};

/// L(a) = L(b)? Alphabets must hold the same symbol names (any order);
/// the counterexample is over a's alphabet. Throws Error on mismatch.
EquivalenceResult equivalent(const Automaton& a, const Automaton& b,
                             std::uint64_t state_budget = 0);

// Automaton accepting exactly `words` (a trie).
Automaton finite_language(const std::vector<std::string>& alphabet,
                          const std::vector<AWord>& words);

// Automaton accepting Σ^{≤ n}.
Automaton bounded_universe(const std::vector<std::string>& alphabet, std::size_t n);

// Product automaton for L(a) ∩ L(b) (same alphabet order required).
Automaton intersect(const Automaton& a, const Automaton& b);

// Machine word → automaton word by symbol name.
AWord to_automaton_word(const Automaton& a, const Machine& m, const Word& w);
AWord parse_automaton_word(const Automaton& a, std::string_view text);
std::string format_automaton_word(const Automaton& a, const AWord& w);

// Format:
//   automaton <name> <nfa|dfa>
//   alphabet <symbol>*
//   states <id>+
//   initial <state>
//   final <state>*
//   edge <state> <symbol> <state>
Automaton parse_automaton(std::string_view text);
std::string serialize_automaton(const Automaton& a);
Automaton load_automaton(const std::string& path);

}  // namespace wrtm
