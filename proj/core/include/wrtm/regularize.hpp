#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wrtm/automaton.hpp"
#include "wrtm/halting.hpp"
#include "wrtm/machine.hpp"

namespace wrtm {

/// (a, q₁, …, q_k): a cell holding a, scanned in states q₁ … q_k in order.
struct StateSequence {
  SymbolId symbol = 0;
  std::vector<StateId> states;

  friend auto operator<=>(const StateSequence&, const StateSequence&) = default;
};

std::string format_sequence(const Machine& m, const StateSequence& s);

// Rewrites and exits of a cell along a state sequence.
struct Trajectory {
  std::vector<SymbolId> rewrites;  // a₀ = a, a₁, …, a_applied
  std::vector<StateId> successors; // q′₁ …
  std::vector<Move> directions;    // d₁ …
  std::size_t applied = 0;

  bool complete(const StateSequence& s) const { return applied == s.states.size(); }
};

/// Chains δ(q_i, a_{i−1}) = (q′_i, a_i, d_i). nullopt when δ is undefined
/// before the last visit; undefined at the last visit gives applied = k−1.
std::optional<Trajectory> trajectory(const Machine& m, const StateSequence& s);

// Crossings of the border between two cells, in time order.
using Crossings = std::vector<std::pair<Move, StateId>>;

// Border crossings to the right of a cell scanned along s (s as left cell).
// nullopt unless the trajectory is complete and its last exit is rightward.
std::optional<Crossings> right_border_crossings(const Machine& m, const StateSequence& s);

// Border crossings to the left of a cell scanned along s (s as right cell).
std::optional<Crossings> left_border_crossings(const Machine& m, const StateSequence& s);

/// Right cell along `right` can follow left cell along `left`: both
/// trajectories are complete, and the rightward exits of `left` alternate
/// with the leftward exits of `right`, starting and ending with a rightward
/// crossing, in matching states.
bool consistent(const Machine& m, const StateSequence& left, const StateSequence& right);

/// Adds a sweeping final state and a fresh bottom symbol so that every
/// accepting run ends to the right of the input: a final state with no
/// move writes ⊥ and sweeps right until a blank.
/// Throws NotWeightReducing, or Error for end-marked machines.
Machine normalize_accept_right(const Machine& m);

struct NfaOptions {
  // Reachable-state cap; 0 = unlimited. Exceeding it throws BudgetExceeded.
  std::uint64_t state_budget = 0;
  // Count runs that diverge as accepting (automaton for L(m) ∪ Div(m)).
  bool divergence_accepts = false;
  // Allow sequences of length |Γ|+1 instead of |Γ|.
  bool seq_cap_plus_one = false;
  std::uint64_t cell_limit = kDefaultCellLimit;
};

// Membership in Q′_R for a normalized machine.
bool right_blank_consistent(const Machine& normalized, const StateSequence& s,
                            const NfaOptions& opts = {});

// Membership in Q′_L for a normalized machine.
bool left_blank_consistent(const Machine& normalized, const StateSequence& s,
                           const NfaOptions& opts = {});

/// NFA over the input alphabet with L = L(m). Built lazily from q_I; only
/// reachable states exist. State 0 is q_I, state 1 is q_F.
/// Throws NotWeightReducing, BudgetExceeded.
Automaton to_nfa(const Machine& m, NfaOptions opts = {});

/// 2 + (|Σ|+1)·Σ_{i=1}^{cap} n^i for the normalized machine (n states,
/// cap = |Γ| or |Γ|+1). Saturates at UINT64_MAX.
std::uint64_t nfa_state_bound(const Machine& normalized, bool seq_cap_plus_one = false);

}  // namespace wrtm
