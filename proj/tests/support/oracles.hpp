#pragma once

// Reference implementations used to cross-check the library. They share
// only the Machine data type with the code under test.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wrtm/machine.hpp"

namespace oracle {

using wrtm::Machine;
using wrtm::Move;
using wrtm::StateId;
using wrtm::SymbolId;
using wrtm::Word;

// Rewrite relation closure by Floyd–Warshall: true iff some symbol can be
// rewritten, in one or more steps, back into itself.
inline bool has_rewrite_cycle(const Machine& m) {
  const std::size_t g = m.symbol_count();
  std::vector<std::vector<bool>> reach(g, std::vector<bool>(g, false));
  for (const auto& r : m.rules())
    if (!m.is_endmarker(r.read)) reach[r.read][r.action.write] = true;
  for (std::size_t k = 0; k < g; ++k)
    for (std::size_t i = 0; i < g; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < g; ++j)
          if (reach[k][j]) reach[i][j] = true;
  for (std::size_t i = 0; i < g; ++i)
    if (reach[i][i]) return true;
  return false;
}

enum class Outcome { Accept, Reject, Diverge };

struct Run {
  Outcome outcome = Outcome::Reject;
  std::uint64_t steps = 0;
  std::uint64_t max_visits = 0;  // largest number of visits to one cell
};

// (n+1)^g without overflow checks; callers keep machines small.
inline std::uint64_t space_bound(const Machine& m) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < m.symbol_count(); ++i) p *= m.state_count() + 1;
  return p;
}

// Steps a halting run of a weight-reducing machine stays below.
inline std::uint64_t halting_step_bound(const Machine& m, std::size_t len) {
  return m.symbol_count() * (2 * space_bound(m) - 1 + len);
}

/// Direct simulation on a map-backed tape. For a weight-reducing machine a
/// run that outlives halting_step_bound never halts, so the verdict is exact.
inline Run reference_run(const Machine& m, const Word& w, std::uint64_t step_cap = 0) {
  std::map<std::int64_t, SymbolId> tape;
  std::map<std::int64_t, std::uint64_t> visits;
  std::int64_t head = 1;
  if (m.end_marked()) {
    tape[0] = *m.left_marker();
    tape[static_cast<std::int64_t>(w.size()) + 1] = *m.right_marker();
    head = 0;
  }
  for (std::size_t i = 0; i < w.size(); ++i) tape[static_cast<std::int64_t>(i) + 1] = w[i];
  const std::uint64_t cap = step_cap ? step_cap : halting_step_bound(m, w.size());
  StateId q = m.initial();
  Run r;
  for (;;) {
    r.max_visits = std::max(r.max_visits, ++visits[head]);
    auto it = tape.find(head);
    const SymbolId s = it == tape.end() ? wrtm::kBlank : it->second;
    auto t = m.transition(q, s);
    if (!t) {
      r.outcome = m.is_final(q) ? Outcome::Accept : Outcome::Reject;
      return r;
    }
    if (r.steps == cap) {
      r.outcome = Outcome::Diverge;
      return r;
    }
    tape[head] = t->write;
    head += t->move == Move::Left ? -1 : 1;
    q = t->target;
    ++r.steps;
  }
}

// All words over the input symbols with length ≤ n, shortest first.
inline std::vector<Word> all_words(const Machine& m, std::size_t n) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= n; ++len) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (auto a : m.input_symbols()) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

// One visit of a cell: entered in `in`, left in `out` moving `d`.
struct Visit {
  StateId in;
  std::optional<StateId> out;
  Move d = Move::Right;
};

inline std::vector<Visit> visits_of(const Machine& m, SymbolId a, const std::vector<StateId>& states) {
  std::vector<Visit> v;
  SymbolId content = a;
  for (auto q : states) {
    Visit x{q, std::nullopt, Move::Right};
    if (auto t = m.transition(q, content)) {
      x.out = t->target;
      x.d = t->move;
      content = t->write;
    }
    v.push_back(x);
  }
  return v;
}

/// Existential index search: odd t ≥ 1, 1 ≤ i₁ ≤ … ≤ i_t = k and
/// 1 = h₁ ≤ … ≤ h_t ≤ ℓ with, for odd j, q′_{i_j} = p_{h_j}, d_{i_j} = +1,
/// i_j < i_{j+1}; for even j, p′_{h_j} = q_{i_j}, e_{h_j} = −1, h_j < h_{j+1};
/// every unmatched left exit is leftward and every unmatched right exit is
/// rightward. With `adjacent`, additionally i_{j+1} = i_j + 1 after odd j
/// and h_{j+1} = h_j + 1 after even j.
class LiteralConsistency {
 public:
  LiteralConsistency(const Machine& m, SymbolId a, const std::vector<StateId>& left, SymbolId b,
                     const std::vector<StateId>& right, bool adjacent)
      : l_(visits_of(m, a, left)), r_(visits_of(m, b, right)), adjacent_(adjacent) {}

  bool holds() {
    if (l_.empty() || r_.empty()) return false;
    for (const auto& v : l_) if (!v.out) return false;
    for (const auto& v : r_) if (!v.out) return false;
    odd_.assign(l_.size() + 1, false);
    even_.assign(r_.size() + 1, false);
    return search(1, 1, 1);
  }

 private:
  // Unmatched visits must leave away from the shared border.
  bool unmatched_ok() const {
    for (std::size_t i = 1; i <= l_.size(); ++i)
      if (!odd_[i] && l_[i - 1].d != Move::Left) return false;
    for (std::size_t h = 1; h <= r_.size(); ++h)
      if (!even_[h] && r_[h - 1].d != Move::Right) return false;
    return true;
  }

  // i_lo / h_lo: smallest admissible i_j / h_j.
  bool search(std::size_t j, std::size_t i_lo, std::size_t h_lo) {
    const std::size_t k = l_.size(), l = r_.size();
    if (j % 2 == 1) {
      const std::size_t h_hi = (j == 1 || adjacent_) ? h_lo : l;
      for (std::size_t i = i_lo; i <= k; ++i)
        for (std::size_t h = h_lo; h <= std::min(h_hi, l); ++h) {
          if (l_[i - 1].d != Move::Right || *l_[i - 1].out != r_[h - 1].in) continue;
          odd_[i] = true;
          const bool ok = i == k ? unmatched_ok() : search(j + 1, i + 1, h);
          odd_[i] = false;
          if (ok) return true;
        }
      return false;
    }
    const std::size_t i_hi = adjacent_ ? i_lo : k;
    for (std::size_t i = i_lo; i <= std::min(i_hi, k); ++i)
      for (std::size_t h = h_lo; h <= l; ++h) {
        if (r_[h - 1].d != Move::Left || *r_[h - 1].out != l_[i - 1].in) continue;
        even_[h] = true;
        const bool ok = search(j + 1, i, h + 1);
        even_[h] = false;
        if (ok) return true;
      }
    return false;
  }

  std::vector<Visit> l_, r_;
  bool adjacent_;
  std::vector<bool> odd_, even_;
};

// Random plain machine: n states, g symbols (blank included), `inputs`
// input symbols, each (state, symbol) defined with probability p.
inline Machine random_machine(std::mt19937_64& rng, std::size_t n, std::size_t g, std::size_t inputs,
                              double p) {
  Machine m("rand");
  for (std::size_t q = 0; q < n; ++q) m.add_state("q" + std::to_string(q));
  for (std::size_t s = 1; s < g; ++s) m.add_symbol("s" + std::to_string(s), s <= inputs);
  std::bernoulli_distribution defined(p), left(0.5), final(0.3);
  std::uniform_int_distribution<std::size_t> state(0, n - 1), symbol(1, g - 1);
  for (StateId q = 0; q < n; ++q) {
    m.set_final(q, final(rng));
    for (SymbolId s = 0; s < g; ++s)
      if (g > 1 && defined(rng))
        m.add_transition(q, s,
                         {static_cast<StateId>(state(rng)), static_cast<SymbolId>(symbol(rng)),
                          left(rng) ? Move::Left : Move::Right});
  }
  return m;
}

}  // namespace oracle
