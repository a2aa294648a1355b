#include "wrtm/regularize.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "wrtm/error.hpp"
#include "wrtm/weight.hpp"

namespace wrtm {

std::string format_sequence(const Machine& m, const StateSequence& s) {
  std::string out = "(" + m.symbol_name(s.symbol);
  for (auto q : s.states) out += "," + m.state_name(q);
  return out + ")";
}

std::optional<Trajectory> trajectory(const Machine& m, const StateSequence& s) {
  Trajectory t;
  t.rewrites.push_back(s.symbol);
  for (std::size_t i = 0; i < s.states.size(); ++i) {
    auto step = m.transition(s.states[i], t.rewrites.back());
    if (!step) {
      if (i + 1 < s.states.size()) return std::nullopt;
      break;
    }
    t.rewrites.push_back(step->write);
    t.successors.push_back(step->target);
    t.directions.push_back(step->move);
    ++t.applied;
  }
  return t;
}

std::optional<Crossings> right_border_crossings(const Machine& m, const StateSequence& s) {
  auto t = trajectory(m, s);
  if (!t || !t->complete(s) || s.states.empty() || t->directions.back() != Move::Right)
    return std::nullopt;
  Crossings out;
  const std::size_t k = s.states.size();
  for (std::size_t i = 0; i < k; ++i) {
    if (t->directions[i] != Move::Right) continue;
    out.emplace_back(Move::Right, t->successors[i]);
    if (i + 1 < k) out.emplace_back(Move::Left, s.states[i + 1]);
  }
  return out;
}

std::optional<Crossings> left_border_crossings(const Machine& m, const StateSequence& s) {
  auto t = trajectory(m, s);
  if (!t || !t->complete(s) || s.states.empty()) return std::nullopt;
  Crossings out;
  const std::size_t l = s.states.size();
  out.emplace_back(Move::Right, s.states[0]);
  for (std::size_t h = 0; h < l; ++h) {
    if (t->directions[h] != Move::Left) continue;
    out.emplace_back(Move::Left, t->successors[h]);
    if (h + 1 < l) out.emplace_back(Move::Right, s.states[h + 1]);
  }
  return out;
}

bool consistent(const Machine& m, const StateSequence& left, const StateSequence& right) {
  auto a = right_border_crossings(m, left);
  auto b = left_border_crossings(m, right);
  return a && b && *a == *b;
}

Machine normalize_accept_right(const Machine& m) {
  if (m.end_marked()) throw Error("normalize_accept_right: machine is end-marked");
  if (!check_weight_reducing(m).weight_reducing())
    throw NotWeightReducing("machine '" + m.name() + "' is not weight-reducing");
  Machine out = m;
  const auto finals = m.finals();
  const SymbolId bottom = out.add_symbol(fresh_symbol_name(m, "bot"));
  const StateId sweep = out.add_state(fresh_state_name(m, "sweep"));
  for (auto q : finals) {
    out.set_final(q, false);
    for (SymbolId s = 0; s < out.symbol_count(); ++s)
      if (s != bottom && !out.transition(q, s)) out.add_transition(q, s, {sweep, bottom, Move::Right});
  }
  for (SymbolId s = 0; s < out.symbol_count(); ++s)
    if (s != kBlank && s != bottom) out.add_transition(sweep, s, {sweep, bottom, Move::Right});
  out.set_final(sweep);
  return out;
}

namespace {

// Crossing-sequence analysis of a normalized machine with memoized excursions.
class Analyzer {
 public:
  Analyzer(const Machine& normalized, const NfaOptions& opts)
      : m_(normalized),
        opts_(opts),
        space_bound_(blank_space_bound_capped(normalized, opts.cell_limit + 1)),
        cap_(normalized.symbol_count() + (opts.seq_cap_plus_one ? 1 : 0)) {
    const auto f = normalized.finals();
    sweep_ = f.size() == 1 ? std::optional<StateId>(f[0]) : std::nullopt;
  }

  const Excursion& excursion(Side side, StateId q, const Word& content) {
    auto key = std::make_tuple(side == Side::Left ? 0 : 1, q, content);
    auto it = excursions_.find(key);
    if (it == excursions_.end())
      it = excursions_.emplace(key, run_excursion(m_, side, q, content, space_bound_, opts_.cell_limit)).first;
    return it->second;
  }

  // Excursion that counts as returning in `state` (or never returning).
  std::optional<StateId> left_return(StateId q, const Word& content, Word& after) {
    const auto& ex = excursion(Side::Left, q, content);
    after = ex.content;
    if (ex.kind == Excursion::Kind::Returned) return ex.state;
    if (ex.kind == Excursion::Kind::Diverged && opts_.divergence_accepts && sweep_) return *sweep_;
    return std::nullopt;
  }

  bool right_blank(const StateSequence& s) {
    auto t = trajectory(m_, s);
    if (!t || !t->complete(s) || s.states.empty() || t->directions.back() != Move::Right) return false;
    Word gamma;
    const std::size_t k = s.states.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (t->directions[i] != Move::Right) continue;
      const auto& ex = excursion(Side::Right, t->successors[i], gamma);
      if (i + 1 < k) {
        if (ex.kind != Excursion::Kind::Returned || ex.state != s.states[i + 1]) return false;
        gamma = ex.content;
        continue;
      }
      if (ex.kind == Excursion::Kind::Halted) return m_.is_final(ex.state);
      return ex.kind == Excursion::Kind::Diverged && opts_.divergence_accepts;
    }
    return false;
  }

  bool left_blank(const StateSequence& s) {
    if (s.states.empty() || s.states[0] != m_.initial()) return false;
    auto t = trajectory(m_, s);
    if (!t || !t->complete(s) || t->directions.back() != Move::Right) return false;
    Word gamma, after;
    for (std::size_t i = 0; i + 1 < s.states.size(); ++i) {
      if (t->directions[i] != Move::Left) continue;
      auto back = left_return(t->successors[i], gamma, after);
      if (!back || *back != s.states[i + 1]) return false;
      gamma = after;
    }
    return true;
  }

  // All members of Q′_L holding symbol a.
  std::vector<StateSequence> leftmost(SymbolId a) {
    std::vector<StateSequence> out;
    StateSequence seq{a, {m_.initial()}};
    leftmost_dfs(a, Word{}, seq, out);
    return out;
  }

  // Sequences for the right neighbour of a cell with these crossings.
  const std::vector<StateSequence>& successors(const Crossings& x) {
    auto it = successors_.find(x);
    if (it != successors_.end()) return it->second;
    std::vector<StateSequence> out;
    if (!x.empty() && x[0].first == Move::Right)
      for (SymbolId b : m_.input_symbols()) {
        StateSequence seq{b, {x[0].second}};
        successor_dfs(x, b, 1, seq, out);
      }
    return successors_.emplace(x, std::move(out)).first->second;
  }

 private:
  void leftmost_dfs(SymbolId c, const Word& gamma, StateSequence& seq,
                    std::vector<StateSequence>& out) {
    auto t = m_.transition(seq.states.back(), c);
    if (!t) return;
    if (t->move == Move::Left) {
      if (seq.states.size() >= cap_) return;
      Word after;
      auto back = left_return(t->target, gamma, after);
      if (!back || !m_.transition(*back, t->write)) return;
      seq.states.push_back(*back);
      leftmost_dfs(t->write, after, seq, out);
      seq.states.pop_back();
      return;
    }
    out.push_back(seq);
    if (seq.states.size() >= cap_) return;
    for (StateId p = 0; p < m_.state_count(); ++p) {
      if (!m_.transition(p, t->write)) continue;
      seq.states.push_back(p);
      leftmost_dfs(t->write, gamma, seq, out);
      seq.states.pop_back();
    }
  }

  void successor_dfs(const Crossings& x, SymbolId c, std::size_t idx, StateSequence& seq,
                     std::vector<StateSequence>& out) {
    auto t = m_.transition(seq.states.back(), c);
    if (!t) return;
    if (t->move == Move::Left) {
      if (idx + 1 >= x.size() || x[idx].first != Move::Left || x[idx].second != t->target) return;
      if (seq.states.size() >= cap_) return;
      seq.states.push_back(x[idx + 1].second);
      successor_dfs(x, t->write, idx + 2, seq, out);
      seq.states.pop_back();
      return;
    }
    if (idx == x.size()) out.push_back(seq);
    if (seq.states.size() >= cap_) return;
    for (StateId p = 0; p < m_.state_count(); ++p) {
      if (!m_.transition(p, t->write)) continue;
      seq.states.push_back(p);
      successor_dfs(x, t->write, idx, seq, out);
      seq.states.pop_back();
    }
  }

  const Machine& m_;
  NfaOptions opts_;
  std::uint64_t space_bound_;
  std::size_t cap_;
  std::optional<StateId> sweep_;
  std::map<std::tuple<int, StateId, Word>, Excursion> excursions_;
  std::map<Crossings, std::vector<StateSequence>> successors_;
};

}  // namespace

bool right_blank_consistent(const Machine& normalized, const StateSequence& s, const NfaOptions& opts) {
  Analyzer a(normalized, opts);
  return a.right_blank(s);
}

bool left_blank_consistent(const Machine& normalized, const StateSequence& s, const NfaOptions& opts) {
  Analyzer a(normalized, opts);
  return a.left_blank(s);
}

Automaton to_nfa(const Machine& m, NfaOptions opts) {
  const Machine norm = normalize_accept_right(m);
  Analyzer analyzer(norm, opts);

  Automaton out;
  out.name = m.name();
  out.kind = AutomatonKind::Nfa;
  for (auto s : m.input_symbols()) out.alphabet.push_back(m.symbol_name(s));
  std::vector<std::uint32_t> letter(norm.symbol_count(), 0);
  for (std::uint32_t i = 0; i < m.input_symbols().size(); ++i) letter[m.input_symbols()[i]] = i;

  const auto eps = run_wr_unchecked(m, Word{}).verdict;
  const bool eps_accepted =
      eps == Verdict::Accept || (opts.divergence_accepts && eps == Verdict::Diverges);
  const AState q_init = out.add_state("qI", eps_accepted);
  const AState q_final = out.add_state("qF", true);

  std::map<StateSequence, AState> index;
  std::deque<StateSequence> queue;
  auto intern = [&](const StateSequence& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    if (opts.state_budget != 0 && out.state_count() + 1 > opts.state_budget)
      throw BudgetExceeded("automaton construction exceeded state budget of " +
                           std::to_string(opts.state_budget));
    const AState id = out.add_state(format_sequence(norm, s));
    index.emplace(s, id);
    queue.push_back(s);
    return id;
  };
  auto connect = [&](AState from, const StateSequence& s) {
    const auto a = letter[s.symbol];
    if (analyzer.right_blank(s)) out.add_edge(from, a, q_final);
    if (auto x = right_border_crossings(norm, s))
      for (const auto& next : analyzer.successors(*x)) out.add_edge(from, a, intern(next));
  };

  for (auto a : m.input_symbols())
    for (const auto& s : analyzer.leftmost(a)) connect(q_init, s);
  while (!queue.empty()) {
    const StateSequence s = queue.front();
    queue.pop_front();
    connect(index.at(s), s);
  }
  return out;
}

std::uint64_t nfa_state_bound(const Machine& normalized, bool seq_cap_plus_one) {
  constexpr auto kMax = UINT64_MAX;
  const std::uint64_t n = normalized.state_count();
  const std::uint64_t cap = normalized.symbol_count() + (seq_cap_plus_one ? 1 : 0);
  std::uint64_t sum = 0, power = 1;
  for (std::uint64_t i = 1; i <= cap; ++i) {
    if (__builtin_mul_overflow(power, n, &power) || __builtin_add_overflow(sum, power, &sum))
      return kMax;
  }
  std::uint64_t out = 0;
  const std::uint64_t factor = normalized.input_symbols().size() + 1;
  if (__builtin_mul_overflow(sum, factor, &out) || __builtin_add_overflow(out, 2, &out)) return kMax;
  return out;
}

}  // namespace wrtm
