#include <doctest.h>

#include <map>
#include <random>

#include "corpus.hpp"
#include "oracles.hpp"
#include "wrtm/error.hpp"
#include "wrtm/regularize.hpp"
#include "wrtm/simulate.hpp"
#include "wrtm/weight.hpp"

using namespace wrtm;

namespace {

// Left cell a scanned in q1 q2 q3, right cell b scanned in p1 … p5. The
// left cell exits left, then right into p1; the right cell bounces right
// twice, sends the head back in q3, which crosses again into p4.
struct CrossingExample {
  Machine m{"crossing"};
  StateId q1, q2, q3, p[6], o;
  SymbolId a, b;

  CrossingExample() {
    q1 = m.add_state("q1");
    q2 = m.add_state("q2");
    q3 = m.add_state("q3");
    for (int i = 1; i <= 5; ++i) p[i] = m.add_state("p" + std::to_string(i));
    o = m.add_state("o");
    a = m.add_symbol("a", true);
    b = m.add_symbol("b", true);
    SymbolId as[4], bs[6];
    as[0] = a;
    bs[0] = b;
    for (int i = 1; i <= 3; ++i) as[i] = m.add_symbol("a" + std::to_string(i));
    for (int i = 1; i <= 5; ++i) bs[i] = m.add_symbol("b" + std::to_string(i));
    m.add_transition(q1, as[0], {o, as[1], Move::Left});
    m.add_transition(q2, as[1], {p[1], as[2], Move::Right});
    m.add_transition(q3, as[2], {p[4], as[3], Move::Right});
    m.add_transition(p[1], bs[0], {o, bs[1], Move::Right});
    m.add_transition(p[2], bs[1], {o, bs[2], Move::Right});
    m.add_transition(p[3], bs[2], {q3, bs[3], Move::Left});
    m.add_transition(p[4], bs[3], {o, bs[4], Move::Right});
    m.add_transition(p[5], bs[4], {o, bs[5], Move::Right});
  }

  StateSequence left() const { return {a, {q1, q2, q3}}; }
  StateSequence right() const { return {b, {p[1], p[2], p[3], p[4], p[5]}}; }
};

bool literal(const Machine& m, const StateSequence& l, const StateSequence& r, bool adjacent) {
  return oracle::LiteralConsistency(m, l.symbol, l.states, r.symbol, r.states, adjacent).holds();
}

// All sequences (a, q₁, …, q_k) with a from `symbols` and 1 ≤ k ≤ max_len.
std::vector<StateSequence> all_sequences(const Machine& m, const std::vector<SymbolId>& symbols,
                                         std::size_t max_len) {
  std::vector<StateSequence> out;
  for (auto a : symbols) {
    std::vector<std::vector<StateId>> layer{{}};
    for (std::size_t len = 1; len <= max_len; ++len) {
      std::vector<std::vector<StateId>> next;
      for (const auto& prefix : layer)
        for (StateId q = 0; q < m.state_count(); ++q) {
          auto s = prefix;
          s.push_back(q);
          out.push_back({a, s});
          next.push_back(std::move(s));
        }
      layer = std::move(next);
    }
  }
  return out;
}

// Half-tape excursion on a map-backed tape: cell 0 is the boundary, the
// head starts on cell ±1 in q. Returns the state on re-entering cell 0,
// or nullopt with `halted_final` set when the machine stops first.
struct HalfRun {
  std::optional<StateId> returned;
  bool halted_final = false;
};

HalfRun half_run(const Machine& m, std::map<std::int64_t, SymbolId>& tape, int dir, StateId q) {
  std::int64_t head = dir;
  const std::uint64_t cap = oracle::halting_step_bound(m, tape.size() + 2);
  for (std::uint64_t steps = 0; steps <= cap; ++steps) {
    if (head == 0) return {q, false};
    auto it = tape.find(head);
    const SymbolId s = it == tape.end() ? kBlank : it->second;
    auto t = m.transition(q, s);
    if (!t) return {std::nullopt, m.is_final(q)};
    tape[head] = t->write;
    head += delta_of(t->move);
    q = t->target;
  }
  return {};
}

bool left_oracle(const Machine& norm, const StateSequence& s) {
  if (s.states.front() != norm.initial()) return false;
  std::map<std::int64_t, SymbolId> tape;
  SymbolId content = s.symbol;
  for (std::size_t i = 0; i < s.states.size(); ++i) {
    auto t = norm.transition(s.states[i], content);
    if (!t) return false;
    content = t->write;
    const bool last = i + 1 == s.states.size();
    if (t->move == Move::Right) {
      if (last) return true;
      continue;
    }
    if (last) return false;
    const auto r = half_run(norm, tape, -1, t->target);
    if (!r.returned || *r.returned != s.states[i + 1]) return false;
  }
  return false;
}

bool right_oracle(const Machine& norm, const StateSequence& s) {
  std::map<std::int64_t, SymbolId> tape;
  SymbolId content = s.symbol;
  for (std::size_t i = 0; i < s.states.size(); ++i) {
    auto t = norm.transition(s.states[i], content);
    if (!t) return false;
    content = t->write;
    const bool last = i + 1 == s.states.size();
    if (t->move == Move::Left) {
      if (last) return false;
      continue;
    }
    const auto r = half_run(norm, tape, 1, t->target);
    if (last) return !r.returned && r.halted_final;
    if (!r.returned || *r.returned != s.states[i + 1]) return false;
  }
  return false;
}

}  // namespace

TEST_CASE("crossing example is consistent") {
  const CrossingExample x;
  CHECK(consistent(x.m, x.left(), x.right()));
  CHECK(literal(x.m, x.left(), x.right(), false));
  CHECK(literal(x.m, x.left(), x.right(), true));
  const auto crossings = right_border_crossings(x.m, x.left());
  REQUIRE(crossings);
  const Crossings expected{{Move::Right, x.p[1]}, {Move::Left, x.q3}, {Move::Right, x.p[4]}};
  CHECK(*crossings == expected);
  CHECK(left_border_crossings(x.m, x.right()) == crossings);

  auto shorter = x.right();
  shorter.states.pop_back();
  CHECK(consistent(x.m, x.left(), shorter));
  auto no_return = x.left();
  no_return.states.pop_back();
  CHECK_FALSE(consistent(x.m, no_return, x.right()));
  auto wrong = x.right();
  wrong.states[2] = x.p[2];
  CHECK_FALSE(consistent(x.m, x.left(), wrong));
  CHECK(format_sequence(x.m, x.left()) == "(a,q1,q2,q3)");
}

TEST_CASE("trajectories") {
  const Machine z = corpus::load("zigzag");
  const auto q = [&](const char* n) { return *z.find_state(n); };
  const auto s = [&](const char* n) { return *z.find_symbol(n); };
  const auto t = trajectory(z, {s("a"), {q("q0"), q("q2")}});
  REQUIRE(t);
  CHECK(t->complete({s("a"), {q("q0"), q("q2")}}));
  CHECK(t->rewrites == std::vector<SymbolId>{s("a"), s("Y"), s("Z")});
  CHECK(t->successors == std::vector<StateId>{q("q1"), q("q0")});
  CHECK(t->directions == std::vector<Move>{Move::Right, Move::Right});

  const auto partial = trajectory(z, {s("Z"), {q("q0")}});
  REQUIRE(partial);
  CHECK(partial->applied == 0);
  CHECK_FALSE(partial->complete({s("Z"), {q("q0")}}));
  CHECK_FALSE(trajectory(z, {s("Z"), {q("q0"), q("q1")}}));
  CHECK_FALSE(right_border_crossings(z, {s("a"), {q("q1")}}));
  CHECK_FALSE(left_border_crossings(z, {s("Z"), {q("q0")}}));
}

TEST_CASE("tight matcher equals the literal search with adjacent indices") {
  std::mt19937_64 rng(11);
  std::size_t agreed = 0, positives = 0, loose_only = 0;
  for (int round = 0; round < 40; ++round) {
    const Machine m = oracle::random_machine(rng, 3, 3, 2, 0.8);
    std::vector<SymbolId> syms;
    for (SymbolId a = 0; a < m.symbol_count(); ++a) syms.push_back(a);
    const auto seqs = all_sequences(m, syms, 3);
    for (const auto& l : seqs)
      for (const auto& r : seqs) {
        const bool tight = consistent(m, l, r);
        const bool adj = literal(m, l, r, true);
        CHECK(tight == adj);
        const bool loose = literal(m, l, r, false);
        if (tight) {
          CHECK(loose);
          ++positives;
        } else if (loose) {
          ++loose_only;
        }
        ++agreed;
      }
  }
  CHECK(positives > 0);
  MESSAGE("compared " << agreed << " pairs, " << positives << " consistent, " << loose_only
                      << " only without adjacency");
}

TEST_CASE("normalization moves acceptance to the right end") {
  for (const char* name : {"even_a", "left_excursion", "zigzag", "ends_with_b"}) {
    CAPTURE(name);
    const Machine m = corpus::load(name);
    const Machine n = normalize_accept_right(m);
    CHECK(n.state_count() == m.state_count() + 1);
    CHECK(n.symbol_count() == m.symbol_count() + 1);
    REQUIRE(n.finals().size() == 1);
    const StateId sweep = n.finals()[0];
    CHECK(n.state_name(sweep) == "sweep");
    CHECK(n.transition(sweep, kBlank) == std::nullopt);
    CHECK(check_weight_reducing(n).weight_reducing());
    for (const auto& w : oracle::all_words(m, 5)) {
      const auto before = run_wr(m, w);
      const auto after = run_wr(n, w);
      CHECK((before.verdict == Verdict::Accept) == (after.verdict == Verdict::Accept));
      if (after.verdict == Verdict::Accept) {
        REQUIRE(after.final_config);
        CHECK(after.final_config->head == Head::RightBlank);
      }
    }
  }
  Machine marked("marked", true);
  marked.add_state("q0");
  CHECK_THROWS_AS(normalize_accept_right(marked), Error);
  Machine loop("loop");
  const auto q0 = loop.add_state("q0");
  const auto a = loop.add_symbol("a", true);
  loop.add_transition(q0, a, {q0, a, Move::Right});
  CHECK_THROWS_AS(normalize_accept_right(loop), NotWeightReducing);
  CHECK_THROWS_AS(to_nfa(loop), NotWeightReducing);
}

TEST_CASE("blank segment consistency matches half-tape simulation") {
  for (const std::string name : {"even_a", "left_excursion", "zigzag", "ends_with_b", "sweep", "mixed",
                           "eps_diverge_left", "right_excursion"}) {
    CAPTURE(name);
    const Machine n = normalize_accept_right(corpus::load(name));
    const auto seqs = all_sequences(n, n.input_symbols(), 3);
    std::size_t left_hits = 0, right_hits = 0;
    for (const auto& s : seqs) {
      CAPTURE(format_sequence(n, s));
      const bool l = left_blank_consistent(n, s);
      const bool r = right_blank_consistent(n, s);
      CHECK(l == left_oracle(n, s));
      CHECK(r == right_oracle(n, s));
      left_hits += l;
      right_hits += r;
    }
    MESSAGE(name << ": " << left_hits << " left, " << right_hits << " right of " << seqs.size());
  }
}

TEST_CASE("to_nfa accepts exactly the language of the machine") {
  for (const auto& e : corpus::load_all()) {
    CAPTURE(e.name);
    const Automaton a = to_nfa(e.machine);
    const Automaton plus = to_nfa(e.machine, {.seq_cap_plus_one = true});
    const Automaton div = to_nfa(e.machine, {.divergence_accepts = true});
    CHECK(a.state_count() <= nfa_state_bound(normalize_accept_right(e.machine)));
    CHECK(a.final[0] == (run_wr(e.machine, Word{}).verdict == Verdict::Accept));
    for (const auto& w : oracle::all_words(e.machine, 6)) {
      CAPTURE(format_word(e.machine, w));
      const auto ref = oracle::reference_run(e.machine, w).outcome;
      const AWord aw = to_automaton_word(a, e.machine, w);
      CHECK(automaton_accepts(a, aw) == (ref == oracle::Outcome::Accept));
      CHECK(automaton_accepts(plus, aw) == (ref == oracle::Outcome::Accept));
      CHECK(automaton_accepts(div, aw) == (ref != oracle::Outcome::Reject));
    }
  }
}

TEST_CASE("automaton size bound and budget") {
  const Machine n = normalize_accept_right(corpus::load("even_a"));
  // n = 3 states, g = 4 symbols, one input symbol.
  CHECK(n.state_count() == 3);
  CHECK(n.symbol_count() == 4);
  CHECK(nfa_state_bound(n) == 2 + 2 * (3 + 9 + 27 + 81));
  CHECK(nfa_state_bound(n, true) == 2 + 2 * (3 + 9 + 27 + 81 + 243));
  CHECK_THROWS_AS(to_nfa(corpus::load("mod3"), {.state_budget = 2}), BudgetExceeded);
}
