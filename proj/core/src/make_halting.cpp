#include <algorithm>
#include <map>
#include <string>

#include "wrtm/error.hpp"
#include "wrtm/halting.hpp"
#include "wrtm/weight.hpp"

namespace wrtm {

MarkingPlan marking_plan(const Machine& m) {
  MarkingPlan p;
  p.base = static_cast<std::uint32_t>(m.state_count() + 1);
  p.digits = static_cast<std::uint32_t>(std::max<std::size_t>(m.symbol_count(), 2));
  p.visit_budget = 2 * p.digits + 1;
  std::uint64_t value = p.digits - 1;
  for (std::uint32_t i = 0; i < p.digits; ++i) {
    p.initial_digits.push_back(static_cast<std::uint32_t>(value % p.base));
    value /= p.base;
  }
  return p;
}

namespace {

enum Role { kLow, kMid, kHigh, kSpent };
constexpr const char* kRoleName = "LMHS";

std::string digit_name(const std::string& prefix, std::uint32_t v, Role r) {
  return prefix + std::to_string(v) + kRoleName[r];
}

/// Counter marking of one half-tape, before visit tagging. Starts in I0 on
/// the first blank cell; `out` points away from the input. Ends in RET
/// moving inward over spent cells.
Machine marking_machine(const MarkingPlan& p, const std::string& prefix, Move out) {
  const Move in = mirror(out);
  const std::uint32_t B = p.base, G = p.digits, top = B - 1;
  Machine mk("mark");
  std::map<std::pair<std::uint32_t, Role>, SymbolId> digit;
  for (std::uint32_t v = 0; v < B; ++v)
    for (Role r : {kLow, kMid, kHigh, kSpent}) digit[{v, r}] = mk.add_symbol(digit_name(prefix, v, r));

  std::vector<StateId> init;
  for (std::uint32_t j = 0; j < G; ++j) init.push_back(mk.add_state("I" + std::to_string(j)));
  const StateId r_no = mk.add_state("R0"), r_yes = mk.add_state("R1");
  auto read_state = [&](bool f) { return f ? r_yes : r_no; };
  std::map<std::tuple<std::uint32_t, int, int>, StateId> write;
  for (std::uint32_t v = 0; v < B; ++v)
    for (int c = 0; c < 2; ++c)
      for (int first = 0; first < 2; ++first)
        write[{v, c, first}] = mk.add_state("W" + std::to_string(v) + "c" + std::to_string(c) +
                                            (first ? "f" : ""));
  const StateId ret = mk.add_state("RET");
  mk.set_initial(init[0]);

  for (std::uint32_t j = 0; j < G; ++j) {
    const Role role = j == 0 ? kLow : j + 1 == G ? kHigh : kMid;
    const SymbolId d = digit[{p.initial_digits[j], role}];
    if (j + 1 < G) mk.add_transition(init[j], kBlank, {init[j + 1], d, out});
    else mk.add_transition(init[j], kBlank, {read_state(p.initial_digits[j] == top), d, in});
  }
  for (int f = 0; f < 2; ++f) {
    const StateId r = read_state(f);
    for (std::uint32_t v = 0; v < B; ++v) {
      mk.add_transition(r, digit[{v, kMid}], {read_state(f && v == top), digit[{v, kMid}], in});
      if (f && v == top) {
        mk.add_transition(r, digit[{v, kLow}], {ret, digit[{v, kSpent}], in});
      } else {
        const std::uint32_t next = v + 1;
        mk.add_transition(r, digit[{v, kLow}],
                          {write[{next % B, next >= B, 1}], digit[{v, kSpent}], out});
      }
    }
  }
  for (const auto& [key, w] : write) {
    const auto [v, c, first] = key;
    for (std::uint32_t e = 0; e < B; ++e) {
      const std::uint32_t sum = e + static_cast<std::uint32_t>(c);
      const Transition t{write[{sum % B, sum >= B, 0}], digit[{v, first ? kLow : kMid}], out};
      mk.add_transition(w, digit[{e, kMid}], t);
      mk.add_transition(w, digit[{e, kHigh}], t);
    }
    mk.add_transition(w, kBlank, {read_state(v == top), digit[{v, kHigh}], in});
  }
  for (std::uint32_t v = 0; v < B; ++v)
    mk.add_transition(ret, digit[{v, kSpent}], {ret, digit[{v, kSpent}], in});
  return mk;
}

std::string unused_prefix(const Machine& m, std::string prefix) {
  auto clashes = [&](const std::string& p) {
    for (SymbolId s = 0; s < m.symbol_count(); ++s)
      if (m.symbol_name(s).rfind(p, 0) == 0) return true;
    return false;
  };
  while (clashes(prefix)) prefix += prefix.back();
  return prefix;
}

}  // namespace

Machine make_halting(const Machine& m, HaltingOptions opts) {
  if (m.end_marked()) throw Error("make_halting: machine is end-marked");
  if (!check_weight_reducing(m).weight_reducing())
    throw NotWeightReducing("machine '" + m.name() + "' is not weight-reducing");
  const MarkingPlan plan = marking_plan(m);
  const std::string prefix = unused_prefix(m, "d");

  Machine out(m.name() + "-halting");
  // m's states keep their ids.
  for (StateId q = 0; q < m.state_count(); ++q) {
    out.add_state(m.state_name(q));
    if (m.is_final(q)) out.set_final(q);
  }
  auto state = [&](const std::string& name) { return out.add_state(fresh_state_name(out, name)); };
  const StateId start = state("start"), cross_r = state("X"), cross_l = state("Y");
  const StateId h_acc = state("Hacc"), h_rej = state("Hrej");
  out.set_final(h_acc);
  out.set_initial(start);
  const StateId sink = opts.accept_on_overflow ? h_acc : h_rej;

  // Symbols: raw input a, a¹ after the right crossing, a² after the left
  // one, and a simulation copy of every non-blank symbol of m.
  const std::size_t g = m.symbol_count();
  std::vector<SymbolId> raw(g, kBlank), once(g, kBlank), twice(g, kBlank), sim(g, kBlank);
  for (auto a : m.input_symbols()) raw[a] = out.add_symbol(m.symbol_name(a), true);
  for (auto a : m.input_symbols()) once[a] = out.add_symbol(fresh_symbol_name(m, m.symbol_name(a) + "^1"));
  for (auto a : m.input_symbols()) twice[a] = out.add_symbol(fresh_symbol_name(m, m.symbol_name(a) + "^2"));
  for (SymbolId s = 1; s < g; ++s) {
    const auto& name = m.symbol_name(s);
    sim[s] = out.add_symbol(m.is_input(s) ? fresh_symbol_name(out, name + "~") : fresh_symbol_name(out, name));
  }
  const SymbolId bottom = out.add_symbol(fresh_symbol_name(out, "bot"));

  // Both marking machines, visit-tagged and merged under fresh names.
  struct Side {
    StateId init_proxy;  // state of `out` acting as I0
    std::map<StateId, StateId> states;
    StateId ret;
  };
  std::vector<SymbolId> digit_symbols;
  auto merge = [&](const std::string& tag, Move dir, StateId proxy) {
    const Machine mk = bound_visits(marking_machine(plan, prefix, dir), plan.visit_budget);
    Side side;
    side.init_proxy = proxy;
    std::vector<SymbolId> sym(mk.symbol_count(), kBlank);
    for (SymbolId s = 1; s < mk.symbol_count(); ++s) {
      if (auto found = out.find_symbol(mk.symbol_name(s))) {
        sym[s] = *found;
      } else {
        sym[s] = out.add_symbol(mk.symbol_name(s));
        digit_symbols.push_back(sym[s]);
      }
    }
    for (StateId q = 0; q < mk.state_count(); ++q)
      side.states[q] = q == mk.initial() ? proxy : state(tag + mk.state_name(q));
    for (const auto& r : mk.rules())
      out.add_transition(side.states[r.from], sym[r.read],
                         {side.states[r.action.target], sym[r.action.write], r.action.move});
    side.ret = side.states.at(*mk.find_state("RET"));
    return side;
  };

  // Right crossing, right marking, left crossing, left marking.
  for (auto a : m.input_symbols()) out.add_transition(start, raw[a], {cross_r, once[a], Move::Right});
  for (auto a : m.input_symbols()) out.add_transition(cross_r, raw[a], {cross_r, once[a], Move::Right});
  const Side right = merge("r.", Move::Right, cross_r);
  for (auto a : m.input_symbols()) out.add_transition(right.ret, once[a], {cross_l, twice[a], Move::Left});
  for (auto a : m.input_symbols()) out.add_transition(cross_l, once[a], {cross_l, twice[a], Move::Left});
  const Side left = merge("l.", Move::Left, cross_l);

  auto simulated = [&](StateId q, SymbolId read) -> std::optional<Transition> {
    auto t = m.transition(q, read);
    if (!t) return std::nullopt;
    return Transition{t->target, sim[t->write], t->move};
  };

  // Empty input: decided up front.
  {
    const auto v = run_wr(m, Word{}).verdict;
    const bool accept = v == Verdict::Accept || (v == Verdict::Diverges && opts.accept_on_overflow);
    out.add_transition(start, kBlank, {accept ? h_acc : h_rej, bottom, Move::Right});
  }
  // Left marking returns onto the first input cell: m starts there.
  for (auto a : m.input_symbols()) {
    auto t = simulated(m.initial(), a);
    if (t) out.add_transition(left.ret, twice[a], *t);
    else out.add_transition(left.ret, twice[a], {m.is_final(m.initial()) ? h_acc : h_rej, bottom, Move::Right});
  }
  // Simulation phase.
  for (StateId q = 0; q < m.state_count(); ++q) {
    for (SymbolId s = 1; s < g; ++s)
      if (auto t = simulated(q, s)) out.add_transition(q, sim[s], *t);
    for (auto a : m.input_symbols())
      if (auto t = simulated(q, a)) out.add_transition(q, twice[a], *t);
    if (auto t = simulated(q, kBlank))
      for (auto d : digit_symbols) out.add_transition(q, d, *t);
    out.add_transition(q, kBlank, {sink, bottom, Move::Right});
  }
  require_valid(out);
  return out;
}

Machine make_halting_accepting(const Machine& m) {
  HaltingOptions opts;
  opts.accept_on_overflow = true;
  return make_halting(m, opts);
}

}  // namespace wrtm
