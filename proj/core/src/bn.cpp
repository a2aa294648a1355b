#include "wrtm/bn.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "wrtm/error.hpp"
#include "wrtm/weight.hpp"

namespace wrtm {

bool bn_member(std::string_view w, std::uint32_t n) {
  std::vector<std::string_view> blocks;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= w.size(); ++i) {
    if (i < w.size() && w[i] != '$') {
      if (w[i] != '0' && w[i] != '1') return false;
      continue;
    }
    blocks.push_back(w.substr(start, i - start));
    start = i + 1;
  }
  if (blocks.size() <= 2) return false;
  const auto last = blocks.back();
  if (last.size() > n) return false;
  bool equal = false;
  for (std::size_t j = 0; j + 1 < blocks.size(); ++j) {
    if (blocks[j].size() < last.size()) return false;
    equal = equal || blocks[j] == last;
  }
  return equal;
}

Machine bn_sweeper() {
  Machine m("B", true);
  const SymbolId left = *m.left_marker(), right = *m.right_marker();
  const SymbolId zero = m.add_symbol("0", true), one = m.add_symbol("1", true);
  const SymbolId dollar = m.add_symbol("$", true);
  const SymbolId x = m.add_symbol("x"), f = m.add_symbol("f");
  const SymbolId bit[2] = {zero, one};

  // Right sweep, counting separators up to two.
  const StateId rs[3] = {m.add_state("RS0"), m.add_state("RS1"), m.add_state("RS2")};
  const StateId find = m.add_state("FIND");
  StateId cmp[2], cmp_rest[2];
  for (int b = 0; b < 2; ++b) {
    cmp[b] = m.add_state("CMP" + std::to_string(b));
    cmp_rest[b] = m.add_state("CMPn" + std::to_string(b));
  }
  // SEEK looks for the next unprocessed symbol of a block, SKIP walks over
  // the rest of it. In the last iteration they track whether a fully
  // x-marked block has been seen (found) and whether the current one still
  // can be (allx / cand).
  std::map<std::tuple<int, int, int, int>, StateId> seek, skip;
  for (int b = 0; b < 2; ++b) {
    const std::string s = std::to_string(b);
    seek[{b, 0, 0, 0}] = m.add_state("SEEK" + s);
    skip[{b, 0, 0, 0}] = m.add_state("SKIP" + s);
    for (int found = 0; found < 2; ++found)
      for (int flag = 0; flag < 2; ++flag) {
        const std::string t = s + "L" + std::to_string(found) + std::to_string(flag);
        seek[{b, 1, found, flag}] = m.add_state("SEEK" + t);
        skip[{b, 1, found, flag}] = m.add_state("SKIP" + t);
      }
  }
  const StateId e0 = m.add_state("E0"), e1 = m.add_state("E1"), acc = m.add_state("ACC");
  m.set_initial(rs[0]);
  m.set_final(acc);
  auto seek_state = [&](int b, int last, int found, int allx) {
    return last ? seek.at({b, 1, found, allx}) : seek.at({b, 0, 0, 0});
  };
  auto skip_state = [&](int b, int last, int found, int cand) {
    return last ? skip.at({b, 1, found, cand}) : skip.at({b, 0, 0, 0});
  };

  for (int c = 0; c < 3; ++c) {
    m.add_transition(rs[c], left, {rs[c], left, Move::Right});
    for (SymbolId s : {zero, one, x, f}) m.add_transition(rs[c], s, {rs[c], s, Move::Right});
    m.add_transition(rs[c], dollar, {rs[std::min(c + 1, 2)], dollar, Move::Right});
  }
  m.add_transition(rs[2], right, {find, right, Move::Left});

  m.add_transition(find, x, {find, x, Move::Left});
  for (int b = 0; b < 2; ++b) m.add_transition(find, bit[b], {cmp[b], x, Move::Left});
  m.add_transition(find, dollar, {e1, dollar, Move::Left});

  for (int b = 0; b < 2; ++b) {
    m.add_transition(cmp[b], dollar, {seek_state(b, 1, 0, 1), dollar, Move::Left});
    for (SymbolId s : {zero, one}) {
      m.add_transition(cmp[b], s, {cmp_rest[b], s, Move::Left});
      m.add_transition(cmp_rest[b], s, {cmp_rest[b], s, Move::Left});
    }
    m.add_transition(cmp_rest[b], dollar, {seek_state(b, 0, 0, 0), dollar, Move::Left});
  }

  for (const auto& [key, q] : seek) {
    const auto [b, last, found, allx] = key;
    m.add_transition(q, x, {q, x, Move::Left});
    m.add_transition(q, f, {seek_state(b, last, found, 0), f, Move::Left});
    for (int c = 0; c < 2; ++c) {
      const bool match = c == b;
      m.add_transition(q, bit[c], {skip_state(b, last, found, allx && match), match ? x : f, Move::Left});
    }
  }
  for (const auto& [key, q] : skip) {
    const auto [b, last, found, cand] = key;
    for (SymbolId s : {zero, one}) m.add_transition(q, s, {skip_state(b, last, found, 0), s, Move::Left});
    const int now = found || cand;
    m.add_transition(q, dollar, {seek_state(b, last, now, 1), dollar, Move::Left});
    if (!last) m.add_transition(q, left, {rs[0], left, Move::Right});
    else if (now) m.add_transition(q, left, {acc, left, Move::Right});
  }

  // Empty last block: look for an empty earlier one.
  for (SymbolId s : {zero, one}) {
    m.add_transition(e0, s, {e0, s, Move::Left});
    m.add_transition(e1, s, {e0, s, Move::Left});
  }
  m.add_transition(e0, dollar, {e1, dollar, Move::Left});
  m.add_transition(e1, dollar, {acc, dollar, Move::Left});
  m.add_transition(e1, left, {acc, left, Move::Right});
  require_valid(m);
  return m;
}

BnInstance gen_bn(std::uint32_t n) {
  if (n == 0) throw Error("gen_bn needs n ≥ 1");
  BnInstance out;
  out.n = n;
  out.machine = bound_visits(bn_sweeper(), 2 * static_cast<std::uint64_t>(n));
  out.machine.set_name("B" + std::to_string(n));
  return out;
}

std::uint64_t fooling_set_check(std::uint32_t n, const WordOracle& oracle) {
  if (n < 1 || n > 3) throw Error("fooling_set_check supports n in 1..3");
  const std::uint32_t words = 1u << n;
  auto block = [&](std::uint32_t i) {
    std::string s(n, '0');
    for (std::uint32_t b = 0; b < n; ++b)
      if (i >> (n - 1 - b) & 1u) s[b] = '1';
    return s;
  };
  // Binary order of block indices is lexicographic order of the blocks.
  auto prefix = [&](std::uint64_t set) {
    std::string w(n + 1, '0');
    for (std::uint32_t i = 0; i < words; ++i)
      if (set >> i & 1u) w += "$" + block(i);
    return w;
  };
  const std::uint64_t sets = std::uint64_t{1} << words;
  std::vector<std::string> prefixes;
  for (std::uint64_t s = 0; s < sets; ++s) prefixes.push_back(prefix(s));
  for (std::uint64_t s1 = 0; s1 < sets; ++s1)
    for (std::uint64_t s2 = s1 + 1; s2 < sets; ++s2) {
      const std::uint64_t diff = s1 ^ s2;
      bool separated = false;
      for (std::uint32_t i = 0; i < words && !separated; ++i) {
        if (!(diff >> i & 1u)) continue;
        const std::string u = "$" + block(i);
        separated = oracle(prefixes[s1] + u) != oracle(prefixes[s2] + u);
      }
      if (!separated)
        throw Error("oracle does not separate '" + prefixes[s1] + "' and '" + prefixes[s2] + "'");
    }
  return sets;
}

Machine end_marked_to_plain(const Machine& e) {
  if (!e.end_marked()) throw Error("end_marked_to_plain: machine is not end-marked");
  if (!check_weight_reducing(e).weight_reducing())
    throw NotWeightReducing("machine '" + e.name() + "' is not weight-reducing");
  const SymbolId lm = *e.left_marker(), rm = *e.right_marker();
  const std::size_t g = e.symbol_count();
  const std::size_t top = std::max(g + 1, e.state_count() + 1);

  Machine out(e.name() + "-plain");
  for (StateId q = 0; q < e.state_count(); ++q) {
    out.add_state(e.state_name(q));
    if (e.is_final(q)) out.set_final(q);
  }
  auto state = [&](const std::string& name) { return out.add_state(fresh_state_name(out, name)); };
  const StateId start = state("start"), cross_r = state("X"), cross_l = state("Y");
  const StateId h_rej = state("Hrej");
  out.set_initial(start);

  std::vector<SymbolId> raw(g, kBlank), once(g, kBlank), twice(g, kBlank), sim(g, kBlank);
  for (auto a : e.input_symbols()) raw[a] = out.add_symbol(e.symbol_name(a), true);
  for (auto a : e.input_symbols()) once[a] = out.add_symbol(fresh_symbol_name(e, e.symbol_name(a) + "^1"));
  for (auto a : e.input_symbols()) twice[a] = out.add_symbol(fresh_symbol_name(e, e.symbol_name(a) + "^2"));
  for (SymbolId s = 1; s < g; ++s) {
    if (s == lm || s == rm) continue;
    const auto& name = e.symbol_name(s);
    sim[s] = out.add_symbol(e.is_input(s) ? fresh_symbol_name(out, name + "~") : fresh_symbol_name(out, name));
  }
  std::vector<SymbolId> left_copy, right_copy;  // index = visits left
  for (std::size_t i = 0; i <= top; ++i) {
    left_copy.push_back(out.add_symbol(fresh_symbol_name(out, "L" + std::to_string(i))));
    right_copy.push_back(out.add_symbol(fresh_symbol_name(out, "R" + std::to_string(i))));
  }
  const SymbolId bottom = out.add_symbol(fresh_symbol_name(out, "bot"));

  auto simulated = [&](StateId q, SymbolId read, SymbolId written_marker) -> std::optional<Transition> {
    auto t = e.transition(q, read);
    if (!t) return std::nullopt;
    return Transition{t->target, e.is_endmarker(t->write) ? written_marker : sim[t->write], t->move};
  };
  const auto first = simulated(e.initial(), lm, left_copy[top]);

  // Prepare: mark the right end, then return to the left end, where the
  // first step of e is taken.
  for (auto a : e.input_symbols()) {
    out.add_transition(start, raw[a], {cross_r, once[a], Move::Right});
    out.add_transition(cross_r, raw[a], {cross_r, once[a], Move::Right});
    out.add_transition(cross_l, once[a], {cross_l, twice[a], Move::Left});
  }
  out.add_transition(start, kBlank, {cross_l, right_copy[top], Move::Left});
  out.add_transition(cross_r, kBlank, {cross_l, right_copy[top], Move::Left});
  if (first) out.add_transition(cross_l, kBlank, *first);

  for (StateId q = 0; q < e.state_count(); ++q) {
    for (SymbolId s = 1; s < g; ++s) {
      if (s == lm || s == rm) continue;
      if (auto t = simulated(q, s, bottom)) out.add_transition(q, sim[s], *t);
    }
    for (auto a : e.input_symbols())
      if (auto t = simulated(q, a, bottom)) out.add_transition(q, twice[a], *t);
    for (std::size_t i = 1; i <= top; ++i) {
      if (auto t = simulated(q, lm, left_copy[i - 1])) out.add_transition(q, left_copy[i], *t);
      if (auto t = simulated(q, rm, right_copy[i - 1])) out.add_transition(q, right_copy[i], *t);
    }
    if (e.transition(q, lm)) out.add_transition(q, left_copy[0], {h_rej, bottom, Move::Right});
    if (e.transition(q, rm)) out.add_transition(q, right_copy[0], {h_rej, bottom, Move::Left});
  }
  require_valid(out);
  return out;
}

}  // namespace wrtm
