#include "wrtm/automaton.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "wrtm/error.hpp"

namespace wrtm {

AState Automaton::add_state(std::string state_name, bool is_final) {
  state_names.push_back(std::move(state_name));
  final.push_back(is_final);
  delta.emplace_back(alphabet.size());
  return static_cast<AState>(state_names.size() - 1);
}

void Automaton::add_edge(AState from, std::uint32_t symbol, AState to) {
  if (from >= state_count() || to >= state_count() || symbol >= alphabet.size())
    throw Error("automaton edge out of range");
  auto& row = delta[from];
  if (row.size() < alphabet.size()) row.resize(alphabet.size());
  auto& targets = row[symbol];
  auto it = std::lower_bound(targets.begin(), targets.end(), to);
  if (it == targets.end() || *it != to) targets.insert(it, to);
}

std::size_t Automaton::edge_count() const {
  std::size_t total = 0;
  for (const auto& row : delta)
    for (const auto& targets : row) total += targets.size();
  return total;
}

bool Automaton::deterministic() const {
  for (const auto& row : delta)
    for (const auto& targets : row)
      if (targets.size() > 1) return false;
  return true;
}

namespace {

using Subset = std::vector<AState>;

const std::vector<AState>& targets_of(const Automaton& a, AState q, std::uint32_t s) {
  static const std::vector<AState> kNone;
  if (q >= a.delta.size() || s >= a.delta[q].size()) return kNone;
  return a.delta[q][s];
}

Subset post(const Automaton& a, const Subset& from, std::uint32_t s) {
  Subset out;
  for (AState q : from) {
    const auto& t = targets_of(a, q, s);
    out.insert(out.end(), t.begin(), t.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool any_final(const Automaton& a, const Subset& set) {
  return std::any_of(set.begin(), set.end(), [&](AState q) { return a.final[q]; });
}

std::string subset_name(const Automaton& a, const Subset& set) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += a.state_names[set[i]];
  }
  return out + "}";
}

void check_budget(std::uint64_t budget, std::size_t count, const char* what) {
  if (budget != 0 && count > budget)
    throw BudgetExceeded(std::string(what) + " exceeded state budget of " +
                         std::to_string(budget));
}

// Complete DFA over the reachable part of a deterministic automaton; the
// sink, if needed, is the last state.
struct Dense {
  std::size_t symbols = 0;
  std::vector<std::uint32_t> next;  // [state * symbols + s]
  std::vector<bool> final;
  std::uint32_t initial = 0;
};

Dense completed(const Automaton& dfa) {
  Dense d;
  d.symbols = dfa.alphabet.size();
  std::vector<std::int64_t> index(dfa.state_count(), -1);
  std::vector<AState> order{dfa.initial};
  index[dfa.initial] = 0;
  bool need_sink = false;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::uint32_t s = 0; s < d.symbols; ++s) {
      const auto& t = targets_of(dfa, order[i], s);
      if (t.empty()) {
        need_sink = true;
      } else if (index[t[0]] < 0) {
        index[t[0]] = static_cast<std::int64_t>(order.size());
        order.push_back(t[0]);
      }
    }
  const auto sink = static_cast<std::uint32_t>(order.size());
  const std::size_t n = order.size() + (need_sink ? 1 : 0);
  d.next.assign(n * d.symbols, sink);
  d.final.assign(n, false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    d.final[i] = dfa.final[order[i]];
    for (std::uint32_t s = 0; s < d.symbols; ++s) {
      const auto& t = targets_of(dfa, order[i], s);
      if (!t.empty()) d.next[i * d.symbols + s] = static_cast<std::uint32_t>(index[t[0]]);
    }
  }
  return d;
}

std::vector<std::uint32_t> symbol_map(const Automaton& from, const Automaton& to) {
  if (from.alphabet.size() != to.alphabet.size())
    throw Error("automata have different alphabets");
  std::vector<std::uint32_t> map(from.alphabet.size());
  for (std::size_t i = 0; i < from.alphabet.size(); ++i) {
    auto it = std::find(to.alphabet.begin(), to.alphabet.end(), from.alphabet[i]);
    if (it == to.alphabet.end())
      throw Error("automata have different alphabets: '" + from.alphabet[i] + "'");
    map[i] = static_cast<std::uint32_t>(it - to.alphabet.begin());
  }
  return map;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

bool automaton_accepts(const Automaton& a, const AWord& w) {
  if (a.state_count() == 0) return false;
  Subset current{a.initial};
  for (auto s : w) {
    if (s >= a.alphabet.size()) throw Error("symbol outside automaton alphabet");
    current = post(a, current, s);
    if (current.empty()) return false;
  }
  return any_final(a, current);
}

Automaton determinize(const Automaton& a, std::uint64_t state_budget) {
  Automaton out;
  out.name = a.name;
  out.kind = AutomatonKind::Dfa;
  out.alphabet = a.alphabet;
  if (a.state_count() == 0) return out;
  std::map<Subset, AState> index;
  std::deque<Subset> queue;
  Subset start{a.initial};
  index.emplace(start, out.add_state(subset_name(a, start), any_final(a, start)));
  queue.push_back(start);
  while (!queue.empty()) {
    Subset current = std::move(queue.front());
    queue.pop_front();
    const AState from = index.at(current);
    for (std::uint32_t s = 0; s < a.alphabet.size(); ++s) {
      Subset next = post(a, current, s);
      if (next.empty()) continue;
      auto it = index.find(next);
      if (it == index.end()) {
        check_budget(state_budget, out.state_count() + 1, "determinization");
        it = index.emplace(next, out.add_state(subset_name(a, next), any_final(a, next))).first;
        queue.push_back(next);
      }
      out.add_edge(from, s, it->second);
    }
  }
  return out;
}

Automaton minimize(const Automaton& a) {
  const Automaton dfa = a.deterministic() ? a : determinize(a);
  Automaton out;
  out.name = a.name;
  out.kind = AutomatonKind::Dfa;
  out.alphabet = a.alphabet;
  if (dfa.state_count() == 0) {
    const AState sink = out.add_state("0");
    for (std::uint32_t s = 0; s < out.alphabet.size(); ++s) out.add_edge(sink, s, sink);
    return out;
  }
  const Dense d = completed(dfa);
  const std::size_t n = d.final.size();
  const std::size_t k = d.symbols;

  // Moore refinement: a block is identified by (old block, successor blocks).
  std::vector<std::uint32_t> block(n);
  for (std::size_t q = 0; q < n; ++q) block[q] = d.final[q] ? 1 : 0;
  std::size_t blocks = 0;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> signature;
    std::vector<std::uint32_t> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<std::uint32_t> sig;
      sig.reserve(k + 1);
      sig.push_back(block[q]);
      for (std::size_t s = 0; s < k; ++s) sig.push_back(block[d.next[q * k + s]]);
      auto it = signature.emplace(std::move(sig), static_cast<std::uint32_t>(signature.size())).first;
      next[q] = it->second;
    }
    const std::size_t count = signature.size();
    block.swap(next);
    if (count == blocks) break;
    blocks = count;
  }

  // Canonical numbering: breadth-first from the initial block.
  std::vector<std::int64_t> number(blocks, -1);
  std::vector<std::uint32_t> representative;
  number[block[d.initial]] = 0;
  representative.push_back(d.initial);
  for (std::size_t i = 0; i < representative.size(); ++i) {
    const auto q = representative[i];
    for (std::size_t s = 0; s < k; ++s) {
      const auto t = d.next[q * k + s];
      if (number[block[t]] < 0) {
        number[block[t]] = static_cast<std::int64_t>(representative.size());
        representative.push_back(t);
      }
    }
  }
  for (std::size_t i = 0; i < representative.size(); ++i)
    out.add_state(std::to_string(i), d.final[representative[i]]);
  for (std::size_t i = 0; i < representative.size(); ++i)
    for (std::size_t s = 0; s < k; ++s)
      out.add_edge(static_cast<AState>(i), static_cast<std::uint32_t>(s),
                   static_cast<AState>(number[block[d.next[representative[i] * k + s]]]));
  return out;
}

EquivalenceResult equivalent(const Automaton& a, const Automaton& b, std::uint64_t state_budget) {
  const auto map = symbol_map(a, b);
  using Pair = std::pair<Subset, Subset>;
  auto start_of = [](const Automaton& x) {
    return x.state_count() ? Subset{x.initial} : Subset{};
  };
  std::map<Pair, std::size_t> seen;
  std::vector<std::pair<std::size_t, std::uint32_t>> parent;  // (pair index, symbol)
  std::deque<std::pair<Pair, std::size_t>> queue;
  Pair start{start_of(a), start_of(b)};
  seen.emplace(start, 0);
  parent.emplace_back(0, 0);
  queue.emplace_back(start, 0);
  while (!queue.empty()) {
    auto [pair, id] = std::move(queue.front());
    queue.pop_front();
    if (any_final(a, pair.first) != any_final(b, pair.second)) {
      AWord w;
      for (std::size_t at = id; at != 0; at = parent[at].first) w.push_back(parent[at].second);
      std::reverse(w.begin(), w.end());
      return {false, std::move(w)};
    }
    for (std::uint32_t s = 0; s < a.alphabet.size(); ++s) {
      Pair next{post(a, pair.first, s), post(b, pair.second, map[s])};
      if (seen.count(next)) continue;
      check_budget(state_budget, seen.size() + 1, "equivalence check");
      const std::size_t next_id = parent.size();
      seen.emplace(next, next_id);
      parent.emplace_back(id, s);
      queue.emplace_back(std::move(next), next_id);
    }
  }
  return {true, std::nullopt};
}

Automaton finite_language(const std::vector<std::string>& alphabet, const std::vector<AWord>& words) {
  Automaton out;
  out.kind = AutomatonKind::Dfa;
  out.alphabet = alphabet;
  out.add_state("e");
  for (const auto& w : words) {
    AState at = 0;
    for (auto s : w) {
      const auto& t = targets_of(out, at, s);
      if (!t.empty()) {
        at = t[0];
        continue;
      }
      const AState fresh = out.add_state("t" + std::to_string(out.state_count()));
      out.add_edge(at, s, fresh);
      at = fresh;
    }
    out.final[at] = true;
  }
  return out;
}

Automaton bounded_universe(const std::vector<std::string>& alphabet, std::size_t n) {
  Automaton out;
  out.kind = AutomatonKind::Dfa;
  out.alphabet = alphabet;
  for (std::size_t i = 0; i <= n; ++i) out.add_state("l" + std::to_string(i), true);
  for (std::size_t i = 0; i < n; ++i)
    for (std::uint32_t s = 0; s < alphabet.size(); ++s)
      out.add_edge(static_cast<AState>(i), s, static_cast<AState>(i + 1));
  return out;
}

Automaton intersect(const Automaton& a, const Automaton& b) {
  if (a.alphabet != b.alphabet) throw Error("intersect: alphabets differ");
  Automaton out;
  out.name = a.name + "&" + b.name;
  out.alphabet = a.alphabet;
  if (a.state_count() == 0 || b.state_count() == 0) return out;
  std::map<std::pair<AState, AState>, AState> index;
  std::deque<std::pair<AState, AState>> queue;
  auto intern = [&](AState p, AState q) {
    auto [it, fresh] = index.emplace(std::pair{p, q}, 0);
    if (fresh) {
      it->second = out.add_state(a.state_names[p] + "." + b.state_names[q], a.final[p] && b.final[q]);
      queue.emplace_back(p, q);
    }
    return it->second;
  };
  out.initial = intern(a.initial, b.initial);
  while (!queue.empty()) {
    auto [p, q] = queue.front();
    queue.pop_front();
    const AState from = index.at({p, q});
    for (std::uint32_t s = 0; s < a.alphabet.size(); ++s)
      for (AState p2 : targets_of(a, p, s))
        for (AState q2 : targets_of(b, q, s)) out.add_edge(from, s, intern(p2, q2));
  }
  out.kind = out.deterministic() ? AutomatonKind::Dfa : AutomatonKind::Nfa;
  return out;
}

AWord to_automaton_word(const Automaton& a, const Machine& m, const Word& w) {
  AWord out;
  out.reserve(w.size());
  for (auto s : w) {
    const auto& name = m.symbol_name(s);
    auto it = std::find(a.alphabet.begin(), a.alphabet.end(), name);
    if (it == a.alphabet.end()) throw Error("symbol '" + name + "' not in automaton alphabet");
    out.push_back(static_cast<std::uint32_t>(it - a.alphabet.begin()));
  }
  return out;
}

AWord parse_automaton_word(const Automaton& a, std::string_view text) {
  AWord out;
  const bool separated = text.find_first_of(" ,\t") != std::string_view::npos;
  if (separated) {
    std::string copy(text);
    std::replace(copy.begin(), copy.end(), ',', ' ');
    for (const auto& token : split(copy)) {
      auto it = std::find(a.alphabet.begin(), a.alphabet.end(), token);
      if (it == a.alphabet.end()) throw Error("unknown symbol '" + token + "'");
      out.push_back(static_cast<std::uint32_t>(it - a.alphabet.begin()));
    }
    return out;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t best_len = 0;
    std::uint32_t best = 0;
    for (std::uint32_t s = 0; s < a.alphabet.size(); ++s) {
      const auto& name = a.alphabet[s];
      if (name.size() > best_len && text.substr(i, name.size()) == name) {
        best_len = name.size();
        best = s;
      }
    }
    if (best_len == 0) throw Error("cannot split word at '" + std::string(text.substr(i)) + "'");
    out.push_back(best);
    i += best_len;
  }
  return out;
}

std::string format_automaton_word(const Automaton& a, const AWord& w) {
  if (w.empty()) return "ε";
  std::string out;
  const bool wide = std::any_of(a.alphabet.begin(), a.alphabet.end(),
                                [](const std::string& s) { return s.size() != 1; });
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (wide && i) out += ' ';
    out += a.alphabet.at(w[i]);
  }
  return out;
}

Automaton parse_automaton(std::string_view text) {
  Automaton out;
  std::unordered_map<std::string, AState> states;
  std::unordered_map<std::string, std::uint32_t> symbols;
  bool header = false, have_states = false, have_alphabet = false, have_initial = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  auto state_of = [&](const std::string& name) {
    auto it = states.find(name);
    if (it == states.end()) throw ParseError(line_no, "unknown state '" + name + "'");
    return it->second;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tok = split(line);
    if (tok.empty()) continue;
    const auto& key = tok[0];
    if (!header) {
      if (key != "automaton" || tok.size() != 3)
        throw ParseError(line_no, "expected 'automaton <name> <nfa|dfa>'");
      out.name = tok[1];
      if (tok[2] == "nfa") out.kind = AutomatonKind::Nfa;
      else if (tok[2] == "dfa") out.kind = AutomatonKind::Dfa;
      else throw ParseError(line_no, "kind must be nfa or dfa");
      header = true;
    } else if (key == "alphabet") {
      if (have_alphabet || have_states) throw ParseError(line_no, "alphabet must precede states and appear once");
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!symbols.emplace(tok[i], static_cast<std::uint32_t>(out.alphabet.size())).second)
          throw ParseError(line_no, "duplicate symbol '" + tok[i] + "'");
        out.alphabet.push_back(tok[i]);
      }
      have_alphabet = true;
    } else if (key == "states") {
      if (!have_alphabet) throw ParseError(line_no, "alphabet must precede states");
      for (std::size_t i = 1; i < tok.size(); ++i) {
        if (states.count(tok[i])) throw ParseError(line_no, "duplicate state '" + tok[i] + "'");
        states.emplace(tok[i], out.add_state(tok[i]));
      }
      have_states = true;
    } else if (key == "initial") {
      if (tok.size() != 2 || have_initial) throw ParseError(line_no, "expected one 'initial <state>'");
      out.initial = state_of(tok[1]);
      have_initial = true;
    } else if (key == "final") {
      for (std::size_t i = 1; i < tok.size(); ++i) out.final[state_of(tok[i])] = true;
    } else if (key == "edge") {
      if (tok.size() != 4) throw ParseError(line_no, "expected 'edge <state> <symbol> <state>'");
      auto sym = symbols.find(tok[2]);
      if (sym == symbols.end()) throw ParseError(line_no, "unknown symbol '" + tok[2] + "'");
      out.add_edge(state_of(tok[1]), sym->second, state_of(tok[3]));
    } else {
      throw ParseError(line_no, "unknown keyword '" + key + "'");
    }
  }
  if (!header) throw ParseError(0, "missing automaton header");
  if (!have_states || out.state_count() == 0) throw ParseError(0, "no states declared");
  if (!have_initial) throw ParseError(0, "no initial state");
  if (out.kind == AutomatonKind::Dfa && !out.deterministic())
    throw ParseError(0, "dfa has a nondeterministic transition");
  return out;
}

std::string serialize_automaton(const Automaton& a) {
  std::ostringstream out;
  out << "automaton " << a.name << (a.kind == AutomatonKind::Dfa ? " dfa" : " nfa") << "\n";
  out << "alphabet";
  for (const auto& s : a.alphabet) out << ' ' << s;
  out << "\nstates";
  for (const auto& q : a.state_names) out << ' ' << q;
  out << "\ninitial " << a.state_names.at(a.initial) << "\nfinal";
  for (AState q = 0; q < a.state_count(); ++q)
    if (a.final[q]) out << ' ' << a.state_names[q];
  out << "\n";
  for (AState q = 0; q < a.state_count(); ++q)
    for (std::uint32_t s = 0; s < a.alphabet.size(); ++s)
      for (AState t : targets_of(a, q, s))
        out << "edge " << a.state_names[q] << ' ' << a.alphabet[s] << ' ' << a.state_names[t] << "\n";
  return out.str();
}

Automaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_automaton(buffer.str());
}

}  // namespace wrtm
