#include "wrtm/machine_io.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>
#include <vector>

#include "wrtm/error.hpp"

namespace wrtm {

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream is{std::string(line)};
  for (std::string tok; is >> tok;) out.push_back(std::move(tok));
  return out;
}

bool reserved(const std::string& t) {
  return t == kBlankToken || t == kLeftMarkerToken || t == kRightMarkerToken;
}

}  // namespace

Machine parse_machine(std::string_view text) {
  std::string name = "M";
  std::optional<bool> end_marked;
  std::vector<std::string> states, inputs, work, finals;
  std::optional<std::pair<std::string, std::size_t>> initial;
  struct RawTrans {
    std::vector<std::string> tok;
    std::size_t line;
  };
  std::vector<RawTrans> trans;
  std::set<std::string> seen_headers;

  std::size_t lineno = 0;
  std::istringstream is{std::string(text)};
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const auto& kw = tok[0];
    auto args = [&](std::size_t lo, std::size_t hi) {
      if (tok.size() - 1 < lo || tok.size() - 1 > hi)
        throw ParseError(lineno, "wrong number of arguments for '" + kw + "'");
    };
    if (kw != "trans" && kw != "states" && kw != "work" && kw != "input" && kw != "final") {
      if (!seen_headers.insert(kw).second) throw ParseError(lineno, "repeated '" + kw + "' line");
    }
    if (kw == "machine") {
      args(1, 1);
      name = tok[1];
    } else if (kw == "endmarked") {
      args(1, 1);
      if (tok[1] == "true") end_marked = true;
      else if (tok[1] == "false") end_marked = false;
      else throw ParseError(lineno, "endmarked expects true or false");
    } else if (kw == "states") {
      args(1, SIZE_MAX);
      states.insert(states.end(), tok.begin() + 1, tok.end());
    } else if (kw == "input") {
      inputs.insert(inputs.end(), tok.begin() + 1, tok.end());
    } else if (kw == "work") {
      work.insert(work.end(), tok.begin() + 1, tok.end());
    } else if (kw == "initial") {
      args(1, 1);
      initial = {tok[1], lineno};
    } else if (kw == "final") {
      finals.insert(finals.end(), tok.begin() + 1, tok.end());
    } else if (kw == "trans") {
      args(5, 5);
      trans.push_back({std::move(tok), lineno});
    } else {
      throw ParseError(lineno, "unknown keyword '" + kw + "'");
    }
  }

  if (states.empty()) throw ParseError(0, "missing 'states' line");
  if (!initial) throw ParseError(0, "missing 'initial' line");
  const bool em = end_marked.value_or(false);

  Machine m(name, em);
  for (auto& s : states) {
    if (m.find_state(s)) throw ParseError(0, "duplicate state '" + s + "'");
    m.add_state(s);
  }
  std::set<std::string> input_set;
  for (const auto& s : inputs) {
    if (reserved(s)) throw ParseError(0, "reserved token '" + s + "' in input alphabet");
    if (!input_set.insert(s).second) throw ParseError(0, "duplicate input symbol '" + s + "'");
  }
  std::set<std::string> declared;
  for (const auto& s : work) {
    if (s == kBlankToken) continue;
    if (s == kLeftMarkerToken || s == kRightMarkerToken) {
      if (!em) throw ParseError(0, "endmarker '" + s + "' in a machine that is not end-marked");
      continue;
    }
    if (!declared.insert(s).second) throw ParseError(0, "duplicate work symbol '" + s + "'");
    m.add_symbol(s, input_set.count(s) > 0);
  }
  for (const auto& s : input_set)
    if (!declared.count(s)) throw ParseError(0, "input symbol '" + s + "' missing from work");

  auto state = [&](const std::string& s, std::size_t line) {
    auto q = m.find_state(s);
    if (!q) throw ParseError(line, "unknown state '" + s + "'");
    return *q;
  };
  auto symbol = [&](const std::string& s, std::size_t line) {
    auto a = m.find_symbol(s);
    if (!a) throw ParseError(line, "unknown symbol '" + s + "'");
    return *a;
  };
  m.set_initial(state(initial->first, initial->second));
  for (const auto& f : finals) m.set_final(state(f, 0));
  for (const auto& t : trans) {
    const auto from = state(t.tok[1], t.line);
    const auto read = symbol(t.tok[2], t.line);
    const auto to = state(t.tok[3], t.line);
    const auto write = symbol(t.tok[4], t.line);
    Move mv;
    if (t.tok[5] == "L") mv = Move::Left;
    else if (t.tok[5] == "R") mv = Move::Right;
    else throw ParseError(t.line, "move must be L or R");
    if (write == kBlank) throw ParseError(t.line, "blank written");
    if (m.transition(from, read))
      throw ParseError(t.line, "duplicate transition for (" + t.tok[1] + ", " + t.tok[2] + ")");
    m.add_transition(from, read, {to, write, mv});
  }
  require_valid(m);
  return m;
}

std::string serialize_machine(const Machine& m, SerializeOptions opts) {
  std::ostringstream os;
  os << "machine " << m.name() << "\n";
  os << "endmarked " << (m.end_marked() ? "true" : "false") << "\n";
  os << "states";
  for (StateId q = 0; q < m.state_count(); ++q) os << ' ' << m.state_name(q);
  os << "\ninput";
  for (auto s : m.input_symbols()) os << ' ' << m.symbol_name(s);
  os << "\nwork";
  for (SymbolId s = 0; s < m.symbol_count(); ++s)
    if (s != kBlank && !m.is_endmarker(s)) os << ' ' << m.symbol_name(s);
  os << "\ninitial " << m.state_name(m.initial()) << "\nfinal";
  for (auto q : m.finals()) os << ' ' << m.state_name(q);
  os << "\n";
  auto rules = m.rules();
  if (opts.canonical)
    std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
      return std::tie(a.from, a.read) < std::tie(b.from, b.read);
    });
  for (const auto& r : rules)
    os << "trans " << m.state_name(r.from) << ' ' << m.symbol_name(r.read) << ' '
       << m.state_name(r.action.target) << ' ' << m.symbol_name(r.action.write) << ' '
       << (r.action.move == Move::Left ? 'L' : 'R') << "\n";
  return os.str();
}

Machine load_machine(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_machine(ss.str());
}

void save_machine(const Machine& m, const std::string& path, SerializeOptions opts) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << serialize_machine(m, opts);
}

}  // namespace wrtm
