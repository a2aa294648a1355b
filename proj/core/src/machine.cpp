#include "wrtm/machine.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wrtm/error.hpp"

namespace wrtm {

namespace {

bool is_reserved(std::string_view token) {
  return token == kBlankToken || token == kLeftMarkerToken || token == kRightMarkerToken;
}

bool valid_token(std::string_view token) {
  if (token.empty()) return false;
  return std::none_of(token.begin(), token.end(),
                      [](unsigned char c) { return std::isspace(c) || c == '#'; });
}

}  // namespace

Machine::Machine(std::string name, bool end_marked)
    : name_(std::move(name)), end_marked_(end_marked) {
  symbols_.emplace_back(kBlankToken);
  symbol_index_.emplace(std::string(kBlankToken), kBlank);
  input_flag_.push_back(false);
  if (end_marked_) {
    for (auto t : {kLeftMarkerToken, kRightMarkerToken}) {
      symbol_index_.emplace(std::string(t), static_cast<SymbolId>(symbols_.size()));
      symbols_.emplace_back(t);
      input_flag_.push_back(false);
    }
  }
}

StateId Machine::add_state(std::string name) {
  if (!valid_token(name)) throw InvalidMachine("invalid state name '" + name + "'");
  if (state_index_.count(name)) throw InvalidMachine("duplicate state '" + name + "'");
  auto id = static_cast<StateId>(states_.size());
  state_index_.emplace(name, id);
  states_.push_back(std::move(name));
  final_.push_back(false);
  table_.emplace_back();
  return id;
}

std::optional<StateId> Machine::find_state(std::string_view name) const {
  auto it = state_index_.find(std::string(name));
  if (it == state_index_.end()) return std::nullopt;
  return it->second;
}

SymbolId Machine::add_symbol(std::string token, bool input) {
  if (!valid_token(token)) throw InvalidMachine("invalid symbol token '" + token + "'");
  if (is_reserved(token)) throw InvalidMachine("reserved symbol '" + token + "'");
  if (symbol_index_.count(token)) throw InvalidMachine("duplicate symbol '" + token + "'");
  auto id = static_cast<SymbolId>(symbols_.size());
  symbol_index_.emplace(token, id);
  symbols_.push_back(std::move(token));
  input_flag_.push_back(input);
  if (input) inputs_.push_back(id);
  return id;
}

std::optional<SymbolId> Machine::find_symbol(std::string_view token) const {
  auto it = symbol_index_.find(std::string(token));
  if (it == symbol_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<SymbolId> Machine::left_marker() const {
  if (!end_marked_) return std::nullopt;
  return SymbolId{1};
}

std::optional<SymbolId> Machine::right_marker() const {
  if (!end_marked_) return std::nullopt;
  return SymbolId{2};
}

bool Machine::is_endmarker(SymbolId s) const { return end_marked_ && (s == 1 || s == 2); }

void Machine::set_initial(StateId q) {
  if (q >= states_.size()) throw InvalidMachine("initial state out of range");
  initial_ = q;
}

void Machine::set_final(StateId q, bool final) { final_.at(q) = final; }

std::vector<StateId> Machine::finals() const {
  std::vector<StateId> out;
  for (StateId q = 0; q < final_.size(); ++q)
    if (final_[q]) out.push_back(q);
  return out;
}

void Machine::add_transition(StateId from, SymbolId read, Transition action) {
  if (from >= states_.size() || action.target >= states_.size())
    throw InvalidMachine("transition mentions an unknown state");
  if (read >= symbols_.size() || action.write >= symbols_.size())
    throw InvalidMachine("transition mentions an unknown symbol");
  auto& row = table_[from];
  if (row.size() <= read) row.resize(symbols_.size());
  if (row[read])
    throw InvalidMachine("duplicate transition for (" + states_[from] + ", " + symbols_[read] + ")");
  row[read] = action;
  rules_.push_back({from, read, action});
}

bool operator==(const Machine& a, const Machine& b) {
  if (a.name_ != b.name_ || a.end_marked_ != b.end_marked_ || a.states_ != b.states_ ||
      a.symbols_ != b.symbols_ || a.input_flag_ != b.input_flag_ || a.initial_ != b.initial_ ||
      a.final_ != b.final_ || a.rules_.size() != b.rules_.size())
    return false;
  for (const auto& r : a.rules_)
    if (b.transition(r.from, r.read) != r.action) return false;
  return true;
}

std::string describe(const Machine& m, const Rule& r) {
  std::ostringstream os;
  os << "δ(" << m.state_name(r.from) << ", " << m.symbol_name(r.read) << ") = ("
     << m.state_name(r.action.target) << ", " << m.symbol_name(r.action.write) << ", "
     << (r.action.move == Move::Left ? 'L' : 'R') << ")";
  return os.str();
}

std::vector<Violation> validate(const Machine& m) {
  std::vector<Violation> out;
  if (m.state_count() == 0) {
    out.push_back({"no states", "machine declares no states"});
    return out;
  }
  if (m.initial() >= m.state_count()) out.push_back({"unknown state", "initial state"});
  for (const auto& r : m.rules()) {
    const auto text = describe(m, r);
    if (r.action.write == kBlank) out.push_back({"blank written", text});
    if (m.is_endmarker(r.read)) {
      if (r.action.write != r.read) out.push_back({"endmarker overwritten", text});
      const Move expected = r.read == *m.left_marker() ? Move::Right : Move::Left;
      if (r.action.move != expected) out.push_back({"endmarker direction", text});
    } else if (m.is_endmarker(r.action.write)) {
      out.push_back({"endmarker written", text});
    }
  }
  return out;
}

void require_valid(const Machine& m) {
  auto v = validate(m);
  if (v.empty()) return;
  std::string msg = "invalid machine '" + m.name() + "':";
  for (const auto& x : v) msg += " [" + x.rule + ": " + x.detail + "]";
  throw InvalidMachine(msg);
}

std::string fresh_symbol_name(const Machine& m, std::string_view base) {
  std::string name(base);
  for (int i = 1; m.find_symbol(name) || is_reserved(name); ++i)
    name = std::string(base) + "'" + std::to_string(i);
  return name;
}

std::string fresh_state_name(const Machine& m, std::string_view base) {
  std::string name(base);
  for (int i = 1; m.find_state(name); ++i) name = std::string(base) + "'" + std::to_string(i);
  return name;
}

Configuration initial_configuration(const Machine& m, const Word& w) {
  Configuration c;
  c.state = m.initial();
  if (m.end_marked()) {
    c.right.reserve(w.size() + 2);
    c.right.push_back(*m.left_marker());
    c.right.insert(c.right.end(), w.begin(), w.end());
    c.right.push_back(*m.right_marker());
    c.head = Head::OnContent;
  } else if (w.empty()) {
    c.head = Head::LeftBlank;
  } else {
    c.right = w;
    c.head = Head::OnContent;
  }
  return c;
}

SymbolId scanned(const Configuration& c) {
  return c.head == Head::OnContent ? c.right.front() : kBlank;
}

std::optional<Configuration> step(const Machine& m, const Configuration& c) {
  if (c.state >= m.state_count()) throw Error("configuration state out of range");
  auto check = [&](const Word& w) {
    for (auto s : w)
      if (s >= m.symbol_count() || s == kBlank) throw Error("configuration symbol outside Γ∖{_}");
  };
  check(c.left);
  check(c.right);
  if (c.head == Head::OnContent && c.right.empty()) throw Error("head on empty content");
  if (c.head == Head::LeftBlank && !c.left.empty()) throw Error("left-blank head with left content");
  if (c.head == Head::RightBlank && !c.right.empty())
    throw Error("right-blank head with right content");

  auto t = m.transition(c.state, scanned(c));
  if (!t) return std::nullopt;

  Configuration n;
  n.state = t->target;
  switch (c.head) {
    case Head::OnContent: {
      n.left = c.left;
      n.right = c.right;
      n.right.front() = t->write;
      if (t->move == Move::Right) {
        n.left.push_back(n.right.front());
        n.right.erase(n.right.begin());
        n.head = n.right.empty() ? Head::RightBlank : Head::OnContent;
      } else if (n.left.empty()) {
        n.head = Head::LeftBlank;
      } else {
        n.right.insert(n.right.begin(), n.left.back());
        n.left.pop_back();
        n.head = Head::OnContent;
      }
      break;
    }
    case Head::LeftBlank: {
      if (t->move == Move::Right) {
        n.left = {t->write};
        n.right = c.right;
        n.head = n.right.empty() ? Head::RightBlank : Head::OnContent;
      } else {
        n.right.reserve(c.right.size() + 1);
        n.right.push_back(t->write);
        n.right.insert(n.right.end(), c.right.begin(), c.right.end());
        n.head = Head::LeftBlank;
      }
      break;
    }
    case Head::RightBlank: {
      n.left = c.left;
      if (t->move == Move::Right) {
        n.left.push_back(t->write);
        n.head = Head::RightBlank;
      } else if (n.left.empty()) {
        n.right = {t->write};
        n.head = Head::LeftBlank;
      } else {
        n.right = {n.left.back(), t->write};
        n.left.pop_back();
        n.head = Head::OnContent;
      }
      break;
    }
  }
  return n;
}

std::string format_configuration(const Machine& m, const Configuration& c) {
  std::string out = "<";
  auto put = [&](const Word& w) {
    for (auto s : w) out += m.symbol_name(s);
  };
  if (c.head == Head::LeftBlank) {
    out += " " + m.state_name(c.state) + " _";
    put(c.right);
  } else if (c.head == Head::RightBlank) {
    put(c.left);
    out += " " + m.state_name(c.state) + " _";
  } else {
    put(c.left);
    out += " " + m.state_name(c.state) + " ";
    put(c.right);
  }
  out += ">";
  return out;
}

Word parse_word(const Machine& m, std::string_view text) {
  Word w;
  auto lookup = [&](std::string_view tok) {
    auto s = m.find_symbol(tok);
    if (!s || !m.is_input(*s)) throw Error("'" + std::string(tok) + "' is not an input symbol");
    w.push_back(*s);
  };
  if (text.find_first_of(" ,\t") != std::string_view::npos) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != ',' && text[j] != '\t') ++j;
      if (j > i) lookup(text.substr(i, j - i));
      i = j;
    }
    return w;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t best = 0;
    for (auto s : m.input_symbols()) {
      const auto& tok = m.symbol_name(s);
      if (tok.size() > best && text.substr(i, tok.size()) == tok) best = tok.size();
    }
    if (best == 0) throw Error("cannot split word at '" + std::string(text.substr(i)) + "'");
    lookup(text.substr(i, best));
    i += best;
  }
  return w;
}

std::string format_word(const Machine& m, const Word& w) {
  bool single = std::all_of(m.input_symbols().begin(), m.input_symbols().end(),
                            [&](SymbolId s) { return m.symbol_name(s).size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!single && i) out += ' ';
    out += m.symbol_name(w[i]);
  }
  return out;
}

bool is_input_word(const Machine& m, const Word& w) {
  return std::all_of(w.begin(), w.end(),
                     [&](SymbolId s) { return s < m.symbol_count() && m.is_input(s); });
}

std::vector<Word> words_up_to(const Machine& m, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i)
      for (auto s : m.input_symbols()) {
        Word w = out[i];
        w.push_back(s);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

}  // namespace wrtm
