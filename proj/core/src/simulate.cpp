#include "wrtm/simulate.hpp"

#include <algorithm>
#include <sstream>

#include "wrtm/error.hpp"
#include "wrtm/halting.hpp"
#include "wrtm/weight.hpp"

namespace wrtm {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Accept: return "accept";
    case Verdict::Reject: return "reject";
    case Verdict::Diverges: return "diverges";
    case Verdict::BudgetExceeded: return "budget-exceeded";
  }
  return "?";
}

std::string describe(const Machine& m, const DivergenceCertificate& c) {
  std::ostringstream os;
  const char* side = c.side == Side::Left ? "left" : "right";
  switch (c.kind) {
    case DivergenceCertificate::Kind::SpaceExceeded:
      os << "space-exceeded side=" << side << " cells=" << c.cells;
      break;
    case DivergenceCertificate::Kind::RepeatedSequence:
      os << "repeated-sequence side=" << side << " cells=" << c.first << "," << c.second
         << " states=";
      for (std::size_t i = 0; i < c.sequence.size(); ++i)
        os << (i ? "," : "") << m.state_name(c.sequence[i]);
      break;
    case DivergenceCertificate::Kind::ConfinedLoop:
      os << "confined-loop steps>" << c.cells;
      break;
  }
  return os.str();
}

Tape::Tape(const Machine& m, const Word& w) {
  if (m.end_marked()) {
    origin_ = 0;
    cells_.reserve(w.size() + 2);
    cells_.push_back(*m.left_marker());
    cells_.insert(cells_.end(), w.begin(), w.end());
    cells_.push_back(*m.right_marker());
  } else {
    origin_ = 1;
    cells_ = w;
  }
}

void Tape::set(std::int64_t pos, SymbolId s) {
  auto i = pos - origin_;
  if (i < 0) {
    const auto grow = std::max<std::int64_t>(-i, static_cast<std::int64_t>(cells_.size()) + 8);
    cells_.insert(cells_.begin(), static_cast<std::size_t>(grow), kBlank);
    origin_ -= grow;
    i += grow;
  } else if (i >= static_cast<std::int64_t>(cells_.size())) {
    const auto need = static_cast<std::size_t>(i) + 1;
    cells_.resize(std::max(need, cells_.size() * 2), kBlank);
  }
  cells_[static_cast<std::size_t>(i)] = s;
}

Configuration Tape::configuration(StateId state, std::int64_t head) const {
  std::int64_t lo = 0, hi = -1;  // non-blank span, in cells_ indices
  for (std::size_t i = 0; i < cells_.size(); ++i)
    if (cells_[i] != kBlank) {
      lo = static_cast<std::int64_t>(i);
      break;
    }
  for (std::size_t i = cells_.size(); i-- > 0;)
    if (cells_[i] != kBlank) {
      hi = static_cast<std::int64_t>(i);
      break;
    }
  Configuration c;
  c.state = state;
  const auto h = head - origin_;
  if (hi < lo) {
    c.head = Head::LeftBlank;
    return c;
  }
  auto slice = [&](std::int64_t a, std::int64_t b) {
    return Word(cells_.begin() + a, cells_.begin() + b);
  };
  if (h < lo) {
    c.head = Head::LeftBlank;
    c.right = slice(lo, hi + 1);
  } else if (h > hi) {
    c.head = Head::RightBlank;
    c.left = slice(lo, hi + 1);
  } else {
    c.head = Head::OnContent;
    c.left = slice(lo, h);
    c.right = slice(h, hi + 1);
  }
  return c;
}

RunOutcome run(const Machine& m, const Word& w, std::uint64_t max_steps,
               const VisitObserver& observer) {
  if (!is_input_word(m, w)) throw Error("word contains symbols outside the input alphabet");
  Tape tape(m, w);
  std::int64_t head = m.end_marked() ? 0 : 1;
  std::int64_t lo = head, hi = head;
  StateId q = m.initial();
  RunOutcome out;
  for (;;) {
    const SymbolId s = tape.get(head);
    if (observer) observer(head, q, s);
    auto t = m.transition(q, s);
    if (!t) {
      out.verdict = m.is_final(q) ? Verdict::Accept : Verdict::Reject;
      out.final_config = tape.configuration(q, head);
      break;
    }
    if (out.steps == max_steps) {
      out.verdict = Verdict::BudgetExceeded;
      break;
    }
    tape.set(head, t->write);
    head += delta_of(t->move);
    q = t->target;
    ++out.steps;
    lo = std::min(lo, head);
    hi = std::max(hi, head);
  }
  out.cells_visited = static_cast<std::uint64_t>(hi - lo + 1);
  return out;
}

std::uint64_t default_max_steps(const Machine& m, std::size_t word_length) {
  constexpr std::uint64_t cap = std::uint64_t{1} << 32;
  const std::uint64_t base = m.state_count() + 1;
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < m.symbol_count() && p < cap; ++i) p *= base;
  if (p >= cap) return cap;
  const std::uint64_t v = 10 * m.symbol_count() * (word_length + 2 * p);
  return std::min(v, cap);
}

Trace run_traced(const Machine& m, const Word& w, std::uint64_t max_steps) {
  Trace tr;
  Tape initial(m, w);
  tr.outcome = run(m, w, max_steps, [&](std::int64_t pos, StateId q, SymbolId s) {
    auto [it, fresh] = tr.cells.try_emplace(pos);
    if (fresh) it->second.initial = initial.get(pos);
    it->second.states.push_back(q);
    it->second.contents.push_back(s);
  });
  return tr;
}

LanguageSample enum_language(const Machine& m, std::size_t max_len, std::uint64_t max_steps) {
  LanguageSample out;
  const bool wr = check_weight_reducing(m).weight_reducing();
  for (auto& w : words_up_to(m, max_len)) {
    RunOutcome r = wr ? run_wr_unchecked(m, w)
                      : run(m, w, max_steps ? max_steps : default_max_steps(m, w.size()));
    switch (r.verdict) {
      case Verdict::Accept: out.accepted.push_back(std::move(w)); break;
      case Verdict::Diverges: out.diverging.push_back(std::move(w)); break;
      case Verdict::BudgetExceeded: out.budget_exceeded.push_back(std::move(w)); break;
      case Verdict::Reject: break;
    }
  }
  return out;
}

}  // namespace wrtm
