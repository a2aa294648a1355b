#include "wrtm/halting.hpp"

#include <algorithm>
#include <climits>

#include "wrtm/automaton.hpp"
#include "wrtm/error.hpp"
#include "wrtm/regularize.hpp"
#include "wrtm/weight.hpp"

namespace wrtm {

std::uint64_t blank_space_bound(const Machine& m) {
  const std::uint64_t base = m.state_count() + 1;
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < m.symbol_count(); ++i)
    if (__builtin_mul_overflow(p, base, &p)) throw OverflowError("(n+1)^g does not fit in 64 bits");
  return p;
}

std::uint64_t blank_space_bound_capped(const Machine& m, std::uint64_t limit) {
  const std::uint64_t base = m.state_count() + 1;
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < m.symbol_count(); ++i) {
    if (__builtin_mul_overflow(p, base, &p) || p >= limit) return limit;
  }
  return p;
}

DivergenceMonitor::DivergenceMonitor(std::size_t n_states, std::int64_t segment_lo,
                                     std::int64_t segment_hi, std::uint64_t space_bound,
                                     std::uint64_t cell_limit)
    : seg_lo_(segment_lo),
      seg_hi_(segment_hi),
      lo_(0),
      hi_(0),
      space_bound_(space_bound),
      cell_limit_(cell_limit),
      left_at_(n_states, INT64_MIN),
      right_at_(n_states, INT64_MIN) {}

void DivergenceMonitor::preset_extent(std::int64_t lo, std::int64_t hi) {
  lo_ = lo;
  hi_ = hi;
  started_ = true;
}

std::optional<DivergenceCertificate> DivergenceMonitor::fresh(Side side, std::int64_t pos,
                                                              StateId q) {
  const bool right = side == Side::Right;
  const auto count = static_cast<std::uint64_t>(right ? pos - seg_hi_ : seg_lo_ - pos);
  if (count >= space_bound_) {
    DivergenceCertificate c;
    c.kind = DivergenceCertificate::Kind::SpaceExceeded;
    c.side = side;
    c.cells = count;
    return c;
  }
  if (count >= cell_limit_)
    throw BudgetExceeded("run reached " + std::to_string(count) +
                         " initially-blank cells without settling divergence");
  auto& at = right ? right_at_ : left_at_;
  if (at[q] != INT64_MIN) {
    DivergenceCertificate c;
    c.kind = DivergenceCertificate::Kind::RepeatedSequence;
    c.side = side;
    c.first = at[q];
    c.second = pos;
    c.cells = count;
    const auto& log = right ? right_log_ : left_log_;
    const auto idx = static_cast<std::size_t>(right ? at[q] - seg_hi_ - 1 : seg_lo_ - at[q] - 1);
    if (idx < log.size()) c.sequence = log[idx];
    return c;
  }
  (right ? right_ : left_).push_back({pos, q});
  at[q] = pos;
  return std::nullopt;
}

std::optional<DivergenceCertificate> DivergenceMonitor::observe(std::int64_t pos, StateId q) {
  // Records past which the head has moved back are no longer repeatable.
  while (!right_.empty() && right_.back().pos > pos) {
    right_at_[right_.back().state] = INT64_MIN;
    right_.pop_back();
  }
  while (!left_.empty() && left_.back().pos < pos) {
    left_at_[left_.back().state] = INT64_MIN;
    left_.pop_back();
  }
  if (pos > seg_hi_) {
    const auto idx = static_cast<std::size_t>(pos - seg_hi_ - 1);
    if (right_log_.size() <= idx) right_log_.resize(idx + 1);
    right_log_[idx].push_back(q);
  } else if (pos < seg_lo_) {
    const auto idx = static_cast<std::size_t>(seg_lo_ - pos - 1);
    if (left_log_.size() <= idx) left_log_.resize(idx + 1);
    left_log_[idx].push_back(q);
  }
  const bool first = !started_;
  if (first) {
    started_ = true;
    lo_ = hi_ = pos;
  }
  if (first || pos > hi_) {
    hi_ = std::max(hi_, pos);
    if (pos > seg_hi_) return fresh(Side::Right, pos, q);
  }
  if (first || pos < lo_) {
    lo_ = std::min(lo_, pos);
    if (pos < seg_lo_) return fresh(Side::Left, pos, q);
  }
  return std::nullopt;
}

namespace {

RunOutcome run_end_marked(const Machine& m, const Word& w) {
  // Away from the endmarkers every step rewrites a cell, and a cell is
  // rewritten at most |Γ| times; the empty word leaves 2·|Q| configurations.
  const std::uint64_t g = m.symbol_count();
  const std::uint64_t cap = 2 * w.size() * g + 2 * m.state_count() + 2;
  auto out = run(m, w, cap);
  if (out.verdict == Verdict::BudgetExceeded) {
    out.verdict = Verdict::Diverges;
    DivergenceCertificate c;
    c.kind = DivergenceCertificate::Kind::ConfinedLoop;
    c.cells = cap;
    out.certificate = c;
  }
  return out;
}

}  // namespace

RunOutcome run_wr_unchecked(const Machine& m, const Word& w) {
  if (!is_input_word(m, w)) throw Error("word contains symbols outside the input alphabet");
  if (m.end_marked()) return run_end_marked(m, w);

  Tape tape(m, w);
  const auto len = static_cast<std::int64_t>(w.size());
  DivergenceMonitor monitor(m.state_count(), 1, len,
                            blank_space_bound_capped(m, kDefaultCellLimit + 1));
  std::int64_t head = 1, lo = 1, hi = 1;
  StateId q = m.initial();
  RunOutcome out;
  for (;;) {
    if (auto cert = monitor.observe(head, q)) {
      out.verdict = Verdict::Diverges;
      out.certificate = std::move(cert);
      break;
    }
    const SymbolId s = tape.get(head);
    auto t = m.transition(q, s);
    if (!t) {
      out.verdict = m.is_final(q) ? Verdict::Accept : Verdict::Reject;
      out.final_config = tape.configuration(q, head);
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

RunOutcome run_wr(const Machine& m, const Word& w) {
  const auto v = check_weight_reducing(m);
  if (!v.weight_reducing()) throw NotWeightReducing("machine '" + m.name() + "' is not weight-reducing");
  return run_wr_unchecked(m, w);
}

Excursion run_excursion(const Machine& m, Side side, StateId q, const Word& content,
                        std::uint64_t space_bound, std::uint64_t cell_limit) {
  // Coordinates count away from the boundary cell, which sits at 0.
  DivergenceMonitor monitor(m.state_count(), 0, 0, space_bound, cell_limit);
  monitor.preset_extent(0, static_cast<std::int64_t>(content.size()));
  Excursion out;
  out.content = content;
  std::int64_t pos = 1;
  for (;;) {
    if (pos == 0) {
      out.kind = Excursion::Kind::Returned;
      out.state = q;
      return out;
    }
    if (monitor.observe(pos, q)) {
      out.kind = Excursion::Kind::Diverged;
      out.state = q;
      return out;
    }
    const auto idx = static_cast<std::size_t>(pos - 1);
    const SymbolId s = idx < out.content.size() ? out.content[idx] : kBlank;
    auto t = m.transition(q, s);
    if (!t) {
      out.kind = Excursion::Kind::Halted;
      out.state = q;
      return out;
    }
    if (idx >= out.content.size()) out.content.resize(idx + 1, kBlank);
    out.content[idx] = t->write;
    const int d = delta_of(t->move);
    pos += side == Side::Right ? d : -d;
    q = t->target;
  }
}

bool decide_halting(const Machine& m, DecideOptions opts) {
  if (!check_weight_reducing(m).weight_reducing())
    throw NotWeightReducing("machine '" + m.name() + "' is not weight-reducing");
  NfaOptions base;
  base.state_budget = opts.state_budget;
  const Automaton plain = to_nfa(m, base);
  Automaton total;
  if (opts.via_transform) {
    total = to_nfa(make_halting_accepting(m), base);
  } else {
    NfaOptions div = base;
    div.divergence_accepts = true;
    total = to_nfa(m, div);
  }
  return equivalent(plain, total, opts.state_budget).equal;
}

bool decide_linear_time(const Machine& m, DecideOptions opts) { return decide_halting(m, opts); }

}  // namespace wrtm
