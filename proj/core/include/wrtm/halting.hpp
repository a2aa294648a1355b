#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wrtm/machine.hpp"
#include "wrtm/simulate.hpp"

namespace wrtm {

// Largest number of initially-blank cells per side the simulators will
// track before giving up with BudgetExceeded.
inline constexpr std::uint64_t kDefaultCellLimit = std::uint64_t{1} << 24;

/// (n+1)^g for n = |Q|, g = |Γ|: a weight-reducing run is infinite iff it
/// visits that many consecutive initially-blank cells on one side.
/// Throws OverflowError when the value does not fit into 64 bits.
std::uint64_t blank_space_bound(const Machine& m);

// min((n+1)^g, limit) without overflow.
std::uint64_t blank_space_bound_capped(const Machine& m, std::uint64_t limit);

/// Watches the head of a run of a weight-reducing machine and reports
/// divergence as soon as it is provable.
///
/// Cells in [segment_lo, segment_hi] form the initial segment; everything
/// else starts blank. Two checks run side by side: a fresh cell entered in
/// the same state as an earlier fresh cell on the same side, with the head
/// not having gone back past the earlier one, repeats forever; and a run
/// that reaches `space_bound` initially-blank cells on one side is infinite.
class DivergenceMonitor {
 public:
  DivergenceMonitor(std::size_t n_states, std::int64_t segment_lo, std::int64_t segment_hi,
                    std::uint64_t space_bound, std::uint64_t cell_limit = kDefaultCellLimit);

  // Reports the configuration about to be executed. Throws BudgetExceeded
  // when the working cell limit is reached below the proven bound.
  std::optional<DivergenceCertificate> observe(std::int64_t pos, StateId q);

  // Marks [lo, hi] as already visited (cells holding earlier content).
  void preset_extent(std::int64_t lo, std::int64_t hi);

 private:
  struct Record {
    std::int64_t pos;
    StateId state;
  };
  std::optional<DivergenceCertificate> fresh(Side side, std::int64_t pos, StateId q);

  std::int64_t seg_lo_, seg_hi_;
  std::int64_t lo_, hi_;
  bool started_ = false;
  std::uint64_t space_bound_, cell_limit_;
  std::vector<Record> left_, right_;
  std::vector<std::int64_t> left_at_, right_at_;  // per state: record pos or INT64_MIN
  std::vector<std::vector<StateId>> left_log_, right_log_;  // visits per blank cell
};

/// Exact simulation of a weight-reducing machine: Accept, Reject, or
/// Diverges with a certificate. Throws NotWeightReducing otherwise.
RunOutcome run_wr(const Machine& m, const Word& w);

// As run_wr without the weight-reducing check.
RunOutcome run_wr_unchecked(const Machine& m, const Word& w);

/// Run confined to one side of a fixed boundary cell.
struct Excursion {
  enum class Kind { Returned, Halted, Diverged };
  Kind kind = Kind::Halted;
  StateId state = 0;  // state on re-entering the boundary, or halting state
  Word content;       // half-tape contents afterwards, nearest cell first
};

/// Starts in state q on the first cell beyond the boundary on `side`, over
/// `content` followed by blanks. Every cell beyond `content` counts as
/// initially blank.
Excursion run_excursion(const Machine& m, Side side, StateId q, const Word& content,
                        std::uint64_t space_bound, std::uint64_t cell_limit = kDefaultCellLimit);

struct HaltingOptions {
  // Unmarked blank reached: accept instead of reject.
  bool accept_on_overflow = false;
};

/// Equivalent machine that halts on every input: marks (n+1)^g cells on
/// each side of the input with a base-(n+1) counter, then simulates m and
/// stops as soon as the head reaches an unmarked blank.
/// Throws NotWeightReducing, or Error for end-marked machines.
Machine make_halting(const Machine& m, HaltingOptions opts = {});

// make_halting with accept_on_overflow: accepts L(m) ∪ {w : m diverges on w}.
Machine make_halting_accepting(const Machine& m);

// Marking-phase sizing used by make_halting (exposed for tests).
struct MarkingPlan {
  std::uint32_t base;          // n + 1
  std::uint32_t digits;        // max(g, 2)
  std::uint32_t visit_budget;  // tag range applied to digit symbols
  std::vector<std::uint32_t> initial_digits;  // digits−1 in base `base`, LSD first
};
MarkingPlan marking_plan(const Machine& m);

struct DecideOptions {
  // Automaton state budget across both constructions; 0 = unlimited.
  std::uint64_t state_budget = 1'000'000;
  // Build the second automaton from make_halting_accepting(m) instead of the
  // divergence-accepting crossing-sequence construction on m itself.
  bool via_transform = false;
};

/// True iff m halts on every input. Throws NotWeightReducing, BudgetExceeded.
bool decide_halting(const Machine& m, DecideOptions opts = {});

// A weight-reducing machine is linear-time iff it halts on every input.
bool decide_linear_time(const Machine& m, DecideOptions opts = {});

}  // namespace wrtm
