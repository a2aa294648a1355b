#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wrtm/machine.hpp"

namespace wrtm {

enum class Verdict { Accept, Reject, Diverges, BudgetExceeded };

std::string to_string(Verdict v);

enum class Side { Left, Right };

/// Evidence that a run never halts.
struct DivergenceCertificate {
  enum class Kind {
    // `cells` consecutive initially-blank cells on `side` were visited, and
    // `cells` reached the (n+1)^g bound.
    SpaceExceeded,
    // Cells `first` and `second` on `side` are visited in the same sequence
    // of states `sequence`: the head entered both for the first time in the
    // same state, and never went back past `first` in between.
    RepeatedSequence,
    // End-marked machine exceeded the step count that any halting run of a
    // weight-reducing end-marked machine can take.
    ConfinedLoop,
  };
  Kind kind = Kind::SpaceExceeded;
  Side side = Side::Right;
  std::uint64_t cells = 0;
  std::int64_t first = 0;
  std::int64_t second = 0;
  std::vector<StateId> sequence;
};

std::string describe(const Machine& m, const DivergenceCertificate& c);

struct RunOutcome {
  Verdict verdict = Verdict::Reject;
  std::uint64_t steps = 0;
  std::uint64_t cells_visited = 0;
  std::optional<Configuration> final_config;  // set for Accept / Reject
  std::optional<DivergenceCertificate> certificate;
};

/// Bi-infinite tape. Position 1 holds the first input symbol; for end-marked
/// machines the left endmarker sits at 0 and the right one at |w|+1.
class Tape {
 public:
  Tape() = default;
  Tape(const Machine& m, const Word& w);

  SymbolId get(std::int64_t pos) const {
    const auto i = pos - origin_;
    if (i < 0 || i >= static_cast<std::int64_t>(cells_.size())) return kBlank;
    return cells_[static_cast<std::size_t>(i)];
  }
  void set(std::int64_t pos, SymbolId s);

  // Configuration view of the tape with the head at `head`.
  Configuration configuration(StateId state, std::int64_t head) const;

 private:
  std::vector<SymbolId> cells_;
  std::int64_t origin_ = 0;  // position of cells_[0]
};

// Called once per configuration (including the halting one) with the head
// position, the state, and the scanned symbol.
using VisitObserver = std::function<void(std::int64_t pos, StateId q, SymbolId scanned)>;

/// Plain simulation from the initial configuration on w. Returns Accept or
/// Reject on halting and BudgetExceeded after `max_steps` steps.
/// Throws Error when w is not a word over Σ.
RunOutcome run(const Machine& m, const Word& w, std::uint64_t max_steps,
               const VisitObserver& observer = {});

// 10·g·(|w| + 2·(n+1)^g), saturated at 2^32.
std::uint64_t default_max_steps(const Machine& m, std::size_t word_length);

/// Per-cell record of an instrumented run.
struct CellVisits {
  SymbolId initial = kBlank;
  std::vector<StateId> states;    // time-ordered states scanning the cell
  std::vector<SymbolId> contents; // symbol scanned at each visit
};

struct Trace {
  RunOutcome outcome;
  std::map<std::int64_t, CellVisits> cells;
};

Trace run_traced(const Machine& m, const Word& w, std::uint64_t max_steps);

struct LanguageSample {
  std::vector<Word> accepted;
  std::vector<Word> diverging;        // run_wr proved divergence
  std::vector<Word> budget_exceeded;  // plain run ran out of steps
};

/// Every word over Σ of length ≤ max_len, classified. Weight-reducing
/// machines are decided exactly via run_wr; other machines are run with
/// `max_steps` (default_max_steps when 0) and undecided words are reported
/// in budget_exceeded.
LanguageSample enum_language(const Machine& m, std::size_t max_len, std::uint64_t max_steps = 0);

}  // namespace wrtm
