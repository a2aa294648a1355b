#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wrtm/machine.hpp"

namespace wrtm {

/// Directed graph over Γ with an edge (τ, σ) whenever some transition reads
/// σ and writes τ. Endmarker self-rewrites of end-marked machines are left out.
struct RewriteGraph {
  std::size_t vertices = 0;
  std::vector<std::pair<SymbolId, SymbolId>> edges;  // (written, read), deduplicated

  bool has_edge(SymbolId from, SymbolId to) const;
};

RewriteGraph rewrite_graph(const Machine& m);

// Rank per symbol id; every rewrite strictly decreases it.
struct WrOrder {
  std::vector<std::uint32_t> rank;
};

struct WrVerdict {
  std::optional<WrOrder> order;
  // σ₁→σ₂→…→σₖ→σ₁ along graph edges; empty iff order is set.
  std::vector<SymbolId> cycle;

  bool weight_reducing() const noexcept { return order.has_value(); }
};

WrVerdict check_weight_reducing(const Machine& m);

// True iff every transition (endmarker reads excluded) strictly decreases rank.
bool order_respected(const Machine& m, const WrOrder& order);

/// 2K·n^K + K: visit bound for a machine whose runs take at most K·|w|+C
/// steps. C does not enter the bound. Throws OverflowError.
std::uint64_t visit_bound_from_time(std::uint64_t K, std::uint64_t C, std::uint64_t n_states);

/// Adds a visit counter to every rewritable symbol so that each cell can be
/// scanned at most k times; the result is weight-reducing and agrees with m
/// on every input where m scans no cell more than k times.
///
/// Input symbols and the blank stay plain. Every other symbol a becomes the
/// k symbols (a,0)…(a,k−1); writes from a plain cell carry k−1 and each
/// further visit decrements, so (a,0) is never read. Input symbols that m
/// itself writes also receive tagged copies. Endmarkers pass through.
/// Throws Error when k = 0.
Machine bound_visits(const Machine& m, std::uint64_t k);

// Number of symbols bound_visits(m, k) will have.
std::uint64_t bounded_alphabet_size(const Machine& m, std::uint64_t k);

/// bound_visits(m, visit_bound_from_time(K, C, |Q|)). The time bound K·|w|+C
/// is trusted, not checked.
Machine lt_to_wr(const Machine& m, std::uint64_t K, std::uint64_t C);

// Runs m on every word of length ≤ max_len and returns the first one whose
// run does not halt within K·|w|+C steps.
std::optional<Word> find_time_bound_violation(const Machine& m, std::uint64_t K, std::uint64_t C,
                                              std::size_t max_len = 8);

}  // namespace wrtm
