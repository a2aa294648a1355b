#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "wrtm/machine.hpp"

namespace wrtm {

/// Words v₁$v₂$…$v_k over {0,1,$} with k > 2, |v_k| ≤ n, every earlier
/// block at least as long as v_k, and some earlier block equal to v_k.
bool bn_member(std::string_view w, std::uint32_t n);

struct BnInstance {
  std::uint32_t n = 0;
  Machine machine;  // end-marked, weight-reducing, halting
};

/// End-marked machine for B_n. Each iteration sweeps ⊢ → ⊣ → ⊢ and
/// compares one more symbol of the last block against every earlier block
/// (x on match, f on mismatch); visits per cell are capped at 2n.
/// Throws Error for n = 0.
BnInstance gen_bn(std::uint32_t n);

// The sweep machine before visit bounding (accepts every B_i).
Machine bn_sweeper();

using WordOracle = std::function<bool(const std::string&)>;

/// Checks that the 2^(2^n) words 0^(n+1)$w₁$…$w_k, one per S = {w₁ < … < w_k}
/// ⊆ {0,1}^n, are pairwise separated by some $u with u ∈ S₁ △ S₂.
/// Returns the number of prefixes. Throws Error naming the first pair the
/// oracle fails to separate, or for n outside 1..3.
std::uint64_t fooling_set_check(std::uint32_t n, const WordOracle& oracle);

/// Experimental: plain machine simulating an end-marked weight-reducing
/// machine e. The blank cells next to the input stand in for ⊢ and ⊣ and
/// hold counters that drop on every visit. Throws NotWeightReducing.
Machine end_marked_to_plain(const Machine& e);

}  // namespace wrtm
