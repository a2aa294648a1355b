#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "wrtm/error.hpp"
#include "wrtm/halting.hpp"
#include "wrtm/simulate.hpp"
#include "wrtm/weight.hpp"

using namespace wrtm;

namespace {

const char* const kHalting[] = {"empty_accept", "empty_reject", "even_a",  "ends_with_b",
                                "left_excursion", "zigzag",     "mod3",    "b_star",
                                "right_excursion", "a_star_b_star"};
const char* const kDiverging[] = {"sweep", "mixed", "eps_diverge_left"};

constexpr std::uint64_t kStepCap = 50'000'000;

}  // namespace

TEST_CASE("marking plan encodes digits minus one") {
  for (const auto& e : corpus::load_all()) {
    CAPTURE(e.name);
    const auto plan = marking_plan(e.machine);
    CHECK(plan.base == e.machine.state_count() + 1);
    CHECK(plan.digits == std::max<std::uint32_t>(e.machine.symbol_count(), 2));
    CHECK(plan.visit_budget == 2 * plan.digits + 1);
    std::uint64_t value = 0, weight = 1;
    for (auto d : plan.initial_digits) {
      CHECK(d < plan.base);
      value += d * weight;
      weight *= plan.base;
    }
    CHECK(value == plan.digits - 1);
  }
}

TEST_CASE("make_halting halts everywhere and keeps the language") {
  for (const auto& e : corpus::load_all()) {
    CAPTURE(e.name);
    const Machine h = make_halting(e.machine);
    const Machine ha = make_halting_accepting(e.machine);
    CHECK(validate(h).empty());
    CHECK(check_weight_reducing(h).weight_reducing());
    CHECK(check_weight_reducing(ha).weight_reducing());
    CHECK(h.input_symbols().size() == e.machine.input_symbols().size());
    for (const auto& w : oracle::all_words(e.machine, 4)) {
      CAPTURE(format_word(e.machine, w));
      const auto ref = oracle::reference_run(e.machine, w).outcome;
      Word wh;
      for (auto s : w) wh.push_back(*h.find_symbol(e.machine.symbol_name(s)));
      const auto rh = oracle::reference_run(h, wh, kStepCap);
      const auto rha = oracle::reference_run(ha, wh, kStepCap);
      REQUIRE(rh.outcome != oracle::Outcome::Diverge);
      REQUIRE(rha.outcome != oracle::Outcome::Diverge);
      CHECK((rh.outcome == oracle::Outcome::Accept) == (ref == oracle::Outcome::Accept));
      CHECK((rha.outcome == oracle::Outcome::Accept) == (ref != oracle::Outcome::Reject));
    }
  }
}

TEST_CASE("decide_halting on the corpus") {
  for (const char* name : kHalting) {
    CAPTURE(name);
    const Machine m = corpus::load(name);
    CHECK(decide_halting(m));
    CHECK(decide_halting(m, {.via_transform = true}));
    CHECK(decide_linear_time(m));
  }
  for (const char* name : kDiverging) {
    CAPTURE(name);
    const Machine m = corpus::load(name);
    CHECK_FALSE(decide_halting(m));
    CHECK_FALSE(decide_halting(m, {.via_transform = true}));
    CHECK_FALSE(decide_linear_time(m));
  }
}

TEST_CASE("transformed machines are decided halting") {
  for (const char* name : {"sweep", "mixed", "zigzag"}) {
    CAPTURE(name);
    CHECK(decide_halting(make_halting(corpus::load(name))));
  }
}

TEST_CASE("decision budget and input checks") {
  CHECK_THROWS_AS(decide_halting(corpus::load("mod3"), {.state_budget = 2}), BudgetExceeded);
  Machine marked("marked", true);
  marked.add_state("q0");
  CHECK_THROWS_AS(make_halting(marked), Error);
  Machine loop("loop");
  const auto q0 = loop.add_state("q0");
  const auto a = loop.add_symbol("a", true);
  loop.add_transition(q0, a, {q0, a, Move::Right});
  CHECK_THROWS_AS(make_halting(loop), NotWeightReducing);
  CHECK_THROWS_AS(decide_halting(loop), NotWeightReducing);
}
