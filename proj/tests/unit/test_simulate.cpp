#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "wrtm/error.hpp"
#include "wrtm/halting.hpp"
#include "wrtm/machine_io.hpp"
#include "wrtm/simulate.hpp"

using namespace wrtm;

namespace {

Verdict expected(oracle::Outcome o) {
  switch (o) {
    case oracle::Outcome::Accept: return Verdict::Accept;
    case oracle::Outcome::Reject: return Verdict::Reject;
    default: return Verdict::Diverges;
  }
}

}  // namespace

TEST_CASE("run_wr agrees with the reference simulator on the corpus") {
  for (const auto& e : corpus::load_all()) {
    CAPTURE(e.name);
    for (const auto& w : oracle::all_words(e.machine, 6)) {
      const auto ref = oracle::reference_run(e.machine, w);
      const auto got = run_wr(e.machine, w);
      CAPTURE(format_word(e.machine, w));
      CHECK(got.verdict == expected(ref.outcome));
      if (got.verdict != Verdict::Diverges) CHECK(got.steps == ref.steps);
      else CHECK(got.certificate.has_value());
    }
  }
}

TEST_CASE("plain run reports the step budget") {
  const Machine sweep = corpus::load("sweep");
  const auto r = run(sweep, Word{1}, 50);
  CHECK(r.verdict == Verdict::BudgetExceeded);
  CHECK(r.steps == 50);
  const auto accept = run(corpus::load("even_a"), Word{1, 1}, 50);
  CHECK(accept.verdict == Verdict::Accept);
  CHECK(accept.steps == 2);
  REQUIRE(accept.final_config);
  CHECK(accept.final_config->head == Head::RightBlank);
}

TEST_CASE("divergence certificates") {
  const auto r = run_wr(corpus::load("sweep"), Word{});
  REQUIRE(r.verdict == Verdict::Diverges);
  REQUIRE(r.certificate);
  CHECK(r.certificate->kind == DivergenceCertificate::Kind::RepeatedSequence);
  CHECK(r.certificate->side == Side::Right);

  const auto l = run_wr(corpus::load("eps_diverge_left"), Word{});
  REQUIRE(l.certificate);
  CHECK(l.certificate->side == Side::Left);

  const Machine sweep = corpus::load("sweep");
  CHECK(describe(sweep, *r.certificate).rfind("repeated-sequence side=right", 0) == 0);
}

TEST_CASE("space bound triggers without repetition") {
  DivergenceMonitor monitor(2, 1, 0, 3);
  CHECK_FALSE(monitor.observe(1, 0));
  CHECK_FALSE(monitor.observe(2, 1));
  auto c = monitor.observe(3, 0);
  REQUIRE(c);
  CHECK(c->kind == DivergenceCertificate::Kind::SpaceExceeded);
  CHECK(c->cells == 3);
}

TEST_CASE("repetition needs the head to stay beyond the first cell") {
  DivergenceMonitor monitor(2, 1, 1, 1000);
  CHECK_FALSE(monitor.observe(1, 0));
  CHECK_FALSE(monitor.observe(2, 0));  // fresh cell 2 in state 0
  CHECK_FALSE(monitor.observe(1, 1));  // back past it: record dropped
  CHECK_FALSE(monitor.observe(2, 1));
  CHECK_FALSE(monitor.observe(3, 0));  // fresh again, no live record for 0
  auto c = monitor.observe(4, 0);
  REQUIRE(c);
  CHECK(c->kind == DivergenceCertificate::Kind::RepeatedSequence);
  CHECK(c->first == 3);
  CHECK(c->second == 4);
}

TEST_CASE("working cell limit raises BudgetExceeded") {
  DivergenceMonitor monitor(1, 1, 0, 1'000'000, 2);
  monitor.observe(1, 0);
  CHECK_THROWS_AS(monitor.observe(2, 0), BudgetExceeded);
}

TEST_CASE("run_wr rejects machines that are not weight-reducing") {
  const Machine m = parse_machine(
      "states q\ninput a\nwork a\ninitial q\ntrans q a q a R\n");
  CHECK_THROWS_AS(run_wr(m, Word{1}), NotWeightReducing);
}

TEST_CASE("end-marked runs confined to the input stop with ConfinedLoop") {
  const Machine m = parse_machine(
      "endmarked true\nstates p q\ninput a\nwork a < >\ninitial p\n"
      "trans p < q < R\ntrans q > p > L\n");
  const auto r = run_wr(m, Word{});
  CHECK(r.verdict == Verdict::Diverges);
  REQUIRE(r.certificate);
  CHECK(r.certificate->kind == DivergenceCertificate::Kind::ConfinedLoop);
  CHECK(run_wr(m, Word{*m.find_symbol("a")}).verdict == Verdict::Reject);
}

TEST_CASE("excursions") {
  const Machine m = corpus::load("right_excursion");
  // From the boundary, q0 on blanks writes Y, q1 writes Z and turns back.
  const auto ex = run_excursion(m, Side::Right, 0, Word{}, blank_space_bound(m));
  CHECK(ex.kind == Excursion::Kind::Returned);
  CHECK(ex.state == 2);
  CHECK(ex.content.size() == 2);

  const auto div = run_excursion(corpus::load("sweep"), Side::Right, 0, Word{}, 1000);
  CHECK(div.kind == Excursion::Kind::Diverged);

  const auto halt = run_excursion(m, Side::Left, 2, Word{}, blank_space_bound(m));
  CHECK(halt.kind == Excursion::Kind::Halted);
}

TEST_CASE("enum_language classifies words") {
  const auto s = enum_language(corpus::load("mixed"), 2);
  CHECK(s.accepted.size() == 3);
  CHECK(s.diverging.size() == 3);
  CHECK(s.budget_exceeded.empty());

  const Machine loop = parse_machine("states q\ninput a\nwork a\ninitial q\ntrans q a q a R\ntrans q _ q a R\n");
  const auto l = enum_language(loop, 1, 100);
  CHECK(l.budget_exceeded.size() == 2);
}

TEST_CASE("blank space bound") {
  const Machine m = corpus::load("mod3");
  CHECK(blank_space_bound(m) == 256);
  CHECK(blank_space_bound_capped(m, 100) == 100);
  Machine big;
  for (int i = 0; i < 70; ++i) big.add_symbol("s" + std::to_string(i));
  big.add_state("q");
  CHECK_THROWS_AS(blank_space_bound(big), OverflowError);
}

TEST_CASE("traced runs record per-cell state sequences") {
  const Machine m = corpus::load("zigzag");
  const auto t = run_traced(m, Word{1, 1}, 100);
  CHECK(t.outcome.verdict == Verdict::Accept);
  CHECK(t.cells.at(1).states.size() == 2);
  CHECK(t.cells.at(2).states.size() == 2);
  CHECK(t.cells.at(3).states.size() == 1);
}
