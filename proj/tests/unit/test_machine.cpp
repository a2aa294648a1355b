#include <doctest.h>

#include "wrtm/error.hpp"
#include "wrtm/machine.hpp"

using namespace wrtm;

namespace {

Machine tiny() {
  Machine m("tiny");
  const auto a = m.add_symbol("a", true);
  const auto y = m.add_symbol("Y");
  const auto q0 = m.add_state("q0");
  const auto q1 = m.add_state("q1");
  m.set_final(q1);
  m.add_transition(q0, a, {q0, y, Move::Right});
  m.add_transition(q0, kBlank, {q1, y, Move::Left});
  return m;
}

}  // namespace

TEST_CASE("symbol table layout") {
  Machine plain;
  CHECK(plain.symbol_count() == 1);
  CHECK(plain.symbol_name(kBlank) == "_");
  CHECK_FALSE(plain.left_marker());

  Machine em("e", true);
  CHECK(em.symbol_count() == 3);
  CHECK(*em.left_marker() == 1);
  CHECK(*em.right_marker() == 2);
  CHECK(em.is_endmarker(1));
  CHECK_FALSE(em.is_endmarker(kBlank));
}

TEST_CASE("duplicates and reserved names are rejected") {
  Machine m;
  m.add_state("q");
  CHECK_THROWS_AS(m.add_state("q"), InvalidMachine);
  m.add_symbol("a", true);
  CHECK_THROWS_AS(m.add_symbol("a"), InvalidMachine);
  CHECK_THROWS_AS(m.add_symbol("_"), InvalidMachine);
  m.add_transition(0, 1, {0, 1, Move::Right});
  CHECK_THROWS_AS(m.add_transition(0, 1, {0, 1, Move::Left}), InvalidMachine);
}

TEST_CASE("input symbols keep declaration order") {
  Machine m;
  const auto b = m.add_symbol("b", true);
  m.add_symbol("X");
  const auto a = m.add_symbol("a", true);
  REQUIRE(m.input_symbols().size() == 2);
  CHECK(m.input_symbols()[0] == b);
  CHECK(m.input_symbols()[1] == a);
}

TEST_CASE("validate reports structural violations") {
  Machine m = tiny();
  CHECK(validate(m).empty());

  Machine bad("bad");
  const auto a = bad.add_symbol("a", true);
  bad.add_state("q");
  bad.add_transition(0, a, {0, kBlank, Move::Right});
  auto v = validate(bad);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "blank written");
  CHECK_THROWS_AS(require_valid(bad), InvalidMachine);

  Machine em("em", true);
  em.add_state("q");
  const auto lm = *em.left_marker();
  const auto x = em.add_symbol("x");
  em.add_transition(0, lm, {0, x, Move::Left});
  v = validate(em);
  CHECK(v.size() == 2);

  Machine none;
  CHECK(validate(none).front().rule == "no states");
}

TEST_CASE("step follows the configuration convention") {
  const Machine m = tiny();
  const Word w{1, 1};
  auto c = initial_configuration(m, w);
  CHECK(format_configuration(m, c) == "< q0 aa>");
  c = *step(m, c);
  CHECK(format_configuration(m, c) == "<Y q0 a>");
  c = *step(m, c);
  CHECK(c.head == Head::RightBlank);
  CHECK(format_configuration(m, c) == "<YY q0 _>");
  c = *step(m, c);
  CHECK(format_configuration(m, c) == "<Y q1 YY>");
  CHECK_FALSE(step(m, c));

  auto e = initial_configuration(m, Word{});
  CHECK(e.head == Head::LeftBlank);
  CHECK(scanned(e) == kBlank);
  e = *step(m, e);
  CHECK(e.head == Head::LeftBlank);
  CHECK(format_configuration(m, e) == "< q1 _Y>");
}

TEST_CASE("word parsing and formatting") {
  Machine m;
  m.add_symbol("a", true);
  m.add_symbol("ab", true);
  m.add_symbol("Z");
  CHECK(parse_word(m, "aab") == Word{1, 2});
  CHECK(parse_word(m, "a, ab a") == Word{1, 2, 1});
  CHECK_THROWS_AS(parse_word(m, "Z"), Error);
  CHECK(format_word(m, Word{1, 2}) == "a ab");
  CHECK(is_input_word(m, Word{1, 2}));
  CHECK_FALSE(is_input_word(m, Word{3}));
}

TEST_CASE("words_up_to enumerates shortest first") {
  Machine m;
  m.add_symbol("a", true);
  m.add_symbol("b", true);
  const auto ws = words_up_to(m, 2);
  REQUIRE(ws.size() == 7);
  CHECK(ws[0].empty());
  CHECK(ws[1] == Word{1});
  CHECK(ws[3] == Word{1, 1});
  CHECK(ws[6] == Word{2, 2});
}

TEST_CASE("fresh names avoid collisions") {
  Machine m;
  m.add_symbol("x", true);
  CHECK(fresh_symbol_name(m, "y") == "y");
  CHECK(fresh_symbol_name(m, "x") != "x");
  m.add_state("s");
  CHECK(fresh_state_name(m, "s") != "s");
}
