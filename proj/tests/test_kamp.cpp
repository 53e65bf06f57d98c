#include <doctest.h>

#include "common.hpp"
#include "teamltl/kamp.hpp"
#include "teamltl/teamcheck.hpp"

using namespace tt;

namespace {

std::vector<std::vector<Element>> pairs(std::initializer_list<std::pair<Element, Element>> ps) {
  std::vector<std::vector<Element>> out;
  for (auto [a, b] : ps) out.push_back({a, b});
  return out;
}

bool fo_async(const Team& t, const std::string& f, std::size_t bound = 0) {
  auto aps = p_only();
  auto phi = parse_ltl(f, aps);
  auto enc = build_structure(t, bound ? bound : default_bound(t, phi, aps), aps, false);
  return eval_fo(enc.structure, enc.initial_team(), translate_async(desugar(phi, aps), aps));
}

bool fo_sync(const Team& t, const std::string& f) {
  auto aps = p_only();
  auto phi = parse_ltl(f, aps);
  auto enc = build_structure(t, default_bound(t, phi, aps), aps, true);
  return eval_fo(enc.structure, enc.initial_team(), translate_sync(desugar(phi, aps), aps));
}

}  // namespace

TEST_CASE("build_structure") {
  auto aps = p_only();
  auto enc = build_structure(Team({L({}, {1})}), 2, aps, true);
  CHECK(enc.structure.size() == 2);
  CHECK(enc.structure.tuples("leq") == pairs({{0, 0}, {0, 1}, {1, 1}}));
  CHECK(enc.structure.tuples("Pp") == std::vector<std::vector<Element>>{{0}, {1}});
  CHECK(enc.structure.tuples("E") == pairs({{0, 0}, {1, 1}}));

  auto one = build_structure(example1(), 1, aps, true);
  CHECK(one.structure.tuples("leq") == pairs({{0, 0}, {1, 1}}));
  CHECK(one.structure.tuples("E") == pairs({{0, 0}, {0, 1}, {1, 0}, {1, 1}}));

  auto ex = build_structure(example1(), 3, aps, false);
  CHECK_FALSE(ex.structure.has_relation("E"));
  CHECK(ex.structure.tuples("Pp") ==
        std::vector<std::vector<Element>>{{ex.element(0, 1)}, {ex.element(0, 2)}, {ex.element(1, 2)}});
  CHECK(ex.structure.name(ex.element(1, 2)) == "t1@2");
  CHECK(ex.initial_team() == AssignmentTeam({"x"}, {{0}, {3}}));

  CHECK_THROWS_AS(build_structure(Team(), 3, aps, false), std::invalid_argument);
  CHECK_THROWS_AS(build_structure(example1(), 0, aps, false), std::invalid_argument);
}

TEST_CASE("default_bound") {
  auto aps = p_only();
  CHECK(default_bound(Team({L({}, {1})}), parse_ltl("p", aps), aps) == 2);
  CHECK(default_bound(example1(), parse_ltl("F p", aps), aps) == 9);
}

TEST_CASE("translations") {
  auto aps = p_only();
  Signature sig(aps);
  auto p = parse_ltl("p", aps);
  CHECK(structurally_equal(translate_async(p, aps), parse_fo("Pp(x)", sig)));
  CHECK(structurally_equal(translate_sync(p, aps), parse_fo("Pp(x)", sig)));
  CHECK(structurally_equal(translate_async(parse_ltl("~p", aps), aps), parse_fo("~Pp(x)", sig)));

  auto xp = parse_ltl("X p", aps);
  auto expected = parse_fo(
      "E y(((x <= y & !y <= x) & A z((z <= x | y <= z) | (!x <= z & !z <= x))) & Pp(y))", sig);
  CHECK(structurally_equal(translate_async(xp, aps), expected));
  CHECK(structurally_equal(translate_sync(xp, aps), expected));

  CHECK(structurally_equal(close_sentence(parse_fo("Pp(x)", sig)),
                           parse_fo("A x(E y(y <= x & !x <= y) | (A y(!y <= x | x <= y) & Pp(x)))", sig)));
  CHECK_THROWS_AS(close_sentence(parse_fo("Pp(y)", sig)), std::invalid_argument);
}

TEST_CASE("repaired sync until") {
  ApList aps({"p", "q"});
  Signature sig(aps);
  auto f = translate_sync(parse_ltl("p U q", aps), aps);
  CHECK(free_variables(f) == std::vector<std::string>{"x"});
  CHECK(structurally_equal(
      f, parse_fo("E z(E y((((dep(; z) & x <= y) & E(z, y)) & Pq(y)) & "
                  "~E z(((E x(dep(; x) & E(z, x)) & x <= z) & (z <= y & !y <= z)) & ~Pp(z))))",
                  sig)));
  auto printed = translate_sync(parse_ltl("p U q", aps), aps, "x", SyncUntil::Printed);
  CHECK(free_variables(printed) == std::vector<std::string>{"x", "y"});
}

TEST_CASE("three variables") {
  ApList aps({"p", "q"});
  for (const auto& s : {"X X X p", "(p U (q U X p)) & ~(q U p)", "G F p"}) {
    auto f = desugar(parse_ltl(s, aps), aps);
    CHECK(uses_three_variables(translate_async(f, aps)));
    CHECK(uses_three_variables(translate_sync(f, aps)));
    CHECK(uses_three_variables(close_sentence(translate_async(f, aps))));
  }
}

TEST_CASE("small differential") {
  auto aps = p_only();
  for (const auto& f : {"F p", "X p", "p U X p", "~F p", "G p", "X ~p | p"}) {
    for (const auto& t : {example1(), example1_prime(), Team({L({}, {0, 1})})}) {
      CAPTURE(f);
      CAPTURE(to_string(t, aps));
      CHECK(fo_async(t, f) == eval_async(t, parse_ltl(f, aps)).holds);
      CHECK(fo_sync(t, f) == eval_sync(t, parse_ltl(f, aps)).holds);
    }
  }
  CHECK(fo_async(example1(), "F p"));
}
