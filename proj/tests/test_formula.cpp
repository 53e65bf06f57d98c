#include <doctest.h>

#include "common.hpp"
#include "teamltl/random.hpp"

using namespace tt;

TEST_CASE("ltl parse: shapes") {
  auto [f, aps] = parse_ltl("p U q");
  REQUIRE(f->kind == LtlKind::Until);
  CHECK(f->lhs->kind == LtlKind::Prop);
  CHECK(aps.name(f->lhs->prop) == "p");
  CHECK(aps.name(f->rhs->prop) == "q");

  auto g = parse_ltl("~ F p").formula;
  REQUIRE(g->kind == LtlKind::BoolNeg);
  REQUIRE(g->lhs->kind == LtlKind::Future);
  CHECK(g->lhs->lhs->kind == LtlKind::Prop);

  CHECK_THROWS_AS(parse_ltl("p U"), SyntaxError);
  CHECK_THROWS_AS(parse_ltl("(p & q"), SyntaxError);
  CHECK_THROWS_AS(parse_ltl("p q"), SyntaxError);
  CHECK_THROWS_AS(parse_ltl("q", ApList({"p"})), SyntaxError);
}

TEST_CASE("ltl print") {
  ApList aps({"p", "q", "r"});
  CHECK(print_ltl(ltl::until(ltl::prop(0), ltl::prop(1)), aps) == "(p U q)");
  CHECK(print_ltl(ltl::bneg(ltl::prop(0)), aps) == "~p");
  CHECK(print_ltl(ltl::conj(ltl::prop(0), ltl::disj(ltl::prop(1), ltl::prop(2))), aps) == "(p & (q | r))");
}

TEST_CASE("desugar") {
  ApList aps({"p"});
  auto top = ltl::disj(ltl::prop(0), ltl::neg_prop(0));
  CHECK(structurally_equal(desugar(parse_ltl("F p", aps), aps), ltl::until(top, ltl::prop(0))));
  CHECK(structurally_equal(desugar(parse_ltl("G p", aps), aps),
                           ltl::bneg(ltl::until(top, ltl::bneg(ltl::prop(0))))));
  auto x = parse_ltl("X p", aps);
  CHECK(structurally_equal(desugar(x, aps), x));
  CHECK(is_core(desugar(parse_ltl("(p R p) & G F p", aps), aps)));
}

TEST_CASE("temporal depth") {
  CHECK(temporal_depth(parse_ltl("p").formula) == 0);
  CHECK(temporal_depth(parse_ltl("X X p").formula) == 2);
  CHECK(temporal_depth(parse_ltl("(p U q) & G p").formula) == 1);
}

TEST_CASE("fo parse") {
  Signature sig(ApList({"p"}));
  auto f = parse_fo("E x(Pp(x) & dep(x; y))", sig);
  REQUIRE(f->kind == FoKind::Exists);
  CHECK(f->vars[0] == "x");
  REQUIRE(f->lhs->kind == FoKind::And);
  CHECK(f->lhs->lhs->kind == FoKind::Rel);
  CHECK(f->lhs->lhs->rel == "Pp");
  CHECK(f->lhs->rhs->kind == FoKind::Dep);
  CHECK(f->lhs->rhs->vars == std::vector<std::string>{"x", "y"});

  auto c = parse_fo("dep(; y)", sig);
  REQUIRE(c->kind == FoKind::Dep);
  CHECK(c->vars == std::vector<std::string>{"y"});

  CHECK_THROWS_AS(parse_fo("Pp(x, y)", sig), SyntaxError);
  CHECK_THROWS_AS(parse_fo("Qq(x)", sig), SyntaxError);
  CHECK(free_variables(f) == std::vector<std::string>{"y"});
  CHECK_FALSE(is_flat(f));
  CHECK(is_flat(parse_fo("A x(Pp(x) | !x <= y)", sig)));
}

TEST_CASE("round trip over random formulas") {
  Rng rng(11);
  ApList aps({"p", "q"});
  for (int i = 0; i < 1000; ++i) {
    FormulaShape shape;
    auto f = random_ltl(rng, shape);
    auto text = print_ltl(f, aps);
    CAPTURE(text);
    CHECK(structurally_equal(parse_ltl(text, aps), f));
  }
  Signature sig(ApList{});
  sig.add_relation("P", 1);
  sig.add_relation("R", 2);
  for (int i = 0; i < 1000; ++i) {
    auto f = random_fo(rng, FoShape{});
    auto text = print_fo(f);
    CAPTURE(text);
    CHECK(structurally_equal(parse_fo(text, sig), f));
  }
}
