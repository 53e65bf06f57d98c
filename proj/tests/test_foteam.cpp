#include <doctest.h>

#include "common.hpp"
#include "teamltl/foteam.hpp"
#include "teamltl/random.hpp"

using namespace tt;

namespace {

Signature small_sig() {
  Signature sig(ApList{});
  sig.add_relation("P", 1);
  sig.add_relation("R", 2);
  return sig;
}

}  // namespace

TEST_CASE("dependence atoms") {
  FoStructure m({"a", "b", "c"});
  AssignmentTeam s({"x", "y"}, {{0, 1}, {0, 2}});
  auto sig = small_sig();
  CHECK_FALSE(eval_fo(m, s, parse_fo("dep(x; y)", sig)));
  CHECK(eval_fo(m, AssignmentTeam({"x", "y"}, {}), parse_fo("dep(x; y)", sig)));
  CHECK(eval_fo(m, s, parse_fo("dep(; x)", sig)));
  CHECK_FALSE(eval_fo(m, s, parse_fo("dep(; y)", sig)));
  CHECK(eval_fo(m, s, parse_fo("E z(z = z)", sig)));
  CHECK_THROWS_AS(eval_fo(m, s, parse_fo("P(z)", sig)), std::invalid_argument);
}

TEST_CASE("duplicate") {
  FoStructure m({"a", "b", "c"});
  CHECK(duplicate(AssignmentTeam({"y"}, {{0}}), "x", m).size() == 3);
  CHECK(duplicate(AssignmentTeam({"y"}, {}), "x", m).empty());
  FoStructure one({"a"});
  AssignmentTeam s({"x"}, {{0}});
  CHECK(duplicate(s, "x", one) == s);
}

TEST_CASE("supplementations") {
  auto count = [](const AssignmentTeam& s, const FoStructure& m) {
    std::size_t n = 0;
    supplementations(s, "x", m, [&](const AssignmentTeam&) { return ++n, true; });
    return n;
  };
  CHECK(count(AssignmentTeam({"y"}, {{0}}), FoStructure({"a", "b"})) == 3);
  CHECK(count(AssignmentTeam({"y"}, {{0}, {1}}), FoStructure({"a", "b"})) == 9);
  FoStructure one({"a"});
  one.add("Q", {0});
  CHECK(count(AssignmentTeam({"z"}, {{0}}), one) == 1);
  std::size_t n = 0;
  bool all_empty = true;
  supplementations(AssignmentTeam({"y"}, {}), "x", one, [&](const AssignmentTeam& t) {
    all_empty = all_empty && t.empty();
    return ++n, true;
  });
  CHECK(n == 1);
  CHECK(all_empty);
}

TEST_CASE("flat fast path") {
  FoStructure m({"a", "b"});
  m.add("P", {0});
  m.add("P", {1});
  auto sig = small_sig();
  CHECK(flat_fast_path(m, AssignmentTeam({"x"}, {}), parse_fo("P(x) & !P(x)", sig)));
  CHECK(flat_fast_path(m, AssignmentTeam({"x"}, {{0}, {1}}), parse_fo("P(x)", sig)));
  CHECK_THROWS_AS(flat_fast_path(m, AssignmentTeam({"x"}, {{0}}), parse_fo("~P(x)", sig)), std::invalid_argument);

  Rng rng(17);
  FoShape shape;
  shape.allow_dep = shape.allow_tilde = false;
  for (int i = 0; i < 300; ++i) {
    auto f = random_fo(rng, shape);
    auto mm = random_structure(rng, shape, 1, 3);
    auto s = random_assignments(rng, mm, shape.vars, 3);
    CAPTURE(print_fo(f));
    bool ref;
    try {
      ref = eval_fo_reference(mm, s, f);
    } catch (const LimitExceeded&) {
      continue;
    }
    CHECK(flat_fast_path(mm, s, f) == ref);
  }
}

TEST_CASE("pruned evaluator matches the reference evaluator") {
  Rng rng(29);
  FoShape shape;
  std::size_t compared = 0, skipped = 0;
  for (int i = 0; i < 600; ++i) {
    auto f = random_fo(rng, shape);
    auto m = random_structure(rng, shape, 1, 3);
    auto s = random_assignments(rng, m, shape.vars, 3);
    CAPTURE(print_fo(f));
    CAPTURE(to_string(s, m));
    bool ref;
    try {
      ref = eval_fo_reference(m, s, f);
    } catch (const LimitExceeded&) {
      ++skipped;
      continue;
    }
    CHECK(eval_fo(m, s, f) == ref);
    ++compared;
  }
  CHECK(compared >= 500);
  MESSAGE("compared " << compared << ", skipped " << skipped);
}

TEST_CASE("assignment teams") {
  AssignmentTeam s({"y", "x"}, {{1, 0}, {1, 0}, {0, 2}});
  CHECK(s.vars() == std::vector<std::string>{"x", "y"});
  CHECK(s.size() == 2);
  CHECK(s.project({"y"}) == AssignmentTeam({"y"}, {{0}, {1}}));
  CHECK(s.subteam({true, false}).size() == 1);
}
