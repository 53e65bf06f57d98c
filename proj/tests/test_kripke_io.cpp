#include <doctest.h>

#include "common.hpp"
#include "teamltl/io.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/random.hpp"

using namespace tt;

TEST_CASE("parse_kripke") {
  auto k = parse_kripke(R"({"ap": ["p"], "states": [{"id": "w0", "label": ["p"]}], "edges": [["w0", "w0"]], "init": "w0"})");
  CHECK(k.size() == 1);
  CHECK(k.has_edge(0, 0));
  CHECK_THROWS_AS(parse_kripke(R"({"ap": ["p"], "states": [{"id": "w0"}], "edges": [], "init": "w0"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_kripke(R"({"ap": [], "states": [{"id": "w0"}], "edges": [["w0", "w9"]], "init": "w0"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_kripke(R"({"ap": [], "states": [{"id": "w0", "label": ["q"]}], "edges": [["w0", "w0"]], "init": "w0"})"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_kripke("{"), std::invalid_argument);
}

TEST_CASE("lasso traces") {
  auto self = parse_kripke(R"({"ap": ["p"], "states": [{"id": "w0", "label": ["p"]}], "edges": [["w0", "w0"]], "init": "w0"})");
  CHECK(enumerate_lasso_traces(self, 1, 1).team == Team({L({}, {1})}));

  auto cyc = parse_kripke(R"({"ap": ["p"], "states": [{"id": "w0", "label": ["p"]}, {"id": "w1"}],
                              "edges": [["w0", "w1"], ["w1", "w0"]], "init": "w0"})");
  auto r = enumerate_lasso_traces(cyc, 1, 2);
  CHECK(r.team == Team({L({}, {1, 0})}));
  for (std::size_t i = 0; i < r.team.size(); ++i) CHECK(replays(cyc, r.witnesses[i], r.team[i]));
  CHECK_FALSE(replays(cyc, LassoPath{{}, {0}}, r.team[0]));
  CHECK_THROWS_AS(enumerate_lasso_traces(cyc, 0, 2), std::invalid_argument);

  // A branching structure: every enumerated trace replays its witness path.
  auto br = parse_kripke(R"({"ap": ["p", "q"], "states": [{"id": "a"}, {"id": "b", "label": ["p"]}, {"id": "c", "label": ["q"]}],
                             "edges": [["a", "b"], ["a", "c"], ["b", "a"], ["c", "c"], ["b", "b"]], "init": "a"})");
  auto t = enumerate_lasso_traces(br, 2, 2);
  CHECK(t.team.size() >= 3);
  for (std::size_t i = 0; i < t.team.size(); ++i) CHECK(replays(br, t.witnesses[i], t.team[i]));
  Limits tight;
  tight.max_kripke_paths = 2;
  CHECK_THROWS_AS(enumerate_lasso_traces(br, 2, 2, tight), LimitExceeded);
}

TEST_CASE("team files round trip") {
  Rng rng(4);
  ApList aps({"p", "q"});
  for (int i = 0; i < 100; ++i) {
    auto t = random_team(rng, LassoShape{}, 0, 3);
    auto back = parse_team(team_to_json(t, aps));
    CHECK(back.team == t);
    CHECK(back.aps == aps);
  }
  auto f = parse_team(R"({"ap": ["p"], "traces": [{"loop": [["p"]]}, {"prefix": [[]], "loop": [["p"], ["p"]]}]})");
  CHECK(f.team == Team({L({}, {1}), L({0}, {1})}));
  CHECK_THROWS_AS(parse_team(R"({"ap": ["p"], "traces": [{"loop": []}]})"), std::invalid_argument);
  CHECK_THROWS_AS(parse_team(R"({"ap": ["p"], "traces": [{"loop": [["r"]]}]})"), std::invalid_argument);
}

TEST_CASE("structure files round trip") {
  Rng rng(8);
  FoShape shape;
  for (int i = 0; i < 100; ++i) {
    auto m = random_structure(rng, shape, 1, 4);
    auto s = random_assignments(rng, m, {"x", "y"}, 3);
    auto back = parse_structure(structure_to_json(m, s));
    CHECK(back.team == s);
    CHECK(back.structure.names() == m.names());
    for (const auto& r : m.relation_names()) CHECK(back.structure.tuples(r) == m.tuples(r));
  }
  CHECK_THROWS_AS(parse_structure(R"({"domain": ["a"], "relations": {"P": [["b"]]}, "team": []})"),
                  std::invalid_argument);
}
