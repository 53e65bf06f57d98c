#include <doctest.h>

#include "common.hpp"
#include "teamltl/random.hpp"

using namespace tt;

namespace {
constexpr Letter A = 1, B = 2, C = 4, D = 3, E = 5;
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize(L({A}, {A})) == L({}, {A}));
  CHECK(canonicalize(L({}, {A, B, A, B})) == L({}, {A, B}));

  // B A (C A)^w = B (A C)^w: unroll both to 8 letters.
  auto c = canonicalize(L({B, A}, {C, A}));
  CHECK(unroll(c, 8) == unroll(L({B, A}, {C, A}), 8));
  CHECK(c == L({B}, {A, C}));
  CHECK(c.is_canonical());
}

TEST_CASE("canonicalize preserves the word") {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    std::vector<Letter> u(rng.below(4)), v(1 + rng.below(4));
    for (auto& a : u) a = static_cast<Letter>(rng.below(2));
    for (auto& a : v) a = static_cast<Letter>(rng.below(2));
    Lasso l(u, v), c = canonicalize(l);
    CHECK(c.is_canonical());
    CHECK(unroll(c, 24) == unroll(l, 24));
    CHECK(c.span() <= l.span());
  }
}

TEST_CASE("letter_at and suffix") {
  auto l = L({0}, {1});
  CHECK(letter_at(l, 0) == 0);
  CHECK(letter_at(l, 7) == 1);
  CHECK(letter_at(L({}, {A, B}), 3) == B);

  CHECK(suffix(l, 1) == L({}, {1}));
  CHECK(suffix(l, 0) == l);
  auto s = suffix(L({}, {A, B}), 3);
  CHECK(unroll(s, 6) == std::vector<Letter>{B, A, B, A, B, A});
  CHECK(s == L({}, {B, A}));
}

TEST_CASE("canonical_position") {
  CHECK(canonical_position(L({A}, {B}), 5) == 1);
  CHECK(canonical_position(L({}, {A, B, C}), 2) == 2);
  CHECK(canonical_position(L({A, B}, {C, D, E}), 9) == 3);
}

TEST_CASE("destutter") {
  CHECK(destutter(L({0, 0}, {1})) == L({0}, {1}));
  CHECK(destutter(L({}, {A})) == L({}, {A}));
  CHECK(destutter(L({}, {A, B})) == L({}, {A, B}));
  CHECK(destutter(L({A, A, B}, {B, C, C})) == L({A}, {B, C}));
}

TEST_CASE("team_suffix") {
  auto t = example1();
  CHECK(team_suffix(t, Configuration{1, 2}) == Team({L({}, {1})}));
  CHECK(team_suffix(t, Configuration{0, 0}) == t);
  CHECK(team_suffix(Team({L({}, {A})}), Configuration{7}) == Team({L({}, {A})}));
}

TEST_CASE("team basics") {
  auto t = Team({L({0, 0}, {1}), L({0}, {1}), L({0}, {1, 1})});
  CHECK(t.size() == 2);
  CHECK(t[0] == L({0}, {1}));
  CHECK(t.max_prefix() == 2);
  CHECK(Team({L({}, {A, B}), L({}, {A, B, C})}).loop_lcm(100) == 6);
  CHECK_THROWS_AS(Team({L({}, {A, B}), L({}, {A, B, C})}).loop_lcm(5), LimitExceeded);
}

TEST_CASE("destutter matches run collapse of the unrolled word") {
  Rng rng(19);
  for (int i = 0; i < 500; ++i) {
    std::vector<Letter> u(rng.below(4)), v(1 + rng.below(4));
    for (auto& a : u) a = static_cast<Letter>(rng.below(2));
    for (auto& a : v) a = static_cast<Letter>(rng.below(2));
    Lasso l(u, v);
    std::vector<Letter> runs;
    for (Letter a : unroll(l, 4 * l.span())) {
      if (runs.empty() || runs.back() != a) runs.push_back(a);
    }
    auto d = destutter(l);
    CAPTURE(to_string(l, ApList({"p"})));
    CHECK(unroll(d, runs.size()) == runs);
    CHECK(d.is_canonical());
  }
}
