#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "common.hpp"
#include "teamltl/random.hpp"
#include "teamltl/stutter.hpp"
#include "teamltl/teamcheck.hpp"

using namespace tt;

namespace {

// Collapsed product word of the team under one ordering, unrolled far enough
// that every member has reached its loop twice.
std::vector<std::vector<Letter>> product_collapse(const std::vector<Lasso>& order, std::size_t n) {
  std::vector<std::vector<Letter>> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Letter> col;
    for (const auto& l : order) col.push_back(l.at(i));
    if (out.empty() || out.back() != col) out.push_back(col);
  }
  return out;
}

bool constant_tail(const std::vector<Lasso>& order, std::size_t p, std::size_t l) {
  for (const auto& x : order) {
    for (std::size_t i = p; i < p + l; ++i) {
      if (x.at(i) != x.at(p)) return false;
    }
  }
  return true;
}

// Collapsed infinite product words are equal iff they agree on enough letters;
// an eventually constant collapse is finite and must match exactly.
bool product_oracle(const Team& a, const Team& b) {
  if (a.size() != b.size()) return false;
  std::size_t p = std::max(a.max_prefix(), b.max_prefix()), l = std::lcm(a.loop_lcm(64), b.loop_lcm(64));
  std::size_t n = p + l * (p + 2 * l + 2);
  auto ca = product_collapse(a.members(), n);
  bool ka = constant_tail(a.members(), p, l);
  auto perm = b.members();
  do {
    auto cb = product_collapse(perm, n);
    if (ka != constant_tail(perm, p, l)) continue;
    if (ka ? ca == cb : std::equal(ca.begin(), ca.begin() + std::min(ca.size(), cb.size()), cb.begin())) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("destutter_team") {
  CHECK(destutter_team(example1()) == example1_prime());
  auto free = Team({L({}, {1, 2}), L({1}, {2})});
  CHECK(destutter_team(free) == free);
  CHECK(destutter_team(Team()).empty());
}

TEST_CASE("async stutter equivalence") {
  CHECK(stutter_eq_async(example1(), example1_prime()));
  CHECK(stutter_eq_async(example1(), example1()));
  CHECK_FALSE(stutter_eq_async(Team({L({}, {1})}), Team({L({}, {2})})));
}

TEST_CASE("sync stutter equivalence") {
  CHECK_FALSE(stutter_eq_sync(example1(), example1_prime()));
  CHECK(stutter_eq_sync(example1(), example1()));
  auto later = Team({L({0, 0}, {1}), L({0, 0, 0}, {1})});
  CHECK(product_oracle(example1(), later));
  CHECK(stutter_eq_sync(example1(), later));
  auto apart = Team({L({0}, {1}), L({}, {1})});
  CHECK_FALSE(product_oracle(example1(), apart));
  CHECK_FALSE(stutter_eq_sync(example1(), apart));
}

TEST_CASE("sync equivalence matches the product oracle on stretched pairs") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng rng(Rng::derive(5, i));
    auto t = random_team(rng, LassoShape{}, 1, 3);
    // Same stretch on every member keeps the teams synchronously equivalent.
    std::vector<std::size_t> extra(3);
    for (auto& e : extra) e = rng.below(2);
    std::vector<Lasso> s;
    for (const auto& l : t.members()) s.push_back(canonicalize(stretch(l, extra, {})));
    Team u(s);
    CAPTURE(to_string(t, ApList({"p", "q"})));
    CHECK(stutter_eq_sync(t, u) == product_oracle(t, u));
    auto v = random_team(rng, LassoShape{}, t.size(), t.size());
    CHECK(stutter_eq_sync(t, v) == product_oracle(t, v));
  }
}

TEST_CASE("stutter variants") {
  auto t = example1();
  std::vector<Lasso> same;
  for (const auto& l : t.members()) same.push_back(canonicalize(stretch(l, {}, {})));
  CHECK(Team(same) == t);
  std::vector<Lasso> doubled;
  for (const auto& l : t.members()) doubled.push_back(canonicalize(stretch(l, {1}, {})));
  CHECK(stutter_eq_async(t, Team(doubled)));
  for (const auto& v : stutter_variants(t, 9, 20)) CHECK(stutter_eq_async(t, v));
}

TEST_CASE("maximal stuttering") {
  auto l = L({0, 0}, {1});
  auto pos = maximal_stuttering_positions(l, 5);
  REQUIRE(pos.size() >= 2);
  CHECK(pos[0] == 0);
  CHECK(pos[1] == 2);
  CHECK(is_stuttering_prefix(l, pos));
  CHECK(is_stuttering_prefix(l, {0, 1, 2}));
  CHECK_FALSE(is_stuttering_prefix(l, {0, 3}));
  CHECK_FALSE(is_stuttering_prefix(l, {1, 2}));
}

TEST_CASE("lemma 1") {
  auto r = check_lemma1(example1(), example1_prime());
  CHECK(r.ok());
  auto covers = enumerate_covers(example1());
  REQUIRE(r.matches.size() == covers.size());
  auto one = Team({L({0}, {1})}), two = Team({L({0, 0}, {1})});
  for (std::size_t i = 0; i < covers.size(); ++i) {
    if (covers[i] == std::pair{one, two}) CHECK(r.matches[i] == std::pair{example1_prime(), example1_prime()});
    if (covers[i] == std::pair{example1(), Team()}) CHECK(r.matches[i] == std::pair{example1_prime(), Team()});
  }
  CHECK_THROWS_AS(check_lemma1(example1(), Team({L({}, {1})})), std::invalid_argument);
}

TEST_CASE("lemma 2") {
  auto zero = check_lemma2(example1(), {0, 0});
  CHECK(zero.i == Configuration{0, 0});
  CHECK(zero.ok());
  auto r = check_lemma2(Team({L({0, 0}, {1})}), {1});
  CHECK(r.i == Configuration{0});
  CHECK(r.ok());
  CHECK(check_lemma2(Team({L({}, {1})}), {5}).i == Configuration{0});
}

TEST_CASE("async equivalence matches collapsed unrollings") {
  // Direct check: both teams have the same set of collapsed words, where the
  // collapse of a 6*span unrolling is compared up to the shorter length.
  auto words = [](const Team& t) {
    std::vector<std::vector<Letter>> out;
    for (const auto& l : t.members()) {
      std::vector<Letter> runs;
      for (Letter a : unroll(l, 6 * l.span())) {
        if (runs.empty() || runs.back() != a) runs.push_back(a);
      }
      out.push_back(runs);
    }
    return out;
  };
  auto same = [](const std::vector<Letter>& a, const std::vector<Letter>& b) {
    std::size_t n = std::min(a.size(), b.size());
    return std::equal(a.begin(), a.begin() + n, b.begin()) && (a.size() == b.size() || n >= 8);
  };
  auto covered = [&](const Team& a, const Team& b) {
    for (const auto& x : words(a)) {
      bool hit = false;
      for (const auto& y : words(b)) hit = hit || same(x, y);
      if (!hit) return false;
    }
    return true;
  };
  for (std::uint64_t i = 0; i < 300; ++i) {
    Rng rng(Rng::derive(13, i));
    LassoShape shape;
    shape.props = 1;
    auto a = random_team(rng, shape, 1, 2);
    auto b = rng.below(2) ? stutter_variants(a, rng.next(), 1).front() : random_team(rng, shape, 1, 2);
    CAPTURE(to_string(a, ApList({"p"})));
    CAPTURE(to_string(b, ApList({"p"})));
    CHECK(stutter_eq_async(a, b) == (covered(a, b) && covered(b, a)));
  }
}
