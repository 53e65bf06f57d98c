#include <doctest.h>

#include <numeric>

#include "common.hpp"
#include "teamltl/random.hpp"
#include "teamltl/teamcheck.hpp"

using namespace tt;

namespace {

// Independent oracle: the semantic clauses read literally over (lasso, offset) pairs. Suffix
// equality is decided by comparing letters, never by canonical forms.
struct Pt {
  const Lasso* l;
  std::size_t off;
  Letter at(std::size_t i) const { return l->at(off + i); }
  std::size_t tail() const { return l->prefix_length() > off ? l->prefix_length() - off : 0; }
};

bool same_word(const Pt& a, const Pt& b) {
  std::size_t n = std::max(a.tail(), b.tail()) + std::lcm(a.l->loop_length(), b.l->loop_length());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.at(i) != b.at(i)) return false;
  }
  return true;
}

std::vector<Pt> dedup(std::vector<Pt> t) {
  std::vector<Pt> out;
  for (const auto& x : t) {
    bool seen = false;
    for (const auto& y : out) seen = seen || same_word(x, y);
    if (!seen) out.push_back(x);
  }
  return out;
}

bool oracle(Semantics sem, std::vector<Pt> t, const LtlNode* f) {
  t = dedup(std::move(t));
  switch (f->kind) {
    case LtlKind::Prop:
    case LtlKind::NegProp:
      for (const auto& x : t) {
        if (has_prop(x.at(0), f->prop) != (f->kind == LtlKind::Prop)) return false;
      }
      return true;
    case LtlKind::And: return oracle(sem, t, f->lhs.get()) && oracle(sem, t, f->rhs.get());
    case LtlKind::BoolNeg: return !oracle(sem, t, f->lhs.get());
    case LtlKind::Or: {
      std::size_t n = 1;
      for (std::size_t i = 0; i < t.size(); ++i) n *= 3;
      for (std::size_t code = 0; code < n; ++code) {
        std::vector<Pt> a, b;
        std::size_t c = code;
        for (const auto& x : t) {
          if (c % 3 != 1) a.push_back(x);
          if (c % 3 != 0) b.push_back(x);
          c /= 3;
        }
        if (oracle(sem, a, f->lhs.get()) && oracle(sem, b, f->rhs.get())) return true;
      }
      return false;
    }
    case LtlKind::Next: {
      for (auto& x : t) ++x.off;
      return oracle(sem, t, f->lhs.get());
    }
    case LtlKind::Until: {
      auto shifted = [&](const std::vector<std::size_t>& g) {
        auto u = t;
        for (std::size_t i = 0; i < u.size(); ++i) u[i].off += g[i];
        return u;
      };
      if (sem == Semantics::Sync) {
        std::size_t h = 0, lcm = 1;
        for (const auto& x : t) {
          h = std::max(h, x.tail());
          lcm = std::lcm(lcm, x.l->loop_length());
        }
        for (std::size_t k = 0; k < h + lcm; ++k) {
          if (!oracle(sem, shifted(std::vector<std::size_t>(t.size(), k)), f->rhs.get())) continue;
          bool all = true;
          for (std::size_t j = 0; j < k && all; ++j) {
            all = oracle(sem, shifted(std::vector<std::size_t>(t.size(), j)), f->lhs.get());
          }
          if (all) return true;
        }
        return false;
      }
      std::vector<std::size_t> top;
      for (const auto& x : t) top.push_back(x.tail() + x.l->loop_length());
      ConfigurationOdometer g(top);
      for (; g.valid(); g.advance()) {
        if (!oracle(sem, shifted(g.current()), f->rhs.get())) continue;
        bool all = true;
        for (ConfigurationOdometer h(g.current()); h.valid() && all; h.advance()) {
          all = oracle(sem, shifted(h.current()), f->lhs.get());
        }
        if (all) return true;
      }
      return false;
    }
    default: throw std::logic_error("oracle expects core formulas");
  }
}

bool oracle(Semantics sem, const Team& team, const Ltl& f, const ApList& aps) {
  std::vector<Pt> t;
  for (const auto& l : team.members()) t.push_back({&l, 0});
  auto core = desugar(f, aps);
  return oracle(sem, t, core.get());
}

}  // namespace

TEST_CASE("classical") {
  auto aps = p_only();
  CHECK(eval_classical(L({}, {1}), parse_ltl("G p", aps)).holds);
  CHECK_FALSE(eval_classical(L({0}, {1}), parse_ltl("p", aps)).holds);
  auto v = eval_classical(L({0}, {1}), parse_ltl("F p", aps));
  CHECK(v.holds);
  CHECK(std::get<std::size_t>(v.witness) == 1);
}

TEST_CASE("sync") {
  auto aps = p_only();
  CHECK(eval_sync(Team({L({}, {1})}), parse_ltl("p", aps)).holds);
  CHECK_FALSE(eval_sync(example1(), parse_ltl("X p", aps)).holds);
  CHECK(eval_sync(Team(), parse_ltl("p", aps)).holds);
}

TEST_CASE("async") {
  auto aps = p_only();
  auto v = eval_async(example1(), parse_ltl("F p", aps));
  CHECK(v.holds);
  CHECK(std::get<Configuration>(v.witness) == Configuration{1, 2});
  CHECK(replay_witness(Semantics::Async, example1(), parse_ltl("F p", aps), v));
  CHECK_FALSE(eval_async(Team(), parse_ltl("~p", aps)).holds);
  const Team ex = example1();
  for (const auto& f : {"F p", "G !p", "p U !p", "X X p", "~(p | !p)"}) {
    auto phi = parse_ltl(f, aps);
    for (const auto& t : ex.members()) {
      CHECK(eval_async(Team({t}), phi).holds == eval_classical(t, phi).holds);
    }
  }
}

TEST_CASE("covers and configurations") {
  CHECK(enumerate_covers(Team()).size() == 1);
  CHECK(enumerate_covers(Team({L({}, {1})})).size() == 3);
  CHECK(enumerate_covers(example1()).size() == 9);

  auto t = example1();  // spans 2 and 3
  CHECK(canonical_configurations(t).size() == 6);
  CHECK(canonical_configurations(t, Configuration{0, 0}).empty());
  CHECK(canonical_configurations(t, Configuration{1, 2}) == std::vector<Configuration>{{0, 0}, {0, 1}});
}

TEST_CASE("evaluators match the literal oracle") {
  ApList aps({"p", "q"});
  std::size_t checked = 0;
  for (std::uint64_t i = 0; i < 400; ++i) {
    Rng rng(Rng::derive(21, i));
    auto team = random_team(rng, LassoShape{}, 0, 3);
    FormulaShape shape;
    shape.max_depth = 2;
    shape.max_size = 8;
    auto f = random_ltl(rng, shape);
    for (auto sem : {Semantics::Sync, Semantics::Async}) {
      CAPTURE(print_ltl(f, aps));
      CAPTURE(to_string(team, aps));
      CAPTURE(to_string(sem));
      auto v = evaluate(sem, team, f);
      CHECK(v.holds == oracle(sem, team, f, aps));
      CHECK(replay_witness(sem, team, f, v));
      ++checked;
    }
  }
  CHECK(checked == 800);
}
