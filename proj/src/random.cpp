#include "teamltl/random.hpp"

#include <vector>

namespace teamltl {

std::uint64_t Rng::derive(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

Letter random_letter(Rng& rng, std::size_t props) {
  return props == 0 ? 0 : static_cast<Letter>(rng.below(std::size_t{1} << props));
}

class FormulaGen {
 public:
  FormulaGen(Rng& rng, const FormulaShape& shape) : rng_(rng), shape_(shape) {}

  Ltl gen(std::size_t depth, std::size_t budget, bool in_disjunct) {
    if (budget <= 1 || rng_.chance(1, 4)) return literal();
    enum Op { And, Or, Neg, Next, Fut, Glob, Until, Rel };
    std::vector<Op> ops{And, Or};
    if (shape_.allow_tilde && !(shape_.tilde_free_disjuncts && in_disjunct)) ops.push_back(Neg);
    if (depth > 0) {
      if (shape_.allow_next) ops.push_back(Next);
      ops.push_back(Until);
      ops.push_back(Until);
      if (shape_.derived_ops) {
        ops.push_back(Fut);
        ops.push_back(Glob);
        ops.push_back(Rel);
      }
    }
    const std::size_t rest = budget - 1;
    const Op op = ops[rng_.below(ops.size())];
    switch (op) {
      case And: {
        std::size_t l = 1 + rng_.below(rest > 1 ? rest - 1 : 1);
        return ltl::conj(gen(depth, l, in_disjunct), gen(depth, rest > l ? rest - l : 1, in_disjunct));
      }
      case Or: {
        std::size_t l = 1 + rng_.below(rest > 1 ? rest - 1 : 1);
        return ltl::disj(gen(depth, l, true), gen(depth, rest > l ? rest - l : 1, true));
      }
      case Neg: return ltl::bneg(gen(depth, rest, in_disjunct));
      case Next: return ltl::next(gen(depth - 1, rest, in_disjunct));
      case Fut: return ltl::future(gen(depth - 1, rest, in_disjunct));
      case Glob: return ltl::globally(gen(depth - 1, rest, in_disjunct));
      case Until:
      case Rel: {
        std::size_t l = 1 + rng_.below(rest > 1 ? rest - 1 : 1);
        Ltl a = gen(depth - 1, l, in_disjunct);
        Ltl b = gen(depth - 1, rest > l ? rest - l : 1, in_disjunct);
        return op == Rel ? ltl::release(a, b) : ltl::until(a, b);
      }
    }
    return literal();
  }

 private:
  Ltl literal() {
    PropId p = static_cast<PropId>(rng_.below(shape_.props));
    return rng_.chance(1, 2) ? ltl::prop(p) : ltl::neg_prop(p);
  }

  Rng& rng_;
  const FormulaShape& shape_;
};

}  // namespace

Lasso random_lasso(Rng& rng, const LassoShape& shape) {
  std::vector<Letter> prefix(rng.below(shape.max_prefix + 1));
  std::vector<Letter> loop(1 + rng.below(shape.max_loop));
  for (Letter& a : prefix) a = random_letter(rng, shape.props);
  for (Letter& a : loop) a = random_letter(rng, shape.props);
  return canonicalize(Lasso(std::move(prefix), std::move(loop)));
}

Team random_team(Rng& rng, const LassoShape& shape, std::size_t min_size, std::size_t max_size) {
  std::vector<Lasso> members;
  std::size_t n = rng.between(min_size, max_size);
  for (std::size_t i = 0; i < n; ++i) members.push_back(random_lasso(rng, shape));
  return Team(std::move(members));
}

Ltl random_ltl(Rng& rng, const FormulaShape& shape) {
  FormulaGen g(rng, shape);
  return g.gen(shape.max_depth, shape.max_size, false);
}

namespace {

class FoGen {
 public:
  FoGen(Rng& rng, const FoShape& shape) : rng_(rng), shape_(shape) {}

  Fo gen(std::size_t budget) {
    if (budget <= 1 || rng_.chance(1, 4)) return atom();
    enum Op { And, Or, Ex, All, Neg };
    std::vector<Op> ops{And, Or, Ex, All};
    if (shape_.allow_tilde) ops.push_back(Neg);
    const std::size_t rest = budget - 1;
    switch (ops[rng_.below(ops.size())]) {
      case And:
      case Or: {
        const bool conj = rng_.chance(1, 2);
        std::size_t l = 1 + rng_.below(rest > 1 ? rest - 1 : 1);
        Fo a = gen(l), b = gen(rest > l ? rest - l : 1);
        return conj ? fo::conj(a, b) : fo::disj(a, b);
      }
      case Ex: return fo::exists(var(), gen(rest));
      case All: return fo::forall(var(), gen(rest));
      case Neg: return fo::bneg(gen(rest));
    }
    return atom();
  }

 private:
  const std::string& var() { return shape_.vars[rng_.below(shape_.vars.size())]; }

  Fo atom() {
    const std::size_t kinds = 3 + shape_.relations.size() + (shape_.allow_dep ? 1 : 0);
    const std::size_t k = rng_.below(kinds);
    const bool negated = rng_.chance(1, 3);
    if (k == 0) return negated ? fo::neg_eq(var(), var()) : fo::eq(var(), var());
    if (k <= 2) return negated ? fo::neg_leq(var(), var()) : fo::leq(var(), var());
    if (k - 3 < shape_.relations.size()) {
      const auto& [name, arity] = shape_.relations[k - 3];
      std::vector<std::string> args;
      for (std::size_t i = 0; i < arity; ++i) args.push_back(var());
      return negated ? fo::neg_rel(name, args) : fo::rel(name, args);
    }
    std::vector<std::string> determiners;
    for (std::size_t i = rng_.below(3); i > 0; --i) determiners.push_back(var());
    return fo::dep(determiners, var());
  }

  Rng& rng_;
  const FoShape& shape_;
};

}  // namespace

Fo random_fo(Rng& rng, const FoShape& shape) {
  FoGen g(rng, shape);
  return g.gen(shape.max_size);
}

FoStructure random_structure(Rng& rng, const FoShape& shape, std::size_t min_size, std::size_t max_size) {
  const std::size_t n = rng.between(min_size, max_size);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
  FoStructure m(std::move(names));
  auto fill = [&](const std::string& rel, std::size_t arity) {
    m.declare(rel, arity);
    std::vector<Element> t(arity, 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < arity; ++i) total *= n;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < arity; ++i, c /= n) t[i] = static_cast<Element>(c % n);
      if (rng.chance(1, 2)) m.add(rel, t);
    }
  };
  fill("leq", 2);
  for (const auto& [name, arity] : shape.relations) fill(name, arity);
  return m;
}

AssignmentTeam random_assignments(Rng& rng, const FoStructure& m, const std::vector<std::string>& vars,
                                  std::size_t max_rows) {
  std::vector<Assignment> rows(m.size() == 0 ? 0 : rng.below(max_rows + 1));
  for (Assignment& a : rows) {
    for (std::size_t i = 0; i < vars.size(); ++i) a.push_back(static_cast<Element>(rng.below(m.size())));
  }
  return AssignmentTeam(vars, std::move(rows));
}

}  // namespace teamltl
