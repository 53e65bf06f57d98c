#include "teamltl/teamcheck.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace teamltl {

const char* to_string(Semantics s) { return s == Semantics::Sync ? "sync" : "async"; }

std::vector<std::pair<Team, Team>> enumerate_covers(const Team& team, const Limits& limits) {
  const std::size_t n = team.size();
  if (n > limits.max_cover_team) {
    throw LimitExceeded("cover enumeration over a team of " + std::to_string(n) + " traces exceeds the limit " +
                        std::to_string(limits.max_cover_team));
  }
  std::vector<std::pair<Team, Team>> out;
  // Each member goes left only (0), right only (1) or both (2).
  ConfigurationOdometer odo(std::vector<std::size_t>(n, 3));
  for (; odo.valid(); odo.advance()) {
    std::vector<Lasso> left, right;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t c = odo.current()[i];
      if (c != 1) left.push_back(team[i]);
      if (c != 0) right.push_back(team[i]);
    }
    out.emplace_back(Team(std::move(left)), Team(std::move(right)));
  }
  return out;
}

ConfigurationOdometer::ConfigurationOdometer(std::vector<std::size_t> bounds)
    : bounds_(std::move(bounds)), current_(bounds_.size(), 0) {
  valid_ = std::none_of(bounds_.begin(), bounds_.end(), [](std::size_t b) { return b == 0; });
}

void ConfigurationOdometer::advance() {
  for (std::size_t i = 0; i < bounds_.size(); ++i) {
    if (++current_[i] < bounds_[i]) return;
    current_[i] = 0;
  }
  valid_ = false;
}

std::vector<Configuration> canonical_configurations(const Team& team, const std::optional<Configuration>& strict_below) {
  std::vector<std::size_t> bounds;
  if (strict_below) {
    if (strict_below->size() != team.size()) throw std::invalid_argument("bound configuration does not match the team");
    bounds = *strict_below;
  } else {
    for (const Lasso& l : team.members()) bounds.push_back(l.span());
  }
  std::vector<Configuration> out;
  for (ConfigurationOdometer odo(bounds); odo.valid(); odo.advance()) out.push_back(odo.current());
  return out;
}

TeamEvaluator::TeamEvaluator(Semantics semantics, Limits limits) : semantics_(semantics), limits_(limits) {}

Verdict TeamEvaluator::check(const Team& team, const Ltl& f) {
  Verdict v;
  v.holds = eval_uncached(team, f.get(), &v.witness);
  return v;
}

bool TeamEvaluator::eval(const Team& team, const LtlNode* f) {
  if (is_literal(f->kind)) return eval_uncached(team, f, nullptr);
  Key key{f, team};
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  bool r = eval_uncached(team, f, nullptr);
  memo_.emplace(std::move(key), r);
  return r;
}

bool TeamEvaluator::eval_uncached(const Team& team, const LtlNode* f, Witness* witness) {
  switch (f->kind) {
    case LtlKind::Prop:
      return std::all_of(team.members().begin(), team.members().end(),
                         [&](const Lasso& t) { return has_prop(t.at(0), f->prop); });
    case LtlKind::NegProp:
      return std::none_of(team.members().begin(), team.members().end(),
                          [&](const Lasso& t) { return has_prop(t.at(0), f->prop); });
    case LtlKind::And: return eval(team, f->lhs.get()) && eval(team, f->rhs.get());
    case LtlKind::BoolNeg: return !eval(team, f->lhs.get());
    case LtlKind::Or:
      for (auto& [left, right] : enumerate_covers(team, limits_)) {
        if (eval(left, f->lhs.get()) && eval(right, f->rhs.get())) {
          if (witness) *witness = CoverWitness{left, right};
          return true;
        }
      }
      return false;
    case LtlKind::Next: return eval(team_suffix(team, std::size_t{1}), f->lhs.get());
    case LtlKind::Future:
    case LtlKind::Globally:
    case LtlKind::Until:
    case LtlKind::Release:
      return semantics_ == Semantics::Sync ? temporal_sync(team, f, witness) : temporal_async(team, f, witness);
  }
  return false;
}

// Beyond max prefix P every member is periodic with period lcm L, so the
// shifted teams T[k] for k < P + L are all the teams there are.
bool TeamEvaluator::temporal_sync(const Team& team, const LtlNode* f, Witness* witness) {
  const std::size_t horizon = team.max_prefix() + team.loop_lcm(limits_.max_lcm) * limits_.bound_multiplier;
  auto at = [&](std::size_t k) { return team_suffix(team, k); };
  switch (f->kind) {
    case LtlKind::Future:
      for (std::size_t k = 0; k < horizon; ++k) {
        if (eval(at(k), f->lhs.get())) {
          if (witness) *witness = k;
          return true;
        }
      }
      return false;
    case LtlKind::Globally:
      for (std::size_t k = 0; k < horizon; ++k) {
        if (!eval(at(k), f->lhs.get())) {
          if (witness) *witness = k;
          return false;
        }
      }
      return true;
    case LtlKind::Until:
      for (std::size_t k = 0; k < horizon; ++k) {
        Team shifted = at(k);
        if (eval(shifted, f->rhs.get())) {
          if (witness) *witness = k;
          return true;
        }
        if (!eval(shifted, f->lhs.get())) return false;
      }
      return false;
    case LtlKind::Release:
      for (std::size_t k = 0; k < horizon; ++k) {
        Team shifted = at(k);
        if (!eval(shifted, f->rhs.get())) {
          if (witness) *witness = k;
          return false;
        }
        if (eval(shifted, f->lhs.get())) return true;
      }
      return true;
    default: break;
  }
  throw std::logic_error("not a temporal operator");
}

std::vector<std::size_t> TeamEvaluator::async_bounds(const Team& team) const {
  std::vector<std::size_t> bounds;
  for (const Lasso& l : team.members()) bounds.push_back(l.prefix_length() + l.loop_length() * limits_.bound_multiplier);
  return bounds;
}

// Only canonical witness configurations are searched: replacing f by its
// componentwise canonical position keeps T[f] and shrinks the box {f' < f}.
bool TeamEvaluator::temporal_async(const Team& team, const LtlNode* f, Witness* witness) {
  auto box_has = [&](const Configuration& below, const LtlNode* g, bool want) {
    for (ConfigurationOdometer odo(below); odo.valid(); odo.advance()) {
      if (eval(team_suffix(team, odo.current()), g) == want) return true;
    }
    return false;
  };
  for (ConfigurationOdometer odo(async_bounds(team)); odo.valid(); odo.advance()) {
    const Configuration& cfg = odo.current();
    Team shifted = team_suffix(team, cfg);
    switch (f->kind) {
      case LtlKind::Future:
        if (eval(shifted, f->lhs.get())) {
          if (witness) *witness = cfg;
          return true;
        }
        break;
      case LtlKind::Globally:
        if (!eval(shifted, f->lhs.get())) {
          if (witness) *witness = cfg;
          return false;
        }
        break;
      case LtlKind::Until:
        if (eval(shifted, f->rhs.get()) && !box_has(cfg, f->lhs.get(), false)) {
          if (witness) *witness = cfg;
          return true;
        }
        break;
      case LtlKind::Release:
        if (!eval(shifted, f->rhs.get()) && !box_has(cfg, f->lhs.get(), true)) {
          if (witness) *witness = cfg;
          return false;
        }
        break;
      default: throw std::logic_error("not a temporal operator");
    }
  }
  return f->kind == LtlKind::Globally || f->kind == LtlKind::Release;
}

Verdict eval_sync(const Team& team, const Ltl& f, const Limits& limits) {
  return TeamEvaluator(Semantics::Sync, limits).check(team, f);
}

Verdict eval_async(const Team& team, const Ltl& f, const Limits& limits) {
  return TeamEvaluator(Semantics::Async, limits).check(team, f);
}

Verdict evaluate(Semantics s, const Team& team, const Ltl& f, const Limits& limits) {
  return TeamEvaluator(s, limits).check(team, f);
}

namespace {

class ClassicalEvaluator {
 public:
  explicit ClassicalEvaluator(const Lasso& t) : t_(t) {}

  // pos is always canonical.
  bool sat(std::size_t pos, const LtlNode* f, std::size_t* witness = nullptr) {
    auto key = std::make_pair(f, pos);
    if (!witness) {
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    bool r = compute(pos, f, witness);
    memo_[key] = r;
    return r;
  }

 private:
  std::size_t at(std::size_t pos, std::size_t k) const { return canonical_position(t_, pos + k); }

  bool compute(std::size_t pos, const LtlNode* f, std::size_t* witness) {
    const std::size_t range = t_.span();
    switch (f->kind) {
      case LtlKind::Prop: return has_prop(t_.at(pos), f->prop);
      case LtlKind::NegProp: return !has_prop(t_.at(pos), f->prop);
      case LtlKind::And: return sat(pos, f->lhs.get()) && sat(pos, f->rhs.get());
      case LtlKind::Or: return sat(pos, f->lhs.get()) || sat(pos, f->rhs.get());
      case LtlKind::BoolNeg: return !sat(pos, f->lhs.get());
      case LtlKind::Next: return sat(at(pos, 1), f->lhs.get());
      case LtlKind::Future:
        for (std::size_t k = 0; k < range; ++k) {
          if (sat(at(pos, k), f->lhs.get())) return set(witness, k), true;
        }
        return false;
      case LtlKind::Globally:
        for (std::size_t k = 0; k < range; ++k) {
          if (!sat(at(pos, k), f->lhs.get())) return set(witness, k), false;
        }
        return true;
      case LtlKind::Until:
        for (std::size_t k = 0; k < range; ++k) {
          if (sat(at(pos, k), f->rhs.get())) return set(witness, k), true;
          if (!sat(at(pos, k), f->lhs.get())) return false;
        }
        return false;
      case LtlKind::Release:
        for (std::size_t k = 0; k < range; ++k) {
          if (!sat(at(pos, k), f->rhs.get())) return set(witness, k), false;
          if (sat(at(pos, k), f->lhs.get())) return true;
        }
        return true;
    }
    return false;
  }

  static void set(std::size_t* w, std::size_t k) {
    if (w) *w = k;
  }

  const Lasso& t_;
  std::map<std::pair<const LtlNode*, std::size_t>, bool> memo_;
};

}  // namespace

Verdict eval_classical(const Lasso& trace, const Ltl& f) {
  ClassicalEvaluator ev(trace);
  std::size_t k = static_cast<std::size_t>(-1);
  Verdict v;
  v.holds = ev.sat(0, f.get(), &k);
  if (k != static_cast<std::size_t>(-1)) v.witness = k;
  return v;
}

bool replay_witness(Semantics s, const Team& team, const Ltl& f, const Verdict& v, const Limits& limits) {
  TeamEvaluator ev(s, limits);
  if (const auto* cover = std::get_if<CoverWitness>(&v.witness)) {
    if (f->kind != LtlKind::Or || !v.holds) return false;
    std::vector<Lasso> all = cover->left.members();
    all.insert(all.end(), cover->right.members().begin(), cover->right.members().end());
    return Team(all) == team && ev.holds(cover->left, f->lhs) && ev.holds(cover->right, f->rhs);
  }
  if (std::holds_alternative<std::monostate>(v.witness)) return true;

  // Shift witness: one clause, two readings of "earlier".
  Configuration cfg;
  std::vector<Configuration> earlier;
  if (const auto* k = std::get_if<std::size_t>(&v.witness)) {
    if (s != Semantics::Sync) return false;
    cfg.assign(team.size(), *k);
    for (std::size_t j = 0; j < *k; ++j) earlier.emplace_back(team.size(), j);
  } else {
    if (s != Semantics::Async) return false;
    cfg = std::get<Configuration>(v.witness);
    earlier = canonical_configurations(team, cfg);
  }
  const Team at = team_suffix(team, cfg);
  auto all_earlier = [&](const Ltl& g, bool want) {
    return std::all_of(earlier.begin(), earlier.end(),
                       [&](const Configuration& c) { return ev.holds(team_suffix(team, c), g) == want; });
  };
  switch (f->kind) {
    case LtlKind::Future: return v.holds && ev.holds(at, f->lhs);
    case LtlKind::Globally: return !v.holds && !ev.holds(at, f->lhs);
    case LtlKind::Until: return v.holds && ev.holds(at, f->rhs) && all_earlier(f->lhs, true);
    case LtlKind::Release: return !v.holds && !ev.holds(at, f->rhs) && all_earlier(f->lhs, false);
    default: return false;
  }
}

}  // namespace teamltl
