#include "teamltl/kamp.hpp"

#include <algorithm>
#include <stdexcept>

namespace teamltl {

const char* to_string(AsyncUntil v) { return v == AsyncUntil::Strict ? "strict" : "printed"; }
const char* to_string(SyncUntil v) { return v == SyncUntil::Repaired ? "repaired" : "printed"; }

std::string next_variable(const std::string& u) {
  if (u == "x") return "y";
  if (u == "y") return "z";
  if (u == "z") return "x";
  throw std::invalid_argument("translation variable must be x, y or z, got '" + u + "'");
}

Fo successor(const std::string& u, const std::string& v) {
  std::string third;
  for (const char* c : {"x", "y", "z"}) {
    if (c != u && c != v) third = c;
  }
  return fo::conj(fo::lt(u, v),
                  fo::forall(third, fo::disj(fo::disj(fo::leq(third, u), fo::leq(v, third)),
                                             fo::conj(fo::neg_leq(u, third), fo::neg_leq(third, u)))));
}

namespace {

struct Translator {
  const ApList& aps;
  bool sync;
  AsyncOptions async;
  SyncUntil sync_until;

  Fo run(const Ltl& f, const std::string& u) const {
    const std::string v = next_variable(u);
    const std::string w = next_variable(v);
    switch (f->kind) {
      case LtlKind::Prop: return fo::rel(Signature::prop_relation(aps.name(f->prop)), {u});
      case LtlKind::NegProp: return fo::neg_rel(Signature::prop_relation(aps.name(f->prop)), {u});
      case LtlKind::And: return fo::conj(run(f->lhs, u), run(f->rhs, u));
      case LtlKind::Or: return fo::disj(run(f->lhs, u), run(f->rhs, u));
      case LtlKind::BoolNeg: return fo::bneg(run(f->lhs, u));
      case LtlKind::Next: return fo::exists(v, fo::conj(successor(u, v), run(f->lhs, v)));
      case LtlKind::Until: return sync ? until_sync(f, u, v, w) : until_async(f, u, v, w);
      default: throw std::invalid_argument("translation needs core formulas; desugar F, G and R first");
    }
  }

  Fo until_async(const Ltl& f, const std::string& u, const std::string& v, const std::string& w) const {
    Fo below = async.until == AsyncUntil::Strict ? fo::lt(w, v) : fo::leq(w, v);
    Fo inner = fo::exists(
        w, fo::conj(fo::conj(fo::conj(fo::leq(u, w), below), fo::dep({u}, w)), fo::bneg(run(f->lhs, w))));
    Fo head = async.omit_dep ? fo::leq(u, v) : fo::conj(fo::leq(u, v), fo::dep({u}, v));
    return fo::exists(v, fo::conj(fo::conj(head, run(f->rhs, v)), fo::bneg(inner)));
  }

  Fo until_sync(const Ltl& f, const std::string& u, const std::string& v, const std::string& w) const {
    Fo level = fo::exists(u, fo::conj(fo::dep({}, u), fo::rel("E", {w, u})));
    Fo inner = fo::exists(w, fo::conj(fo::conj(fo::conj(level, fo::leq(u, w)), fo::lt(w, v)), fo::bneg(run(f->lhs, w))));
    Fo head = fo::conj(fo::conj(fo::conj(fo::dep({}, w), fo::leq(u, v)), fo::rel("E", {w, v})), run(f->rhs, v));
    if (sync_until == SyncUntil::Repaired) {
      return fo::exists(w, fo::exists(v, fo::conj(head, fo::bneg(inner))));
    }
    return fo::conj(fo::exists(w, fo::exists(v, head)), fo::bneg(inner));
  }
};

}  // namespace

Fo translate_async(const Ltl& f, const ApList& aps, const std::string& base, AsyncOptions options) {
  next_variable(base);
  return Translator{aps, false, options, SyncUntil::Repaired}.run(f, base);
}

Fo translate_sync(const Ltl& f, const ApList& aps, const std::string& base, SyncUntil variant) {
  next_variable(base);
  return Translator{aps, true, {}, variant}.run(f, base);
}

Fo close_sentence(const Fo& psi) {
  for (const auto& v : free_variables(psi)) {
    if (v != "x") throw std::invalid_argument("close_sentence needs x as the only free variable, found '" + v + "'");
  }
  Fo has_predecessor = fo::exists("y", fo::lt("y", "x"));
  Fo first = fo::forall("y", fo::not_lt("y", "x"));
  return fo::forall("x", fo::disj(has_predecessor, fo::conj(first, psi)));
}

bool uses_three_variables(const Fo& f) {
  for (const auto& v : all_variables(f)) {
    if (v != "x" && v != "y" && v != "z") return false;
  }
  return true;
}

AssignmentTeam EncodedStructure::initial_team(const std::string& var) const {
  std::vector<Assignment> rows;
  for (std::size_t i = 0; i < traces; ++i) rows.push_back({element(i, 0)});
  return AssignmentTeam({var}, std::move(rows));
}

AssignmentTeam EncodedStructure::empty_assignment() { return AssignmentTeam({}, {Assignment{}}); }

EncodedStructure build_structure(const Team& team, std::size_t bound, const ApList& aps, bool equal_level) {
  if (bound == 0) throw std::invalid_argument("structure bound must be at least 1");
  if (team.empty()) throw std::invalid_argument("cannot encode the empty team");
  EncodedStructure out;
  out.traces = team.size();
  out.bound = bound;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < team.size(); ++i) {
    for (std::size_t j = 0; j < bound; ++j) names.push_back("t" + std::to_string(i) + "@" + std::to_string(j));
  }
  FoStructure& m = out.structure;
  m = FoStructure(std::move(names));
  for (const auto& ap : aps.names()) m.declare(Signature::prop_relation(ap), 1);
  if (equal_level) m.declare("E", 2);
  for (std::size_t i = 0; i < team.size(); ++i) {
    for (std::size_t j = 0; j < bound; ++j) {
      const Element e = out.element(i, j);
      for (std::size_t k = j; k < bound; ++k) m.add("leq", {e, out.element(i, k)});
      for (PropId p = 0; p < aps.size(); ++p) {
        if (has_prop(team[i].at(j), p)) m.add(Signature::prop_relation(aps.name(p)), {e});
      }
      if (equal_level) {
        for (std::size_t i2 = 0; i2 < team.size(); ++i2) m.add("E", {e, out.element(i2, j)});
      }
    }
  }
  return out;
}

std::size_t default_bound(const Team& team, const Ltl& f, const ApList& aps, const Limits& limits) {
  const std::size_t depth = temporal_depth(desugar(f, aps));
  return (team.max_prefix() + team.loop_lcm(limits.max_lcm)) * (depth + 2);
}

}  // namespace teamltl
