#include "teamltl/foteam.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "teamltl/lasso.hpp"

namespace teamltl {

// ---------------------------------------------------------------------------
// FoStructure
// ---------------------------------------------------------------------------

FoStructure::FoStructure(std::vector<std::string> domain) : names_(std::move(domain)) {
  for (Element e = 0; e < names_.size(); ++e) {
    if (!index_.emplace(names_[e], e).second) throw std::invalid_argument("duplicate element '" + names_[e] + "'");
  }
  relations_["leq"] = Relation{2, {}};
}

std::optional<Element> FoStructure::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void FoStructure::declare(const std::string& rel, std::size_t arity) {
  auto [it, inserted] = relations_.try_emplace(rel, Relation{arity, {}});
  if (!inserted && it->second.arity != arity) {
    throw std::invalid_argument("relation '" + rel + "' redeclared with a different arity");
  }
}

void FoStructure::add(const std::string& rel, const std::vector<Element>& tuple) {
  declare(rel, tuple.size());
  for (Element e : tuple) {
    if (e >= names_.size()) throw std::invalid_argument("tuple of '" + rel + "' leaves the domain");
  }
  auto& r = relations_[rel];
  auto pos = std::lower_bound(r.tuples.begin(), r.tuples.end(), tuple);
  if (pos != r.tuples.end() && *pos == tuple) return;
  r.tuples.insert(pos, tuple);

  const std::size_t n = names_.size();
  if (rel == "leq") {
    if (leq_.empty()) leq_.assign(n * n, false);
    leq_[tuple[0] * n + tuple[1]] = true;
  } else if (tuple.size() <= 2) {
    auto& d = dense_[rel];
    if (d.empty()) d.assign(tuple.size() == 2 ? n * n : std::max<std::size_t>(n, 1), false);
    d[tuple.size() == 2 ? tuple[0] * n + tuple[1] : (tuple.empty() ? 0 : tuple[0])] = true;
  }
}

std::size_t FoStructure::arity(const std::string& rel) const {
  auto it = relations_.find(rel);
  if (it == relations_.end()) throw std::invalid_argument("unknown relation '" + rel + "'");
  return it->second.arity;
}

bool FoStructure::holds(const std::string& rel, const std::vector<Element>& tuple) const {
  auto it = relations_.find(rel);
  if (it == relations_.end()) throw std::invalid_argument("unknown relation '" + rel + "'");
  if (it->second.arity != tuple.size()) {
    throw std::invalid_argument("relation '" + rel + "' used with " + std::to_string(tuple.size()) +
                                " arguments, declared with " + std::to_string(it->second.arity));
  }
  if (tuple.size() <= 2) {
    if (rel == "leq") return leq(tuple[0], tuple[1]);
    auto d = dense_.find(rel);
    if (d == dense_.end()) return false;
    const std::size_t n = names_.size();
    return d->second[tuple.size() == 2 ? tuple[0] * n + tuple[1] : (tuple.empty() ? 0 : tuple[0])];
  }
  return std::binary_search(it->second.tuples.begin(), it->second.tuples.end(), tuple);
}

std::vector<std::vector<Element>> FoStructure::tuples(const std::string& rel) const {
  auto it = relations_.find(rel);
  if (it == relations_.end()) throw std::invalid_argument("unknown relation '" + rel + "'");
  return it->second.tuples;
}

std::vector<std::string> FoStructure::relation_names() const {
  std::vector<std::string> out;
  for (const auto& [name, r] : relations_) out.push_back(name);
  return out;
}

// ---------------------------------------------------------------------------
// AssignmentTeam
// ---------------------------------------------------------------------------

AssignmentTeam::AssignmentTeam(std::vector<std::string> vars, std::vector<Assignment> rows) {
  std::vector<std::size_t> order(vars.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vars[a] < vars[b]; });
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i > 0 && vars[order[i]] == vars[order[i - 1]]) throw std::invalid_argument("variable '" + vars[order[i]] + "' assigned twice");
    vars_.push_back(vars[order[i]]);
  }
  rows_.reserve(rows.size());
  for (const Assignment& r : rows) {
    if (r.size() != vars.size()) throw std::invalid_argument("assignment does not match the variable domain");
    Assignment a(r.size());
    for (std::size_t i = 0; i < order.size(); ++i) a[i] = r[order[i]];
    rows_.push_back(std::move(a));
  }
  std::sort(rows_.begin(), rows_.end());
  rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
}

std::optional<std::size_t> AssignmentTeam::var_index(const std::string& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

AssignmentTeam AssignmentTeam::project(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<std::size_t> cols;
  for (const auto& v : vars) {
    auto i = var_index(v);
    if (!i) throw std::invalid_argument("variable '" + v + "' is not assigned by the team");
    cols.push_back(*i);
  }
  std::vector<Assignment> rows;
  rows.reserve(rows_.size());
  for (const Assignment& r : rows_) {
    Assignment a;
    a.reserve(cols.size());
    for (std::size_t c : cols) a.push_back(r[c]);
    rows.push_back(std::move(a));
  }
  return AssignmentTeam(vars, std::move(rows));
}

AssignmentTeam AssignmentTeam::subteam(const std::vector<bool>& keep) const {
  AssignmentTeam out;
  out.vars_ = vars_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (keep[i]) out.rows_.push_back(rows_[i]);
  }
  return out;
}

std::string to_string(const AssignmentTeam& s, const FoStructure& m) {
  std::string out = "{";
  for (std::size_t r = 0; r < s.size(); ++r) {
    if (r) out += ", ";
    out += "(";
    for (std::size_t i = 0; i < s.vars().size(); ++i) {
      if (i) out += ", ";
      out += s.vars()[i] + "=" + m.name(s.rows()[r][i]);
    }
    out += ")";
  }
  return out + "}";
}

namespace {

// Domain of S extended (or overwritten) by v, with the column v lands in.
struct Extension {
  std::vector<std::string> vars;
  std::size_t column;
  bool overwrites;
};

Extension extend(const std::vector<std::string>& vars, const std::string& v) {
  Extension e{vars, 0, false};
  auto it = std::lower_bound(e.vars.begin(), e.vars.end(), v);
  e.column = static_cast<std::size_t>(it - e.vars.begin());
  if (it != e.vars.end() && *it == v) {
    e.overwrites = true;
  } else {
    e.vars.insert(it, v);
  }
  return e;
}

Assignment with_value(const Assignment& a, const Extension& e, Element value) {
  Assignment out = a;
  if (e.overwrites) {
    out[e.column] = value;
  } else {
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(e.column), value);
  }
  return out;
}

}  // namespace

AssignmentTeam duplicate(const AssignmentTeam& s, const std::string& x, const FoStructure& m) {
  const Extension e = extend(s.vars(), x);
  std::vector<Assignment> rows;
  for (const Assignment& a : s.rows()) {
    for (Element v = 0; v < m.size(); ++v) rows.push_back(with_value(a, e, v));
  }
  return AssignmentTeam(e.vars, std::move(rows));
}

void supplementations(const AssignmentTeam& s, const std::string& x, const FoStructure& m,
                      const std::function<bool(const AssignmentTeam&)>& visit, const Limits& limits) {
  if (s.size() * m.size() > limits.max_fo_lax) {
    throw LimitExceeded("supplementation search over |S|*|M| = " + std::to_string(s.size() * m.size()) +
                        " exceeds the limit " + std::to_string(limits.max_fo_lax));
  }
  const Extension e = extend(s.vars(), x);
  if (s.empty()) {
    visit(AssignmentTeam(e.vars, {}));
    return;
  }
  if (m.size() == 0) return;  // no nonempty subsets to choose from
  // One nonzero bitmask over M per assignment.
  const std::uint64_t full = (std::uint64_t{1} << m.size()) - 1;
  std::vector<std::uint64_t> choice(s.size(), 1);
  while (true) {
    std::vector<Assignment> rows;
    for (std::size_t r = 0; r < s.size(); ++r) {
      for (Element v = 0; v < m.size(); ++v) {
        if ((choice[r] >> v) & 1u) rows.push_back(with_value(s.rows()[r], e, v));
      }
    }
    if (!visit(AssignmentTeam(e.vars, std::move(rows)))) return;
    std::size_t r = 0;
    while (r < choice.size() && choice[r] == full) choice[r++] = 1;
    if (r == choice.size()) return;
    ++choice[r];
  }
}

// ---------------------------------------------------------------------------
// Tarski semantics
// ---------------------------------------------------------------------------

namespace {

// Variable bindings, innermost last.
using Env = std::vector<std::pair<std::string, Element>>;

Element lookup(const Env& env, const std::string& v) {
  for (auto it = env.rbegin(); it != env.rend(); ++it) {
    if (it->first == v) return it->second;
  }
  throw std::invalid_argument("variable '" + v + "' is unassigned");
}

Env make_env(const std::vector<std::string>& vars, const Assignment& a) {
  Env env;
  env.reserve(vars.size() + 3);
  for (std::size_t i = 0; i < vars.size(); ++i) env.emplace_back(vars[i], a[i]);
  return env;
}

bool atom_holds(const FoStructure& m, const Env& env, const FoNode* f) {
  auto args = [&] {
    std::vector<Element> t;
    t.reserve(f->vars.size());
    for (const auto& v : f->vars) t.push_back(lookup(env, v));
    return t;
  };
  switch (f->kind) {
    case FoKind::Eq: return lookup(env, f->vars[0]) == lookup(env, f->vars[1]);
    case FoKind::NegEq: return lookup(env, f->vars[0]) != lookup(env, f->vars[1]);
    case FoKind::Leq: return m.leq(lookup(env, f->vars[0]), lookup(env, f->vars[1]));
    case FoKind::NegLeq: return !m.leq(lookup(env, f->vars[0]), lookup(env, f->vars[1]));
    case FoKind::Rel: return m.holds(f->rel, args());
    case FoKind::NegRel: return !m.holds(f->rel, args());
    default: throw std::logic_error("not an atom");
  }
}

bool is_atom(FoKind k) {
  return k == FoKind::Eq || k == FoKind::NegEq || k == FoKind::Leq || k == FoKind::NegLeq || k == FoKind::Rel ||
         k == FoKind::NegRel;
}

bool tarski_env(const FoStructure& m, Env& env, const FoNode* f) {
  switch (f->kind) {
    case FoKind::And: return tarski_env(m, env, f->lhs.get()) && tarski_env(m, env, f->rhs.get());
    case FoKind::Or: return tarski_env(m, env, f->lhs.get()) || tarski_env(m, env, f->rhs.get());
    case FoKind::Exists:
    case FoKind::Forall: {
      const bool ex = f->kind == FoKind::Exists;
      env.emplace_back(f->vars[0], 0);
      bool result = !ex;
      for (Element v = 0; v < m.size() && result != ex; ++v) {
        env.back().second = v;
        result = tarski_env(m, env, f->lhs.get());
      }
      env.pop_back();
      return result;
    }
    case FoKind::Dep:
    case FoKind::BoolNeg: throw std::invalid_argument("Tarski evaluation of a non-flat formula");
    default: return atom_holds(m, env, f);
  }
}

}  // namespace

bool tarski(const FoStructure& m, const std::vector<std::string>& vars, const Assignment& s, const Fo& f) {
  Env env = make_env(vars, s);
  return tarski_env(m, env, f.get());
}

bool flat_fast_path(const FoStructure& m, const AssignmentTeam& s, const Fo& f) {
  if (!is_flat(f)) throw std::invalid_argument("flat_fast_path needs a formula without dep atoms and ~");
  for (const Assignment& a : s.rows()) {
    if (!tarski(m, s.vars(), a, f)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// FoEvaluator
// ---------------------------------------------------------------------------

std::size_t FoEvaluator::KeyHash::operator()(const Key& k) const {
  std::size_t h = std::hash<const void*>{}(k.node);
  for (const Assignment& a : k.team.rows()) {
    for (Element e : a) h = h * 1000003u ^ e;
    h = h * 31u + 7u;
  }
  return h;
}

FoEvaluator::FoEvaluator(const FoStructure& m, Limits limits, bool reference)
    : m_(m), limits_(limits), reference_(reference) {}

bool FoEvaluator::eval(const AssignmentTeam& s, const Fo& f) {
  pinned_.push_back(f);
  for (const auto& v : free_variables(f)) {
    if (!s.var_index(v)) throw std::invalid_argument("free variable '" + v + "' is not assigned by the team");
  }
  const bool r = eval_node(s, f.get());
  stats_.memo_entries = memo_.size();
  return r;
}

const FoEvaluator::NodeInfo& FoEvaluator::info(const FoNode* f) {
  auto it = info_.find(f);
  if (it != info_.end()) return it->second;
  NodeInfo n;
  switch (f->kind) {
    case FoKind::And:
    case FoKind::Or: {
      const NodeInfo a = info(f->lhs.get());
      const NodeInfo b = info(f->rhs.get());
      std::set_union(a.free.begin(), a.free.end(), b.free.begin(), b.free.end(), std::back_inserter(n.free));
      n.flat = a.flat && b.flat;
      n.downward_closed = a.downward_closed && b.downward_closed;
      break;
    }
    case FoKind::Exists:
    case FoKind::Forall: {
      const NodeInfo a = info(f->lhs.get());
      for (const auto& v : a.free) {
        if (v != f->vars[0]) n.free.push_back(v);
      }
      n.flat = a.flat;
      n.downward_closed = a.downward_closed;
      break;
    }
    case FoKind::BoolNeg: {
      n.free = info(f->lhs.get()).free;
      n.flat = false;
      n.downward_closed = false;
      break;
    }
    case FoKind::Dep: {
      n.free = f->vars;
      std::sort(n.free.begin(), n.free.end());
      n.free.erase(std::unique(n.free.begin(), n.free.end()), n.free.end());
      n.flat = false;
      n.downward_closed = true;
      break;
    }
    default: {
      n.free = f->vars;
      std::sort(n.free.begin(), n.free.end());
      n.free.erase(std::unique(n.free.begin(), n.free.end()), n.free.end());
      n.flat = true;
      n.downward_closed = true;
    }
  }
  return info_.emplace(f, std::move(n)).first->second;
}

void FoEvaluator::count_choice() {
  if (++stats_.choices > limits_.max_fo_choices) {
    throw LimitExceeded("FO search tried more than " + std::to_string(limits_.max_fo_choices) + " choices");
  }
}

bool FoEvaluator::tarski_node(const std::vector<std::string>& vars, const Assignment& a, const FoNode* f) {
  Env env = make_env(vars, a);
  return tarski_env(m_, env, f);
}

bool FoEvaluator::eval_node(const AssignmentTeam& s, const FoNode* f) {
  if (reference_) {
    if (is_atom(f->kind)) {
      for (const Assignment& a : s.rows()) {
        if (!tarski_node(s.vars(), a, f)) return false;
      }
      return true;
    }
    Key key{f, s};
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++stats_.memo_hits;
      return it->second;
    }
    const bool r = eval_uncached(s, f);
    memo_.emplace(std::move(key), r);
    return r;
  }

  const NodeInfo& n = info(f);
  if (n.flat) {
    for (const Assignment& a : s.rows()) {
      if (!tarski_node(s.vars(), a, f)) return false;
    }
    return true;
  }
  Key key{f, s.project(n.free)};
  if (auto it = memo_.find(key); it != memo_.end()) {
    ++stats_.memo_hits;
    return it->second;
  }
  const bool r = eval_uncached(key.team, f);
  memo_.emplace(std::move(key), r);
  return r;
}

bool FoEvaluator::eval_uncached(const AssignmentTeam& s, const FoNode* f) {
  switch (f->kind) {
    case FoKind::And: {
      // Cheap flat side first.
      const FoNode* a = f->lhs.get();
      const FoNode* b = f->rhs.get();
      if (!reference_ && info(b).flat && !info(a).flat) std::swap(a, b);
      return eval_node(s, a) && eval_node(s, b);
    }
    case FoKind::Or: return eval_or(s, f);
    case FoKind::Exists: return reference_ ? eval_exists_reference(s, f) : eval_exists(s, f);
    case FoKind::Forall: return eval_node(duplicate(s, f->vars[0], m_), f->lhs.get());
    case FoKind::BoolNeg: return !eval_node(s, f->lhs.get());
    case FoKind::Dep: {
      std::vector<std::size_t> cols;
      for (const auto& v : f->vars) cols.push_back(*s.var_index(v));
      std::map<std::vector<Element>, Element> seen;
      for (const Assignment& a : s.rows()) {
        std::vector<Element> key;
        for (std::size_t i = 0; i + 1 < cols.size(); ++i) key.push_back(a[cols[i]]);
        auto [it, inserted] = seen.emplace(std::move(key), a[cols.back()]);
        if (!inserted && it->second != a[cols.back()]) return false;
      }
      return true;
    }
    default: {
      for (const Assignment& a : s.rows()) {
        if (!tarski_node(s.vars(), a, f)) return false;
      }
      return true;
    }
  }
}

namespace {

void conjuncts(const FoNode* f, std::vector<const FoNode*>& out) {
  if (f->kind == FoKind::And) {
    conjuncts(f->lhs.get(), out);
    conjuncts(f->rhs.get(), out);
  } else {
    out.push_back(f);
  }
}

bool mentions(const std::vector<std::string>& vars, const std::string& v) {
  return std::find(vars.begin(), vars.end(), v) != vars.end();
}

// dep(w; v) atoms that every team satisfying f must satisfy, with w drawn from
// `domain`. Quantifiers over variables the atom does not mention keep the
// values of w and v intact, so they are looked through.
void implied_deps(const FoNode* f, const std::string& v, const std::vector<std::string>& domain,
                  std::vector<const FoNode*>& out) {
  switch (f->kind) {
    case FoKind::And:
      implied_deps(f->lhs.get(), v, domain, out);
      implied_deps(f->rhs.get(), v, domain, out);
      return;
    case FoKind::Exists:
    case FoKind::Forall: {
      std::vector<const FoNode*> inner;
      implied_deps(f->lhs.get(), v, domain, inner);
      for (const FoNode* d : inner) {
        if (!mentions(d->vars, f->vars[0])) out.push_back(d);
      }
      return;
    }
    case FoKind::Dep: {
      if (f->vars.back() != v) return;
      for (std::size_t i = 0; i + 1 < f->vars.size(); ++i) {
        if (f->vars[i] == v || !std::binary_search(domain.begin(), domain.end(), f->vars[i])) return;
      }
      out.push_back(f);
      return;
    }
    default: return;
  }
}

// Conjunct of the form Eu(dep(u) & C) with C flat: all values of the outer
// variable must relate to one common u.
struct Anchor {
  const FoNode* node;
  std::string var;
  std::vector<const FoNode*> constraints;
};

std::optional<Anchor> as_anchor(const FoNode* f, const std::function<bool(const FoNode*)>& flat) {
  if (f->kind != FoKind::Exists) return std::nullopt;
  const std::string& u = f->vars[0];
  std::vector<const FoNode*> parts;
  conjuncts(f->lhs.get(), parts);
  Anchor a{f, u, {}};
  bool constant = false;
  for (const FoNode* p : parts) {
    if (p->kind == FoKind::Dep && p->vars.size() == 1 && p->vars[0] == u) {
      constant = true;
    } else if (flat(p)) {
      a.constraints.push_back(p);
    } else {
      return std::nullopt;
    }
  }
  if (!constant) return std::nullopt;
  return a;
}

// Mixed-radix counter over choice lists.
bool advance(std::vector<std::size_t>& digit, const std::vector<std::size_t>& radix) {
  for (std::size_t i = 0; i < digit.size(); ++i) {
    if (++digit[i] < radix[i]) return true;
    digit[i] = 0;
  }
  return false;
}

}  // namespace

bool FoEvaluator::eval_or(const AssignmentTeam& s, const FoNode* f) {
  const FoNode* a = f->lhs.get();
  const FoNode* b = f->rhs.get();
  const std::size_t n = s.size();

  if (reference_) {
    if (n > limits_.max_fo_cover_team) {
      throw LimitExceeded("cover search over " + std::to_string(n) + " assignments exceeds the limit " +
                          std::to_string(limits_.max_fo_cover_team));
    }
    // Every cover: each assignment goes left, right, or both.
    std::vector<int> side(n, 0);
    while (true) {
      count_choice();
      std::vector<bool> left(n), right(n);
      for (std::size_t i = 0; i < n; ++i) {
        left[i] = side[i] != 1;
        right[i] = side[i] != 0;
      }
      if (eval_node(s.subteam(left), a) && eval_node(s.subteam(right), b)) return true;
      std::size_t i = 0;
      while (i < n && side[i] == 2) side[i++] = 0;
      if (i == n) return false;
      ++side[i];
    }
  }

  if (info(b).flat && !info(a).flat) std::swap(a, b);
  // Flat conjuncts of a disjunct must hold on every assignment sent its way.
  auto admits = [&](const FoNode* d, const Assignment& row) {
    std::vector<const FoNode*> parts;
    conjuncts(d, parts);
    for (const FoNode* p : parts) {
      if (info(p).flat && !tarski_node(s.vars(), row, p)) return false;
    }
    return true;
  };
  std::vector<bool> can_a(n), can_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    can_a[i] = admits(a, s.rows()[i]);
    can_b[i] = admits(b, s.rows()[i]);
    if (!can_a[i] && !can_b[i]) return false;
  }

  // Assignments free to go either way; the rest are forced.
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < n; ++i) {
    if (can_a[i] && can_b[i]) open.push_back(i);
  }

  if (info(a).flat) {
    // a takes everything it accepts; b gets the rest and possibly more.
    std::vector<bool> must_b(n);
    for (std::size_t i = 0; i < n; ++i) must_b[i] = !can_a[i];
    if (info(b).downward_closed) return eval_node(s.subteam(must_b), b);
    check_open(open.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << open.size()); ++mask) {
      count_choice();
      std::vector<bool> keep = must_b;
      for (std::size_t k = 0; k < open.size(); ++k) keep[open[k]] = (mask >> k) & 1u;
      if (eval_node(s.subteam(keep), b)) return true;
    }
    return false;
  }

  // With a downward closed side, assignments never need to go both ways.
  const std::size_t options = info(a).downward_closed || info(b).downward_closed ? 2 : 3;
  check_open(open.size());
  std::vector<std::size_t> side(open.size(), 0), radix(open.size(), options);
  do {
    count_choice();
    std::vector<bool> left = can_a, right = can_b;
    for (std::size_t k = 0; k < open.size(); ++k) {
      left[open[k]] = side[k] != 1;
      right[open[k]] = side[k] != 0;
    }
    if (eval_node(s.subteam(left), a) && eval_node(s.subteam(right), b)) return true;
  } while (advance(side, radix));
  return false;
}

void FoEvaluator::check_open(std::size_t open) const {
  if (open > limits_.max_fo_cover_team) {
    throw LimitExceeded("cover search over " + std::to_string(open) + " assignments exceeds the limit " +
                        std::to_string(limits_.max_fo_cover_team));
  }
}

bool FoEvaluator::eval_exists_reference(const AssignmentTeam& s, const FoNode* f) {
  bool found = false;
  supplementations(
      s, f->vars[0], m_,
      [&](const AssignmentTeam& t) {
        count_choice();
        found = eval_node(t, f->lhs.get());
        return !found;
      },
      limits_);
  return found;
}


bool FoEvaluator::eval_exists(const AssignmentTeam& s, const FoNode* f) {
  const std::string& v = f->vars[0];
  const FoNode* body = f->lhs.get();
  const Extension ext = extend(s.vars(), v);
  if (s.empty()) return eval_node(AssignmentTeam(ext.vars, {}), body);
  if (m_.size() == 0) return false;

  std::vector<const FoNode*> parts;
  conjuncts(body, parts);
  std::vector<const FoNode*> filters, rest;
  std::optional<Anchor> anchor;
  for (const FoNode* p : parts) {
    if (info(p).flat) {
      filters.push_back(p);
      continue;
    }
    if (!anchor) {
      anchor = as_anchor(p, [&](const FoNode* q) { return info(q).flat; });
      if (anchor) continue;
    }
    rest.push_back(p);
  }

  std::vector<std::string> domain = s.vars();
  if (ext.overwrites) domain.erase(domain.begin() + static_cast<std::ptrdiff_t>(ext.column));
  std::vector<const FoNode*> deps;
  implied_deps(body, v, domain, deps);
  const FoNode* forcing = deps.empty() ? nullptr : deps.front();
  // The forcing dep atom holds by construction once choices follow its classes.
  if (forcing) rest.erase(std::remove(rest.begin(), rest.end(), forcing), rest.end());

  const std::vector<Assignment>& rows = s.rows();
  const std::size_t n = rows.size();

  // Classes of assignments that must share their value for v.
  std::vector<std::size_t> klass(n);
  std::size_t classes = n;
  if (forcing) {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i + 1 < forcing->vars.size(); ++i) cols.push_back(*s.var_index(forcing->vars[i]));
    std::map<std::vector<Element>, std::size_t> ids;
    for (std::size_t r = 0; r < n; ++r) {
      std::vector<Element> key;
      for (std::size_t c : cols) key.push_back(rows[r][c]);
      klass[r] = ids.emplace(std::move(key), ids.size()).first->second;
    }
    classes = ids.size();
  } else {
    std::iota(klass.begin(), klass.end(), 0);
  }

  // Values allowed for each assignment by the flat conjuncts alone.
  std::vector<std::vector<Element>> base(n);
  for (std::size_t r = 0; r < n; ++r) {
    Env env = make_env(ext.vars, with_value(rows[r], ext, 0));
    for (Element val = 0; val < m_.size(); ++val) {
      env[ext.column].second = val;
      bool ok = true;
      for (const FoNode* p : filters) {
        if (!(ok = tarski_env(m_, env, p))) break;
      }
      if (ok) base[r].push_back(val);
    }
    if (base[r].empty()) return false;
  }

  const bool singletons = forcing != nullptr || std::all_of(rest.begin(), rest.end(), [&](const FoNode* p) {
                            return info(p).downward_closed;
                          });
  // ~F with F flat: some assignment must fail F.
  const FoNode* negated_flat = nullptr;
  if (rest.size() == 1 && rest[0]->kind == FoKind::BoolNeg && info(rest[0]->lhs.get()).flat) {
    negated_flat = rest[0]->lhs.get();
  }

  auto search = [&](const std::vector<std::vector<Element>>& cand) -> bool {
    // Candidates per class.
    std::vector<std::vector<Element>> per_class(classes);
    std::vector<bool> seeded(classes, false);
    for (std::size_t r = 0; r < n; ++r) {
      auto& c = per_class[klass[r]];
      if (!seeded[klass[r]]) {
        c = cand[r];
        seeded[klass[r]] = true;
      } else {
        std::vector<Element> both;
        std::set_intersection(c.begin(), c.end(), cand[r].begin(), cand[r].end(), std::back_inserter(both));
        c = std::move(both);
      }
    }
    for (const auto& c : per_class) {
      if (c.empty()) return false;
    }
    if (rest.empty()) return true;

    if (negated_flat) {
      for (std::size_t r = 0; r < n; ++r) {
        for (Element val : per_class[klass[r]]) {
          if (!tarski_node(ext.vars, with_value(rows[r], ext, val), negated_flat)) return true;
        }
      }
      return false;
    }

    auto check = [&](std::vector<Assignment> out) {
      count_choice();
      const AssignmentTeam t(ext.vars, std::move(out));
      for (const FoNode* p : rest) {
        if (!eval_node(t, p)) return false;
      }
      return true;
    };

    if (singletons) {
      std::vector<std::size_t> digit(classes, 0), radix(classes);
      for (std::size_t k = 0; k < classes; ++k) radix[k] = per_class[k].size();
      do {
        std::vector<Assignment> out;
        out.reserve(n);
        for (std::size_t r = 0; r < n; ++r) out.push_back(with_value(rows[r], ext, per_class[klass[r]][digit[klass[r]]]));
        if (check(std::move(out))) return true;
      } while (advance(digit, radix));
      return false;
    }

    // Lax choice: a nonempty subset of the candidates per assignment.
    std::size_t total = 0;
    for (const auto& c : per_class) total += c.size();
    if (total > limits_.max_fo_lax || total >= 64) {
      throw LimitExceeded("lax supplementation over " + std::to_string(total) + " candidate values exceeds the limit " +
                          std::to_string(limits_.max_fo_lax));
    }
    std::vector<std::size_t> digit(classes, 0), radix(classes);
    for (std::size_t k = 0; k < classes; ++k) radix[k] = (std::size_t{1} << per_class[k].size()) - 1;
    do {
      std::vector<Assignment> out;
      for (std::size_t r = 0; r < n; ++r) {
        const auto& c = per_class[r];
        const std::size_t mask = digit[r] + 1;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if ((mask >> i) & 1u) out.push_back(with_value(rows[r], ext, c[i]));
        }
      }
      if (check(std::move(out))) return true;
    } while (advance(digit, radix));
    return false;
  };

  if (!anchor) return search(base);

  // One pass per value of the anchored constant.
  for (Element c = 0; c < m_.size(); ++c) {
    std::vector<std::vector<Element>> cand(n);
    for (std::size_t r = 0; r < n; ++r) {
      Env env = make_env(ext.vars, with_value(rows[r], ext, 0));
      env.emplace_back(anchor->var, c);
      for (Element val : base[r]) {
        env[ext.column].second = val;
        bool ok = true;
        for (const FoNode* p : anchor->constraints) {
          if (!(ok = tarski_env(m_, env, p))) break;
        }
        if (ok) cand[r].push_back(val);
      }
    }
    if (search(cand)) return true;
  }
  return false;
}

bool eval_fo(const FoStructure& m, const AssignmentTeam& s, const Fo& f, const Limits& limits) {
  FoEvaluator e(m, limits);
  return e.eval(s, f);
}

bool eval_fo_reference(const FoStructure& m, const AssignmentTeam& s, const Fo& f, const Limits& limits) {
  FoEvaluator e(m, limits, true);
  return e.eval(s, f);
}

}  // namespace teamltl
