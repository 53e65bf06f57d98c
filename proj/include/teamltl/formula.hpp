#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace teamltl {

/// Raised by both formula parsers. `position` is a byte offset into the input.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, std::size_t position)
      : std::runtime_error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

using PropId = std::uint32_t;

/// Ordered list of atomic propositions. Proposition ids index into it.
class ApList {
 public:
  ApList() = default;
  explicit ApList(std::vector<std::string> names);

  std::optional<PropId> find(std::string_view name) const;
  PropId intern(const std::string& name);  // appends unknown names
  const std::string& name(PropId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const ApList&, const ApList&) = default;

 private:
  std::vector<std::string> names_;
};

// ---------------------------------------------------------------------------
// TeamLTL(~)
// ---------------------------------------------------------------------------

enum class LtlKind { Prop, NegProp, And, Or, Next, Future, Globally, Until, Release, BoolNeg };

struct LtlNode;
using Ltl = std::shared_ptr<const LtlNode>;

struct LtlNode {
  LtlKind kind;
  PropId prop = 0;  // Prop / NegProp only
  Ltl lhs;          // unary operand, or left operand
  Ltl rhs;          // right operand of binary nodes
};

namespace ltl {
Ltl prop(PropId p);
Ltl neg_prop(PropId p);
Ltl conj(Ltl a, Ltl b);
Ltl disj(Ltl a, Ltl b);
Ltl next(Ltl a);
Ltl future(Ltl a);
Ltl globally(Ltl a);
Ltl until(Ltl a, Ltl b);
Ltl release(Ltl a, Ltl b);
Ltl bneg(Ltl a);
/// p0 | !p0 over the first proposition.
Ltl top(const ApList& aps);
}  // namespace ltl

inline bool is_binary(LtlKind k) {
  return k == LtlKind::And || k == LtlKind::Or || k == LtlKind::Until || k == LtlKind::Release;
}
inline bool is_literal(LtlKind k) { return k == LtlKind::Prop || k == LtlKind::NegProp; }
inline bool is_temporal(LtlKind k) {
  return k == LtlKind::Next || k == LtlKind::Future || k == LtlKind::Globally ||
         k == LtlKind::Until || k == LtlKind::Release;
}

struct ParsedLtl {
  Ltl formula;
  ApList aps;
};

/// Parses against a fixed proposition list; unknown propositions are errors.
Ltl parse_ltl(std::string_view text, const ApList& aps);
/// Parses and collects propositions in order of first appearance.
ParsedLtl parse_ltl(std::string_view text);

std::string print_ltl(const Ltl& f, const ApList& aps);

bool structurally_equal(const Ltl& a, const Ltl& b);

/// Rewrites F, G, R into the core {literals, &, |, ~, X, U}.
/// Throws std::invalid_argument when a rewrite needs TRUE and `aps` is empty.
Ltl desugar(const Ltl& f, const ApList& aps);

std::size_t temporal_depth(const Ltl& f);
std::size_t formula_size(const Ltl& f);
bool is_tilde_free(const Ltl& f);
bool is_next_free(const Ltl& f);
bool is_core(const Ltl& f);
PropId max_prop(const Ltl& f);  // 0 for formulas without literals

// ---------------------------------------------------------------------------
// FO(dep, ~) with extra relation symbols
// ---------------------------------------------------------------------------

enum class FoKind { Eq, Leq, Rel, NegEq, NegLeq, NegRel, Dep, And, Or, Exists, Forall, BoolNeg };

struct FoNode;
using Fo = std::shared_ptr<const FoNode>;

/// `vars` holds the atom arguments. For Dep the last entry is the determined
/// variable and the rest are the determiners. For quantifiers vars[0] is the
/// bound variable and `lhs` the body.
struct FoNode {
  FoKind kind;
  std::string rel;
  std::vector<std::string> vars;
  Fo lhs;
  Fo rhs;
};

namespace fo {
Fo eq(std::string a, std::string b);
Fo leq(std::string a, std::string b);
Fo rel(std::string name, std::vector<std::string> args);
Fo neg_eq(std::string a, std::string b);
Fo neg_leq(std::string a, std::string b);
Fo neg_rel(std::string name, std::vector<std::string> args);
Fo dep(std::vector<std::string> determiners, std::string target);
Fo conj(Fo a, Fo b);
Fo disj(Fo a, Fo b);
Fo exists(std::string v, Fo body);
Fo forall(std::string v, Fo body);
Fo bneg(Fo a);
/// a < b, spelled with atoms: a <= b & !b <= a.
Fo lt(const std::string& a, const std::string& b);
/// not a < b: !a <= b | b <= a.
Fo not_lt(const std::string& a, const std::string& b);
}  // namespace fo

/// Relation symbols available to FO formulas besides = and <=.
/// Propositions become unary relations named "P<name>"; "E" is the binary
/// equal-level relation.
class Signature {
 public:
  Signature() = default;
  explicit Signature(ApList aps, bool equal_level = true);

  const ApList& aps() const { return aps_; }
  void add_relation(const std::string& name, std::size_t arity);
  std::optional<std::size_t> arity(const std::string& name) const;
  const std::map<std::string, std::size_t>& relations() const { return relations_; }

  /// Variables the parser accepts. Defaults to {x, y, z}.
  const std::vector<std::string>& variables() const { return variables_; }
  void add_variable(const std::string& v);
  bool has_variable(const std::string& v) const;

  static std::string prop_relation(const std::string& ap) { return "P" + ap; }

 private:
  ApList aps_;
  std::map<std::string, std::size_t> relations_;
  std::vector<std::string> variables_{"x", "y", "z"};
};

Fo parse_fo(std::string_view text, const Signature& sig);
std::string print_fo(const Fo& f);
bool structurally_equal(const Fo& a, const Fo& b);

/// Free variables, sorted and unique.
std::vector<std::string> free_variables(const Fo& f);
/// All variable names occurring anywhere (bound or free), sorted and unique.
std::vector<std::string> all_variables(const Fo& f);
bool is_flat(const Fo& f);  // no dep atoms and no ~
bool is_tilde_free(const Fo& f);
std::size_t formula_size(const Fo& f);

}  // namespace teamltl
