#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/limits.hpp"

namespace teamltl {

using Element = std::uint32_t;

/// Finite structure with named elements. The order atom x <= y reads the
/// binary relation "leq", which always exists (possibly empty).
class FoStructure {
 public:
  FoStructure() { relations_["leq"] = Relation{2, {}}; }
  explicit FoStructure(std::vector<std::string> domain);

  std::size_t size() const { return names_.size(); }
  const std::string& name(Element e) const { return names_.at(e); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Element> find(const std::string& name) const;

  /// Declares a relation; redeclaring with another arity throws.
  void declare(const std::string& rel, std::size_t arity);
  /// Declares the relation on first use. Throws on arity mismatch or bad elements.
  void add(const std::string& rel, const std::vector<Element>& tuple);

  bool has_relation(const std::string& rel) const { return relations_.count(rel) != 0; }
  std::size_t arity(const std::string& rel) const;
  bool holds(const std::string& rel, const std::vector<Element>& tuple) const;
  bool leq(Element a, Element b) const { return leq_.empty() ? false : leq_[a * names_.size() + b]; }

  /// Sorted tuples of a relation.
  std::vector<std::vector<Element>> tuples(const std::string& rel) const;
  std::vector<std::string> relation_names() const;

 private:
  struct Relation {
    std::size_t arity;
    std::vector<std::vector<Element>> tuples;  // kept sorted, unique
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, Element> index_;
  std::map<std::string, Relation> relations_;
  // Dense copies of binary/unary relations for fast lookups, indexed like names_.
  std::vector<bool> leq_;
  std::unordered_map<std::string, std::vector<bool>> dense_;
};

/// Values of an assignment, aligned with AssignmentTeam::vars().
using Assignment = std::vector<Element>;

/// A set of assignments over one variable domain. Variables are kept sorted
/// and assignments sorted and duplicate-free.
class AssignmentTeam {
 public:
  AssignmentTeam() = default;
  AssignmentTeam(std::vector<std::string> vars, std::vector<Assignment> rows);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Assignment>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }
  std::optional<std::size_t> var_index(const std::string& v) const;

  /// Restriction to the given variables (which must all be in the domain).
  AssignmentTeam project(const std::vector<std::string>& vars) const;
  /// Subteam made of the rows selected by `mask` bit i for row i.
  AssignmentTeam subteam(const std::vector<bool>& keep) const;

  friend bool operator==(const AssignmentTeam&, const AssignmentTeam&) = default;
  friend auto operator<=>(const AssignmentTeam&, const AssignmentTeam&) = default;

 private:
  std::vector<std::string> vars_;
  std::vector<Assignment> rows_;
};

std::string to_string(const AssignmentTeam& s, const FoStructure& m);

/// S[M/x].
AssignmentTeam duplicate(const AssignmentTeam& s, const std::string& x, const FoStructure& m);

/// Calls `visit` with S[F/x] for every F: S -> nonempty subsets of M, in a
/// fixed order, until it returns false. Repeated teams are passed again.
/// Throws LimitExceeded when |S|*|M| exceeds limits.max_fo_lax.
void supplementations(const AssignmentTeam& s, const std::string& x, const FoStructure& m,
                      const std::function<bool(const AssignmentTeam&)>& visit, const Limits& limits = {});

/// Tarski satisfaction of a dep-free, ~-free formula by one assignment.
bool tarski(const FoStructure& m, const std::vector<std::string>& vars, const Assignment& s, const Fo& f);

/// Conjunction of Tarski satisfaction over S. Throws std::invalid_argument
/// unless f is flat.
bool flat_fast_path(const FoStructure& m, const AssignmentTeam& s, const Fo& f);

struct FoEvalStats {
  std::size_t memo_hits = 0;
  std::size_t memo_entries = 0;
  std::size_t choices = 0;  // supplementations and covers tried
};

/// Team semantics for FO(dep, ~) with lax quantifiers.
///
/// The default mode prunes the supplementation and cover searches with
/// rewrites that never change the verdict (dep-forced functional choices,
/// flat conjunct filtering, downward closure, anchored constants). Reference
/// mode enumerates the definition directly and is only usable on tiny inputs.
class FoEvaluator {
 public:
  FoEvaluator(const FoStructure& m, Limits limits = {}, bool reference = false);

  bool eval(const AssignmentTeam& s, const Fo& f);
  const FoEvalStats& stats() const { return stats_; }

 private:
  struct NodeInfo {
    std::vector<std::string> free;  // sorted
    bool flat = false;
    bool downward_closed = false;   // ~-free
  };
  struct Key {
    const FoNode* node;
    AssignmentTeam team;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  const NodeInfo& info(const FoNode* f);
  bool eval_node(const AssignmentTeam& s, const FoNode* f);
  bool eval_uncached(const AssignmentTeam& s, const FoNode* f);
  bool eval_or(const AssignmentTeam& s, const FoNode* f);
  bool eval_exists(const AssignmentTeam& s, const FoNode* f);
  bool eval_exists_reference(const AssignmentTeam& s, const FoNode* f);
  bool tarski_node(const std::vector<std::string>& vars, const Assignment& a, const FoNode* f);
  void count_choice();
  void check_open(std::size_t open) const;

  const FoStructure& m_;
  Limits limits_;
  bool reference_;
  FoEvalStats stats_;
  std::unordered_map<const FoNode*, NodeInfo> info_;
  std::unordered_map<Key, bool, KeyHash> memo_;
  // Holds every formula seen so node pointers in the caches stay valid.
  std::vector<Fo> pinned_;
};

bool eval_fo(const FoStructure& m, const AssignmentTeam& s, const Fo& f, const Limits& limits = {});
bool eval_fo_reference(const FoStructure& m, const AssignmentTeam& s, const Fo& f, const Limits& limits = {});

}  // namespace teamltl
