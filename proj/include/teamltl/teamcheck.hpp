#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/lasso.hpp"
#include "teamltl/limits.hpp"

namespace teamltl {

enum class Semantics { Sync, Async };

const char* to_string(Semantics s);

struct CoverWitness {
  Team left;
  Team right;
};

/// For the outermost operator: the shift k (sync) or configuration (async)
/// that satisfies F/U or refutes G/R, or the cover that satisfies a split.
using Witness = std::variant<std::monostate, std::size_t, Configuration, CoverWitness>;

struct Verdict {
  bool holds = false;
  Witness witness;
};

/// Every ordered pair (A, B) with A u B = T: 3^|T| pairs.
std::vector<std::pair<Team, Team>> enumerate_covers(const Team& team, const Limits& limits = {});

/// Mixed-radix counter over the box prod [0, bound[i]).
/// An empty bound vector has exactly one (empty) configuration.
class ConfigurationOdometer {
 public:
  explicit ConfigurationOdometer(std::vector<std::size_t> bounds);
  bool valid() const { return valid_; }
  const Configuration& current() const { return current_; }
  void advance();

 private:
  std::vector<std::size_t> bounds_;
  Configuration current_;
  bool valid_;
};

/// Without a bound: all f with f(t) < p_t + q_t. With one: all f' < strict_below.
std::vector<Configuration> canonical_configurations(const Team& team,
                                                    const std::optional<Configuration>& strict_below = std::nullopt);

/// Brute-force decision procedure for T |= phi over lasso teams.
/// Results are memoized per (subformula, team); an instance is tied to the
/// formula objects it has seen, so keep formulas alive while it is in use.
class TeamEvaluator {
 public:
  explicit TeamEvaluator(Semantics semantics, Limits limits = {});

  Verdict check(const Team& team, const Ltl& f);
  bool holds(const Team& team, const Ltl& f) { return eval(team, f.get()); }

  Semantics semantics() const { return semantics_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Key {
    const LtlNode* node;
    Team team;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<const void*>{}(k.node) * 31u ^ k.team.hash();
    }
  };

  bool eval(const Team& team, const LtlNode* f);
  bool eval_uncached(const Team& team, const LtlNode* f, Witness* witness);

  bool temporal_sync(const Team& team, const LtlNode* f, Witness* witness);
  bool temporal_async(const Team& team, const LtlNode* f, Witness* witness);

  std::vector<std::size_t> async_bounds(const Team& team) const;

  Semantics semantics_;
  Limits limits_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

Verdict eval_sync(const Team& team, const Ltl& f, const Limits& limits = {});
Verdict eval_async(const Team& team, const Ltl& f, const Limits& limits = {});
Verdict evaluate(Semantics s, const Team& team, const Ltl& f, const Limits& limits = {});

/// Classical single-trace satisfaction; ~ is read as plain negation.
/// The witness is the shift k for an outermost F/U (or refuting G/R).
Verdict eval_classical(const Lasso& trace, const Ltl& f);

/// Replays a witness through the defining clause of the outermost operator.
/// Returns true when the witness reproduces the verdict.
bool replay_witness(Semantics s, const Team& team, const Ltl& f, const Verdict& v, const Limits& limits = {});

}  // namespace teamltl
