#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "teamltl/limits.hpp"

namespace teamltl {

struct FuzzOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  Limits limits;
};

struct Counterexample {
  std::size_t trial = 0;
  std::string original;   // instance as generated
  std::string minimized;  // after shrinking
  std::string detail;     // what disagreed
};

struct FuzzReport {
  std::string property;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;  // trials that hit a search cap
  std::vector<Counterexample> violations;
  /// Informational counters, in insertion order.
  std::vector<std::pair<std::string, std::string>> notes;
  /// For existence checks: the suite passes when a violation is found.
  bool expect_violation = false;

  bool ok() const { return expect_violation ? !violations.empty() : violations.empty(); }
  void note(const std::string& key, const std::string& value);
  std::string text() const;
  std::string json() const;
};

/// Suites accepted by run_fuzz.
const std::vector<std::string>& fuzz_properties();

/// Runs the named suite. Throws std::invalid_argument for unknown names.
///   flatness    async verdict vs conjunction of classical verdicts, ~-free formulas
///   duality     native F, G, R vs their ~-based rewrites, both semantics
///   stutter     X-free formulas agree on a team and its stutter variants (async)
///   stutter-next  finds a formula with X that tells stutter variants apart
///   kamp-async  eval_async vs FO evaluation of translate_async at B and 2B
///   kamp-sync   eval_sync vs FO evaluation of translate_sync at B and 2B
///   closure     closed sentence vs free-variable translation on the same structure
///   singleton   sync, async and classical verdicts agree on one trace
///   lemma1      every cover of T is matched by a cover of a stutter variant
///   locality    FO verdict unchanged by restricting S to the free variables
///   fo-flatness FO verdict of flat formulas vs Tarski semantics per assignment
///   fo-pruning  pruned FO evaluator vs the unpruned reference evaluator
FuzzReport run_fuzz(const std::string& property, const FuzzOptions& options);

}  // namespace teamltl
