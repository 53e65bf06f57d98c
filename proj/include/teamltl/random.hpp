#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "teamltl/formula.hpp"
#include "teamltl/foteam.hpp"
#include "teamltl/lasso.hpp"

namespace teamltl {

/// Deterministic random source. Draws are reduced by plain modulo so that the
/// stream is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

  /// Seed for an independent sub-stream, e.g. one per fuzz trial.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index);

 private:
  std::mt19937_64 engine_;
};

struct LassoShape {
  std::size_t max_prefix = 2;
  std::size_t max_loop = 2;
  std::size_t props = 2;
};

struct FormulaShape {
  std::size_t props = 2;
  std::size_t max_depth = 3;     // temporal nesting
  std::size_t max_size = 12;     // node budget
  bool allow_tilde = true;
  bool allow_next = true;
  bool derived_ops = true;       // F, G, R besides X, U
  bool tilde_free_disjuncts = false;  // no ~ below a splitjunction
};

Lasso random_lasso(Rng& rng, const LassoShape& shape);
/// Between min_size and max_size distinct traces (fewer if duplicates collide).
Team random_team(Rng& rng, const LassoShape& shape, std::size_t min_size, std::size_t max_size);
Ltl random_ltl(Rng& rng, const FormulaShape& shape);

struct FoShape {
  std::size_t max_size = 8;  // node budget
  bool allow_dep = true;
  bool allow_tilde = true;
  std::vector<std::string> vars{"x", "y", "z"};
  std::vector<std::pair<std::string, std::size_t>> relations{{"P", 1}, {"R", 2}};
};

Fo random_fo(Rng& rng, const FoShape& shape);
/// Domain e0..e(n-1) with n in [min_size, max_size]; leq and the shape's
/// relations hold on each tuple with probability 1/2.
FoStructure random_structure(Rng& rng, const FoShape& shape, std::size_t min_size, std::size_t max_size);
/// Up to max_rows random assignments over `vars`.
AssignmentTeam random_assignments(Rng& rng, const FoStructure& m, const std::vector<std::string>& vars,
                                  std::size_t max_rows);

}  // namespace teamltl
