#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamltl/lasso.hpp"
#include "teamltl/limits.hpp"

namespace teamltl {

/// Sampled positions of a stuttering function, one list per trace, each
/// covering the trace positions below the horizon it was built for.
struct StutterWitness {
  std::vector<std::vector<std::size_t>> maps;
};

/// Run starts of t below `horizon`: the maximal stuttering function, truncated.
std::vector<std::size_t> maximal_stuttering_positions(const Lasso& t, std::size_t horizon);
/// Maximal collapse maps of every member of T.
StutterWitness maximal_stuttering(const Team& team, std::size_t horizon);
/// Strictly increasing, starts at 0, and t is constant between samples.
bool is_stuttering_prefix(const Lasso& t, const std::vector<std::size_t>& positions);

Team destutter_team(const Team& team);

bool stutter_eq_async(const Team& a, const Team& b);
bool stutter_eq_sync(const Team& a, const Team& b, const Limits& limits = {});

/// Repeats prefix position i extra_prefix[i] more times and loop position j
/// extra_loop[j] more times (missing entries count as zero).
Lasso stretch(const Lasso& t, const std::vector<std::size_t>& extra_prefix, const std::vector<std::size_t>& extra_loop);

/// n teams asynchronously stutter-equivalent to T, made by unrolling loops and
/// repeating random positions.
std::vector<Team> stutter_variants(const Team& team, std::uint64_t seed, std::size_t n);

struct Lemma1Report {
  bool precondition = false;
  std::size_t covers_checked = 0;
  /// Covers of T for which no matching cover of T' exists.
  std::vector<std::pair<Team, Team>> unmatched;
  /// Matching cover of T' for each matched cover, in enumeration order.
  std::vector<std::pair<Team, Team>> matches;
  bool ok() const { return precondition && unmatched.empty(); }
};

/// Every cover T = T1 u T2 must be matched by T' = T1' u T2' with Ti ~ Ti'.
/// Throws std::invalid_argument when T and T' are not stutter-equivalent.
Lemma1Report check_lemma1(const Team& t, const Team& t_prime, const Limits& limits = {});

struct Lemma2Report {
  Configuration j;
  Configuration i;
  bool below = false;          // i <= j componentwise
  bool run_starts = false;     // every i(t) is sampled by t's maximal stuttering function
  bool equivalent = false;     // T[i] and T[j] asynchronously stutter-equivalent
  bool ok() const { return below && run_starts && equivalent; }
};

/// i(t) is the start of the run that contains j(t).
Lemma2Report check_lemma2(const Team& team, const Configuration& j);

}  // namespace teamltl
