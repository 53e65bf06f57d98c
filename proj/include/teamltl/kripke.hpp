#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "teamltl/formula.hpp"
#include "teamltl/lasso.hpp"
#include "teamltl/limits.hpp"

namespace teamltl {

/// Finite Kripke structure K = (W, R, eta, w0) with states indexed 0..n-1.
struct KripkeStructure {
  ApList aps;
  std::vector<std::string> ids;
  std::vector<Letter> labels;
  std::vector<std::vector<std::size_t>> successors;  // sorted, unique
  std::size_t init = 0;

  std::size_t size() const { return ids.size(); }
  bool has_edge(std::size_t from, std::size_t to) const;
};

/// Throws std::invalid_argument on malformed input, unknown states or
/// propositions, or states without outgoing transitions.
KripkeStructure parse_kripke(std::string_view json_text);

/// State sequence u . v^omega starting in the initial state.
struct LassoPath {
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> loop;
};

struct KripkeTraces {
  Team team;
  /// The first path found for each member, indexed like team.members().
  std::vector<LassoPath> witnesses;
  std::size_t paths = 0;  // lasso paths visited
};

/// Canonical traces of all lasso paths from w0 with |u| <= max_prefix and
/// 1 <= |v| <= max_loop. Only a finite part of Traces(K).
KripkeTraces enumerate_lasso_traces(const KripkeStructure& k, std::size_t max_prefix, std::size_t max_loop,
                                    const Limits& limits = {});

/// The path starts in w0, follows R, closes its loop, and reads off `trace`.
bool replays(const KripkeStructure& k, const LassoPath& path, const Lasso& trace);

}  // namespace teamltl
