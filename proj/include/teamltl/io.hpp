#pragma once

#include <string>
#include <string_view>

#include "teamltl/foteam.hpp"
#include "teamltl/formula.hpp"
#include "teamltl/lasso.hpp"

namespace teamltl {

/// Whole file as a string; throws std::runtime_error if it cannot be read.
std::string read_file(const std::string& path);

struct TeamFile {
  ApList aps;
  Team team;
};

/// {"ap": [...], "traces": [{"prefix": [[...], ...], "loop": [[...], ...]}, ...]}.
/// Traces are canonicalized and deduplicated. Throws std::invalid_argument.
TeamFile parse_team(std::string_view json_text);
std::string team_to_json(const Team& team, const ApList& aps);

struct StructureFile {
  FoStructure structure;
  AssignmentTeam team;
  /// Relations of the structure (leq excluded) and the team's variables.
  Signature signature;
};

/// {"domain": [...], "relations": {"leq": [[a, b], ...], ...}, "team": [{"x": a}, ...]}.
/// Optional extras: "arities" ({"Pp": 1}) for relations without tuples, and
/// "vars" naming the variables of an empty team.
StructureFile parse_structure(std::string_view json_text);
std::string structure_to_json(const FoStructure& m, const AssignmentTeam& team);

}  // namespace teamltl
