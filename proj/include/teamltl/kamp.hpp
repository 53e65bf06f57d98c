#pragma once

#include <cstddef>
#include <string>

#include "teamltl/foteam.hpp"
#include "teamltl/formula.hpp"
#include "teamltl/lasso.hpp"
#include "teamltl/limits.hpp"

namespace teamltl {

/// Inner bound of the asynchronous U clause: z < y follows the strict
/// configuration order of the temporal semantics, z <= y is the printed form.
enum class AsyncUntil { Strict, Printed };

/// Scope of the second conjunct of the synchronous U clause. Printed leaves
/// it outside the outer Ey, so y occurs free there.
enum class SyncUntil { Repaired, Printed };

struct AsyncOptions {
  AsyncUntil until = AsyncUntil::Strict;
  bool omit_dep = false;  // drop dep(x,y) from the outer quantifier of U
};

const char* to_string(AsyncUntil v);
const char* to_string(SyncUntil v);

/// The variable after u in the cycle x -> y -> z -> x.
std::string next_variable(const std::string& u);

/// S(u,v): v is the immediate successor of u, with w as the third variable.
Fo successor(const std::string& u, const std::string& v);

/// Throws std::invalid_argument if f has F, G or R, or base is not x, y or z.
Fo translate_async(const Ltl& f, const ApList& aps, const std::string& base = "x", AsyncOptions options = {});
Fo translate_sync(const Ltl& f, const ApList& aps, const std::string& base = "x", SyncUntil variant = SyncUntil::Repaired);

/// Ax(Ey(y<x) | (Ay(!y<x) & psi)). Throws unless x is psi's only free variable.
Fo close_sentence(const Fo& psi);

/// Every variable of f (bound or free) is among x, y, z.
bool uses_three_variables(const Fo& f);

/// T x {0..B-1} with leq, P<ap> and optionally E. Element ids are "t<i>@<j>"
/// with i the member index in the team.
struct EncodedStructure {
  FoStructure structure;
  std::size_t traces = 0;
  std::size_t bound = 0;

  Element element(std::size_t trace, std::size_t position) const {
    return static_cast<Element>(trace * bound + position);
  }
  /// S^u_T: u mapped to the first position of every trace.
  AssignmentTeam initial_team(const std::string& var = "x") const;
  /// Sentence evaluation: the team holding the empty assignment.
  static AssignmentTeam empty_assignment();
};

EncodedStructure build_structure(const Team& team, std::size_t bound, const ApList& aps, bool equal_level);

/// (max prefix + lcm of loops) * (temporal depth of the desugared formula + 2).
std::size_t default_bound(const Team& team, const Ltl& f, const ApList& aps, const Limits& limits = {});

}  // namespace teamltl
