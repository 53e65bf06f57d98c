#pragma once

#include <cstddef>
#include <string>

namespace teamltl {

/// Search caps shared by all evaluators. Exceeding any of them is a hard
/// LimitExceeded error, never a silent approximation.
struct Limits {
  std::size_t max_lcm = 1024;          // lcm of loop lengths in a team
  std::size_t max_cover_team = 12;     // |T| for splitjunction cover enumeration
  std::size_t bound_multiplier = 1;    // scales temporal search ranges (robustness checks)
  std::size_t max_fo_lax = 18;         // sum of candidate-set sizes for raw lax supplementation
  std::size_t max_fo_choices = 1u << 22;  // supplementations or covers tried at one node
  std::size_t max_fo_cover_team = 16;  // |S| for unrestricted FO cover enumeration
  std::size_t max_bijection_team = 8;  // |T| for synchronous stutter bijection search
  std::size_t max_kripke_paths = 1u << 20;

  /// Reads overrides from a spec like "lcm=2048,cover=10,fo-lax=20".
  /// Unknown keys or malformed values throw std::invalid_argument.
  void apply(const std::string& spec);
  /// Defaults overridden by the TEAMLTL_CAPS environment variable, if set.
  static Limits from_env();
};

}  // namespace teamltl
