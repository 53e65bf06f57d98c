#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "teamltl/formula.hpp"

namespace teamltl {

/// A set of propositions, bit i standing for proposition i.
using Letter = std::uint64_t;
inline constexpr std::size_t kMaxPropositions = 64;

inline bool has_prop(Letter l, PropId p) { return (l >> p) & 1u; }

/// Ultimately periodic trace prefix . loop^omega. The loop is never empty.
class Lasso {
 public:
  Lasso(std::vector<Letter> prefix, std::vector<Letter> loop);

  const std::vector<Letter>& prefix() const { return prefix_; }
  const std::vector<Letter>& loop() const { return loop_; }
  std::size_t prefix_length() const { return prefix_.size(); }
  std::size_t loop_length() const { return loop_.size(); }
  /// p + q: positions below this bound are pairwise distinct in the lasso graph.
  std::size_t span() const { return prefix_.size() + loop_.size(); }

  Letter at(std::size_t i) const {
    return i < prefix_.size() ? prefix_[i] : loop_[(i - prefix_.size()) % loop_.size()];
  }

  bool is_canonical() const;

  friend bool operator==(const Lasso&, const Lasso&) = default;
  friend auto operator<=>(const Lasso&, const Lasso&) = default;

 private:
  std::vector<Letter> prefix_;
  std::vector<Letter> loop_;
};

/// Primitive loop, and the prefix never ends with the loop's last letter.
Lasso canonicalize(const Lasso& l);
Letter letter_at(const Lasso& l, std::size_t i);
/// Canonical lasso for t[i, inf).
Lasso suffix(const Lasso& l, std::size_t i);
/// Smallest position with the same suffix as position i.
std::size_t canonical_position(const Lasso& l, std::size_t i);
/// Collapses every run of equal consecutive letters to a single letter.
Lasso destutter(const Lasso& l);

std::size_t hash_value(const Lasso& l);
std::string to_string(const Lasso& l, const ApList& aps);
std::string letter_to_string(Letter a, const ApList& aps);

/// Per-member time pointers, indexed like Team::members().
using Configuration = std::vector<std::size_t>;

/// Finite set of canonical lassos, kept sorted and duplicate-free.
class Team {
 public:
  Team() = default;
  explicit Team(std::vector<Lasso> members);

  const std::vector<Lasso>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  const Lasso& operator[](std::size_t i) const { return members_[i]; }
  std::size_t hash() const { return hash_; }

  bool contains(const Lasso& l) const;

  /// Largest prefix length over the members (0 for the empty team).
  std::size_t max_prefix() const;
  /// lcm of the loop lengths (1 for the empty team). Throws LimitExceeded above `limit`.
  std::size_t loop_lcm(std::size_t limit) const;

  friend bool operator==(const Team& a, const Team& b) { return a.hash_ == b.hash_ && a.members_ == b.members_; }
  friend bool operator<(const Team& a, const Team& b) { return a.members_ < b.members_; }

 private:
  std::vector<Lasso> members_;
  std::size_t hash_ = 0;
};

struct TeamHash {
  std::size_t operator()(const Team& t) const { return t.hash(); }
};

/// Thrown when a configured search limit would be exceeded.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {t[cfg(t), inf) | t in T}; shrinks when suffixes coincide.
Team team_suffix(const Team& team, const Configuration& cfg);
/// Same shift for every member.
Team team_suffix(const Team& team, std::size_t k);

std::string to_string(const Team& t, const ApList& aps);

}  // namespace teamltl
