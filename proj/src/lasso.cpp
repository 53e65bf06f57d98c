#include "teamltl/lasso.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace teamltl {

Lasso::Lasso(std::vector<Letter> prefix, std::vector<Letter> loop)
    : prefix_(std::move(prefix)), loop_(std::move(loop)) {
  if (loop_.empty()) throw std::invalid_argument("lasso loop must be nonempty");
}

namespace {

std::size_t primitive_period(const std::vector<Letter>& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = w[i] == w[i - d];
    if (ok) return d;
  }
  return n;
}

}  // namespace

bool Lasso::is_canonical() const {
  if (primitive_period(loop_) != loop_.size()) return false;
  return prefix_.empty() || prefix_.back() != loop_.back();
}

Lasso canonicalize(const Lasso& l) {
  std::vector<Letter> prefix = l.prefix();
  std::vector<Letter> loop = l.loop();
  loop.resize(primitive_period(loop));
  // t(p-1) == t(p-1+q) means the periodic part already starts at p-1.
  while (!prefix.empty() && prefix.back() == loop.back()) {
    prefix.pop_back();
    std::rotate(loop.rbegin(), loop.rbegin() + 1, loop.rend());
  }
  return Lasso(std::move(prefix), std::move(loop));
}

Letter letter_at(const Lasso& l, std::size_t i) { return l.at(i); }

std::size_t canonical_position(const Lasso& l, std::size_t i) {
  const std::size_t p = l.prefix_length();
  const std::size_t q = l.loop_length();
  if (i < p + q) return i;
  return p + (i - p) % q;
}

Lasso suffix(const Lasso& l, std::size_t i) {
  const std::size_t p = l.prefix_length();
  if (i < p) {
    return canonicalize(Lasso({l.prefix().begin() + static_cast<std::ptrdiff_t>(i), l.prefix().end()}, l.loop()));
  }
  std::vector<Letter> loop = l.loop();
  std::rotate(loop.begin(), loop.begin() + static_cast<std::ptrdiff_t>((i - p) % loop.size()), loop.end());
  return canonicalize(Lasso({}, std::move(loop)));
}

Lasso destutter(const Lasso& l) {
  // Emission at position i depends on (t(i-1), t(i)); for i > p that pair is
  // periodic with period q, so one loop traversal after p+1 fixes the tail.
  const std::size_t p = l.prefix_length();
  const std::size_t q = l.loop_length();
  std::vector<Letter> head;
  for (std::size_t i = 0; i <= p; ++i) {
    if (i == 0 || l.at(i) != l.at(i - 1)) head.push_back(l.at(i));
  }
  std::vector<Letter> tail;
  for (std::size_t i = p + 1; i <= p + q; ++i) {
    if (l.at(i) != l.at(i - 1)) tail.push_back(l.at(i));
  }
  if (tail.empty()) {
    Letter last = head.back();
    head.pop_back();
    return canonicalize(Lasso(std::move(head), {last}));
  }
  return canonicalize(Lasso(std::move(head), std::move(tail)));
}

std::size_t hash_value(const Lasso& l) {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ l.prefix_length();
  auto mix = [&h](std::uint64_t v) { h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2); };
  for (Letter a : l.prefix()) mix(a);
  mix(0xfeedull);
  for (Letter a : l.loop()) mix(a);
  return h;
}

std::string letter_to_string(Letter a, const ApList& aps) {
  std::string out = "{";
  bool first = true;
  for (PropId p = 0; p < kMaxPropositions; ++p) {
    if (!has_prop(a, p)) continue;
    if (!first) out += ",";
    out += p < aps.size() ? aps.name(p) : "#" + std::to_string(p);
    first = false;
  }
  return out + "}";
}

std::string to_string(const Lasso& l, const ApList& aps) {
  std::string out;
  for (Letter a : l.prefix()) out += letter_to_string(a, aps) + " ";
  out += "(";
  for (std::size_t i = 0; i < l.loop_length(); ++i) {
    if (i) out += " ";
    out += letter_to_string(l.loop()[i], aps);
  }
  return out + ")^w";
}

Team::Team(std::vector<Lasso> members) {
  members_.reserve(members.size());
  for (const Lasso& l : members) members_.push_back(l.is_canonical() ? l : canonicalize(l));
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  hash_ = members_.size();
  for (const Lasso& l : members_) hash_ = hash_ * 1000003u ^ hash_value(l);
}

bool Team::contains(const Lasso& l) const { return std::binary_search(members_.begin(), members_.end(), l); }

std::size_t Team::max_prefix() const {
  std::size_t m = 0;
  for (const Lasso& l : members_) m = std::max(m, l.prefix_length());
  return m;
}

std::size_t Team::loop_lcm(std::size_t limit) const {
  std::size_t m = 1;
  for (const Lasso& l : members_) {
    m = std::lcm(m, l.loop_length());
    if (m > limit) {
      throw LimitExceeded("loop length lcm " + std::to_string(m) + " exceeds the limit " + std::to_string(limit));
    }
  }
  return m;
}

Team team_suffix(const Team& team, const Configuration& cfg) {
  if (cfg.size() != team.size()) {
    throw std::invalid_argument("configuration has " + std::to_string(cfg.size()) + " entries for a team of " +
                                std::to_string(team.size()));
  }
  std::vector<Lasso> out;
  out.reserve(team.size());
  for (std::size_t i = 0; i < team.size(); ++i) out.push_back(suffix(team[i], cfg[i]));
  return Team(std::move(out));
}

Team team_suffix(const Team& team, std::size_t k) { return team_suffix(team, Configuration(team.size(), k)); }

std::string to_string(const Team& t, const ApList& aps) {
  std::string out = "{";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ", ";
    out += to_string(t[i], aps);
  }
  return out + "}";
}

}  // namespace teamltl
