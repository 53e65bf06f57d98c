#include "teamltl/stutter.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "teamltl/random.hpp"
#include "teamltl/teamcheck.hpp"

namespace teamltl {

std::vector<std::size_t> maximal_stuttering_positions(const Lasso& t, std::size_t horizon) {
  const Lasso c = canonicalize(t);
  // a^omega tails have no further run boundaries; the function keeps going one step at a time.
  const bool constant_tail = c.loop_length() == 1;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < horizon; ++k) {
    if (k == 0 || t.at(k) != t.at(k - 1) || (constant_tail && k >= c.prefix_length())) out.push_back(k);
  }
  return out;
}

StutterWitness maximal_stuttering(const Team& team, std::size_t horizon) {
  StutterWitness w;
  for (const Lasso& t : team.members()) w.maps.push_back(maximal_stuttering_positions(t, horizon));
  return w;
}

bool is_stuttering_prefix(const Lasso& t, const std::vector<std::size_t>& positions) {
  if (positions.empty() || positions.front() != 0) return false;
  for (std::size_t k = 0; k + 1 < positions.size(); ++k) {
    if (positions[k + 1] <= positions[k]) return false;
    for (std::size_t i = positions[k]; i < positions[k + 1]; ++i) {
      if (t.at(i) != t.at(positions[k])) return false;
    }
  }
  return true;
}

Team destutter_team(const Team& team) {
  std::vector<Lasso> out;
  out.reserve(team.size());
  for (const Lasso& t : team.members()) out.push_back(destutter(t));
  return Team(std::move(out));
}

bool stutter_eq_async(const Team& a, const Team& b) { return destutter_team(a) == destutter_team(b); }

namespace {

// Letter tuples of several traces, interned as opaque letters of a product lasso.
class TupleTable {
 public:
  Letter id(const std::vector<Letter>& tuple) {
    auto [it, inserted] = ids_.try_emplace(tuple, ids_.size());
    return it->second;
  }

 private:
  std::map<std::vector<Letter>, Letter> ids_;
};

Lasso product(const std::vector<const Lasso*>& traces, TupleTable& table, std::size_t max_lcm) {
  std::size_t prefix = 0, lcm = 1;
  for (const Lasso* t : traces) {
    prefix = std::max(prefix, t->prefix_length());
    lcm = std::lcm(lcm, t->loop_length());
    if (lcm > max_lcm) throw LimitExceeded("product loop lcm " + std::to_string(lcm) + " exceeds the limit");
  }
  std::vector<Letter> pre, loop;
  std::vector<Letter> tuple(traces.size());
  for (std::size_t i = 0; i < prefix + lcm; ++i) {
    for (std::size_t k = 0; k < traces.size(); ++k) tuple[k] = traces[k]->at(i);
    (i < prefix ? pre : loop).push_back(table.id(tuple));
  }
  return Lasso(std::move(pre), std::move(loop));
}

}  // namespace

bool stutter_eq_sync(const Team& a, const Team& b, const Limits& limits) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  if (a.size() > limits.max_bijection_team) {
    throw LimitExceeded("bijection search over teams of " + std::to_string(a.size()) + " traces exceeds the limit " +
                        std::to_string(limits.max_bijection_team));
  }
  std::vector<Lasso> na, nb;
  for (const Lasso& t : a.members()) na.push_back(destutter(t));
  for (const Lasso& t : b.members()) nb.push_back(destutter(t));
  {
    auto sa = na, sb = nb;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }

  TupleTable table;
  std::vector<const Lasso*> order_a;
  for (const Lasso& t : a.members()) order_a.push_back(&t);
  const Lasso target = destutter(product(order_a, table, limits.max_lcm));

  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool plausible = true;
    for (std::size_t i = 0; i < perm.size() && plausible; ++i) plausible = na[i] == nb[perm[i]];
    if (!plausible) continue;
    std::vector<const Lasso*> order_b;
    for (std::size_t i : perm) order_b.push_back(&b[i]);
    if (destutter(product(order_b, table, limits.max_lcm)) == target) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

Lasso stretch(const Lasso& t, const std::vector<std::size_t>& extra_prefix, const std::vector<std::size_t>& extra_loop) {
  auto expand = [](const std::vector<Letter>& word, const std::vector<std::size_t>& extra) {
    std::vector<Letter> out;
    for (std::size_t i = 0; i < word.size(); ++i) {
      std::size_t copies = 1 + (i < extra.size() ? extra[i] : 0);
      out.insert(out.end(), copies, word[i]);
    }
    return out;
  };
  return Lasso(expand(t.prefix(), extra_prefix), expand(t.loop(), extra_loop));
}

std::vector<Team> stutter_variants(const Team& team, std::uint64_t seed, std::size_t n) {
  std::vector<Team> out;
  for (std::size_t v = 0; v < n; ++v) {
    Rng rng(Rng::derive(seed, v));
    std::vector<Lasso> members;
    for (const Lasso& t : team.members()) {
      std::vector<Letter> prefix = t.prefix();
      std::size_t unroll = rng.below(3);
      for (std::size_t u = 0; u < unroll; ++u) prefix.insert(prefix.end(), t.loop().begin(), t.loop().end());
      std::vector<std::size_t> extra_prefix(prefix.size()), extra_loop(t.loop_length());
      for (auto& e : extra_prefix) e = rng.chance(1, 3) ? 1 + rng.below(2) : 0;
      for (auto& e : extra_loop) e = rng.chance(1, 4) ? 1 + rng.below(2) : 0;
      members.push_back(stretch(Lasso(std::move(prefix), t.loop()), extra_prefix, extra_loop));
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

Lemma1Report check_lemma1(const Team& t, const Team& t_prime, const Limits& limits) {
  if (!stutter_eq_async(t, t_prime)) {
    throw std::invalid_argument("check_lemma1 needs asynchronously stutter-equivalent teams");
  }
  Lemma1Report report;
  report.precondition = true;
  const auto covers_prime = enumerate_covers(t_prime, limits);
  for (const auto& [t1, t2] : enumerate_covers(t, limits)) {
    ++report.covers_checked;
    const Team n1 = destutter_team(t1), n2 = destutter_team(t2);
    auto match = std::find_if(covers_prime.begin(), covers_prime.end(), [&](const auto& c) {
      return destutter_team(c.first) == n1 && destutter_team(c.second) == n2;
    });
    if (match == covers_prime.end()) {
      report.unmatched.emplace_back(t1, t2);
    } else {
      report.matches.push_back(*match);
    }
  }
  return report;
}

Lemma2Report check_lemma2(const Team& team, const Configuration& j) {
  if (j.size() != team.size()) throw std::invalid_argument("configuration does not match the team");
  Lemma2Report r;
  r.j = j;
  r.i.resize(j.size());
  r.run_starts = true;
  for (std::size_t k = 0; k < team.size(); ++k) {
    const Lasso& t = team[k];
    std::size_t pos = j[k];
    while (pos > 0 && t.at(pos - 1) == t.at(pos)) --pos;
    r.i[k] = pos;
    const auto samples = maximal_stuttering_positions(t, pos + 1);
    r.run_starts = r.run_starts && !samples.empty() && samples.back() == pos;
  }
  r.below = true;
  for (std::size_t k = 0; k < j.size(); ++k) r.below = r.below && r.i[k] <= j[k];
  r.equivalent = stutter_eq_async(team_suffix(team, r.i), team_suffix(team, j));
  return r;
}

}  // namespace teamltl
