#include "teamltl/kripke.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include <json.hpp>

namespace teamltl {

bool KripkeStructure::has_edge(std::size_t from, std::size_t to) const {
  const auto& s = successors.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

KripkeStructure parse_kripke(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("Kripke file is not valid JSON: ") + e.what());
  }
  try {
    KripkeStructure k;
    for (const auto& ap : doc.at("ap")) k.aps.intern(ap.get<std::string>());
    if (k.aps.size() > kMaxPropositions) throw std::invalid_argument("too many propositions");

    std::unordered_map<std::string, std::size_t> index;
    for (const auto& st : doc.at("states")) {
      const auto id = st.at("id").get<std::string>();
      if (!index.emplace(id, k.ids.size()).second) throw std::invalid_argument("duplicate state '" + id + "'");
      Letter label = 0;
      if (st.contains("label")) {
        for (const auto& ap : st.at("label")) {
          auto p = k.aps.find(ap.get<std::string>());
          if (!p) throw std::invalid_argument("state '" + id + "' uses unknown proposition '" + ap.get<std::string>() + "'");
          label |= Letter{1} << *p;
        }
      }
      k.ids.push_back(id);
      k.labels.push_back(label);
    }
    auto state = [&](const nlohmann::json& j) {
      const auto id = j.get<std::string>();
      auto it = index.find(id);
      if (it == index.end()) throw std::invalid_argument("reference to undeclared state '" + id + "'");
      return it->second;
    };
    k.successors.resize(k.ids.size());
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("an edge must be a pair of state ids");
      k.successors[state(e[0])].push_back(state(e[1]));
    }
    for (auto& s : k.successors) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    k.init = state(doc.at("init"));
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k.successors[i].empty()) {
        throw std::invalid_argument("transition relation is not left-total: state '" + k.ids[i] + "' has no successor");
      }
    }
    return k;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed Kripke file: ") + e.what());
  }
}

KripkeTraces enumerate_lasso_traces(const KripkeStructure& k, std::size_t max_prefix, std::size_t max_loop,
                                    const Limits& limits) {
  if (max_prefix < 1 || max_loop < 1) throw std::invalid_argument("prefix and loop bounds must be at least 1");
  KripkeTraces out;
  std::map<Lasso, LassoPath> found;
  std::vector<std::size_t> walk{k.init};

  // Every walk of length n <= max_prefix + max_loop, closed into each loop it admits.
  auto visit = [&](auto&& self) -> void {
    const std::size_t n = walk.size();
    for (std::size_t a = 0; a < n && a <= max_prefix; ++a) {
      if (n - a > max_loop || !k.has_edge(walk.back(), walk[a])) continue;
      if (++out.paths > limits.max_kripke_paths) {
        throw LimitExceeded("Kripke path enumeration exceeds " + std::to_string(limits.max_kripke_paths) + " paths");
      }
      std::vector<Letter> prefix, loop;
      for (std::size_t i = 0; i < n; ++i) (i < a ? prefix : loop).push_back(k.labels[walk[i]]);
      LassoPath path{{walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(a)},
                     {walk.begin() + static_cast<std::ptrdiff_t>(a), walk.end()}};
      found.try_emplace(canonicalize(Lasso(std::move(prefix), std::move(loop))), std::move(path));
    }
    if (n == max_prefix + max_loop) return;
    for (std::size_t next : k.successors[walk.back()]) {
      walk.push_back(next);
      self(self);
      walk.pop_back();
    }
  };
  visit(visit);

  std::vector<Lasso> members;
  for (const auto& [trace, path] : found) members.push_back(trace);
  out.team = Team(members);
  for (const Lasso& t : out.team.members()) out.witnesses.push_back(found.at(t));
  return out;
}

bool replays(const KripkeStructure& k, const LassoPath& path, const Lasso& trace) {
  if (path.loop.empty()) return false;
  std::vector<std::size_t> states = path.prefix;
  states.insert(states.end(), path.loop.begin(), path.loop.end());
  if (states.front() != k.init) return false;
  for (std::size_t s : states) {
    if (s >= k.size()) return false;
  }
  for (std::size_t i = 0; i + 1 < states.size(); ++i) {
    if (!k.has_edge(states[i], states[i + 1])) return false;
  }
  if (!k.has_edge(states.back(), path.loop.front())) return false;
  std::vector<Letter> prefix, loop;
  for (std::size_t s : path.prefix) prefix.push_back(k.labels[s]);
  for (std::size_t s : path.loop) loop.push_back(k.labels[s]);
  return canonicalize(Lasso(std::move(prefix), std::move(loop))) == canonicalize(trace);
}

}  // namespace teamltl
