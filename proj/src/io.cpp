#include "teamltl/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace teamltl {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

namespace {

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string(what) + " is not valid JSON: " + e.what());
  }
}

Letter parse_letter(const json& j, const ApList& aps) {
  Letter l = 0;
  for (const auto& name : j) {
    auto p = aps.find(name.get<std::string>());
    if (!p) throw std::invalid_argument("unknown proposition '" + name.get<std::string>() + "'");
    l |= Letter{1} << *p;
  }
  return l;
}

json letter_json(Letter l, const ApList& aps) {
  json out = json::array();
  for (PropId p = 0; p < aps.size(); ++p) {
    if (has_prop(l, p)) out.push_back(aps.name(p));
  }
  return out;
}

}  // namespace

TeamFile parse_team(std::string_view json_text) {
  const json doc = parse_json(json_text, "team file");
  try {
    TeamFile out;
    for (const auto& ap : doc.at("ap")) {
      const auto name = ap.get<std::string>();
      if (out.aps.find(name)) throw std::invalid_argument("proposition '" + name + "' listed twice");
      out.aps.intern(name);
    }
    if (out.aps.size() > kMaxPropositions) throw std::invalid_argument("too many propositions");
    std::vector<Lasso> members;
    for (const auto& t : doc.at("traces")) {
      std::vector<Letter> prefix, loop;
      if (t.contains("prefix")) {
        for (const auto& l : t.at("prefix")) prefix.push_back(parse_letter(l, out.aps));
      }
      for (const auto& l : t.at("loop")) loop.push_back(parse_letter(l, out.aps));
      if (loop.empty()) throw std::invalid_argument("a trace needs a nonempty loop");
      members.emplace_back(std::move(prefix), std::move(loop));
    }
    out.team = Team(std::move(members));
    return out;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed team file: ") + e.what());
  }
}

std::string team_to_json(const Team& team, const ApList& aps) {
  json traces = json::array();
  for (const Lasso& t : team.members()) {
    json prefix = json::array(), loop = json::array();
    for (Letter l : t.prefix()) prefix.push_back(letter_json(l, aps));
    for (Letter l : t.loop()) loop.push_back(letter_json(l, aps));
    traces.push_back({{"prefix", prefix}, {"loop", loop}});
  }
  return json{{"ap", aps.names()}, {"traces", traces}}.dump(2);
}

StructureFile parse_structure(std::string_view json_text) {
  const json doc = parse_json(json_text, "structure file");
  try {
    StructureFile out;
    std::vector<std::string> domain;
    for (const auto& e : doc.at("domain")) domain.push_back(e.get<std::string>());
    out.structure = FoStructure(std::move(domain));
    FoStructure& m = out.structure;
    auto element = [&](const json& j) {
      const auto name = j.get<std::string>();
      auto e = m.find(name);
      if (!e) throw std::invalid_argument("element '" + name + "' is not in the domain");
      return *e;
    };
    if (doc.contains("arities")) {
      for (const auto& [name, arity] : doc.at("arities").items()) {
        m.declare(name, arity.get<std::size_t>());
        if (name != "leq") out.signature.add_relation(name, arity.get<std::size_t>());
      }
    }
    if (doc.contains("relations")) {
      for (const auto& [name, tuples] : doc.at("relations").items()) {
        if (name != "leq" && tuples.empty() && !m.has_relation(name)) {
          throw std::invalid_argument("relation '" + name + "' has no tuples and no declared arity");
        }
        for (const auto& tuple : tuples) {
          std::vector<Element> t;
          for (const auto& e : tuple) t.push_back(element(e));
          if (name == "leq" && t.size() != 2) throw std::invalid_argument("leq tuples must be pairs");
          m.add(name, t);
        }
        if (name != "leq") out.signature.add_relation(name, m.arity(name));
      }
    }

    std::vector<std::string> vars;
    if (doc.contains("vars")) {
      for (const auto& v : doc.at("vars")) vars.push_back(v.get<std::string>());
    }
    const json team = doc.contains("team") ? doc.at("team") : json::array();
    if (!team.empty() && vars.empty()) {
      for (const auto& [v, e] : team.front().items()) vars.push_back(v);
    }
    std::vector<Assignment> rows;
    for (const auto& s : team) {
      if (s.size() != vars.size()) throw std::invalid_argument("assignments must share one variable domain");
      Assignment a;
      for (const auto& v : vars) {
        if (!s.contains(v)) throw std::invalid_argument("assignments must share one variable domain");
        a.push_back(element(s.at(v)));
      }
      rows.push_back(std::move(a));
    }
    for (const auto& v : vars) out.signature.add_variable(v);
    out.team = AssignmentTeam(vars, std::move(rows));
    return out;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed structure file: ") + e.what());
  }
}

std::string structure_to_json(const FoStructure& m, const AssignmentTeam& team) {
  json relations = json::object(), arities = json::object();
  for (const auto& name : m.relation_names()) {
    json tuples = json::array();
    for (const auto& t : m.tuples(name)) {
      json row = json::array();
      for (Element e : t) row.push_back(m.name(e));
      tuples.push_back(row);
    }
    relations[name] = tuples;
    if (name != "leq") arities[name] = m.arity(name);
  }
  json rows = json::array();
  for (const Assignment& a : team.rows()) {
    json s = json::object();
    for (std::size_t i = 0; i < team.vars().size(); ++i) s[team.vars()[i]] = m.name(a[i]);
    rows.push_back(s);
  }
  json doc{{"domain", m.names()}, {"arities", arities}, {"relations", relations}, {"team", rows}};
  if (team.empty()) doc["vars"] = team.vars();
  return doc.dump(2);
}

}  // namespace teamltl
