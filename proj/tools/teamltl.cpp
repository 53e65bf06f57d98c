// teamltl: command-line front end.
//
// Exit codes: 0 satisfied / equivalent / pass, 1 not, 2 usage or resource error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "teamltl/foteam.hpp"
#include "teamltl/formula.hpp"
#include "teamltl/fuzz.hpp"
#include "teamltl/io.hpp"
#include "teamltl/kamp.hpp"
#include "teamltl/kripke.hpp"
#include "teamltl/lasso.hpp"
#include "teamltl/limits.hpp"
#include "teamltl/stutter.hpp"
#include "teamltl/teamcheck.hpp"

using namespace teamltl;
using ojson = nlohmann::ordered_json;

namespace {

struct Report {
  std::string command;
  std::vector<std::string> lines;
  ojson data = ojson::object();

  void line(const std::string& s) { lines.push_back(s); }
  int emit(int code) const {
    std::cout << "command: " << command << "\n";
    for (const auto& l : lines) std::cout << l << "\n";
    ojson j;
    j["command"] = command;
    for (const auto& [k, v] : data.items()) j[k] = v;
    j["exit"] = code;
    std::cout << "json: " << j.dump() << "\n";
    return code;
  }
};

Semantics parse_semantics(const std::string& s) { return s == "sync" ? Semantics::Sync : Semantics::Async; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string describe_witness(const Witness& w, const ApList& aps) {
  if (auto k = std::get_if<std::size_t>(&w)) return "shift " + std::to_string(*k);
  if (auto c = std::get_if<Configuration>(&w)) {
    std::vector<std::string> parts;
    for (std::size_t v : *c) parts.push_back(std::to_string(v));
    return "configuration (" + join(parts, ", ") + ")";
  }
  if (auto c = std::get_if<CoverWitness>(&w)) {
    return "cover " + to_string(c->left, aps) + " | " + to_string(c->right, aps);
  }
  return "none";
}

// Formula parsed against the team's propositions when a team is given.
Ltl load_formula(const std::string& text, ApList& aps) {
  if (aps.empty()) {
    ParsedLtl p = parse_ltl(text);
    aps = p.aps;
    return p.formula;
  }
  return parse_ltl(text, aps);
}

struct Common {
  std::string caps;
  bool timing = false;
  Limits limits() const {
    Limits l = Limits::from_env();
    if (!caps.empty()) l.apply(caps);
    return l;
  }
};

using Clock = std::chrono::steady_clock;

void add_timing(Report& r, const Common& c, Clock::time_point start) {
  if (!c.timing) return;
  const double ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  std::ostringstream s;
  s.precision(3);
  s << std::fixed << ms;
  r.line("time_ms: " + s.str());
  r.data["time_ms"] = ms;
}

int cmd_check(Report& r, const Common& c, const std::string& sem, const std::string& formula, const std::string& team_path) {
  const auto start = Clock::now();
  TeamFile tf = parse_team(read_file(team_path));
  const Ltl f = parse_ltl(formula, tf.aps);
  const Semantics s = parse_semantics(sem);
  const Verdict v = evaluate(s, tf.team, f, c.limits());
  r.line("semantics: " + sem);
  r.line("formula: " + print_ltl(f, tf.aps));
  r.line("team: " + to_string(tf.team, tf.aps));
  r.line(std::string("verdict: ") + (v.holds ? "satisfied" : "not satisfied"));
  r.line("witness: " + describe_witness(v.witness, tf.aps));
  r.data["semantics"] = sem;
  r.data["formula"] = print_ltl(f, tf.aps);
  r.data["holds"] = v.holds;
  r.data["witness"] = describe_witness(v.witness, tf.aps);
  add_timing(r, c, start);
  return v.holds ? 0 : 1;
}

int cmd_translate(Report& r, const std::string& sem, const std::string& formula, const std::string& team_path,
                  const std::string& variant, const std::string& base, std::size_t bound, const std::string& export_path) {
  ApList aps;
  std::optional<Team> team;
  if (!team_path.empty()) {
    TeamFile tf = parse_team(read_file(team_path));
    aps = tf.aps;
    team = tf.team;
  }
  const Ltl f = load_formula(formula, aps);
  const Ltl core = desugar(f, aps);
  const bool printed = variant == "printed";
  const Fo tr = sem == "sync" ? translate_sync(core, aps, base, printed ? SyncUntil::Printed : SyncUntil::Repaired)
                              : translate_async(core, aps, base, {printed ? AsyncUntil::Printed : AsyncUntil::Strict});
  r.line("semantics: " + sem);
  r.line("variant: " + variant);
  r.line("core formula: " + print_ltl(core, aps));
  r.line("translation: " + print_fo(tr));
  r.line("free variables: {" + join(free_variables(tr), ", ") + "}");
  r.data["translation"] = print_fo(tr);
  r.data["free_variables"] = free_variables(tr);
  if (!export_path.empty()) {
    if (!team) throw std::invalid_argument("--export-structure needs --team");
    const std::size_t b = bound ? bound : default_bound(*team, f, aps);
    const EncodedStructure enc = build_structure(*team, b, aps, sem == "sync");
    std::ofstream out(export_path);
    if (!out) throw std::runtime_error("cannot write '" + export_path + "'");
    out << structure_to_json(enc.structure, enc.initial_team()) << "\n";
    r.line("structure: " + export_path + " (bound " + std::to_string(b) + ")");
    r.data["bound"] = b;
  }
  return 0;
}

int cmd_xcheck(Report& r, const Common& c, const std::string& sem, const std::string& formula,
               const std::string& team_path, std::size_t forced_bound, const std::string& variant) {
  const auto start = Clock::now();
  const Limits limits = c.limits();
  TeamFile tf = parse_team(read_file(team_path));
  if (tf.team.empty()) throw std::invalid_argument("xcheck needs a nonempty team");
  const Ltl f = parse_ltl(formula, tf.aps);
  const Ltl core = desugar(f, tf.aps);
  const bool sync = sem == "sync";
  const bool expected = evaluate(parse_semantics(sem), tf.team, core, limits).holds;
  const std::size_t b = forced_bound ? forced_bound : default_bound(tf.team, f, tf.aps, limits);
  r.line("semantics: " + sem);
  r.line("formula: " + print_ltl(f, tf.aps));
  r.line("team: " + to_string(tf.team, tf.aps));
  r.line("temporal verdict: " + std::string(expected ? "true" : "false"));
  r.data["expected"] = expected;
  r.data["bounds"] = {b, 2 * b};

  std::vector<std::string> variants;
  if (variant == "both" || variant == "repaired") variants.push_back("repaired");
  if (variant == "both" || variant == "printed") variants.push_back("printed");
  bool repaired_ok = true;
  ojson results = ojson::array();
  for (const auto& v : variants) {
    const bool printed = v == "printed";
    const Fo tr = sync ? translate_sync(core, tf.aps, "x", printed ? SyncUntil::Printed : SyncUntil::Repaired)
                       : translate_async(core, tf.aps, "x", {printed ? AsyncUntil::Printed : AsyncUntil::Strict});
    const std::string name = std::string(v) + (sync ? "" : printed ? " (z<=y)" : " (z<y)");
    const auto fv = free_variables(tr);
    if (fv != std::vector<std::string>{"x"}) {
      r.line(name + ": not evaluable, free variables {" + join(fv, ", ") + "}");
      results.push_back({{"variant", v}, {"evaluable", false}});
      if (!printed) repaired_ok = false;
      continue;
    }
    bool verdicts[2];
    for (int k = 0; k < 2; ++k) {
      const std::size_t bound = k == 0 ? b : 2 * b;
      const EncodedStructure enc = build_structure(tf.team, bound, tf.aps, sync);
      verdicts[k] = eval_fo(enc.structure, enc.initial_team(), tr, limits);
      const bool agree = verdicts[k] == expected;
      r.line(name + " at B=" + std::to_string(bound) + ": FO " + (verdicts[k] ? "true" : "false") + " " +
             (agree ? "AGREE" : "DISAGREE"));
      results.push_back({{"variant", v}, {"bound", bound}, {"fo", verdicts[k]}, {"agree", agree}});
      if (!printed && !agree) repaired_ok = false;
    }
    if (verdicts[0] != verdicts[1]) {
      r.line("warning: " + name + " verdict changes between B and 2B (bound failure)");
    }
  }
  r.data["results"] = results;
  add_timing(r, c, start);
  return repaired_ok ? 0 : 1;
}

int cmd_stutter_eq(Report& r, const Common& c, const std::string& mode, const std::vector<std::string>& teams) {
  if (teams.size() != 2) throw std::invalid_argument("stutter-eq needs exactly two --team files");
  TeamFile a = parse_team(read_file(teams[0]));
  TeamFile b = parse_team(read_file(teams[1]));
  if (a.aps != b.aps) throw std::invalid_argument("the two team files must list the same propositions in the same order");
  const bool eq = mode == "sync" ? stutter_eq_sync(a.team, b.team, c.limits()) : stutter_eq_async(a.team, b.team);
  r.line("mode: " + mode);
  r.line("first: " + to_string(a.team, a.aps));
  r.line("second: " + to_string(b.team, b.aps));
  r.line(std::string("stutter-equivalent: ") + (eq ? "yes" : "no"));
  if (mode == "async") {
    r.line("normal form of first: " + to_string(destutter_team(a.team), a.aps));
    r.line("normal form of second: " + to_string(destutter_team(b.team), b.aps));
  }
  r.data["equivalent"] = eq;
  return eq ? 0 : 1;
}

int cmd_destutter(Report& r, const std::string& team_path) {
  TeamFile tf = parse_team(read_file(team_path));
  const Team d = destutter_team(tf.team);
  r.line("team: " + to_string(tf.team, tf.aps));
  r.line("destuttered: " + to_string(d, tf.aps));
  r.data["team"] = ojson::parse(team_to_json(d, tf.aps));
  return 0;
}

int cmd_kripke(Report& r, const Common& c, const std::string& path, std::size_t max_prefix, std::size_t max_loop) {
  const KripkeStructure k = parse_kripke(read_file(path));
  const KripkeTraces traces = enumerate_lasso_traces(k, max_prefix, max_loop, c.limits());
  r.line("note: team extracted from K with |u| <= " + std::to_string(max_prefix) + ", |v| <= " +
         std::to_string(max_loop) + "; a finite part of Traces(K), not Traces(K)");
  r.line("lasso paths visited: " + std::to_string(traces.paths));
  r.line("traces: " + std::to_string(traces.team.size()));
  ojson witnesses = ojson::array();
  for (std::size_t i = 0; i < traces.team.size(); ++i) {
    std::vector<std::string> u, v;
    for (std::size_t s : traces.witnesses[i].prefix) u.push_back(k.ids[s]);
    for (std::size_t s : traces.witnesses[i].loop) v.push_back(k.ids[s]);
    r.line("  " + to_string(traces.team[i], k.aps) + " via " + (u.empty() ? "" : join(u, " ") + " ") + "(" +
           join(v, " ") + ")^w");
    witnesses.push_back({{"prefix", u}, {"loop", v}});
  }
  r.data["team"] = ojson::parse(team_to_json(traces.team, k.aps));
  r.data["witnesses"] = witnesses;
  return 0;
}

int cmd_fo_eval(Report& r, const Common& c, const std::string& path, const std::string& formula, bool reference) {
  StructureFile sf = parse_structure(read_file(path));
  const Fo f = parse_fo(formula, sf.signature);
  FoEvaluator e(sf.structure, c.limits(), reference);
  const bool holds = e.eval(sf.team, f);
  r.line("formula: " + print_fo(f));
  r.line("team: " + to_string(sf.team, sf.structure));
  r.line(std::string("verdict: ") + (holds ? "satisfied" : "not satisfied"));
  r.data["holds"] = holds;
  return holds ? 0 : 1;
}

int cmd_fuzz(Report& r, const Common& c, const std::string& property, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("--trials must be at least 1");
  const auto start = Clock::now();
  FuzzOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.limits = c.limits();
  const FuzzReport rep = run_fuzz(property, opt);
  std::istringstream text(rep.text());
  for (std::string l; std::getline(text, l);) r.line(l);
  r.data["report"] = ojson::parse(rep.json());
  add_timing(r, c, start);
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Team semantics for LTL with Boolean negation over lasso teams"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--caps", common.caps, "Search caps, e.g. lcm=2048,cover=10 (overrides TEAMLTL_CAPS)");
  app.add_flag("--timing", common.timing, "Report wall-clock time (makes output nondeterministic)");

  std::string semantics = "async", formula, team, variant, xvariant, base = "x", structure, property, mode = "async",
              kripke, export_path;
  std::vector<std::string> teams;
  std::size_t bound = 0, trials = 100, max_prefix = 2, max_loop = 2;
  std::uint64_t seed = 1;
  bool reference = false;
  auto sem_check = CLI::IsMember({"sync", "async"});

  auto* check = app.add_subcommand("check", "Decide T |= phi");
  check->add_option("--semantics", semantics)->check(sem_check);
  check->add_option("--formula", formula)->required();
  check->add_option("--team", team)->required();

  auto* translate = app.add_subcommand("translate", "Print the first-order translation");
  translate->add_option("--semantics", semantics)->check(sem_check);
  translate->add_option("--formula", formula)->required();
  translate->add_option("--team", team, "Team file supplying the propositions");
  translate->add_option("--variant", variant, "U template: repaired (default) or printed")
      ->check(CLI::IsMember({"printed", "repaired"}))
      ->default_val("repaired");
  translate->add_option("--base", base)->check(CLI::IsMember({"x", "y", "z"}));
  translate->add_option("--bound", bound, "Bound for --export-structure (default: heuristic bound)");
  translate->add_option("--export-structure", export_path, "Write the encoded team as a structure file");

  auto* xcheck = app.add_subcommand("xcheck", "Temporal vs first-order verdicts at B and 2B");
  xcheck->add_option("--semantics", semantics)->check(sem_check);
  xcheck->add_option("--formula", formula)->required();
  xcheck->add_option("--team", team)->required();
  xcheck->add_option("--bound", bound, "Force B instead of the heuristic bound")->check(CLI::PositiveNumber);
  xcheck->add_option("--variant", xvariant)->check(CLI::IsMember({"printed", "repaired", "both"}))->default_val("both");

  auto* seq = app.add_subcommand("stutter-eq", "Stutter equivalence of two teams");
  seq->add_option("--mode", mode)->check(sem_check);
  seq->add_option("--team", teams, "Two team files")->required()->expected(2);

  auto* dst = app.add_subcommand("destutter", "Destuttered normal form of a team");
  dst->add_option("--team", team)->required();

  auto* kt = app.add_subcommand("kripke-traces", "Lasso traces of a Kripke structure");
  kt->add_option("--kripke", kripke)->required();
  kt->add_option("--max-prefix", max_prefix)->check(CLI::PositiveNumber);
  kt->add_option("--max-loop", max_loop)->check(CLI::PositiveNumber);

  auto* fe = app.add_subcommand("fo-eval", "First-order team semantics on a structure file");
  fe->add_option("--structure", structure)->required();
  fe->add_option("--formula", formula)->required();
  fe->add_flag("--reference", reference, "Enumerate the definition without pruning");

  auto* fz = app.add_subcommand("fuzz", "Run a property suite");
  fz->add_option("property", property)->required()->check(CLI::IsMember(fuzz_properties()));
  fz->add_option("--trials", trials)->check(CLI::PositiveNumber);
  fz->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report r;
  std::vector<std::string> args(argv + 1, argv + argc);
  r.command = "teamltl " + join(args, " ");
  try {
    common.limits();  // reject malformed caps even where no search runs
    if (*check) return r.emit(cmd_check(r, common, semantics, formula, team));
    if (*translate) return r.emit(cmd_translate(r, semantics, formula, team, variant, base, bound, export_path));
    if (*xcheck) return r.emit(cmd_xcheck(r, common, semantics, formula, team, bound, xvariant));
    if (*seq) return r.emit(cmd_stutter_eq(r, common, mode, teams));
    if (*dst) return r.emit(cmd_destutter(r, team));
    if (*kt) return r.emit(cmd_kripke(r, common, kripke, max_prefix, max_loop));
    if (*fe) return r.emit(cmd_fo_eval(r, common, structure, formula, reference));
    if (*fz) return r.emit(cmd_fuzz(r, common, property, trials, seed));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
