#include "teamltl/fuzz.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "teamltl/foteam.hpp"
#include "teamltl/kamp.hpp"
#include "teamltl/random.hpp"
#include "teamltl/stutter.hpp"
#include "teamltl/teamcheck.hpp"

namespace teamltl {

void FuzzReport::note(const std::string& key, const std::string& value) {
  for (auto& [k, v] : notes) {
    if (k == key) {
      v = value;
      return;
    }
  }
  notes.emplace_back(key, value);
}

std::string FuzzReport::text() const {
  std::ostringstream out;
  out << "property: " << property << "\n"
      << "seed: " << seed << "\n"
      << "trials: " << trials << "\n"
      << "passed: " << passed << "\n"
      << "skipped: " << skipped << "\n"
      << "violations: " << violations.size() << "\n";
  for (const auto& [k, v] : notes) out << "note " << k << ": " << v << "\n";
  for (const auto& c : violations) {
    out << "violation in trial " << c.trial << ": " << c.detail << "\n"
        << "  generated: " << c.original << "\n"
        << "  minimized: " << c.minimized << "\n";
  }
  out << "result: " << (ok() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string FuzzReport::json() const {
  nlohmann::ordered_json j;
  j["property"] = property;
  j["seed"] = seed;
  j["trials"] = trials;
  j["passed"] = passed;
  j["skipped"] = skipped;
  j["notes"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : notes) j["notes"][k] = v;
  j["violations"] = nlohmann::ordered_json::array();
  for (const auto& c : violations) {
    j["violations"].push_back({{"trial", c.trial}, {"detail", c.detail}, {"generated", c.original}, {"minimized", c.minimized}});
  }
  j["expect_violation"] = expect_violation;
  j["result"] = ok() ? "PASS" : "FAIL";
  return j.dump(2);
}

const std::vector<std::string>& fuzz_properties() {
  static const std::vector<std::string> names{"flatness", "duality",   "stutter",  "stutter-next",
                                              "kamp-async", "kamp-sync", "closure", "singleton",
                                              "lemma1",   "locality",  "fo-flatness", "fo-pruning"};
  return names;
}

namespace {

const ApList& props() {
  static const ApList aps({"p", "q"});
  return aps;
}

// ---------------------------------------------------------------------------
// Shrinking
// ---------------------------------------------------------------------------

// Formulas obtained by replacing one node with one of its operands.
std::vector<Ltl> ltl_shrinks(const Ltl& f) {
  std::vector<Ltl> out;
  if (f->lhs) out.push_back(f->lhs);
  if (f->rhs) out.push_back(f->rhs);
  auto rebuild = [&](Ltl lhs, Ltl rhs) { return std::make_shared<const LtlNode>(LtlNode{f->kind, f->prop, lhs, rhs}); };
  if (f->lhs) {
    for (const Ltl& c : ltl_shrinks(f->lhs)) out.push_back(rebuild(c, f->rhs));
  }
  if (f->rhs) {
    for (const Ltl& c : ltl_shrinks(f->rhs)) out.push_back(rebuild(f->lhs, c));
  }
  return out;
}

std::vector<Fo> fo_shrinks(const Fo& f) {
  std::vector<Fo> out;
  if (f->lhs) out.push_back(f->lhs);
  if (f->rhs) out.push_back(f->rhs);
  auto rebuild = [&](Fo lhs, Fo rhs) {
    return std::make_shared<const FoNode>(FoNode{f->kind, f->rel, f->vars, lhs, rhs});
  };
  if (f->lhs) {
    for (const Fo& c : fo_shrinks(f->lhs)) out.push_back(rebuild(c, f->rhs));
  }
  if (f->rhs) {
    for (const Fo& c : fo_shrinks(f->rhs)) out.push_back(rebuild(f->lhs, c));
  }
  return out;
}

std::vector<Lasso> lasso_shrinks(const Lasso& t) {
  std::vector<Lasso> out;
  for (std::size_t i = 0; i < t.prefix_length(); ++i) {
    auto p = t.prefix();
    p.erase(p.begin() + static_cast<std::ptrdiff_t>(i));
    out.emplace_back(p, t.loop());
  }
  for (std::size_t i = 0; t.loop_length() > 1 && i < t.loop_length(); ++i) {
    auto l = t.loop();
    l.erase(l.begin() + static_cast<std::ptrdiff_t>(i));
    out.emplace_back(t.prefix(), l);
  }
  auto clear_bits = [&](bool in_prefix) {
    const auto& word = in_prefix ? t.prefix() : t.loop();
    for (std::size_t i = 0; i < word.size(); ++i) {
      for (PropId b = 0; b < kMaxPropositions && (word[i] >> b); ++b) {
        if (!has_prop(word[i], b)) continue;
        auto w = word;
        w[i] &= ~(Letter{1} << b);
        out.push_back(in_prefix ? Lasso(w, t.loop()) : Lasso(t.prefix(), w));
      }
    }
  };
  clear_bits(true);
  clear_bits(false);
  return out;
}

struct TemporalCase {
  Team team;
  Ltl f;
};

std::string describe(const TemporalCase& c) {
  return "T = " + to_string(c.team, props()) + "; phi = " + print_ltl(c.f, props());
}

using TemporalCheck = std::function<std::optional<std::string>(const TemporalCase&)>;

// Greedy: take the first smaller case that still fails, until none does.
TemporalCase shrink(TemporalCase c, const TemporalCheck& check, std::size_t min_traces) {
  auto fails = [&](const TemporalCase& k) {
    try {
      return check(k).has_value();
    } catch (const LimitExceeded&) {
      return false;
    }
  };
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<TemporalCase> candidates;
    if (c.team.size() > min_traces) {
      for (std::size_t i = 0; i < c.team.size(); ++i) {
        std::vector<Lasso> rest;
        for (std::size_t k = 0; k < c.team.size(); ++k) {
          if (k != i) rest.push_back(c.team[k]);
        }
        candidates.push_back({Team(rest), c.f});
      }
    }
    for (const Ltl& g : ltl_shrinks(c.f)) candidates.push_back({c.team, g});
    for (std::size_t i = 0; i < c.team.size(); ++i) {
      for (const Lasso& l : lasso_shrinks(c.team[i])) {
        std::vector<Lasso> members = c.team.members();
        members[i] = l;
        Team t(members);
        if (t.size() == c.team.size()) candidates.push_back({t, c.f});
      }
    }
    for (const auto& k : candidates) {
      if (fails(k)) {
        c = k;
        progress = true;
        break;
      }
    }
  }
  return c;
}

struct FoCase {
  FoStructure m;
  AssignmentTeam s;
  Fo f;
};

std::string describe(const FoCase& c) {
  std::string out = "M = {" ;
  for (std::size_t i = 0; i < c.m.size(); ++i) out += (i ? ", " : "") + c.m.name(static_cast<Element>(i));
  out += "}";
  for (const auto& rel : c.m.relation_names()) {
    out += "; " + rel + " = {";
    bool first = true;
    for (const auto& t : c.m.tuples(rel)) {
      out += first ? "(" : ", (";
      first = false;
      for (std::size_t i = 0; i < t.size(); ++i) out += (i ? "," : "") + c.m.name(t[i]);
      out += ")";
    }
    out += "}";
  }
  return out + "; S = " + to_string(c.s, c.m) + "; phi = " + print_fo(c.f);
}

using FoCheck = std::function<std::optional<std::string>(const FoCase&)>;

FoCase shrink(FoCase c, const FoCheck& check) {
  auto fails = [&](const FoCase& k) {
    try {
      return check(k).has_value();
    } catch (const LimitExceeded&) {
      return false;
    }
  };
  for (bool progress = true; progress;) {
    progress = false;
    std::vector<FoCase> candidates;
    for (std::size_t i = 0; i < c.s.size(); ++i) {
      std::vector<bool> keep(c.s.size(), true);
      keep[i] = false;
      candidates.push_back({c.m, c.s.subteam(keep), c.f});
    }
    for (const Fo& g : fo_shrinks(c.f)) candidates.push_back({c.m, c.s, g});
    for (const auto& k : candidates) {
      if (fails(k)) {
        c = k;
        progress = true;
        break;
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

enum class Outcome { Pass, Fail, Skip };

std::string verdict(bool b) { return b ? "true" : "false"; }

struct Runner {
  const FuzzOptions& opt;
  FuzzReport& report;

  Rng trial_rng(std::size_t i) const { return Rng(Rng::derive(opt.seed, i)); }

  void temporal(const std::function<TemporalCase(Rng&)>& gen, const TemporalCheck& check, std::size_t min_traces) {
    for (std::size_t i = 0; i < opt.trials; ++i) {
      Rng rng = trial_rng(i);
      const TemporalCase c = gen(rng);
      try {
        if (auto detail = check(c)) {
          const TemporalCase small = shrink(c, check, min_traces);
          report.violations.push_back({i, describe(c), describe(small), *check(small)});
        } else {
          ++report.passed;
        }
      } catch (const LimitExceeded&) {
        ++report.skipped;
      }
    }
  }

  void first_order(const std::function<FoCase(Rng&)>& gen, const FoCheck& check) {
    for (std::size_t i = 0; i < opt.trials; ++i) {
      Rng rng = trial_rng(i);
      const FoCase c = gen(rng);
      try {
        if (auto detail = check(c)) {
          const FoCase small = shrink(c, check);
          report.violations.push_back({i, describe(c), describe(small), *check(small)});
        } else {
          ++report.passed;
        }
      } catch (const LimitExceeded&) {
        ++report.skipped;
      }
    }
  }
};

TemporalCase random_case(Rng& rng, const FormulaShape& shape, std::size_t min_traces, std::size_t max_traces) {
  LassoShape ls;
  Team t = random_team(rng, ls, min_traces, max_traces);
  Ltl f = random_ltl(rng, shape);
  return {std::move(t), std::move(f)};
}

std::string ratio(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

// Agreement counter that records capped instances apart, so one expensive
// variant does not hide the others.
struct Rate {
  std::size_t agree = 0, total = 0, capped = 0;
  template <class F>
  void add(F&& f) {
    try {
      const bool ok = f();
      ++total;
      agree += ok;
    } catch (const LimitExceeded&) {
      ++capped;
    }
  }
  std::string text() const {
    return ratio(agree, total) + (capped ? " (" + std::to_string(capped) + " capped)" : "");
  }
};

void kamp_suite(Runner& run, bool sync) {
  const Limits& limits = run.opt.limits;
  const Semantics sem = sync ? Semantics::Sync : Semantics::Async;
  std::size_t compared = 0, bound_changes = 0, printed_free = 0;

  auto fo_verdict = [&](const Team& t, const Ltl& core, std::size_t b, bool printed, bool omit_dep) {
    const EncodedStructure enc = build_structure(t, b, props(), sync);
    Fo tr = sync ? translate_sync(core, props(), "x", printed ? SyncUntil::Printed : SyncUntil::Repaired)
                 : translate_async(core, props(), "x",
                                   {printed ? AsyncUntil::Printed : AsyncUntil::Strict, omit_dep});
    return eval_fo(enc.structure, enc.initial_team(), tr, limits);
  };

  auto check = [&](const TemporalCase& c) -> std::optional<std::string> {
    const Ltl core = desugar(c.f, props());
    const bool expected = evaluate(sem, c.team, core, limits).holds;
    const std::size_t b = default_bound(c.team, c.f, props(), limits);
    const bool at_b = fo_verdict(c.team, core, b, false, false);
    const bool at_2b = fo_verdict(c.team, core, 2 * b, false, false);
    if (at_b == expected && at_2b == expected) return std::nullopt;
    return std::string(to_string(sem)) + " verdict " + verdict(expected) + ", FO at B=" + std::to_string(b) + " " +
           verdict(at_b) + ", at 2B=" + std::to_string(2 * b) + " " + verdict(at_2b);
  };

  // Side statistics on the generated instances only.
  Rate printed_b, printed_2b, dep_same;

  auto gen = [&](Rng& rng) {
    FormulaShape shape;
    TemporalCase c = random_case(rng, shape, 1, 3);
    bool expected = false, at_b = false;
    std::size_t b = 0;
    try {
      const Ltl core = desugar(c.f, props());
      expected = evaluate(sem, c.team, core, limits).holds;
      b = default_bound(c.team, c.f, props(), limits);
      at_b = fo_verdict(c.team, core, b, false, false);
      const bool at_2b = fo_verdict(c.team, core, 2 * b, false, false);
      ++compared;
      if (at_b != at_2b) ++bound_changes;
    } catch (const LimitExceeded&) {
      return c;
    }
    const Ltl core = desugar(c.f, props());
    if (sync && free_variables(translate_sync(core, props(), "x", SyncUntil::Printed)) != std::vector<std::string>{"x"}) {
      ++printed_free;
      return c;
    }
    printed_b.add([&] { return fo_verdict(c.team, core, b, true, false) == expected; });
    printed_2b.add([&] { return fo_verdict(c.team, core, 2 * b, true, false) == expected; });
    if (!sync) dep_same.add([&] { return fo_verdict(c.team, core, b, false, true) == at_b; });
    return c;
  };

  run.temporal(gen, check, 1);
  run.report.note("instances compared", std::to_string(compared));
  run.report.note("verdict changed between B and 2B", std::to_string(bound_changes));
  if (sync) {
    run.report.note("printed template with y free (not evaluable on S^x_T)", ratio(printed_free, compared));
    run.report.note("printed template agreement at B", printed_b.text());
    run.report.note("printed template agreement at 2B", printed_2b.text());
  } else {
    run.report.note("printed z<=y template agreement at B", printed_b.text());
    run.report.note("printed z<=y template agreement at 2B", printed_2b.text());
    run.report.note("verdicts unchanged by dropping dep(x,y) at B", dep_same.text());
  }
}

}  // namespace

FuzzReport run_fuzz(const std::string& property, const FuzzOptions& opt) {
  FuzzReport report;
  report.property = property;
  report.seed = opt.seed;
  report.trials = opt.trials;
  Runner run{opt, report};
  const Limits& limits = opt.limits;

  if (property == "flatness") {
    FormulaShape shape;
    shape.allow_tilde = false;
    run.temporal([&](Rng& rng) { return random_case(rng, shape, 1, 3); },
                 [&](const TemporalCase& c) -> std::optional<std::string> {
                   const bool team = eval_async(c.team, c.f, limits).holds;
                   bool all = true;
                   for (const Lasso& t : c.team.members()) all = all && eval_classical(t, c.f).holds;
                   if (team == all) return std::nullopt;
                   return "async verdict " + verdict(team) + ", conjunction of classical verdicts " + verdict(all);
                 },
                 1);
  } else if (property == "duality") {
    FormulaShape shape;
    run.temporal([&](Rng& rng) { return random_case(rng, shape, 0, 3); },
                 [&](const TemporalCase& c) -> std::optional<std::string> {
                   const Ltl core = desugar(c.f, props());
                   for (Semantics s : {Semantics::Sync, Semantics::Async}) {
                     const bool native = evaluate(s, c.team, c.f, limits).holds;
                     const bool rewritten = evaluate(s, c.team, core, limits).holds;
                     if (native != rewritten) {
                       return std::string(to_string(s)) + ": native " + verdict(native) + ", rewritten " +
                              verdict(rewritten) + " (" + print_ltl(core, props()) + ")";
                     }
                   }
                   return std::nullopt;
                 },
                 0);
  } else if (property == "stutter" || property == "stutter-next") {
    const bool next = property == "stutter-next";
    report.expect_violation = next;
    FormulaShape shape;
    shape.allow_next = next;
    // The variants come from the trial seed; shrinking keeps them fixed by
    // recomputing them from the same seed for the smaller team.
    std::uint64_t variant_seed = 0;
    run.temporal(
        [&](Rng& rng) {
          variant_seed = rng.next();
          return random_case(rng, shape, 1, 3);
        },
        [&](const TemporalCase& c) -> std::optional<std::string> {
          const bool base = eval_async(c.team, c.f, limits).holds;
          for (const Team& v : stutter_variants(c.team, variant_seed, 3)) {
            const bool other = eval_async(v, c.f, limits).holds;
            if (other != base) {
              return "async verdict " + verdict(base) + " on T, " + verdict(other) + " on stutter variant " +
                     to_string(v, props());
            }
          }
          return std::nullopt;
        },
        1);
  } else if (property == "kamp-async" || property == "kamp-sync") {
    kamp_suite(run, property == "kamp-sync");
  } else if (property == "closure") {
    FormulaShape shape;
    run.temporal([&](Rng& rng) { return random_case(rng, shape, 1, 3); },
                 [&](const TemporalCase& c) -> std::optional<std::string> {
                   const Ltl core = desugar(c.f, props());
                   const std::size_t b = default_bound(c.team, c.f, props(), limits);
                   for (bool sync : {false, true}) {
                     const EncodedStructure enc = build_structure(c.team, b, props(), sync);
                     const Fo psi = sync ? translate_sync(core, props()) : translate_async(core, props());
                     const bool open = eval_fo(enc.structure, enc.initial_team(), psi, limits);
                     const bool closed =
                         eval_fo(enc.structure, EncodedStructure::empty_assignment(), close_sentence(psi), limits);
                     if (open != closed) {
                       return std::string(sync ? "sync" : "async") + " translation on S^x_T " + verdict(open) +
                              ", closed sentence " + verdict(closed);
                     }
                   }
                   return std::nullopt;
                 },
                 1);
  } else if (property == "singleton") {
    FormulaShape shape;
    shape.tilde_free_disjuncts = true;
    FormulaShape loose;
    std::size_t loose_mismatch = 0;
    run.temporal(
        [&](Rng& rng) {
          TemporalCase c = random_case(rng, shape, 1, 1);
          // Side statistic: the same comparison with ~ allowed anywhere.
          const Ltl g = random_ltl(rng, loose);
          try {
            const bool s = eval_sync(c.team, g, limits).holds;
            const bool a = eval_async(c.team, g, limits).holds;
            const bool k = eval_classical(c.team[0], g).holds;
            if (s != k || a != k) ++loose_mismatch;
          } catch (const LimitExceeded&) {
          }
          return c;
        },
        [&](const TemporalCase& c) -> std::optional<std::string> {
          const bool s = eval_sync(c.team, c.f, limits).holds;
          const bool a = eval_async(c.team, c.f, limits).holds;
          const bool k = eval_classical(c.team[0], c.f).holds;
          if (s == k && a == k) return std::nullopt;
          return "sync " + verdict(s) + ", async " + verdict(a) + ", classical " + verdict(k);
        },
        1);
    report.note("mismatches when ~ may occur under a splitjunction", ratio(loose_mismatch, opt.trials));
  } else if (property == "lemma1") {
    std::uint64_t variant_seed = 0;
    FormulaShape unused;
    run.temporal(
        [&](Rng& rng) {
          variant_seed = rng.next();
          return random_case(rng, unused, 1, 3);
        },
        [&](const TemporalCase& c) -> std::optional<std::string> {
          const Team other = stutter_variants(c.team, variant_seed, 1).front();
          const Lemma1Report r = check_lemma1(c.team, other, limits);
          if (r.ok()) return std::nullopt;
          return std::to_string(r.unmatched.size()) + " of " + std::to_string(r.covers_checked) +
                 " covers unmatched against " + to_string(other, props());
        },
        1);
  } else if (property == "locality" || property == "fo-flatness" || property == "fo-pruning") {
    FoShape shape;
    shape.max_size = 7;
    if (property == "fo-flatness") {
      shape.allow_dep = false;
      shape.allow_tilde = false;
    }
    Limits ref = limits;
    ref.max_fo_cover_team = std::min<std::size_t>(ref.max_fo_cover_team, 8);
    ref.max_fo_choices = std::min<std::size_t>(ref.max_fo_choices, 200000);
    auto gen = [&](Rng& rng) {
      FoStructure m = random_structure(rng, shape, 1, 4);
      AssignmentTeam s = random_assignments(rng, m, shape.vars, 3);
      Fo f = random_fo(rng, shape);
      return FoCase{std::move(m), std::move(s), std::move(f)};
    };
    FoCheck check;
    if (property == "locality") {
      check = [&](const FoCase& c) -> std::optional<std::string> {
        const bool full = eval_fo_reference(c.m, c.s, c.f, ref);
        const bool restricted = eval_fo_reference(c.m, c.s.project(free_variables(c.f)), c.f, ref);
        if (full == restricted) return std::nullopt;
        return "verdict on S " + verdict(full) + ", on S restricted to free variables " + verdict(restricted);
      };
    } else if (property == "fo-flatness") {
      check = [&](const FoCase& c) -> std::optional<std::string> {
        const bool team = eval_fo_reference(c.m, c.s, c.f, ref);
        const bool tarski_all = flat_fast_path(c.m, c.s, c.f);
        if (team == tarski_all) return std::nullopt;
        return "team verdict " + verdict(team) + ", Tarski conjunction " + verdict(tarski_all);
      };
    } else {
      check = [&](const FoCase& c) -> std::optional<std::string> {
        const bool fast = eval_fo(c.m, c.s, c.f, limits);
        const bool slow = eval_fo_reference(c.m, c.s, c.f, ref);
        if (fast == slow) return std::nullopt;
        return "pruned evaluator " + verdict(fast) + ", reference " + verdict(slow);
      };
    }
    run.first_order(gen, check);
  } else {
    throw std::invalid_argument("unknown fuzz property '" + property + "'");
  }
  return report;
}

}  // namespace teamltl
