#pragma once

// Command-line front end. run() takes the arguments after the program name
// and writes to the given streams, so it can be driven in-process.
//
// Exit codes: 0 success or pass, 1 check failed, 2 usage or parse error,
// 3 inconclusive because a bound was hit.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ssem/nqueens.hpp"
#include "ssem/report.hpp"
#include "ssem/semantics.hpp"
#include "ssem/sld.hpp"
#include "ssem/spec.hpp"
#include "ssem/syntax.hpp"

namespace ssem::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInconclusive = 3;

inline constexpr const char* kS2P1 = "p(f(X)).\np(f(a)).\n";
inline constexpr const char* kS2P2 = "p(f(X)).\n";

/// Source text of a compiled-in program, by name.
inline std::optional<std::string> builtin_source(const std::string& name) {
  if (name == "nqueens") return nqueens_source(NqueensVariant::kPlain);
  if (name == "nqueens-full") return nqueens_source(NqueensVariant::kFull);
  if (name == "nqueens-drop-ds") return nqueens_source(NqueensVariant::kDropDs);
  if (name == "nqueens-swap-usds")
    return nqueens_source(NqueensVariant::kSwapUsDs);
  if (name == "nqueens-drop-body4")
    return nqueens_source(NqueensVariant::kDropBody4);
  if (name == "nqueens-no-c3") return nqueens_source(NqueensVariant::kNoClause3);
  if (name == "s2-p1") return std::string(kS2P1);
  if (name == "s2-p2") return std::string(kS2P2);
  return std::nullopt;
}

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "nqueens",           "nqueens-full",       "nqueens-drop-ds",
      "nqueens-swap-usds", "nqueens-drop-body4", "nqueens-no-c3",
      "s2-p1",             "s2-p2"};
  return names;
}

/// A usage problem detected after option parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string file;
  std::string builtin;
  std::string query;
  std::size_t depth = 64;
  std::optional<std::size_t> max_answers;
  bool iterative = false;
  std::size_t iters = 8;
  std::optional<std::size_t> max_atoms;
  std::string pred;
  std::size_t herbrand_depth = 3;
  std::string spec;
  std::string bounds;
  bool generic = false;
  std::string format = "text";
  std::uint64_t seed = 20240601;
  unsigned jobs = 1;
  bool timing = false;
  std::uint64_t max_unifications = 50'000'000;
  std::size_t n = 4;
  bool oracle = false;
};

namespace detail {

struct Loaded {
  Program program;
  std::string name;
};

inline Loaded load(const Config& c, VarSource& vars,
                   const std::string& fallback = {}) {
  std::string text, name;
  if (!c.builtin.empty()) {
    auto src = builtin_source(c.builtin);
    if (!src) throw UsageError("unknown builtin program '" + c.builtin + "'");
    text = *src;
    name = c.builtin;
  } else if (!c.file.empty()) {
    std::ifstream in(c.file);
    if (!in) throw UsageError("cannot read " + c.file);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    name = c.file;
  } else if (!fallback.empty()) {
    text = *builtin_source(fallback);
    name = fallback;
  } else {
    throw UsageError("give a program file or --builtin NAME");
  }
  try {
    return {parse_program(text, vars), name};
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), name + ": " + e.message());
  }
}

inline bool json(const Config& c) { return c.format == "json"; }

// Every structured output starts like a check report.
inline nlohmann::ordered_json json_header(const char* kind) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["kind"] = kind;
  return j;
}

inline int exit_for(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return kExitOk;
    case Verdict::kFail:
      return kExitFail;
    case Verdict::kInconclusive:
      return kExitInconclusive;
  }
  return kExitFail;
}

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kRunning:
      return "running";
    case SolveStatus::kExhausted:
      return "exhausted";
    case SolveStatus::kLimitExhausted:
      return "depth-limit";
    case SolveStatus::kAnswerLimit:
      return "answer-limit";
  }
  return "?";
}

inline Specification spec_named(const std::string& name) {
  auto s = find_nqueens_spec(name);
  if (!s) throw UsageError("unknown specification '" + name + "'");
  return *s;
}

inline CheckOptions check_options(const Config& c, const std::string& program) {
  CheckOptions o;
  o.jobs = std::max(1u, c.jobs);
  o.seed = c.seed;
  o.timing = c.timing;
  o.max_unifications = c.max_unifications;
  o.program_name = program;
  return o;
}

inline SpecBounds parse_bounds(const std::string& text) {
  try {
    return SpecBounds::parse(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// --- subcommands -----------------------------------------------------------

inline int cmd_solve(Config c, std::ostream& out) {
  // With --builtin the only positional argument is the query.
  if (!c.builtin.empty() && c.query.empty()) std::swap(c.file, c.query);
  if (c.query.empty()) throw UsageError("solve needs a query");
  VarSource vars;
  auto [program, name] = load(c, vars);
  Query q;
  try {
    q = parse_query(c.query, vars);
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), "query: " + e.message());
  }
  Limits lim;
  lim.max_depth = c.depth;
  lim.max_answers = c.max_answers;
  lim.iterative_deepening = c.iterative;
  SolveResult r = solve(program, q, lim, vars);
  if (json(c)) {
    nlohmann::ordered_json j = json_header("solve");
    j["program"] = name;
    j["query"] = print(q.atoms);
    j["answers"] = nlohmann::ordered_json::array();
    for (const auto& a : r.answers) {
      nlohmann::ordered_json e;
      e["instance"] = print_canonical(a.instance);
      e["steps"] = a.steps;
      j["answers"].push_back(std::move(e));
    }
    j["status"] = to_string(r.status);
    out << j.dump(2) << "\n";
  } else {
    for (const auto& a : r.answers) {
      Printer p = Printer::canonical_for(a.instance);
      out << p(a.instance) << "\n";
    }
    out << "% answers: " << r.answers.size()
        << ", status: " << to_string(r.status) << "\n";
  }
  return r.status == SolveStatus::kLimitExhausted ? kExitInconclusive : kExitOk;
}

inline int cmd_s_model(const Config& c, std::ostream& out) {
  VarSource vars;
  auto [program, name] = load(c, vars);
  SInterpretation s = iterate(program, c.iters, vars, c.max_atoms);
  std::vector<std::string> lines;
  for (const auto& a : s.atoms)
    if (c.pred.empty() || a.predicate() == c.pred)
      lines.push_back(print_canonical(a));
  if (json(c)) {
    nlohmann::ordered_json j = json_header("s-model");
    j["program"] = name;
    j["iterations"] = s.iterations;
    j["fixpoint"] = s.fixpoint;
    j["truncated"] = s.truncated;
    j["classes"] = lines.size();
    j["atoms"] = lines;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
    out << "% iterations: " << s.iterations << ", classes: " << lines.size()
        << ", fixpoint: " << (s.fixpoint ? "yes" : "no")
        << (s.truncated ? ", truncated" : "") << "\n";
  }
  return s.truncated ? kExitInconclusive : kExitOk;
}

inline int cmd_herbrand(const Config& c, std::ostream& out) {
  VarSource vars;
  auto [program, name] = load(c, vars);
  const Alphabet alphabet = default_alphabet(program);
  AtomSet ground = herbrand_tp(program, c.iters, c.herbrand_depth, alphabet);
  SInterpretation s = iterate(program, c.iters, vars, c.max_atoms);
  AtomSet bridge = ground_instances(s.atoms, c.herbrand_depth, alphabet);
  std::vector<std::string> lines;
  for (const auto& a : ground)
    if (c.pred.empty() || a.predicate() == c.pred) lines.push_back(print(a));
  std::sort(lines.begin(), lines.end());
  const bool equal = ground == bridge;
  if (json(c)) {
    nlohmann::ordered_json j = json_header("herbrand");
    j["program"] = name;
    j["iterations"] = c.iters;
    j["depth"] = c.herbrand_depth;
    j["atoms"] = lines;
    j["bridge_equal"] = equal;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& l : lines) out << l << "\n";
    out << "% ground atoms: " << lines.size()
        << ", equals ground instances of the s-model iterate: "
        << (equal ? "yes" : "no") << "\n";
  }
  if (s.truncated) return kExitInconclusive;
  return equal ? kExitOk : kExitFail;
}

inline int emit(const Config& c, const CheckReport& r, std::ostream& out) {
  out << report_encode(r, json(c) ? ReportFormat::kJson : ReportFormat::kText);
  return exit_for(r.verdict);
}

inline int cmd_check_correctness(const Config& c, std::ostream& out) {
  VarSource vars;
  auto [program, name] = load(c, vars);
  Specification spec = spec_named(c.spec.empty() ? "S" : c.spec);
  CheckReport r = check_correctness(program, spec, parse_bounds(c.bounds), vars,
                                    check_options(c, name));
  return emit(c, r, out);
}

inline int cmd_check_completeness(const Config& c, std::ostream& out) {
  VarSource vars;
  auto [program, name] = load(c, vars);
  Specification spec = spec_named(c.spec.empty() ? "S0" : c.spec);
  if (!spec.has_level())
    throw UsageError("specification " + spec.name + " has no level mapping");
  WitnessRule rule = nqueens_witness_rule();
  CheckReport r =
      check_completeness(program, spec, parse_bounds(c.bounds),
                         c.generic ? nullptr : &rule, vars, check_options(c, name));
  return emit(c, r, out);
}

inline int cmd_check_level(const Config& c, std::ostream& out) {
  VarSource vars;
  Specification spec = spec_named(c.spec.empty() ? "S0" : c.spec);
  if (!spec.has_level())
    throw UsageError("specification " + spec.name + " has no level mapping");
  CheckReport r = check_level_mapping(spec, parse_bounds(c.bounds), vars,
                                      check_options(c, ""));
  return emit(c, r, out);
}

inline std::string placement_text(const Placement& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i)
    s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

inline int cmd_queens(const Config& c, std::ostream& out) {
  VarSource vars;
  auto [program, name] = load(c, vars, "nqueens");
  Limits lim;
  lim.max_depth = std::max<std::size_t>(c.depth, 4 * (c.n + 1) * (c.n + 1));
  SolveResult r = solve(program, queens_query(c.n, vars), lim, vars);
  std::set<Placement> engine;
  for (const auto& a : r.answers) {
    Placement p = extract_solution(a);
    engine.insert(p);
    if (!json(c)) out << "solution: " << placement_text(p) << "\n";
  }
  std::optional<bool> match;
  std::set<Placement> oracle;
  if (c.oracle) {
    oracle = brute_force_queens(c.n);
    match = oracle == engine;
  }
  if (json(c)) {
    nlohmann::ordered_json j = json_header("queens");
    j["n"] = c.n;
    j["program"] = name;
    j["solutions"] = nlohmann::ordered_json::array();
    for (const auto& a : r.answers)
      j["solutions"].push_back(placement_text(extract_solution(a)));
    j["status"] = to_string(r.status);
    if (match) {
      j["oracle"] = nlohmann::ordered_json::array();
      for (const auto& p : oracle) j["oracle"].push_back(placement_text(p));
      j["match"] = *match;
    }
    out << j.dump(2) << "\n";
  } else {
    out << "% engine solutions: " << r.answers.size()
        << ", status: " << to_string(r.status) << "\n";
    if (match) {
      for (const auto& p : oracle)
        out << "oracle: " << placement_text(p) << "\n";
      out << "% oracle solutions: " << oracle.size()
          << ", match: " << (*match ? "yes" : "no") << "\n";
    }
  }
  if (r.status == SolveStatus::kLimitExhausted) return kExitInconclusive;
  return match.value_or(true) ? kExitOk : kExitFail;
}

struct S2Side {
  std::size_t classes = 0;
  std::size_t iterations = 0;
  bool fixpoint = false;
  std::size_t answers = 0;
  AtomSet ground;
};

inline S2Side s2_side(const char* text, const Alphabet& alphabet,
                      std::size_t depth) {
  VarSource vars;
  Program p = parse_program(text, vars);
  S2Side s;
  SInterpretation m = iterate(p, 8, vars);
  s.classes = m.atoms.size();
  s.iterations = m.iterations;
  s.fixpoint = m.fixpoint;
  s.ground = ground_instances(m.atoms, depth, alphabet);
  s.answers = solve(p, parse_query("p(Y)", vars), Limits{}, vars).answers.size();
  return s;
}

inline int cmd_demo_s2(const Config& c, std::ostream& out) {
  const Alphabet alphabet = {{"a", 0}, {"f", 1}};
  const std::size_t depth = 4;
  S2Side p1 = s2_side(kS2P1, alphabet, depth);
  S2Side p2 = s2_side(kS2P2, alphabet, depth);
  VarSource vars;
  Program prog1 = parse_program(kS2P1, vars);
  Program prog2 = parse_program(kS2P2, vars);
  const bool tp_equal = herbrand_tp(prog1, 2, depth, alphabet) ==
                        herbrand_tp(prog2, 2, depth, alphabet);
  const bool bridge_equal = p1.ground == p2.ground;
  const bool ok = p1.classes == 2 && p2.classes == 1 && p1.answers == 2 &&
                  p2.answers == 1 && p1.fixpoint && p2.fixpoint &&
                  bridge_equal && tp_equal;
  if (json(c)) {
    nlohmann::ordered_json j = json_header("demo-s2");
    for (auto [key, side] : {std::pair{"p1", &p1}, std::pair{"p2", &p2}}) {
      j[key]["classes"] = side->classes;
      j[key]["iterations"] = side->iterations;
      j[key]["fixpoint"] = side->fixpoint;
      j[key]["answers"] = side->answers;
      j[key]["ground_atoms"] = side->ground.size();
    }
    j["ground_bridge_equal"] = bridge_equal;
    j["herbrand_equal"] = tp_equal;
    j["discriminated"] = ok;
    out << j.dump(2) << "\n";
  } else {
    for (auto [key, p] : {std::pair{"P1", &prog1}, std::pair{"P2", &prog2}}) {
      out << key << " = {";
      for (const auto& cl : p->clauses()) out << " " << print_canonical(cl);
      out << " }\n";
    }
    for (auto [key, side] : {std::pair{"P1", &p1}, std::pair{"P2", &p2}})
      out << key << ": s-model classes " << side->classes << " after "
          << side->iterations << " iteration(s), fixpoint "
          << (side->fixpoint ? "yes" : "no") << "; answers to p(Y): "
          << side->answers << "; ground atoms at depth " << depth << ": "
          << side->ground.size() << "\n";
    out << "ground instances equal: " << (bridge_equal ? "yes" : "no")
        << "; ground T_P iterates equal: " << (tp_equal ? "yes" : "no")
        << "\n";
    out << "discriminated: " << (ok ? "yes" : "no") << "\n";
  }
  return ok ? kExitOk : kExitFail;
}

inline void add_source(CLI::App* sub, Config& c) {
  sub->add_option("file", c.file, "program file");
  sub->add_option("--builtin", c.builtin, "compiled-in program")
      ->check(CLI::IsMember(builtin_names()));
}

inline void add_format(CLI::App* sub, Config& c) {
  sub->add_option("--format", c.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
}

inline void add_check_options(CLI::App* sub, Config& c) {
  sub->add_option("--spec", c.spec, "S, S0, S_gl, S_qu or S_full");
  sub->add_option("--bounds", c.bounds, "e.g. i=3,len=6,vars=2");
  sub->add_option("--jobs", c.jobs, "worker threads")
      ->envname("SSEM_JOBS")
      ->check(CLI::PositiveNumber);
  sub->add_option("--max-unifications", c.max_unifications,
                  "unification budget");
  sub->add_option("--seed", c.seed, "seed for random renamings");
  sub->add_flag("--timing", c.timing, "include elapsed time in the report");
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  Config c;
  CLI::App app{"s-semantics workbench", "ssem"};
  app.require_subcommand(1);

  auto* solve_cmd = app.add_subcommand("solve", "SLD answers to a query");
  detail::add_source(solve_cmd, c);
  solve_cmd->add_option("goal", c.query, "query text");
  solve_cmd->add_option("--query,-q", c.query, "query text");
  solve_cmd->add_option("--depth", c.depth, "resolution steps per derivation");
  solve_cmd->add_option("--max-answers", c.max_answers, "stop after N answers");
  solve_cmd->add_flag("--iterative", c.iterative, "iterative deepening");
  detail::add_format(solve_cmd, c);

  auto* model_cmd =
      app.add_subcommand("s-model", "iterates of the non-ground T_P operator");
  detail::add_source(model_cmd, c);
  model_cmd->add_option("--iters", c.iters, "number of applications");
  model_cmd->add_option("--max-atoms", c.max_atoms, "stop above N classes");
  model_cmd->add_option("--pred", c.pred, "only print this predicate");
  detail::add_format(model_cmd, c);

  auto* herbrand_cmd =
      app.add_subcommand("herbrand", "ground T_P iterates over a finite base");
  detail::add_source(herbrand_cmd, c);
  herbrand_cmd->add_option("--iters", c.iters, "number of applications");
  herbrand_cmd->add_option("--depth", c.herbrand_depth, "maximal term depth");
  herbrand_cmd->add_option("--max-atoms", c.max_atoms,
                           "class limit for the s-model side");
  herbrand_cmd->add_option("--pred", c.pred, "only print this predicate");
  detail::add_format(herbrand_cmd, c);

  auto* corr_cmd = app.add_subcommand(
      "check-correctness", "bounded check of T_{C}(S) within S per clause");
  detail::add_source(corr_cmd, c);
  detail::add_check_options(corr_cmd, c);
  detail::add_format(corr_cmd, c);

  auto* comp_cmd = app.add_subcommand(
      "check-completeness", "bounded check of level-decreasing witnesses");
  detail::add_source(comp_cmd, c);
  detail::add_check_options(comp_cmd, c);
  comp_cmd->add_flag("--generic-search", c.generic,
                     "search witnesses instead of constructing them");
  detail::add_format(comp_cmd, c);

  auto* level_cmd = app.add_subcommand(
      "check-level", "level mapping gives variants equal levels");
  detail::add_check_options(level_cmd, c);
  detail::add_format(level_cmd, c);

  auto* queens_cmd =
      app.add_subcommand("queens", "solve n queens with the program");
  detail::add_source(queens_cmd, c);
  queens_cmd->add_option("--n", c.n, "board size");
  queens_cmd->add_flag("--oracle", c.oracle, "compare with brute force");
  queens_cmd->add_option("--depth", c.depth, "resolution steps per derivation");
  detail::add_format(queens_cmd, c);

  auto* demo_cmd = app.add_subcommand(
      "demo-s2", "two equivalent programs the s-semantics tells apart");
  detail::add_format(demo_cmd, c);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) return detail::cmd_solve(c, out);
    if (*model_cmd) return detail::cmd_s_model(c, out);
    if (*herbrand_cmd) return detail::cmd_herbrand(c, out);
    if (*corr_cmd) return detail::cmd_check_correctness(c, out);
    if (*comp_cmd) return detail::cmd_check_completeness(c, out);
    if (*level_cmd) return detail::cmd_check_level(c, out);
    if (*queens_cmd) return detail::cmd_queens(c, out);
    if (*demo_cmd) return detail::cmd_demo_s2(c, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace ssem::cli
