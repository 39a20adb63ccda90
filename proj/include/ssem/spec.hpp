#pragma once

// Bounded checks of the sufficient conditions for correctness and
// completeness of a program with respect to a specification S.
//
//   correctness:  T^pi_{C}(S) is a subset of S for every clause C
//   completeness: every A in S is in T^pi_{C}({A1..An}) for some clause C
//                 with A1..An variants of members of S and |A| > |Ai|
//
// S is infinite in general, so both checks run over a finite sample drawn by
// the specification's enumerator. A pass means no counterexample within the
// recorded bounds.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ssem/report.hpp"
#include "ssem/semantics.hpp"
#include "ssem/substitution.hpp"
#include "ssem/syntax.hpp"
#include "ssem/term.hpp"
#include "ssem/variant.hpp"

namespace ssem {

/// Named, finite, non-negative size parameters for sampling a specification.
class SpecBounds {
 public:
  SpecBounds() = default;
  SpecBounds(std::initializer_list<std::pair<const std::string, std::int64_t>>
                 values) {
    for (const auto& [k, v] : values) set(k, v);
  }

  /// Parses "i=3,len=6,vars=2".
  static SpecBounds parse(const std::string& text) {
    SpecBounds b;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Error("bad bound '" + item + "', expected key=value");
      std::int64_t v = 0;
      try {
        std::size_t used = 0;
        v = std::stoll(item.substr(eq + 1), &used);
        if (used != item.size() - eq - 1) throw Error("");
      } catch (const std::exception&) {
        throw Error("bad bound value in '" + item + "'");
      }
      b.set(item.substr(0, eq), v);
    }
    return b;
  }

  void set(const std::string& key, std::int64_t value) {
    if (value < 0) throw Error("bound " + key + " must be >= 0");
    values_[key] = value;
  }

  std::int64_t get(const std::string& key, std::int64_t fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  /// Fills in any key missing here from `defaults`.
  SpecBounds with_defaults(const SpecBounds& defaults) const {
    SpecBounds out = defaults;
    for (const auto& [k, v] : values_) out.values_[k] = v;
    return out;
  }

  const std::map<std::string, std::int64_t>& values() const { return values_; }

 private:
  std::map<std::string, std::int64_t> values_;
};

using MemberFn = std::function<bool(const Atom&)>;
using EnumerateFn =
    std::function<std::vector<Atom>(const SpecBounds&, VarSource&)>;
using LevelFn = std::function<std::uint64_t(const Atom&)>;

/// A set S of atoms given by a membership test, a bounded enumerator and an
/// optional level mapping. `candidates` supplies the pool for the generic
/// witness search; it defaults to `enumerate`.
struct Specification {
  std::string name;
  MemberFn member;
  EnumerateFn enumerate;
  LevelFn level;
  EnumerateFn candidates;
  SpecBounds default_bounds;

  bool has_level() const { return static_cast<bool>(level); }
};

/// A clause and body atoms claimed to produce a target atom.
struct Witness {
  Clause clause;
  std::vector<Atom> body;
};

using WitnessRule =
    std::function<std::optional<Witness>(const Atom&, VarSource&)>;

struct CheckOptions {
  std::uint64_t max_unifications = 50'000'000;
  std::size_t max_counterexamples = 10;
  unsigned jobs = 1;
  std::uint64_t seed = 20240601;
  std::size_t renamings_per_atom = 4;
  bool timing = false;
  std::string program_name;
};

namespace detail {

/// Runs `body(item, vars)` for item in [0, n) on up to `jobs` threads. Every
/// worker draws variables from its own id range.
template <typename Body>
void parallel_items(std::size_t n, unsigned jobs, VarSource& vars,
                    Body&& body) {
  constexpr std::uint64_t kStride = std::uint64_t{1} << 40;
  const std::uint64_t base = vars.peek();
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i, vars);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<VarSource> sources;
  for (unsigned t = 0; t < jobs; ++t)
    sources.emplace_back(base + (t + 1) * kStride);
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = next++; i < n; i = next++) body(i, sources[t]);
    });
  for (auto& th : pool) th.join();
  vars.ensure_above(base + (jobs + 1) * kStride);
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

inline std::optional<std::size_t> find_clause(const Program& p,
                                              const Clause& c) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (is_variant(p.clauses()[i], c)) return i;
  return std::nullopt;
}

}  // namespace detail

/// Checks T^pi_{C}(sample) against membership in S for each clause C.
inline CheckReport check_correctness(const Program& program,
                                     const Specification& spec,
                                     const SpecBounds& bounds, VarSource& vars,
                                     const CheckOptions& opt = {}) {
  detail::Stopwatch clock;
  const SpecBounds b = bounds.with_defaults(spec.default_bounds);
  const std::vector<Atom> sample = spec.enumerate(b, vars);
  for (const auto& a : sample) vars.ensure_above(max_var_id(a));

  // One work item per clause and first-body-atom partner.
  struct Item {
    std::size_t clause;
    std::optional<std::size_t> first;
  };
  std::vector<Item> items;
  for (std::size_t c = 0; c < program.size(); ++c) {
    const Clause& cl = program.clauses()[c];
    if (cl.body.empty()) {
      items.push_back({c, std::nullopt});
      continue;
    }
    for (std::size_t i = 0; i < sample.size(); ++i)
      if (sample[i].predicate() == cl.body[0].predicate() &&
          sample[i].arity() == cl.body[0].arity())
        items.push_back({c, i});
  }

  struct Outcome {
    FireStats stats;
    std::uint64_t violations = 0;
    std::vector<Counterexample> found;
  };
  std::vector<Outcome> outcomes(items.size());

  detail::parallel_items(
      items.size(), opt.jobs, vars, [&](std::size_t k, VarSource& local) {
        const Item& it = items[k];
        const Clause& cl = program.clauses()[it.clause];
        Outcome& out = outcomes[k];
        std::function<bool(std::size_t, std::size_t)> admit;
        if (it.first)
          admit = [&](std::size_t pos, std::size_t idx) {
            return pos != 0 || idx == *it.first;
          };
        fire_clause(
            cl, sample, local,
            [&](const Atom& head, const std::vector<std::size_t>& tuple) {
              if (spec.member(head)) return;
              ++out.violations;
              if (out.found.size() >= opt.max_counterexamples) return;
              Counterexample ce;
              ce.clause = it.clause + 1;
              ce.atom = head;
              for (auto i : tuple) ce.body.push_back(sample[i]);
              ce.reason = "head instance not in " + spec.name;
              out.found.push_back(std::move(ce));
            },
            out.stats, opt.max_unifications, admit);
      });

  CheckReport r;
  r.kind = "correctness";
  r.program = opt.program_name;
  r.spec = spec.name;
  r.bounds = b.values();
  std::uint64_t unifications = 0, tuples = 0, violations = 0;
  bool exhausted = false;
  for (auto& o : outcomes) {
    unifications += o.stats.unifications;
    tuples += o.stats.tuples;
    violations += o.violations;
    exhausted = exhausted || o.stats.budget_exhausted;
    for (auto& ce : o.found)
      if (r.counterexamples.size() < opt.max_counterexamples)
        r.counterexamples.push_back(std::move(ce));
  }
  exhausted = exhausted || unifications > opt.max_unifications;
  r.stats["clauses"] = program.size();
  r.stats["sampled_atoms"] = sample.size();
  r.stats["unifications"] = unifications;
  r.stats["heads_checked"] = tuples;
  r.stats["violations"] = violations;
  if (violations > 0)
    r.verdict = Verdict::kFail;
  else if (exhausted)
    r.verdict = Verdict::kInconclusive;
  else
    r.verdict = Verdict::kPass;
  if (opt.timing) r.elapsed_ms = clock.ms();
  return r;
}

/// Checks the level-decreasing witness condition for every sampled atom.
/// With `rule` the witnesses come from it and are verified; without, they
/// are searched among the specification's candidate pool.
inline CheckReport check_completeness(const Program& program,
                                      const Specification& spec,
                                      const SpecBounds& bounds,
                                      const WitnessRule* rule, VarSource& vars,
                                      const CheckOptions& opt = {}) {
  if (!spec.has_level())
    throw Error("specification " + spec.name + " has no level mapping");
  detail::Stopwatch clock;
  const SpecBounds b = bounds.with_defaults(spec.default_bounds);
  const std::vector<Atom> sample = spec.enumerate(b, vars);
  std::vector<Atom> pool;
  std::vector<std::uint64_t> pool_levels;
  if (!rule) {
    pool = spec.candidates ? spec.candidates(b, vars) : sample;
    for (const auto& a : pool) pool_levels.push_back(spec.level(a));
  }
  for (const auto& a : sample) vars.ensure_above(max_var_id(a));
  for (const auto& a : pool) vars.ensure_above(max_var_id(a));

  struct Outcome {
    TargetEntry entry;
    std::optional<Counterexample> failure;
    FireStats stats;
  };
  std::vector<Outcome> outcomes(sample.size());

  detail::parallel_items(
      sample.size(), opt.jobs, vars, [&](std::size_t k, VarSource& local) {
        const Atom& target = sample[k];
        Outcome& out = outcomes[k];
        out.entry.atom = target;
        out.entry.level = spec.level(target);
        const std::string key = canonical_key(target);
        auto miss = [&](std::string reason,
                        std::optional<std::size_t> clause = {}) {
          Counterexample ce;
          ce.atom = target;
          ce.clause = clause;
          ce.reason = std::move(reason);
          out.failure = std::move(ce);
        };

        if (rule) {
          std::optional<Witness> w;
          try {
            w = (*rule)(target, local);
          } catch (const Error& e) {
            miss(std::string("witness rule failed: ") + e.what());
            return;
          }
          if (!w) return miss("witness rule produced nothing");
          auto idx = detail::find_clause(program, w->clause);
          if (!idx) return miss("witness clause is not a clause of the program");
          const Clause& cl = program.clauses()[*idx];
          if (cl.body.size() != w->body.size())
            return miss("witness body has the wrong length", *idx + 1);
          std::vector<std::uint64_t> levels;
          for (std::size_t i = 0; i < w->body.size(); ++i) {
            if (!spec.member(w->body[i]))
              return miss("witness body atom " + std::to_string(i + 1) +
                              " is not a member of " + spec.name,
                          *idx + 1);
            levels.push_back(spec.level(w->body[i]));
            if (levels.back() >= out.entry.level)
              return miss("witness body atom " + std::to_string(i + 1) +
                              " does not have a smaller level",
                          *idx + 1);
          }
          AtomSet given;
          for (const auto& a : w->body) given.insert(a);
          if (!tpi_clause(cl, given, local).contains(target))
            return miss("clause does not produce the target from the witness",
                        *idx + 1);
          out.entry.clause = *idx + 1;
          out.entry.body_levels = std::move(levels);
          out.entry.witnessed = true;
          return;
        }

        // Generic search: any clause, any tuple of lower-level candidates.
        const std::uint64_t level = out.entry.level;
        for (std::size_t c = 0; c < program.size() && !out.entry.witnessed;
             ++c) {
          std::vector<std::size_t> hit;
          out.stats.stop = false;
          fire_clause(
              program.clauses()[c], pool, local,
              [&](const Atom& head, const std::vector<std::size_t>& tuple) {
                if (canonical_key(head) != key) return;
                hit = tuple;
                out.stats.stop = true;
              },
              out.stats, opt.max_unifications,
              [&](std::size_t, std::size_t i) { return pool_levels[i] < level; });
          if (out.stats.stop) {
            out.entry.witnessed = true;
            out.entry.clause = c + 1;
            for (auto i : hit) out.entry.body_levels.push_back(pool_levels[i]);
          }
          if (out.stats.budget_exhausted) break;
        }
        if (!out.entry.witnessed && !out.stats.budget_exhausted)
          miss("no witness among the candidate pool");
      });

  CheckReport r;
  r.kind = "completeness";
  r.program = opt.program_name;
  r.spec = spec.name;
  r.bounds = b.values();
  std::uint64_t witnessed = 0, unwitnessed = 0, unifications = 0;
  bool exhausted = false;
  for (auto& o : outcomes) {
    unifications += o.stats.unifications;
    exhausted = exhausted || o.stats.budget_exhausted;
    if (o.entry.witnessed)
      ++witnessed;
    else if (o.failure)
      ++unwitnessed;
    if (o.failure && r.counterexamples.size() < opt.max_counterexamples)
      r.counterexamples.push_back(std::move(*o.failure));
    r.targets.push_back(std::move(o.entry));
  }
  r.stats["clauses"] = program.size();
  r.stats["targets"] = sample.size();
  r.stats["witnessed"] = witnessed;
  r.stats["unwitnessed"] = unwitnessed;
  if (!rule) {
    r.stats["candidate_pool"] = pool.size();
    r.stats["unifications"] = unifications;
  }
  if (unwitnessed > 0)
    r.verdict = Verdict::kFail;
  else if (exhausted)
    r.verdict = Verdict::kInconclusive;
  else
    r.verdict = Verdict::kPass;
  if (opt.timing) r.elapsed_ms = clock.ms();
  return r;
}

/// Checks that the level mapping gives variants equal levels, using random
/// renamings of every sampled atom. Atoms are stripped of display names on
/// both sides first, so only variable identity can make a difference.
inline CheckReport check_level_mapping(const Specification& spec,
                                       const SpecBounds& bounds,
                                       VarSource& vars,
                                       const CheckOptions& opt = {}) {
  if (!spec.has_level())
    throw Error("specification " + spec.name + " has no level mapping");
  detail::Stopwatch clock;
  const SpecBounds b = bounds.with_defaults(spec.default_bounds);
  const std::vector<Atom> sample = spec.enumerate(b, vars);
  for (const auto& a : sample) vars.ensure_above(max_var_id(a));
  std::mt19937_64 rng(opt.seed);

  CheckReport r;
  r.kind = "level-mapping";
  r.spec = spec.name;
  r.bounds = b.values();
  std::uint64_t comparisons = 0, mismatches = 0;
  for (const auto& a : sample) {
    const Atom base = fresh_variant(a, vars);
    const std::uint64_t level = spec.level(base);
    const auto vs = variables_of(base);
    for (std::size_t n = 0; n < opt.renamings_per_atom; ++n) {
      std::vector<Term> fresh;
      for (std::size_t i = 0; i < vs.size(); ++i)
        fresh.push_back(vars.fresh_term());
      std::shuffle(fresh.begin(), fresh.end(), rng);
      Substitution rho;
      for (std::size_t i = 0; i < vs.size(); ++i) rho.bind(vs[i], fresh[i]);
      const Atom renamed = apply(rho, base);
      ++comparisons;
      const std::uint64_t other = spec.level(renamed);
      if (other == level) continue;
      ++mismatches;
      if (r.counterexamples.size() < opt.max_counterexamples) {
        Counterexample ce;
        ce.atom = base;
        ce.body = {renamed};
        ce.reason = "levels " + std::to_string(level) + " and " +
                    std::to_string(other) + " differ on variants";
        r.counterexamples.push_back(std::move(ce));
      }
    }
  }
  r.stats["sampled_atoms"] = sample.size();
  r.stats["comparisons"] = comparisons;
  r.stats["mismatches"] = mismatches;
  r.verdict = mismatches ? Verdict::kFail : Verdict::kPass;
  if (opt.timing) r.elapsed_ms = clock.ms();
  return r;
}

}  // namespace ssem
