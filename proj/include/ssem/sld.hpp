#pragma once

// SLD resolution with the leftmost selection rule and textual clause order.
// Search is depth-first under a bound on resolution steps; an
// iterative-deepening mode re-runs the search with growing bounds and emits
// each derivation exactly once, at the bound equal to its length.

#include <optional>
#include <utility>
#include <vector>

#include "ssem/substitution.hpp"
#include "ssem/term.hpp"
#include "ssem/unify.hpp"

namespace ssem {

struct Limits {
  std::size_t max_depth = 64;  // resolution steps per derivation
  std::optional<std::size_t> max_height;  // proof tree height
  std::optional<std::size_t> max_answers;
  bool iterative_deepening = false;
};

struct ComputedAnswer {
  std::vector<Atom> instance;  // Q theta
  Substitution substitution;   // theta restricted to the variables of Q
  std::size_t steps = 0;       // length of the derivation
  std::size_t height = 0;      // height of the underlying proof tree
};

enum class SolveStatus {
  kRunning,
  kExhausted,       // the whole search space was explored
  kLimitExhausted,  // some derivation was cut by the depth or height bound
  kAnswerLimit,     // stopped after max_answers
};

/// Lazily enumerates computed answers of a query.
class Solver {
 public:
  Solver(const Program& program, Query query, Limits limits, VarSource& vars)
      : program_(program),
        query_(std::move(query)),
        limits_(limits),
        vars_(vars),
        query_vars_(variables_of(query_.atoms)) {
    if (query_.atoms.empty()) throw Error("a query needs at least one atom");
    for (const auto& a : query_.atoms) {
      auto ar = program_.arity_of(a.predicate());
      if (!ar || *ar != a.arity())
        throw Error("unknown predicate " + a.predicate() + "/" +
                    std::to_string(a.arity()));
    }
    vars_.ensure_above(max_var_id(query_.atoms));
    bound_ = limits_.iterative_deepening ? 1 : limits_.max_depth;
    restart();
  }

  std::optional<ComputedAnswer> next() {
    if (status_ != SolveStatus::kRunning) return std::nullopt;
    if (limits_.max_answers && produced_ >= *limits_.max_answers) {
      status_ = SolveStatus::kAnswerLimit;
      return std::nullopt;
    }
    for (;;) {
      if (auto a = step_search()) {
        ++produced_;
        return a;
      }
      if (limits_.iterative_deepening && cut_ && bound_ < limits_.max_depth) {
        ++bound_;
        restart();
        continue;
      }
      status_ = cut_ ? SolveStatus::kLimitExhausted : SolveStatus::kExhausted;
      return std::nullopt;
    }
  }

  SolveStatus status() const { return status_; }
  bool limit_hit() const { return status_ == SolveStatus::kLimitExhausted; }
  const Query& query() const { return query_; }

 private:
  struct Goal {
    Atom atom;
    std::size_t level;  // depth of this node in the proof tree
  };

  struct Frame {
    std::vector<Goal> goals;
    Substitution theta;  // on query variables only
    std::size_t steps = 0;
    std::size_t height = 0;
    std::size_t next_clause = 0;
  };

  void restart() {
    stack_.clear();
    cut_ = false;
    Frame root;
    for (const auto& a : query_.atoms) root.goals.push_back(Goal{a, 1});
    stack_.push_back(std::move(root));
  }

  static bool may_match(const Atom& goal, const Atom& head) {
    if (goal.predicate() != head.predicate() || goal.arity() != head.arity())
      return false;
    for (std::size_t i = 0; i < goal.arity(); ++i) {
      const Term& g = goal.arg(i);
      const Term& h = head.arg(i);
      if (g.is_compound() && h.is_compound() &&
          (g.functor() != h.functor() || g.arity() != h.arity()))
        return false;
    }
    return true;
  }

  std::optional<ComputedAnswer> step_search() {
    const auto& clauses = program_.clauses();
    while (!stack_.empty()) {
      Frame& top = stack_.back();
      if (top.goals.empty()) {
        Frame done = std::move(top);
        stack_.pop_back();
        if (limits_.iterative_deepening && done.steps != bound_) continue;
        return make_answer(done);
      }
      if (top.steps >= bound_) {
        cut_ = true;
        stack_.pop_back();
        continue;
      }
      const Goal& selected = top.goals.front();
      if (limits_.max_height && selected.level > *limits_.max_height) {
        cut_ = true;
        stack_.pop_back();
        continue;
      }
      std::size_t idx = top.next_clause;
      while (idx < clauses.size() && !may_match(selected.atom, clauses[idx].head))
        ++idx;
      if (idx >= clauses.size()) {
        stack_.pop_back();
        continue;
      }
      top.next_clause = idx + 1;
      Clause renamed = fresh_variant(clauses[idx], vars_);
      auto sigma = mgu(selected.atom, renamed.head);
      if (!sigma) continue;

      Frame child;
      child.steps = top.steps + 1;
      child.height = std::max(top.height, selected.level);
      child.goals.reserve(renamed.body.size() + top.goals.size() - 1);
      for (const auto& b : renamed.body)
        child.goals.push_back(Goal{apply(*sigma, b), selected.level + 1});
      for (std::size_t i = 1; i < top.goals.size(); ++i)
        child.goals.push_back(
            Goal{apply(*sigma, top.goals[i].atom), top.goals[i].level});
      child.theta = compose(top.theta, *sigma);
      child.theta = restrict_to(child.theta, query_vars_);
      stack_.push_back(std::move(child));
    }
    return std::nullopt;
  }

  ComputedAnswer make_answer(const Frame& f) const {
    ComputedAnswer a;
    a.substitution = f.theta;
    a.instance = apply(f.theta, query_.atoms);
    a.steps = f.steps;
    a.height = f.height;
    return a;
  }

  const Program& program_;
  Query query_;
  Limits limits_;
  VarSource& vars_;
  std::vector<Term> query_vars_;
  std::vector<Frame> stack_;
  std::size_t bound_ = 0;
  bool cut_ = false;
  std::size_t produced_ = 0;
  SolveStatus status_ = SolveStatus::kRunning;
};

struct SolveResult {
  std::vector<ComputedAnswer> answers;
  SolveStatus status = SolveStatus::kExhausted;
};

inline SolveResult solve(const Program& program, const Query& query,
                         const Limits& limits, VarSource& vars) {
  Solver s(program, query, limits, vars);
  SolveResult r;
  while (auto a = s.next()) r.answers.push_back(std::move(*a));
  r.status = s.status();
  return r;
}

/// p(V1,...,Vn) over fresh distinct variables.
inline Query most_general_query(const Program& program,
                                const std::string& pred, VarSource& vars) {
  auto arity = program.arity_of(pred);
  if (!arity) throw Error("unknown predicate " + pred);
  std::vector<Term> args;
  for (std::size_t i = 0; i < *arity; ++i) args.push_back(vars.fresh_term());
  return Query{{Atom(pred, std::move(args))}};
}

}  // namespace ssem
