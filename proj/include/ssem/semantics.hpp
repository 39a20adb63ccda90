#pragma once

// The non-ground immediate consequence operator T^pi_P, its iterates from
// the empty interpretation, and the ground (Herbrand) counterparts used as a
// comparison baseline.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ssem/substitution.hpp"
#include "ssem/term.hpp"
#include "ssem/unify.hpp"
#include "ssem/variant.hpp"

namespace ssem {

/// Counters shared by every clause-firing loop.
struct FireStats {
  std::uint64_t unifications = 0;  // body-atom unification attempts
  std::uint64_t tuples = 0;        // complete body tuples that unified
  bool budget_exhausted = false;
  bool stop = false;  // set by a callback to end the enumeration early
};

/// Enumerates every way of firing `clause` against n-tuples drawn, with
/// repetition, from `pool`. Each drawn atom is a fresh variant, so the clause
/// and the n drawn atoms are pairwise variable disjoint. Body atoms are
/// unified left to right; a failing prefix prunes all its extensions.
///
/// `on_head(head, indices)` receives H theta and the pool index of each body
/// atom's partner; it may set `stats.stop`. `admit(position, pool_index)`
/// may veto candidates up front. Returns false when `max_unifications` ran
/// out.
template <typename OnHead>
bool fire_clause(
    const Clause& clause, const std::vector<Atom>& pool, VarSource& vars,
    OnHead&& on_head, FireStats& stats,
    std::uint64_t max_unifications = UINT64_MAX,
    const std::function<bool(std::size_t, std::size_t)>& admit = {}) {
  // Everything taking part is a fresh variant, so ids already used in the
  // pool or the clause cannot clash.
  const Clause c = fresh_variant(clause, vars);
  const std::size_t n = c.body.size();
  if (n == 0) {
    ++stats.tuples;
    on_head(c.head, std::vector<std::size_t>{});
    return true;
  }

  // Candidates per body position, pruned on predicate symbol.
  std::vector<std::vector<std::size_t>> cand(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (pool[i].predicate() == c.body[p].predicate() &&
          pool[i].arity() == c.body[p].arity() &&
          (!admit || admit(p, i)))
        cand[p].push_back(i);

  std::vector<std::size_t> chosen(n);
  bool ok = true;
  std::function<void(std::size_t, const Substitution&)> rec =
      [&](std::size_t p, const Substitution& sigma) {
        if (!ok || stats.stop) return;
        if (p == n) {
          ++stats.tuples;
          on_head(apply(sigma, c.head), chosen);
          return;
        }
        for (std::size_t i : cand[p]) {
          if (stats.unifications >= max_unifications) {
            stats.budget_exhausted = true;
            ok = false;
            return;
          }
          ++stats.unifications;
          const Atom partner = fresh_variant(pool[i], vars);
          auto next = unify_more(sigma, c.body[p], partner);
          if (!next) continue;
          chosen[p] = i;
          rec(p + 1, *next);
          if (!ok || stats.stop) return;
        }
      };
  rec(0, Substitution{});
  return ok;
}

/// T^pi_{C}(I) for a single clause.
inline AtomSet tpi_clause(const Clause& clause, const AtomSet& interp,
                          VarSource& vars) {
  AtomSet out;
  FireStats stats;
  fire_clause(
      clause, interp.atoms(), vars,
      [&](const Atom& head, const std::vector<std::size_t>&) {
        out.insert(head);
      },
      stats);
  return out;
}

/// T^pi_P(I): the union over clauses.
inline AtomSet tpi(const Program& program, const AtomSet& interp,
                   VarSource& vars) {
  AtomSet out;
  for (const auto& c : program.clauses())
    out.insert_all(tpi_clause(c, interp, vars));
  return out;
}

/// An interpretation produced by iterating T^pi_P from the empty set.
struct SInterpretation {
  AtomSet atoms;
  std::size_t iterations = 0;  // how many applications produced `atoms`
  bool fixpoint = false;       // T^pi_P(atoms) equals atoms
  bool truncated = false;      // stopped because of the size budget
};

/// (T^pi_P)^k(empty). When k applications do not already show
/// stabilisation, one more application decides whether a fixpoint was
/// reached.
inline SInterpretation iterate(const Program& program, std::size_t k,
                               VarSource& vars,
                               std::optional<std::size_t> max_atoms = {}) {
  SInterpretation cur;
  for (std::size_t step = 1; step <= k; ++step) {
    AtomSet next = tpi(program, cur.atoms, vars);
    if (next == cur.atoms) {
      cur.fixpoint = true;
      return cur;
    }
    cur.atoms = std::move(next);
    cur.iterations = step;
    if (max_atoms && cur.atoms.size() > *max_atoms) {
      cur.truncated = true;
      return cur;
    }
  }
  if (k == 0) {
    cur.fixpoint = tpi(program, cur.atoms, vars).empty();
    return cur;
  }
  cur.fixpoint = tpi(program, cur.atoms, vars) == cur.atoms;
  return cur;
}

// ---------------------------------------------------------------------------
// Ground side

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

using Alphabet = std::vector<Symbol>;

/// Function symbols of the program, plus a fresh constant when the program
/// has none.
inline Alphabet default_alphabet(const Program& program) {
  std::set<Symbol> syms;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_var()) return;
    syms.insert(Symbol{t.functor(), t.arity()});
    for (const auto& a : t.args()) walk(a);
  };
  for (const auto& c : program.clauses()) {
    for (const auto& a : c.head.args()) walk(a);
    for (const auto& b : c.body)
      for (const auto& a : b.args()) walk(a);
  }
  bool has_constant = std::any_of(syms.begin(), syms.end(),
                                  [](const Symbol& s) { return s.arity == 0; });
  if (!has_constant) {
    std::string name = "c";
    while (syms.count(Symbol{name, 0})) name += "c";
    syms.insert(Symbol{name, 0});
  }
  return Alphabet(syms.begin(), syms.end());
}

/// All ground terms over `alphabet` of depth at most `depth`, by depth.
class GroundTerms {
 public:
  GroundTerms(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    if (std::none_of(alphabet_.begin(), alphabet_.end(),
                     [](const Symbol& s) { return s.arity == 0; }))
      throw Error("alphabet needs at least one constant");
  }

  /// Ground terms of depth <= d.
  const std::vector<Term>& upto(std::size_t d) {
    while (levels_.size() <= d) grow();
    return levels_[d];
  }

 private:
  void grow() {
    std::vector<Term> next;
    if (levels_.empty()) {
      for (const auto& s : alphabet_)
        if (s.arity == 0) next.push_back(Term::constant(s.name));
      levels_.push_back(std::move(next));
      return;
    }
    const std::vector<Term>& prev = levels_.back();
    for (const auto& s : alphabet_) {
      if (s.arity == 0) {
        next.push_back(Term::constant(s.name));
        continue;
      }
      std::vector<std::size_t> idx(s.arity, 0);
      for (;;) {
        std::vector<Term> args;
        for (auto i : idx) args.push_back(prev[i]);
        next.push_back(Term::compound(s.name, std::move(args)));
        std::size_t p = 0;
        while (p < s.arity && ++idx[p] == prev.size()) idx[p++] = 0;
        if (p == s.arity) break;
      }
    }
    levels_.push_back(std::move(next));
  }

  Alphabet alphabet_;
  std::deque<std::vector<Term>> levels_;  // stable references while growing
};

namespace detail {

inline void var_budgets(const Term& t, std::size_t nesting, std::size_t depth,
                        std::map<Var, std::pair<Term, std::size_t>>& out,
                        bool& fits) {
  if (t.is_var()) {
    if (nesting > depth) {
      fits = false;
      return;
    }
    std::size_t b = depth - nesting;
    auto [it, inserted] = out.emplace(t.var(), std::make_pair(t, b));
    if (!inserted) it->second.second = std::min(it->second.second, b);
    return;
  }
  if (t.arity() == 0) return;
  if (nesting + 1 > depth) {
    fits = false;
    return;
  }
  for (const auto& a : t.args()) var_budgets(a, nesting + 1, depth, out, fits);
}

}  // namespace detail

/// Ground instances of one atom whose depth is at most `depth`.
template <typename F>
void for_each_ground_instance(const Atom& atom, std::size_t depth,
                              GroundTerms& terms, F&& f) {
  std::map<Var, std::pair<Term, std::size_t>> budgets;
  bool fits = true;
  for (const auto& a : atom.args())
    detail::var_budgets(a, 0, depth, budgets, fits);
  if (!fits) return;
  std::vector<std::pair<Term, const std::vector<Term>*>> slots;
  for (auto& [v, tb] : budgets) slots.emplace_back(tb.first, &terms.upto(tb.second));
  std::vector<std::size_t> idx(slots.size(), 0);
  for (;;) {
    Substitution g;
    for (std::size_t i = 0; i < slots.size(); ++i)
      g.bind(slots[i].first, (*slots[i].second)[idx[i]]);
    f(apply(g, atom));
    std::size_t p = 0;
    while (p < slots.size() && ++idx[p] == slots[p].second->size())
      idx[p++] = 0;
    if (p == slots.size()) break;
  }
}

/// Ground instances of every atom of `interp` with depth <= `depth`.
inline AtomSet ground_instances(const AtomSet& interp, std::size_t depth,
                                const Alphabet& alphabet) {
  GroundTerms terms(alphabet);
  AtomSet out;
  for (const auto& a : interp)
    for_each_ground_instance(a, depth, terms,
                             [&](const Atom& g) { out.insert(g); });
  return out;
}

namespace detail {

/// One-way matching of `pattern` against a ground term.
inline bool match_into(const Term& pattern, const Term& ground,
                       Substitution& s) {
  if (pattern.is_var()) {
    if (const Term* b = s.lookup(pattern.var())) return *b == ground;
    s.bind(pattern, ground);
    return true;
  }
  if (pattern.functor() != ground.functor() ||
      pattern.arity() != ground.arity())
    return false;
  for (std::size_t i = 0; i < pattern.arity(); ++i)
    if (!match_into(pattern.arg(i), ground.arg(i), s)) return false;
  return true;
}

}  // namespace detail

/// k applications of the ground immediate consequence operator T_P from the
/// empty set, over the finite Herbrand base of atoms with depth <= `depth`.
inline AtomSet herbrand_tp(const Program& program, std::size_t k,
                           std::size_t depth, const Alphabet& alphabet) {
  GroundTerms terms(alphabet);
  AtomSet cur;
  for (std::size_t step = 0; step < k; ++step) {
    AtomSet next;
    for (const auto& c : program.clauses()) {
      std::function<void(std::size_t, const Substitution&)> rec =
          [&](std::size_t p, const Substitution& s) {
            if (p == c.body.size()) {
              Atom head = apply(s, c.head);
              for_each_ground_instance(head, depth, terms,
                                       [&](const Atom& g) { next.insert(g); });
              return;
            }
            for (const auto& g : cur) {
              if (g.predicate() != c.body[p].predicate() ||
                  g.arity() != c.body[p].arity())
                continue;
              Substitution ext = s;
              if (detail::match_into(apply(s, c.body[p]).as_term(),
                                     g.as_term(), ext))
                rec(p + 1, ext);
            }
          };
      rec(0, Substitution{});
    }
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

}  // namespace ssem
