#pragma once

// Most general unifiers by Martelli-Montanari transformation to solved form.
//
// Equations are processed from a worklist. The solved part is kept
// idempotent and is applied to each equation as it is selected, which is the
// variable-elimination rule performed lazily. The occurs check is always on.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ssem/substitution.hpp"
#include "ssem/term.hpp"

namespace ssem {

namespace detail {

/// Adds v/t to an idempotent solved form, keeping it idempotent.
inline void solve_binding(Substitution& solved, const Term& v, const Term& t) {
  Substitution step;
  step.bind(v, t);
  Substitution next;
  for (const auto& [id, b] : solved.bindings())
    next.bind(b.variable, apply(step, b.value));
  next.bind(v, t);
  solved = std::move(next);
}

inline bool solve(std::vector<std::pair<Term, Term>>& work,
                  Substitution& solved) {
  while (!work.empty()) {
    auto [s, t] = std::move(work.back());
    work.pop_back();
    s = apply(solved, s);
    t = apply(solved, t);
    if (s.is_var() && t.is_var() && s.var() == t.var()) continue;  // delete
    if (!s.is_var() && t.is_var()) std::swap(s, t);                 // orient
    if (s.is_var()) {
      if (occurs_in(s.var(), t)) return false;  // occurs check
      solve_binding(solved, s, t);              // eliminate
      continue;
    }
    if (s.functor() != t.functor() || s.arity() != t.arity())
      return false;  // clash
    for (std::size_t i = s.arity(); i-- > 0;)  // decompose
      work.emplace_back(s.arg(i), t.arg(i));
  }
  return true;
}

}  // namespace detail

/// mgu of two aligned term sequences, or nothing. The result is idempotent
/// and binds only variables of the inputs.
inline std::optional<Substitution> mgu(std::span<const Term> a,
                                       std::span<const Term> b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<std::pair<Term, Term>> work;
  work.reserve(a.size());
  for (std::size_t i = a.size(); i-- > 0;) work.emplace_back(a[i], b[i]);
  Substitution solved;
  if (!detail::solve(work, solved)) return std::nullopt;
  return solved;
}

inline std::optional<Substitution> mgu(const Term& a, const Term& b) {
  return mgu(std::span<const Term>(&a, 1), std::span<const Term>(&b, 1));
}

inline std::optional<Substitution> mgu(const Atom& a, const Atom& b) {
  return mgu(a.as_term(), b.as_term());
}

inline std::optional<Substitution> mgu(const std::vector<Atom>& a,
                                       const std::vector<Atom>& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::vector<Term> ta, tb;
  ta.reserve(a.size());
  tb.reserve(b.size());
  for (const auto& x : a) ta.push_back(x.as_term());
  for (const auto& x : b) tb.push_back(x.as_term());
  return mgu(std::span<const Term>(ta), std::span<const Term>(tb));
}

/// Extends an idempotent `sigma` by an mgu of apply(sigma, a) and
/// apply(sigma, b); the result is again idempotent. This is the stepwise
/// route to unifying a sequence one pair at a time.
inline std::optional<Substitution> unify_more(const Substitution& sigma,
                                              const Term& a, const Term& b) {
  std::vector<std::pair<Term, Term>> work;
  work.emplace_back(a, b);
  Substitution solved = sigma;
  if (!detail::solve(work, solved)) return std::nullopt;
  return solved;
}

inline std::optional<Substitution> unify_more(const Substitution& sigma,
                                              const Atom& a, const Atom& b) {
  return unify_more(sigma, a.as_term(), b.as_term());
}

inline bool unifiable(const Term& a, const Term& b) {
  return mgu(a, b).has_value();
}

inline bool is_idempotent(const Substitution& s) {
  for (const auto& [v, b] : s.bindings())
    for (const auto& [w, c] : s.bindings())
      if (occurs_in(v, c.value)) return false;
  return true;
}

}  // namespace ssem
